#pragma once

#include "lagrangian.hpp"

#include <string>
#include <vector>

namespace braidforce {

struct CorpusEntry {
  std::string name;
  Braid free;
  Braid skeleton;
  std::string cp;  // expected index
  // stabilization checked against the constant augmentation of the skeleton
  bool augment_for_stabilization = false;
};

CorpusEntry example1();
CorpusEntry example2();
// n-fold cover of the first example's skeleton with the 3^n seed strands
struct Census {
  Braid skeleton;
  std::vector<Braid> seeds;
};
Census example3(int n);
// cases I (1,4,3), II (2,1,3), III (1,4,3) with the augmented skeleton
CorpusEntry comp_case(ForcingCase c);

// examples 1 and 2, the n = 2 census classes that are bounded and proper, the three forcing cases
std::vector<CorpusEntry> corpus();

} // namespace braidforce
