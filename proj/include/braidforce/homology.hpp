#pragma once

#include "class_complex.hpp"

#include <string>
#include <vector>

namespace braidforce {

// integer chain complex with sparse columns; cells carry their dimension
class ChainComplex {
public:
  using Column = std::vector<std::pair<int, long long>>;

  int add_cell(int dim, Column boundary);
  int size() const { return static_cast<int>(dim_.size()); }
  int dim(int c) const { return dim_[c]; }
  const Column& boundary(int c) const { return bd_[c]; }
  int top_dim() const;

  // throws if some boundary of a boundary is nonzero
  void check_square_zero() const;

private:
  std::vector<int> dim_;
  std::vector<Column> bd_;
};

// relative cubical complex: cells of N not in N^-, oriented boundary restricted to them
ChainComplex quotient_complex(const SkeletonGrid& grid, const CellSet& n, const CellSet& exit);

struct ConleyIndex {
  std::vector<long long> betti;
  std::vector<std::vector<std::string>> torsion;  // invariant factors > 1, per dimension
  std::vector<long long> cp;                     // dense coefficients of CP_t
  long long euler = 0;

  bool empty() const;
  bool has_torsion() const;
  bool operator==(const ConleyIndex& o) const { return betti == o.betti && torsion == o.torsion; }
};

ConleyIndex make_index(std::vector<long long> betti, std::vector<std::vector<std::string>> torsion = {});

ConleyIndex homology(const ChainComplex& c);
ConleyIndex relative_homology(const SkeletonGrid& grid, const CellSet& n, const CellSet& exit);
// enumerate, exit set, homology
ConleyIndex conley_index(const BraidClassComplex& c);

// "t^1 + t^2" when explicit, "t + t^2" otherwise; "0" for the trivial index
std::string format_cp(const std::vector<long long>& cp, bool explicit_exponents = false);

enum class MorseRegime { exact_nondegenerate, exact, non_exact, non_exact_nondegenerate };
long long morse_bounds(const ConleyIndex& idx, MorseRegime regime);

ConleyIndex wedge_index(const std::vector<BraidClassComplex>& classes);

// discrete classes of one topological type as the seed's: same signature, merged under extension
struct TopologicalFamily {
  std::vector<BraidClassComplex> members;
  std::vector<Braid> seeds;
  // same signature, neither merged nor separated within the extension cap
  std::vector<BraidClassComplex> undecided;
  int extensions_used = 0;
  // undecided classes all carry the trivial index, so the wedge does not depend on them
  bool certified = true;
};
TopologicalFamily topological_family(const Braid& seed, const Braid& skeleton, int extension_cap = 3);

// H for the topological class of seed rel skeleton
ConleyIndex topological_index(const Braid& seed, const Braid& skeleton, int extension_cap = 3);

struct DualityReport {
  ConleyIndex original;
  ConleyIndex dual;
  bool holds = false;
};
DualityReport verify_duality(const Braid& seed, const Braid& skeleton);

struct StabilizationReport {
  std::vector<ConleyIndex> indices;  // period d, d+1, ...
  bool holds = false;
};
StabilizationReport verify_stabilization(const Braid& seed, const Braid& skeleton, int steps = 1);

struct ShiftReport {
  ConleyIndex dual;           // CH(D(u rel v*))
  ConleyIndex dual_extended;  // CH(D E^2 (u rel v*))
  bool holds = false;
};
// pass the augmented skeleton; shift applies each E^2 `times` times
ShiftReport shift_check(const Braid& seed, const Braid& skeleton, int times = 1);

} // namespace braidforce
