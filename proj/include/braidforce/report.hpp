#pragma once

#include "braid_io.hpp"
#include "homology.hpp"

#include <string>

namespace braidforce {

// boxes, then closed cells by dimension with exit flags, all in lexicographic order
json complex_to_json(const BraidClassComplex& c, const ExitSet& exit);

// {"betti", "cp", "euler", "torsion"}; cp with explicit exponents
json index_to_json(const ConleyIndex& h);

// piecewise linear diagram; the first `free_strands` rows grey, the rest black,
// a red ring at every singular crossing
std::string render_svg(const Braid& b, int free_strands = 0);

} // namespace braidforce
