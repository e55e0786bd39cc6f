#pragma once

#include "braid.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_set>
#include <vector>

namespace braidforce {

// sorted distinct skeleton values per index; interval k sits between values k-1 and k
class IntervalPartition {
public:
  IntervalPartition() = default;
  explicit IntervalPartition(const Braid& skeleton);

  int d() const { return static_cast<int>(values_.size()); }
  int m(int i) const { return static_cast<int>(values_[i].size()); }
  const std::vector<Rational>& values(int i) const { return values_[i]; }

  // throws OnHyperplane
  int label_of(int i, const Rational& x) const;
  // -1 when x is not a skeleton value at i
  int value_index(int i, const Rational& x) const;
  Rational midpoint(int i, int label) const;
  bool unbounded(int i, int label) const { return label == 0 || label == m(i); }

private:
  std::vector<std::vector<Rational>> values_;
};

using BoxLabel = std::vector<int>;
// grid coordinates: interval k -> 2k, value j -> 2j+1; dimension = number of even entries
using Cell = std::vector<int>;
using CellKey = std::uint64_t;

// combinatorial view of a skeleton used by every class computation
class SkeletonGrid {
public:
  explicit SkeletonGrid(const Braid& skeleton);

  const Braid& skeleton() const { return skeleton_; }
  const IntervalPartition& partition() const { return partition_; }
  int d() const { return partition_.d(); }
  int strands() const { return skeleton_.n(); }

  CellKey key(const Cell& g) const;
  Cell cell(CellKey k) const;
  int radix(int i) const { return 2 * partition_.m(i) + 1; }

  // value index of v^b at index i for i in 0..d (column d read in partition 0)
  int anchor_index(int b, int i) const { return index_[b][i]; }

  // singular iff some strand through the crossed value has sign product >= 0
  bool face_is_singular(const Cell& g, int i) const;
  // crossing number of a cell whose coordinates avoid every anchor of strand b
  int crossings(const Cell& g, int b) const;
  int crossing_total(const Cell& g) const;

  BoxLabel box_of(const Braid& free) const;
  Braid midpoint_strand(const BoxLabel& k) const;

private:
  Braid skeleton_;
  IntervalPartition partition_;
  std::vector<std::vector<int>> index_;
  // per i: (value index at i, index at i-1, index at i+1) for each skeleton strand
  std::vector<std::vector<std::array<int, 3>>> contacts_;
  std::vector<CellKey> stride_;
};

struct BraidClassComplex {
  std::shared_ptr<const SkeletonGrid> grid;
  std::vector<BoxLabel> boxes;  // lexicographic
  bool bounded = false;
  bool proper = false;
  std::vector<int> signature;   // crossings with each skeleton strand
  int crossing_total = 0;

  int d() const { return grid->d(); }
  bool contains(const BoxLabel& k) const;
  std::unordered_set<CellKey> box_keys() const;
};

struct CellSet {
  std::vector<std::vector<Cell>> by_dim;  // lexicographic inside each dimension
  std::size_t size() const;
  bool contains(const Cell& c) const;
};

struct ExitSet {
  CellSet cells;
  std::vector<std::pair<Cell, bool>> faces;  // codim-1 boundary faces, true = exit
  int ties = 0;                               // faces with equal crossing totals, sent to the exit set
};

BoxLabel box_of(const Braid& free, const Braid& skeleton);
bool face_is_singular(const BoxLabel& box, int i, int direction, const Braid& skeleton);

BraidClassComplex enumerate_class(const Braid& seed, std::shared_ptr<const SkeletonGrid> grid);
BraidClassComplex enumerate_class(const Braid& seed, const Braid& skeleton);

bool check_proper(const BraidClassComplex& c);

CellSet closed_cells(const BraidClassComplex& c);
ExitSet exit_set(const BraidClassComplex& c);

// every box meeting the window, each in exactly one class
std::vector<BraidClassComplex> enumerate_all_classes(const Braid& skeleton,
                                                     std::optional<std::pair<Rational, Rational>> window = {});

// classes made of boxes with the given crossing signature
std::vector<BraidClassComplex> classes_with_signature(std::shared_ptr<const SkeletonGrid> grid,
                                                      const std::vector<int>& signature);

// extend u1, u2 and the skeleton until the period exceeds |u1 cup v|, then compare components
bool are_topologically_equal(const Braid& u1, const Braid& u2, const Braid& skeleton);

// free strand with the relative braid extended once; the seam is nudged inside its class first
std::pair<Braid, Braid> extend_relative(const Braid& free, const Braid& skeleton);

} // namespace braidforce
