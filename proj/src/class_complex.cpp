#include "braidforce/class_complex.hpp"

#include <algorithm>
#include <limits>

namespace braidforce {

IntervalPartition::IntervalPartition(const Braid& skeleton) : values_(skeleton.d()) {
  for (int i = 0; i < skeleton.d(); ++i) {
    auto& v = values_[i];
    for (int b = 0; b < skeleton.n(); ++b) v.push_back(skeleton(b, i));
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
}

int IntervalPartition::label_of(int i, const Rational& x) const {
  const auto& v = values_[i];
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x)
    throw braid_error(errc::on_hyperplane, "u_" + std::to_string(i) + " = " + format_rational(x) +
                                               " is a skeleton value");
  return static_cast<int>(it - v.begin());
}

int IntervalPartition::value_index(int i, const Rational& x) const {
  const auto& v = values_[i];
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) return -1;
  return static_cast<int>(it - v.begin());
}

Rational IntervalPartition::midpoint(int i, int label) const {
  const auto& v = values_[i];
  if (v.empty()) return 0;
  if (label == 0) return v.front() - 1;
  if (label == m(i)) return v.back() + 1;
  return (v[label - 1] + v[label]) / 2;
}

SkeletonGrid::SkeletonGrid(const Braid& skeleton) : skeleton_(skeleton), partition_(skeleton) {
  if (!validate(skeleton).regular()) throw braid_error(errc::singular_pair, "skeleton is not regular");
  const int d = skeleton.d(), n = skeleton.n();
  index_.assign(n, std::vector<int>(d + 1));
  for (int b = 0; b < n; ++b)
    for (int i = 0; i <= d; ++i) index_[b][i] = partition_.value_index(i % d, skeleton(b, i));
  contacts_.assign(d, {});
  for (int i = 0; i < d; ++i)
    for (int b = 0; b < n; ++b) {
      const int prev = partition_.value_index((i - 1 + d) % d, skeleton.at(b, i - 1));
      const int next = partition_.value_index((i + 1) % d, skeleton.at(b, i + 1));
      contacts_[i].push_back({index_[b][i], prev, next});
    }
  stride_.assign(d, 1);
  CellKey total = 1;
  for (int i = 0; i < d; ++i) {
    stride_[i] = total;
    const CellKey r = static_cast<CellKey>(radix(i));
    if (total > std::numeric_limits<CellKey>::max() / r)
      throw braid_error(errc::invalid_argument, "grid too large to index");
    total *= r;
  }
}

CellKey SkeletonGrid::key(const Cell& g) const {
  CellKey k = 0;
  for (int i = 0; i < d(); ++i) k += stride_[i] * static_cast<CellKey>(g[i]);
  return k;
}

Cell SkeletonGrid::cell(CellKey k) const {
  Cell g(d());
  for (int i = 0; i < d(); ++i) {
    g[i] = static_cast<int>(k % radix(i));
    k /= radix(i);
  }
  return g;
}

bool SkeletonGrid::face_is_singular(const Cell& g, int i) const {
  const int dd = d();
  const int j = (g[i] - 1) / 2;
  const int gp = g[(i - 1 + dd) % dd];
  const int gn = g[(i + 1) % dd];
  for (const auto& c : contacts_[i]) {
    if (c[0] != j) continue;
    const int sp = sign(gp - (2 * c[1] + 1));
    const int sn = sign(gn - (2 * c[2] + 1));
    if (sp * sn >= 0) return true;
  }
  return false;
}

int SkeletonGrid::crossings(const Cell& g, int b) const {
  const int dd = d();
  int count = 0;
  int prev = sign(g[0] - (2 * index_[b][0] + 1));
  for (int i = 1; i <= dd; ++i) {
    const int s = sign(g[i % dd] - (2 * index_[b][i] + 1));
    if (s * prev < 0) ++count;
    prev = s;
  }
  return count;
}

int SkeletonGrid::crossing_total(const Cell& g) const {
  int t = 0;
  for (int b = 0; b < strands(); ++b) t += crossings(g, b);
  return t;
}

BoxLabel SkeletonGrid::box_of(const Braid& free) const {
  if (free.n() != 1) throw braid_error(errc::invalid_argument, "exactly one free strand is supported");
  if (free.d() != d()) throw braid_error(errc::invalid_argument, "free strand and skeleton periods differ");
  free.check_closure();
  BoxLabel k(d());
  for (int i = 0; i < d(); ++i) k[i] = partition_.label_of(i, free(0, i));
  return k;
}

Braid SkeletonGrid::midpoint_strand(const BoxLabel& k) const {
  VecQ u(d());
  for (int i = 0; i < d(); ++i) u(i) = partition_.midpoint(i, k[i]);
  return closed_strand(u);
}

bool BraidClassComplex::contains(const BoxLabel& k) const {
  return std::binary_search(boxes.begin(), boxes.end(), k);
}

std::unordered_set<CellKey> BraidClassComplex::box_keys() const {
  std::unordered_set<CellKey> s;
  s.reserve(boxes.size() * 2);
  Cell g(d());
  for (const auto& k : boxes) {
    for (int i = 0; i < d(); ++i) g[i] = 2 * k[i];
    s.insert(grid->key(g));
  }
  return s;
}

std::size_t CellSet::size() const {
  std::size_t s = 0;
  for (const auto& v : by_dim) s += v.size();
  return s;
}

bool CellSet::contains(const Cell& c) const {
  int dim = 0;
  for (int x : c) dim += (x % 2 == 0);
  if (dim >= static_cast<int>(by_dim.size())) return false;
  return std::binary_search(by_dim[dim].begin(), by_dim[dim].end(), c);
}

BoxLabel box_of(const Braid& free, const Braid& skeleton) {
  if (free.n() != 1) throw braid_error(errc::invalid_argument, "exactly one free strand is supported");
  IntervalPartition p(skeleton);
  BoxLabel k(skeleton.d());
  for (int i = 0; i < skeleton.d(); ++i) k[i] = p.label_of(i, free(0, i));
  return k;
}

bool face_is_singular(const BoxLabel& box, int i, int direction, const Braid& skeleton) {
  SkeletonGrid grid(skeleton);
  const int k = box[i];
  if (direction > 0 ? k >= grid.partition().m(i) : k <= 0)
    throw braid_error(errc::invalid_argument, "face does not exist");
  Cell g(box.size());
  for (std::size_t j = 0; j < box.size(); ++j) g[j] = 2 * box[j];
  g[i] += direction > 0 ? 1 : -1;
  return grid.face_is_singular(g, i);
}

namespace {

BraidClassComplex grow(const BoxLabel& seed, std::shared_ptr<const SkeletonGrid> grid,
                       std::unordered_set<CellKey>& visited) {
  const int d = grid->d();
  BraidClassComplex c;
  c.grid = grid;
  c.bounded = true;
  Cell g(d);
  for (int i = 0; i < d; ++i) g[i] = 2 * seed[i];
  std::vector<CellKey> queue{grid->key(g)};
  visited.insert(queue.front());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    g = grid->cell(queue[head]);
    for (int i = 0; i < d; ++i) {
      const int k = g[i] / 2;
      if (grid->partition().unbounded(i, k)) c.bounded = false;
      for (int dir : {-1, 1}) {
        if (dir < 0 ? k == 0 : k == grid->partition().m(i)) continue;
        g[i] += dir;
        const bool wall = grid->face_is_singular(g, i);
        g[i] += dir;
        if (!wall) {
          const CellKey nk = grid->key(g);
          if (visited.insert(nk).second) queue.push_back(nk);
        }
        g[i] -= 2 * dir;
      }
    }
  }
  c.boxes.reserve(queue.size());
  for (CellKey key : queue) {
    Cell cell = grid->cell(key);
    for (int& x : cell) x /= 2;
    c.boxes.push_back(std::move(cell));
  }
  std::sort(c.boxes.begin(), c.boxes.end());
  Cell first(d);
  for (int i = 0; i < d; ++i) first[i] = 2 * c.boxes.front()[i];
  for (int b = 0; b < grid->strands(); ++b) c.signature.push_back(grid->crossings(first, b));
  c.crossing_total = grid->crossing_total(first);
  c.proper = check_proper(c);
  return c;
}

} // namespace

BraidClassComplex enumerate_class(const Braid& seed, std::shared_ptr<const SkeletonGrid> grid) {
  std::unordered_set<CellKey> visited;
  const BoxLabel k = grid->box_of(seed);
  return grow(k, std::move(grid), visited);
}

BraidClassComplex enumerate_class(const Braid& seed, const Braid& skeleton) {
  return enumerate_class(seed, std::make_shared<const SkeletonGrid>(skeleton));
}

bool check_proper(const BraidClassComplex& c) {
  const SkeletonGrid& grid = *c.grid;
  const Braid& v = grid.skeleton();
  const int d = grid.d();
  for (int b = 0; b < v.n(); ++b) {
    if (v.tau()(b) != b) continue;
    // the vertex u = v^b touches 2^d boxes
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << d); ++mask) {
      BoxLabel k(d);
      for (int i = 0; i < d; ++i) k[i] = grid.anchor_index(b, i) + ((mask >> i) & 1);
      if (c.contains(k)) return false;
    }
  }
  return true;
}

namespace {

template <typename Visit>
void for_each_face(const Cell& g, Visit&& visit) {
  const int d = static_cast<int>(g.size());
  std::vector<int> off(d, 0);
  Cell f = g;
  for (;;) {
    visit(f);
    int i = 0;
    for (; i < d; ++i) {
      if (g[i] % 2) continue;
      if (off[i] < 1) {
        off[i] = off[i] == 0 ? -1 : 1;
        f[i] = g[i] + off[i];
        break;
      }
      off[i] = 0;
      f[i] = g[i];
    }
    if (i == d) return;
  }
}

CellSet to_cell_set(const SkeletonGrid& grid, const std::unordered_set<CellKey>& keys) {
  CellSet s;
  s.by_dim.assign(grid.d() + 1, {});
  for (CellKey k : keys) {
    Cell c = grid.cell(k);
    int dim = 0;
    for (int x : c) dim += (x % 2 == 0);
    s.by_dim[dim].push_back(std::move(c));
  }
  for (auto& v : s.by_dim) std::sort(v.begin(), v.end());
  return s;
}

} // namespace

CellSet closed_cells(const BraidClassComplex& c) {
  std::unordered_set<CellKey> keys;
  Cell g(c.d());
  for (const auto& k : c.boxes) {
    for (int i = 0; i < c.d(); ++i) g[i] = 2 * k[i];
    for_each_face(g, [&](const Cell& f) { keys.insert(c.grid->key(f)); });
  }
  return to_cell_set(*c.grid, keys);
}

ExitSet exit_set(const BraidClassComplex& c) {
  if (!c.bounded) throw braid_error(errc::not_bounded, "class reaches an unbounded interval");
  if (!c.proper) throw braid_error(errc::not_proper, "class closure meets a skeleton strand");
  const SkeletonGrid& grid = *c.grid;
  const int d = c.d();
  const auto inside = c.box_keys();
  ExitSet out;
  std::unordered_set<CellKey> keys;
  Cell g(d);
  for (const auto& k : c.boxes) {
    for (int i = 0; i < d; ++i) g[i] = 2 * k[i];
    const int w_in = grid.crossing_total(g);
    for (int i = 0; i < d; ++i)
      for (int dir : {-1, 1}) {
        g[i] += 2 * dir;
        const bool interior = inside.count(grid.key(g)) > 0;
        const int w_out = interior ? 0 : grid.crossing_total(g);
        g[i] -= dir;
        if (!interior) {
          const bool exit = w_in >= w_out;
          if (w_in == w_out) ++out.ties;
          out.faces.emplace_back(g, exit);
          if (exit) for_each_face(g, [&](const Cell& f) { keys.insert(grid.key(f)); });
        }
        g[i] -= dir;
      }
  }
  std::sort(out.faces.begin(), out.faces.end());
  out.cells = to_cell_set(grid, keys);
  return out;
}

std::vector<BraidClassComplex> enumerate_all_classes(const Braid& skeleton,
                                                     std::optional<std::pair<Rational, Rational>> window) {
  auto grid = std::make_shared<const SkeletonGrid>(skeleton);
  const int d = grid->d();
  const auto& part = grid->partition();
  std::vector<int> lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    lo[i] = 0;
    hi[i] = part.m(i);
    if (window) {
      const auto& v = part.values(i);
      // interval k = (v[k-1], v[k]) meets (a, b) iff v[k-1] < b and v[k] > a
      while (lo[i] < part.m(i) && v[lo[i]] <= window->first) ++lo[i];
      while (hi[i] > 0 && v[hi[i] - 1] >= window->second) --hi[i];
    }
  }
  std::vector<BraidClassComplex> out;
  std::unordered_set<CellKey> visited;
  BoxLabel k = lo;
  for (;;) {
    Cell g(d);
    for (int i = 0; i < d; ++i) g[i] = 2 * k[i];
    if (!visited.count(grid->key(g))) out.push_back(grow(k, grid, visited));
    int i = 0;
    for (; i < d; ++i) {
      if (k[i] < hi[i]) {
        ++k[i];
        break;
      }
      k[i] = lo[i];
    }
    if (i == d) break;
  }
  return out;
}

std::vector<BraidClassComplex> classes_with_signature(std::shared_ptr<const SkeletonGrid> grid,
                                                      const std::vector<int>& signature) {
  const int d = grid->d();
  const auto& part = grid->partition();
  std::vector<BraidClassComplex> out;
  std::unordered_set<CellKey> visited;
  BoxLabel k(d, 0);
  Cell g(d, 0);
  for (;;) {
    bool match = true;
    for (int b = 0; b < grid->strands() && match; ++b) match = grid->crossings(g, b) == signature[b];
    if (match && !visited.count(grid->key(g))) out.push_back(grow(k, grid, visited));
    int i = 0;
    for (; i < d; ++i) {
      if (k[i] < part.m(i)) {
        ++k[i];
        g[i] += 2;
        break;
      }
      k[i] = 0;
      g[i] = 0;
    }
    if (i == d) break;
  }
  return out;
}

std::pair<Braid, Braid> extend_relative(const Braid& free, const Braid& skeleton) {
  const Braid v = nudge_seam(skeleton, &free);
  const Braid u = nudge_seam(free, &v);
  return {extend(u), extend(v)};
}

bool are_topologically_equal(const Braid& u1, const Braid& u2, const Braid& skeleton) {
  auto grid = std::make_shared<const SkeletonGrid>(skeleton);
  const BoxLabel k1 = grid->box_of(u1), k2 = grid->box_of(u2);
  if (k1 == k2) return true;
  Cell g1(k1.size()), g2(k2.size());
  for (std::size_t i = 0; i < k1.size(); ++i) {
    g1[i] = 2 * k1[i];
    g2[i] = 2 * k2[i];
  }
  for (int b = 0; b < skeleton.n(); ++b)
    if (grid->crossings(g1, b) != grid->crossings(g2, b)) return false;

  const int w = word_metric(stack(u1, skeleton));
  Braid a = u1, c = u2, v = skeleton;
  for (;;) {
    const BraidClassComplex cls = enumerate_class(a, grid);
    if (cls.contains(grid->box_of(c))) return true;
    if (v.d() > w) return false;
    const Braid both = stack(a, c);
    const Braid vn = nudge_seam(v, &both);
    a = extend(nudge_seam(a, &vn));
    c = extend(nudge_seam(c, &vn));
    v = extend(vn);
    grid = std::make_shared<const SkeletonGrid>(v);
  }
}

} // namespace braidforce
