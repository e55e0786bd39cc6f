#include "braidforce/homology.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace braidforce {

int ChainComplex::add_cell(int dim, Column boundary) {
  for (const auto& [c, k] : boundary)
    if (c < 0 || c >= size() || dim_[c] != dim - 1)
      throw braid_error(errc::invalid_argument, "boundary cell of the wrong dimension");
  dim_.push_back(dim);
  bd_.push_back(std::move(boundary));
  return size() - 1;
}

int ChainComplex::top_dim() const {
  int t = -1;
  for (int x : dim_) t = std::max(t, x);
  return t;
}

void ChainComplex::check_square_zero() const {
  for (int c = 0; c < size(); ++c) {
    std::unordered_map<int, long long> acc;
    for (const auto& [f, k] : bd_[c])
      for (const auto& [g, l] : bd_[f]) acc[g] += k * l;
    for (const auto& [g, v] : acc)
      if (v != 0) throw braid_error(errc::not_subcomplex, "boundary of a boundary is nonzero");
  }
}

ChainComplex quotient_complex(const SkeletonGrid& grid, const CellSet& n, const CellSet& exit) {
  for (const auto& cells : exit.by_dim)
    for (const auto& c : cells)
      if (!n.contains(c)) throw braid_error(errc::not_subcomplex, "exit cell outside N");
  ChainComplex cc;
  std::unordered_map<CellKey, int> id;
  const int d = grid.d();
  for (int k = 0; k < static_cast<int>(n.by_dim.size()); ++k)
    for (const auto& g : n.by_dim[k]) {
      if (exit.contains(g)) continue;
      ChainComplex::Column col;
      int before = 0;
      Cell f = g;
      for (int j = 0; j < d; ++j) {
        if (g[j] % 2) continue;
        const long long s = before % 2 ? -1 : 1;
        ++before;
        for (int dir : {1, -1}) {
          f[j] = g[j] + dir;
          auto it = id.find(grid.key(f));
          if (it != id.end()) {
            col.emplace_back(it->second, dir * s);
          } else if (!exit.contains(f)) {
            throw braid_error(errc::not_subcomplex, "N is not closed");
          }
        }
        f[j] = g[j];
      }
      id.emplace(grid.key(g), cc.add_cell(k, std::move(col)));
    }
  return cc;
}

namespace {

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw braid_error(errc::invalid_argument, "coefficient overflow");
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw braid_error(errc::invalid_argument, "coefficient overflow");
  return r;
}

// eliminates pairs joined by a unit coefficient, preserving homology over Z
class Reducer {
public:
  explicit Reducer(const ChainComplex& c)
      : dim_(c.size()), bd_(c.size()), cob_(c.size()), alive_(c.size(), 1) {
    for (int x = 0; x < c.size(); ++x) {
      dim_[x] = c.dim(x);
      bd_[x] = c.boundary(x);
      for (const auto& [f, k] : bd_[x]) cob_[f].emplace_back(x, k);
    }
  }

  void run() {
    std::deque<int> work;
    for (int x = 0; x < static_cast<int>(dim_.size()); ++x) work.push_back(x);
    for (;;) {
      while (!work.empty()) {
        const int x = work.front();
        work.pop_front();
        if (!alive_[x]) continue;
        if (cob_[x].size() == 1 && unit(cob_[x][0].second)) {
          eliminate(x, cob_[x][0].first, work);
        } else if (bd_[x].size() == 1 && unit(bd_[x][0].second)) {
          eliminate(bd_[x][0].first, x, work);
        }
      }
      long long best = -1;
      int ba = -1, bb = -1;
      for (int b = 0; b < static_cast<int>(dim_.size()); ++b) {
        if (!alive_[b]) continue;
        for (const auto& [a, k] : bd_[b]) {
          if (!unit(k)) continue;
          const long long cost = static_cast<long long>(cob_[a].size() - 1) * (bd_[b].size() - 1);
          if (best < 0 || cost < best) {
            best = cost;
            ba = a;
            bb = b;
          }
        }
      }
      if (ba < 0) return;
      eliminate(ba, bb, work);
    }
  }

  ConleyIndex finish() const;

private:
  static bool unit(long long k) { return k == 1 || k == -1; }

  static void drop(std::vector<std::pair<int, long long>>& v, int key) {
    for (std::size_t t = 0; t < v.size(); ++t)
      if (v[t].first == key) {
        v[t] = v.back();
        v.pop_back();
        return;
      }
  }

  void add(int c, int e, long long delta) {
    for (auto& [f, k] : bd_[c])
      if (f == e) {
        k = checked_add(k, delta);
        const long long nk = k;
        if (nk == 0) {
          drop(bd_[c], e);
          drop(cob_[e], c);
        } else {
          for (auto& [g, l] : cob_[e])
            if (g == c) l = nk;
        }
        return;
      }
    bd_[c].emplace_back(e, delta);
    cob_[e].emplace_back(c, delta);
  }

  // (a, b) with <db, a> a unit
  void eliminate(int a, int b, std::deque<int>& work) {
    long long beta = 0;
    for (const auto& [f, k] : bd_[b])
      if (f == a) beta = k;
    const auto cofaces = cob_[a];
    const auto bb = bd_[b];
    for (const auto& [c, ca] : cofaces) {
      if (c == b) continue;
      const long long factor = checked_mul(ca, beta);
      for (const auto& [e, eb] : bb) add(c, e, -checked_mul(factor, eb));
      work.push_back(c);
    }
    for (const auto& [e, k] : bd_[b]) {
      drop(cob_[e], b);
      work.push_back(e);
    }
    for (const auto& [x, k] : cob_[b]) {
      drop(bd_[x], b);
      work.push_back(x);
    }
    for (const auto& [e, k] : bd_[a]) {
      drop(cob_[e], a);
      work.push_back(e);
    }
    bd_[a].clear();
    cob_[a].clear();
    bd_[b].clear();
    cob_[b].clear();
    alive_[a] = alive_[b] = 0;
  }

  std::vector<int> dim_;
  std::vector<std::vector<std::pair<int, long long>>> bd_, cob_;
  std::vector<char> alive_;
};

using DenseZ = std::vector<std::vector<Integer>>;

// rank and invariant factors of a dense integer matrix
std::pair<int, std::vector<Integer>> smith(DenseZ m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  std::vector<Integer> diag;
  int t = 0;
  for (; t < std::min(rows, cols); ++t) {
    // smallest nonzero pivot in the remaining block
    int pr = -1, pc = -1;
    for (int r = t; r < rows; ++r)
      for (int c = t; c < cols; ++c)
        if (m[r][c] != 0 && (pr < 0 || abs(m[r][c]) < abs(m[pr][pc]))) {
          pr = r;
          pc = c;
        }
    if (pr < 0) break;
    std::swap(m[t], m[pr]);
    for (int r = 0; r < rows; ++r) std::swap(m[r][t], m[r][pc]);
    for (;;) {
      bool clean = true;
      for (int r = t + 1; r < rows; ++r) {
        if (m[r][t] == 0) continue;
        const Integer q = m[r][t] / m[t][t];
        for (int c = t; c < cols; ++c) m[r][c] -= q * m[t][c];
        if (m[r][t] != 0) {
          clean = false;
          std::swap(m[t], m[r]);
        }
      }
      for (int c = t + 1; c < cols; ++c) {
        if (m[t][c] == 0) continue;
        const Integer q = m[t][c] / m[t][t];
        for (int r = t; r < rows; ++r) m[r][c] -= q * m[r][t];
        if (m[t][c] != 0) {
          clean = false;
          for (int r = 0; r < rows; ++r) std::swap(m[r][t], m[r][c]);
        }
      }
      if (!clean) continue;
      // divisibility of the rest of the block
      int br = -1, bc = -1;
      for (int r = t + 1; r < rows && br < 0; ++r)
        for (int c = t + 1; c < cols; ++c)
          if (m[r][c] % m[t][t] != 0) {
            br = r;
            bc = c;
            break;
          }
      if (br < 0) break;
      for (int c = t; c < cols; ++c) m[t][c] += m[br][c];
      (void)bc;
    }
    diag.push_back(abs(m[t][t]));
  }
  return {t, diag};
}

ConleyIndex Reducer::finish() const {
  int top = -1;
  std::vector<std::vector<int>> cells;
  for (int x = 0; x < static_cast<int>(dim_.size()); ++x) {
    if (!alive_[x]) continue;
    if (dim_[x] >= static_cast<int>(cells.size())) cells.resize(dim_[x] + 1);
    cells[dim_[x]].push_back(x);
    top = std::max(top, dim_[x]);
  }
  if (top < 0) return make_index({});
  std::vector<int> rank(top + 2, 0);
  std::vector<std::vector<std::string>> torsion(top + 1);
  for (int k = 1; k <= top; ++k) {
    if (cells[k].empty() || cells[k - 1].empty()) continue;
    std::unordered_map<int, int> row;
    for (int r = 0; r < static_cast<int>(cells[k - 1].size()); ++r) row[cells[k - 1][r]] = r;
    DenseZ m(cells[k - 1].size(), std::vector<Integer>(cells[k].size(), 0));
    for (int c = 0; c < static_cast<int>(cells[k].size()); ++c)
      for (const auto& [f, v] : bd_[cells[k][c]]) m[row.at(f)][c] = v;
    auto [r, diag] = smith(std::move(m));
    rank[k] = r;
    for (const auto& q : diag)
      if (q > 1) torsion[k - 1].push_back(q.str());
  }
  std::vector<long long> betti(top + 1);
  for (int k = 0; k <= top; ++k)
    betti[k] = static_cast<long long>(cells[k].size()) - rank[k] - rank[k + 1];
  return make_index(std::move(betti), std::move(torsion));
}

} // namespace

bool ConleyIndex::empty() const {
  for (long long b : betti)
    if (b) return false;
  return !has_torsion();
}

bool ConleyIndex::has_torsion() const {
  for (const auto& t : torsion)
    if (!t.empty()) return true;
  return false;
}

ConleyIndex make_index(std::vector<long long> betti, std::vector<std::vector<std::string>> torsion) {
  std::size_t len = betti.size();
  while (len > 0 && betti[len - 1] == 0 && (len > torsion.size() || torsion[len - 1].empty())) --len;
  betti.resize(len);
  torsion.resize(len);
  ConleyIndex idx;
  idx.betti = betti;
  idx.cp = betti;
  idx.torsion = std::move(torsion);
  long long s = 1;
  for (long long b : betti) {
    idx.euler += s * b;
    s = -s;
  }
  return idx;
}

ConleyIndex homology(const ChainComplex& c) {
  Reducer r(c);
  r.run();
  return r.finish();
}

ConleyIndex relative_homology(const SkeletonGrid& grid, const CellSet& n, const CellSet& exit) {
  return homology(quotient_complex(grid, n, exit));
}

ConleyIndex conley_index(const BraidClassComplex& c) {
  const ExitSet ex = exit_set(c);
  return relative_homology(*c.grid, closed_cells(c), ex.cells);
}

std::string format_cp(const std::vector<long long>& cp, bool explicit_exponents) {
  std::string s;
  for (std::size_t k = 0; k < cp.size(); ++k) {
    if (!cp[k]) continue;
    if (!s.empty()) s += " + ";
    std::string mono;
    if (k == 0)
      mono = "1";
    else if (k == 1 && !explicit_exponents)
      mono = "t";
    else
      mono = "t^" + std::to_string(k);
    if (cp[k] != 1) mono = std::to_string(cp[k]) + (k == 0 ? "" : mono);
    s += mono;
  }
  return s.empty() ? "0" : s;
}

long long morse_bounds(const ConleyIndex& idx, MorseRegime regime) {
  switch (regime) {
  case MorseRegime::exact_nondegenerate: {
    long long s = 0;
    for (long long b : idx.cp) s += b;
    return s;
  }
  case MorseRegime::exact: {
    long long s = 0;
    for (long long b : idx.cp) s += b != 0;
    return s;
  }
  case MorseRegime::non_exact:
    return idx.euler != 0 ? 1 : 0;
  case MorseRegime::non_exact_nondegenerate: {
    // greedy division by (1+t) keeping nonnegative quotient coefficients
    std::vector<long long> r = idx.cp;
    for (std::size_t k = 0; k + 1 < r.size(); ++k) {
      const long long q = std::min(r[k], r[k + 1]);
      r[k] -= q;
      r[k + 1] -= q;
    }
    long long s = 0;
    for (long long x : r) s += x;
    return s;
  }
  }
  return 0;
}

ConleyIndex wedge_index(const std::vector<BraidClassComplex>& classes) {
  std::vector<long long> betti;
  std::vector<std::vector<std::string>> torsion;
  for (std::size_t a = 0; a < classes.size(); ++a) {
    if (classes[a].signature != classes.front().signature)
      throw braid_error(errc::mixed_topological_type, "classes carry different crossing data");
    for (std::size_t b = 0; b < a; ++b)
      for (const auto& k : classes[a].boxes)
        if (classes[b].contains(k)) throw braid_error(errc::mixed_topological_type, "classes overlap");
    const ConleyIndex h = conley_index(classes[a]);
    if (h.betti.size() > betti.size()) {
      betti.resize(h.betti.size(), 0);
      torsion.resize(h.betti.size());
    }
    for (std::size_t k = 0; k < h.betti.size(); ++k) {
      betti[k] += h.betti[k];
      torsion[k].insert(torsion[k].end(), h.torsion[k].begin(), h.torsion[k].end());
    }
  }
  for (auto& t : torsion) std::sort(t.begin(), t.end());
  return make_index(std::move(betti), std::move(torsion));
}

} // namespace braidforce
