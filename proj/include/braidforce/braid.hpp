#pragma once

#include "error.hpp"
#include "permutation.hpp"
#include "rational.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace braidforce {

// n strands x (d+1) anchors closed up by tau: u^a_d = u^{tau a}_0
template <typename Scalar>
class BasicBraid {
public:
  using scalar_type = Scalar;

  BasicBraid() = default;
  BasicBraid(Mat<Scalar> anchors, Permutation tau)
      : anchors_(std::move(anchors)), tau_(std::move(tau)) {
    if (anchors_.cols() < 2)
      throw braid_error(errc::invalid_argument, "period must be positive");
    if (tau_.size() != anchors_.rows())
      throw braid_error(errc::invalid_argument, "permutation size does not match strand count");
  }
  explicit BasicBraid(Mat<Scalar> anchors)
      : BasicBraid(anchors, Permutation::identity(static_cast<int>(anchors.rows()))) {}

  int n() const { return static_cast<int>(anchors_.rows()); }
  int d() const { return static_cast<int>(anchors_.cols()) - 1; }
  const Permutation& tau() const { return tau_; }
  const Mat<Scalar>& anchors() const { return anchors_; }

  const Scalar& operator()(int a, int i) const { return anchors_(a, i); }

  // wrap-around indexing, u^a_{d+j} = u^{tau a}_j
  const Scalar& at(int a, int i) const {
    const int dd = d();
    while (i < 0) {
      i += dd;
      a = tau_.inverse(a);
    }
    while (i > dd) {
      i -= dd;
      a = tau_(a);
    }
    return anchors_(a, i);
  }

  bool closed() const {
    for (int a = 0; a < n(); ++a)
      if (anchors_(a, d()) != anchors_(tau_(a), 0)) return false;
    return true;
  }

  void check_closure() const {
    for (int a = 0; a < n(); ++a)
      if (anchors_(a, d()) != anchors_(tau_(a), 0))
        throw braid_error(errc::closure_violation,
                          "strand " + std::to_string(a) + " does not close onto strand " +
                              std::to_string(tau_(a)));
  }

  Vec<Scalar> strand(int a) const { return anchors_.row(a).transpose(); }

  template <typename Other>
  BasicBraid<Other> cast() const {
    Mat<Other> m(anchors_.rows(), anchors_.cols());
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        if constexpr (std::is_same_v<Other, double>)
          m(r, c) = to_double(anchors_(r, c));
        else
          m(r, c) = Other(anchors_(r, c));
      }
    return BasicBraid<Other>(std::move(m), tau_);
  }

  bool operator==(const BasicBraid& o) const {
    if (!(tau_ == o.tau_) || anchors_.rows() != o.anchors_.rows() || anchors_.cols() != o.anchors_.cols())
      return false;
    for (Eigen::Index r = 0; r < anchors_.rows(); ++r)
      for (Eigen::Index c = 0; c < anchors_.cols(); ++c)
        if (anchors_(r, c) != o.anchors_(r, c)) return false;
    return true;
  }

private:
  Mat<Scalar> anchors_;
  Permutation tau_;
};

using Braid = BasicBraid<Rational>;
using BraidD = BasicBraid<double>;

struct SingularWitness {
  int i;
  int a;
  int b;
  bool operator==(const SingularWitness&) const = default;
};

struct BraidRegularity {
  enum class Kind { regular, singular, collapsed };
  Kind kind = Kind::regular;
  int codimension = 0;
  std::vector<SingularWitness> witnesses;
  std::vector<std::pair<int, int>> collapsed;

  bool regular() const { return kind == Kind::regular; }
};

const char* kind_name(BraidRegularity::Kind k);

// strands a and b agree at every index of Z, following tau
template <typename Scalar>
bool strands_coincide(const BasicBraid<Scalar>& b, int a0, int b0) {
  std::vector<std::pair<int, int>> seen;
  int a = a0, c = b0;
  for (;;) {
    if (std::find(seen.begin(), seen.end(), std::make_pair(a, c)) != seen.end()) return true;
    seen.emplace_back(a, c);
    for (int i = 0; i < b.d(); ++i)
      if (b(a, i) != b(c, i)) return false;
    a = b.tau()(a);
    c = b.tau()(c);
  }
}

template <typename Scalar>
BraidRegularity validate(const BasicBraid<Scalar>& b) {
  b.check_closure();
  BraidRegularity r;
  for (int i = 0; i < b.d(); ++i)
    for (int a = 0; a < b.n(); ++a)
      for (int c = a + 1; c < b.n(); ++c) {
        if (b(a, i) != b(c, i)) continue;
        const Scalar lo = b.at(a, i - 1) - b.at(c, i - 1);
        const Scalar hi = b.at(a, i + 1) - b.at(c, i + 1);
        if (sign(lo) * sign(hi) >= 0) r.witnesses.push_back({i, a, c});
      }
  for (int a = 0; a < b.n(); ++a)
    for (int c = a + 1; c < b.n(); ++c)
      if (strands_coincide(b, a, c)) r.collapsed.emplace_back(a, c);
  r.codimension = static_cast<int>(r.witnesses.size());
  if (!r.collapsed.empty())
    r.kind = BraidRegularity::Kind::collapsed;
  else if (!r.witnesses.empty())
    r.kind = BraidRegularity::Kind::singular;
  return r;
}

template <typename Scalar>
int crossing_count(const BasicBraid<Scalar>& b, int a, int c) {
  if (a == c || strands_coincide(b, a, c))
    throw braid_error(errc::singular_pair, "strands coincide");
  int count = 0;
  for (int i = 0; i < b.d(); ++i) {
    const int s0 = sign(Scalar(b(a, i) - b(c, i)));
    const int s1 = sign(Scalar(b(a, i + 1) - b(c, i + 1)));
    if (s0 == 0) {
      const int lo = sign(Scalar(b.at(a, i - 1) - b.at(c, i - 1)));
      if (lo * s1 >= 0)
        throw braid_error(errc::singular_pair, "tangency at i=" + std::to_string(i));
      ++count;
    } else if (s0 * s1 < 0) {
      ++count;
    }
  }
  return count;
}

template <typename Scalar>
int word_metric(const BasicBraid<Scalar>& b) {
  int w = 0;
  for (int a = 0; a < b.n(); ++a)
    for (int c = a + 1; c < b.n(); ++c) w += crossing_count(b, a, c);
  return w;
}

template <typename Scalar>
BasicBraid<Scalar> dualize(const BasicBraid<Scalar>& b) {
  if (b.d() % 2) throw braid_error(errc::odd_period, "duality needs an even period");
  b.check_closure();
  Mat<Scalar> m = b.anchors();
  for (int i = 1; i <= b.d(); i += 2) m.col(i) = -m.col(i);
  return BasicBraid<Scalar>(std::move(m), b.tau());
}

template <typename Scalar>
bool generic_at_seam(const BasicBraid<Scalar>& b) {
  for (int a = 0; a < b.n(); ++a)
    for (int c = a + 1; c < b.n(); ++c)
      if (b(a, b.d()) == b(c, b.d())) return false;
  return true;
}

template <typename Scalar>
BasicBraid<Scalar> extend(const BasicBraid<Scalar>& b) {
  if (!validate(b).regular()) throw braid_error(errc::singular_pair, "extension needs a regular braid");
  if (!generic_at_seam(b))
    throw braid_error(errc::non_generic_at_seam, "two strands meet at i=d");
  Mat<Scalar> m(b.n(), b.d() + 2);
  m.leftCols(b.d() + 1) = b.anchors();
  m.col(b.d() + 1) = b.anchors().col(b.d());
  return BasicBraid<Scalar>(std::move(m), b.tau());
}

template <typename Scalar>
BasicBraid<Scalar> lift(const BasicBraid<Scalar>& b, int N) {
  if (N < 1) throw braid_error(errc::invalid_argument, "cover degree must be positive");
  b.check_closure();
  Mat<Scalar> m(b.n(), N * b.d() + 1);
  for (int a = 0; a < b.n(); ++a)
    for (int j = 0; j <= N * b.d(); ++j) m(a, j) = b.at(a, j);
  return BasicBraid<Scalar>(std::move(m), b.tau().pow(N));
}

enum class AugmentMode { constant, updown };

template <typename Scalar>
BasicBraid<Scalar> augment(const BasicBraid<Scalar>& b, AugmentMode mode) {
  b.check_closure();
  if (mode == AugmentMode::updown && b.d() % 2)
    throw braid_error(errc::odd_period, "up-down augmentation needs an even period");
  Scalar lo = b.anchors().minCoeff() - 1;
  Scalar hi = b.anchors().maxCoeff() + 1;
  Mat<Scalar> m(b.n() + 2, b.d() + 1);
  m.topRows(b.n()) = b.anchors();
  for (int i = 0; i <= b.d(); ++i) {
    Scalar w = mode == AugmentMode::constant ? Scalar(0) : Scalar(i % 2 ? 1 : -1);
    m(b.n(), i) = lo + w;
    m(b.n() + 1, i) = hi + w;
  }
  std::vector<int> t = b.tau().images();
  t.push_back(b.n());
  t.push_back(b.n() + 1);
  BasicBraid<Scalar> out(std::move(m), Permutation(std::move(t)));
  if (mode == AugmentMode::updown && !validate(out).regular())
    throw braid_error(errc::not_updown, "up-down augmentation of a non-alternating skeleton is singular");
  return out;
}

template <typename Scalar>
bool is_updown(const BasicBraid<Scalar>& b) {
  if (b.d() % 2) throw braid_error(errc::odd_period, "up-down braids have even period");
  if (!b.closed()) return false;
  for (int a = 0; a < b.n(); ++a)
    for (int i = 0; i < b.d(); ++i) {
      const int s = sign(Scalar(b(a, i + 1) - b(a, i)));
      if (s != (i % 2 ? -1 : 1)) return false;
    }
  return true;
}

// rows of top stacked above rows of bottom, tau acting blockwise
template <typename Scalar>
BasicBraid<Scalar> stack(const BasicBraid<Scalar>& top, const BasicBraid<Scalar>& bottom) {
  if (top.d() != bottom.d()) throw braid_error(errc::invalid_argument, "periods differ");
  Mat<Scalar> m(top.n() + bottom.n(), top.d() + 1);
  m.topRows(top.n()) = top.anchors();
  m.bottomRows(bottom.n()) = bottom.anchors();
  std::vector<int> t = top.tau().images();
  for (int x : bottom.tau().images()) t.push_back(x + top.n());
  return BasicBraid<Scalar>(std::move(m), Permutation(std::move(t)));
}

// strands listed, tau restricted; the list must be a union of tau-cycles
template <typename Scalar>
BasicBraid<Scalar> select_strands(const BasicBraid<Scalar>& b, const std::vector<int>& rows) {
  std::vector<int> pos(b.n(), -1);
  for (int k = 0; k < static_cast<int>(rows.size()); ++k) pos[rows[k]] = k;
  Mat<Scalar> m(rows.size(), b.d() + 1);
  std::vector<int> t(rows.size());
  for (int k = 0; k < static_cast<int>(rows.size()); ++k) {
    m.row(k) = b.anchors().row(rows[k]);
    t[k] = pos[b.tau()(rows[k])];
    if (t[k] < 0) throw braid_error(errc::invalid_argument, "selection is not a union of components");
  }
  return BasicBraid<Scalar>(std::move(m), Permutation(std::move(t)));
}

// single tau=id strand from its first d anchors
template <typename Scalar>
BasicBraid<Scalar> closed_strand(const Vec<Scalar>& u) {
  Mat<Scalar> m(1, u.size() + 1);
  for (Eigen::Index i = 0; i < u.size(); ++i) m(0, i) = u(i);
  m(0, u.size()) = u(0);
  return BasicBraid<Scalar>(std::move(m));
}

// move the seam column of b off every coincidence (with itself and with fixed),
// by rational amounts small enough to stay in the same class
Braid nudge_seam(const Braid& b, const Braid* fixed = nullptr);

} // namespace braidforce
