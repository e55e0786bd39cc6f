#pragma once

#include "flows.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace braidforce {

// R_i(r,s,t) = a_i(r,s) + b_i(s,t) + c_i(s) vanishing on every skeleton anchor.
// Away from coincidences a = r, b = t. Where strands share a value at i the
// increasing pair (f, g) is switched on by a smoothstep bump in s.
template <typename Scalar>
class SkeletalRecurrence {
public:
  explicit SkeletalRecurrence(const Braid& v, const Rational& stiffness = 3) {
    validate_regular(v);
    d_ = v.d();
    nodes_.resize(d_);
    h_.resize(d_);
    k_ = conv(stiffness);
    for (int i = 0; i < d_; ++i) {
      std::map<Rational, std::vector<std::pair<Rational, Rational>>> at;
      for (int a = 0; a < v.n(); ++a) at[v(a, i)].emplace_back(v.at(a, i - 1), v.at(a, i + 1));
      Rational gap = 2;
      Rational prev;
      bool first = true;
      for (auto& [s, nb] : at) {
        if (!first) gap = std::min(gap, Rational(s - prev));
        prev = s;
        first = false;
      }
      h_[i] = conv(Rational(gap / 2));
      for (auto& [s, nb] : at) {
        Node node;
        node.s = conv(s);
        if (nb.size() == 1) {
          node.c = conv(Rational(-(nb[0].first + nb[0].second)));
        } else {
          std::sort(nb.begin(), nb.end());
          std::vector<Rational> xs, ys;
          for (auto& [x, y] : nb) {
            xs.push_back(x);
            ys.push_back(-y);
          }
          auto [f, g] = increasing_pair(xs, ys);
          node.blended = true;
          node.f = f.template cast<Scalar>();
          node.g = g.template cast<Scalar>();
          node.c = conv(Rational(g(ys[0]) - f(xs[0])));
        }
        nodes_[i].push_back(std::move(node));
      }
    }
  }

  int d() const { return d_; }

  Scalar operator()(int i, const Scalar& r, const Scalar& s, const Scalar& t) const {
    i = wrap(i);
    Scalar a = r, b = t;
    for (const auto& nd : nodes_[i]) {
      if (!nd.blended) continue;
      const Scalar phi = bump(s, nd.s, h_[i]);
      if (phi == 0) continue;
      a += phi * (nd.f(r) - r);
      b += phi * (-nd.g(-t) - t);
    }
    return a + b + c(i, s);
  }

  std::array<Scalar, 3> partials(int i, const Scalar& r, const Scalar& s, const Scalar& t) const {
    i = wrap(i);
    std::array<Scalar, 3> p{Scalar(1), c_slope(i, s), Scalar(1)};
    for (const auto& nd : nodes_[i]) {
      if (!nd.blended) continue;
      const Scalar phi = bump(s, nd.s, h_[i]);
      const Scalar dphi = bump_slope(s, nd.s, h_[i]);
      p[0] += phi * (nd.f.slope(r) - 1);
      p[2] += phi * (nd.g.slope(-t) - 1);
      p[1] += dphi * (nd.f(r) - r - nd.g(-t) - t);
    }
    return p;
  }

private:
  struct Node {
    Scalar s, c;
    bool blended = false;
    PiecewiseLinear<Scalar> f, g;
  };

  static Scalar conv(const Rational& q) {
    if constexpr (std::is_same_v<Scalar, double>)
      return to_double(q);
    else
      return Scalar(q);
  }

  static void validate_regular(const Braid& v) {
    if (!validate(v).regular()) throw braid_error(errc::singular_pair, "skeleton is not regular");
  }

  int wrap(int i) const { return ((i % d_) + d_) % d_; }

  static Scalar smooth(const Scalar& x) { return x * x * (3 - 2 * x); }

  // 1 at the node, 0 beyond distance h, flat at both ends
  static Scalar bump(const Scalar& s, const Scalar& at, const Scalar& h) {
    Scalar x = (s > at ? Scalar(s - at) : Scalar(at - s)) / h;
    if (x >= 1) return Scalar(0);
    return 1 - smooth(x);
  }
  static Scalar bump_slope(const Scalar& s, const Scalar& at, const Scalar& h) {
    Scalar x = (s > at ? Scalar(s - at) : Scalar(at - s)) / h;
    if (x >= 1 || x == 0) return Scalar(0);
    Scalar ds = -6 * x * (1 - x) / h;
    return s > at ? ds : Scalar(-ds);
  }

  // cubic Hermite through (s_k, c_k) with slope -k at every node, linear beyond
  Scalar c(int i, const Scalar& s) const {
    const auto& nd = nodes_[i];
    if (s <= nd.front().s) return nd.front().c - k_ * (s - nd.front().s);
    if (s >= nd.back().s) return nd.back().c - k_ * (s - nd.back().s);
    std::size_t j = segment(i, s);
    const Scalar w = nd[j + 1].s - nd[j].s;
    const Scalar x = (s - nd[j].s) / w;
    const Scalar x2 = x * x, x3 = x2 * x;
    return (2 * x3 - 3 * x2 + 1) * nd[j].c + (x3 - 2 * x2 + x) * w * (-k_) +
           (-2 * x3 + 3 * x2) * nd[j + 1].c + (x3 - x2) * w * (-k_);
  }
  Scalar c_slope(int i, const Scalar& s) const {
    const auto& nd = nodes_[i];
    if (s <= nd.front().s || s >= nd.back().s) return -k_;
    std::size_t j = segment(i, s);
    const Scalar w = nd[j + 1].s - nd[j].s;
    const Scalar x = (s - nd[j].s) / w;
    const Scalar x2 = x * x;
    return ((6 * x2 - 6 * x) * nd[j].c + (-6 * x2 + 6 * x) * nd[j + 1].c) / w +
           (3 * x2 - 4 * x + 1) * (-k_) + (3 * x2 - 2 * x) * (-k_);
  }
  std::size_t segment(int i, const Scalar& s) const {
    const auto& nd = nodes_[i];
    std::size_t j = 0;
    while (j + 2 < nd.size() && nd[j + 1].s <= s) ++j;
    return j;
  }

  int d_ = 0;
  Scalar k_;
  std::vector<std::vector<Node>> nodes_;
  std::vector<Scalar> h_;
};

} // namespace braidforce
