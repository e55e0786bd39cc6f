#include "braidforce/lagrangian.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace braidforce {

double LagrangianModel::L(double u, double v, double w) const {
  if (kind == LagrangianKind::first_order) return 0.5 * v * v + lambda * F(u);
  return 0.5 * w * w - v * v + F(u);
}

double LagrangianModel::rest(double u) const { return kind == LagrangianKind::first_order ? lambda * F(u) : F(u); }

double LagrangianModel::rest_slope(double u) const {
  return kind == LagrangianKind::first_order ? lambda * dF(u) : dF(u);
}

LagrangianModel first_order_model(double lambda, const std::string& potential) {
  if (!(lambda > 0)) throw braid_error(errc::invalid_argument, "lambda must be positive");
  LagrangianModel m;
  m.kind = LagrangianKind::first_order;
  m.lambda = lambda;
  m.potential = potential;
  if (potential == "quadratic") {
    m.F = [](double u) { return 0.5 * u * u; };
    m.dF = [](double u) { return u; };
    m.d2F = [](double) { return 1.0; };
  } else if (potential == "double-well") {
    m.F = [](double u) { return 0.25 * u * u * u * u - 0.5 * u * u; };
    m.dF = [](double u) { return u * u * u - u; };
    m.d2F = [](double u) { return 3 * u * u - 1; };
  } else if (potential == "four-well") {
    // wells at +-1, +-3, humps at 0, +-2, quartic growth past |u| = 3
    const double pi = M_PI;
    m.F = [pi](double u) {
      const double e = std::max(0.0, std::abs(u) - 3);
      return std::cos(pi * u) / (pi * pi) + e * e * e * e;
    };
    m.dF = [pi](double u) {
      const double e = std::max(0.0, std::abs(u) - 3);
      return -std::sin(pi * u) / pi + (u > 0 ? 4 : -4) * e * e * e;
    };
    m.d2F = [pi](double u) {
      const double e = std::max(0.0, std::abs(u) - 3);
      return -std::cos(pi * u) + 12 * e * e;
    };
  } else {
    throw braid_error(errc::invalid_argument, "unknown potential '" + potential + "'");
  }
  return m;
}

LagrangianModel swift_hohenberg(double alpha) {
  LagrangianModel m;
  m.kind = LagrangianKind::second_order;
  m.alpha = alpha;
  m.delta = 1;
  m.potential = "swift-hohenberg";
  m.F = [alpha](double u) { return 0.25 * u * u * u * u + 0.5 * (1 - alpha) * u * u; };
  m.dF = [alpha](double u) { return u * u * u + (1 - alpha) * u; };
  m.d2F = [alpha](double u) { return 3 * u * u + 1 - alpha; };
  return m;
}

bool convexity_holds(const LagrangianModel& m, double lo, double hi, int points) {
  if (m.kind == LagrangianKind::first_order) return true;
  const double step = (hi - lo) / (points - 1);
  for (int a = 0; a < points; ++a)
    for (int b = 0; b < points; ++b)
      for (int c = 0; c < points; ++c) {
        const double u = lo + a * step, v = lo + b * step, w = lo + c * step, h = 1e-3;
        const double d2 = (m.L(u, v, w + h) - 2 * m.L(u, v, w) + m.L(u, v, w - h)) / (h * h);
        if (d2 < m.delta - 1e-6) return false;
      }
  return true;
}

// ---- interval components ----

namespace {

double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// extremum of f on [a, b] by golden section; minimize when sgn = 1
double golden(const std::function<double(double)>& f, double a, double b, int sgn) {
  const double g = 0.5 * (std::sqrt(5.0) - 1);
  double c = b - g * (b - a), d = a + g * (b - a);
  for (int it = 0; it < 200 && b - a > 1e-14; ++it) {
    if (sgn * f(c) < sgn * f(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - g * (b - a);
    d = a + g * (b - a);
  }
  return 0.5 * (a + b);
}

} // namespace

std::vector<IntervalComponent> interval_components(const LagrangianModel& m, double E, double window, int samples) {
  auto g = [&](double u) { return m.rest(u) + E; };
  auto dg = [&](double u) { return m.rest_slope(u); };
  const double step = 2 * window / samples;
  const double scale = 1e-9 * std::max(1.0, std::abs(E));

  // sign changes and touching zeros of g
  struct Mark {
    double at;
    int kind;  // +1 g becomes >= 0, -1 g becomes < 0, 0 touching zero
  };
  std::vector<Mark> marks;
  std::vector<double> xs(samples + 1), gs(samples + 1);
  for (int k = 0; k <= samples; ++k) {
    xs[k] = -window + k * step;
    gs[k] = g(xs[k]);
  }
  for (int k = 0; k < samples; ++k) {
    if ((gs[k] >= 0) != (gs[k + 1] >= 0)) marks.push_back({bisect(g, xs[k], xs[k + 1]), gs[k + 1] >= 0 ? 1 : -1});
    if (k > 0) {
      const bool lmin = gs[k] <= gs[k - 1] && gs[k] <= gs[k + 1];
      const bool lmax = gs[k] >= gs[k - 1] && gs[k] >= gs[k + 1];
      if (lmin || lmax) {
        const double x = golden(g, xs[k - 1], xs[k + 1], lmin ? 1 : -1);
        if (std::abs(g(x)) < scale) marks.push_back({x, 0});
      }
    }
  }
  std::sort(marks.begin(), marks.end(), [](const Mark& a, const Mark& b) { return a.at < b.at; });
  // a touching zero may also show up as a tiny sign-change pair; keep the touch
  std::vector<Mark> clean;
  for (const auto& mk : marks) {
    if (!clean.empty() && std::abs(clean.back().at - mk.at) < 1e-6) {
      if (mk.kind == 0) clean.back() = mk;
      else if (clean.back().kind != 0 && clean.back().kind != mk.kind) clean.pop_back();
      continue;
    }
    clean.push_back(mk);
  }

  std::vector<IntervalComponent> out;
  auto close_at = [&](IntervalComponent& c, double hi) {
    c.hi = hi;
    out.push_back(c);
  };
  const double inf = std::numeric_limits<double>::infinity();
  auto edge_grows = [&](double x, int outward) { return dg(x) * outward > 0; };

  bool inside = gs[0] >= 0;
  IntervalComponent cur;
  if (inside) {
    if (!edge_grows(-window, -1))
      throw braid_error(errc::window_too_small, "component reaches -" + std::to_string(window));
    cur.lo = -inf;
  }
  for (const auto& mk : clean) {
    if (mk.kind == 0) {
      if (inside) {
        cur.regular = false;  // g touches zero inside the component
      } else {
        IntervalComponent pt;
        pt.lo = pt.hi = mk.at;
        pt.regular = false;
        pt.equilibria.push_back(mk.at);
        out.push_back(pt);
      }
    } else if (mk.kind > 0 && !inside) {
      cur = IntervalComponent{};
      cur.lo = mk.at;
      inside = true;
    } else if (mk.kind < 0 && inside) {
      close_at(cur, mk.at);
      inside = false;
    }
  }
  if (inside) {
    if (!edge_grows(window, 1)) throw braid_error(errc::window_too_small, "component reaches " + std::to_string(window));
    close_at(cur, inf);
  }

  for (auto& c : out) {
    if (c.lo == c.hi) continue;
    for (double x : {c.lo, c.hi})
      if (std::isfinite(x) && std::abs(dg(x)) < 1e-8) c.regular = false;
    for (int k = 0; k < samples; ++k) {
      const double a = xs[k], b = xs[k + 1];
      if (b <= c.lo || a >= c.hi) continue;
      if ((dg(a) > 0) != (dg(b) > 0)) {
        const double z = bisect(dg, a, b);
        if (z > c.lo && z < c.hi) c.equilibria.push_back(z);
      }
    }
  }
  return out;
}

// ---- laps ----

namespace {

struct Shot {
  double u1, v1, phi1;  // end state and du(1)/dv(0)
};

Shot shoot_first_order(const LagrangianModel& m, double u0, double v0, int steps, std::vector<double>* us,
                       std::vector<double>* vs) {
  // y = (u, v, phi, phi')
  auto f = [&](const std::array<double, 4>& y) {
    return std::array<double, 4>{y[1], m.lambda * m.dF(y[0]), y[3], m.lambda * m.d2F(y[0]) * y[2]};
  };
  std::array<double, 4> y{u0, v0, 0, 1};
  const double h = 1.0 / steps;
  if (us) {
    us->assign(1, u0);
    vs->assign(1, v0);
  }
  for (int k = 0; k < steps; ++k) {
    auto add = [](const std::array<double, 4>& a, const std::array<double, 4>& b, double s) {
      return std::array<double, 4>{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2], a[3] + s * b[3]};
    };
    const auto k1 = f(y), k2 = f(add(y, k1, h / 2)), k3 = f(add(y, k2, h / 2)), k4 = f(add(y, k3, h));
    for (int j = 0; j < 4; ++j) y[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
    if (us) {
      us->push_back(y[0]);
      vs->push_back(y[1]);
    }
  }
  return {y[0], y[1], y[2]};
}

Lap first_order_lap(const LagrangianModel& m, double u1, double u2) {
  const int steps = 400;
  double v0 = u2 - u1;
  bool ok = false;
  double last = std::numeric_limits<double>::infinity();
  const double scale = std::max(1.0, std::abs(u2));
  for (int it = 0; it < 60; ++it) {
    const Shot s = shoot_first_order(m, u1, v0, steps, nullptr, nullptr);
    const double miss = s.u1 - u2;
    if (!std::isfinite(miss) || s.phi1 == 0) break;
    // stop at the rounding floor
    if (std::abs(miss) < 1e-14 * scale || (std::abs(miss) >= 0.5 * last && std::abs(miss) < 1e-10 * scale)) {
      ok = true;
      break;
    }
    last = std::abs(miss);
    v0 -= miss / s.phi1;
  }
  if (!ok) throw braid_error(errc::no_minimizer, "shooting did not converge");
  std::vector<double> us, vs;
  shoot_first_order(m, u1, v0, steps, &us, &vs);
  Lap lap;
  lap.tau = 1;
  lap.u = us;
  const double h = 1.0 / steps;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int k = 0; k <= steps; ++k) {
    lap.x.push_back(k * h);
    const double w = (k == 0 || k == steps) ? 1 : (k % 2 ? 4 : 2);
    lap.S += w * m.L(us[k], vs[k]);
    const double H = 0.5 * vs[k] * vs[k] - m.lambda * m.F(us[k]);
    lo = std::min(lo, H);
    hi = std::max(hi, H);
  }
  lap.S *= h / 3;
  lap.energy_drift = hi - lo;
  return lap;
}

// monotone profile from gap logits; u'(0) = u'(tau) = 0 through mirrored ghosts
double collocation_action(const LagrangianModel& m, double E, double u1, double u2, const Eigen::VectorXd& p,
                          std::vector<double>* profile) {
  const int gaps = static_cast<int>(p.size()) - 1;
  const int N = gaps + 1;
  const double tau = std::exp(p(gaps));
  const double h = tau / gaps;
  const double mx = p.head(gaps).maxCoeff();
  Eigen::VectorXd w = (p.head(gaps).array() - mx).exp();
  w /= w.sum();
  std::vector<double> u(N);
  u[0] = u1;
  for (int k = 1; k < N; ++k) u[k] = u[k - 1] + (u2 - u1) * w(k - 1);
  u[N - 1] = u2;
  auto at = [&](int k) { return k < 0 ? u[-k] : (k >= N ? u[2 * (N - 1) - k] : u[k]); };
  double J = 0;
  for (int k = 0; k < N; ++k) {
    const double v = (at(k + 1) - at(k - 1)) / (2 * h);
    const double a = (at(k + 1) - 2 * at(k) + at(k - 1)) / (h * h);
    const double wt = (k == 0 || k == N - 1) ? 0.5 : 1;
    J += wt * h * (m.L(u[k], v, a) + E);
  }
  if (profile) *profile = u;
  return J;
}

Lap second_order_lap(const LagrangianModel& m, double E, double u1, double u2, int nodes) {
  if (nodes < 4) throw braid_error(errc::invalid_argument, "need at least 4 collocation nodes");
  for (const auto& c : interval_components(m, E)) {
    const bool in1 = u1 > c.lo && u1 < c.hi, in2 = u2 > c.lo && u2 < c.hi;
    if (in1 != in2) throw braid_error(errc::outside_component, "lap ends lie in different interval components");
    if (in1) goto inside;
  }
  throw braid_error(errc::outside_component, "lap ends outside every interval component");
inside:
  const int gaps = nodes - 1;
  Eigen::VectorXd p = Eigen::VectorXd::Zero(gaps + 1);
  // smooth start: cosine-like spacing, length from the linear scale
  for (int k = 0; k < gaps; ++k) {
    const double s = (k + 0.5) / gaps;
    p(k) = std::log(std::max(1e-3, std::sin(M_PI * s)));
  }
  p(gaps) = std::log(M_PI);
  auto J = [&](const Eigen::VectorXd& x) { return collocation_action(m, E, u1, u2, x, nullptr); };
  auto grad = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd g(x.size());
    Eigen::VectorXd y = x;
    for (int k = 0; k < x.size(); ++k) {
      const double h = 1e-6;
      y(k) = x(k) + h;
      const double jp = J(y);
      y(k) = x(k) - h;
      const double jm = J(y);
      y(k) = x(k);
      g(k) = (jp - jm) / (2 * h);
    }
    return g;
  };
  // BFGS with backtracking
  const int n = static_cast<int>(p.size());
  Eigen::MatrixXd Hinv = Eigen::MatrixXd::Identity(n, n);
  double f = J(p);
  Eigen::VectorXd g = grad(p);
  bool converged = false;
  for (int it = 0; it < 2000; ++it) {
    if (!std::isfinite(f)) break;
    if (g.lpNorm<Eigen::Infinity>() < 1e-7) {
      converged = true;
      break;
    }
    Eigen::VectorXd dir = -Hinv * g;
    if (dir.dot(g) >= 0) {
      Hinv.setIdentity();
      dir = -g;
    }
    double step = 1;
    Eigen::VectorXd pn;
    double fn = f;
    bool moved = false;
    for (int k = 0; k < 40; ++k, step /= 2) {
      pn = p + step * dir;
      fn = J(pn);
      if (std::isfinite(fn) && fn <= f + 1e-4 * step * g.dot(dir)) {
        moved = true;
        break;
      }
    }
    if (!moved) {
      converged = g.lpNorm<Eigen::Infinity>() < 1e-5;
      break;
    }
    const Eigen::VectorXd gn = grad(pn);
    const Eigen::VectorXd s = pn - p, yv = gn - g;
    const double sy = s.dot(yv);
    if (sy > 1e-12) {
      const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
      Hinv = (I - s * yv.transpose() / sy) * Hinv * (I - yv * s.transpose() / sy) + s * s.transpose() / sy;
    }
    p = pn;
    f = fn;
    g = gn;
    if (std::abs(p(gaps)) > std::log(1e3)) break;
  }
  const double tau = std::exp(p(gaps));
  if (!converged || !std::isfinite(f) || tau > 1e3 || tau < 1e-3)
    throw braid_error(errc::no_minimizer, "collocation descent did not settle");
  Lap lap;
  lap.S = f;
  lap.tau = tau;
  collocation_action(m, E, u1, u2, p, &lap.u);
  for (int k = 0; k < nodes; ++k) lap.x.push_back(tau * k / (nodes - 1));
  return lap;
}

} // namespace

Lap lap_action(const LagrangianModel& m, double E, double u1, double u2, int nodes) {
  if (m.kind == LagrangianKind::first_order) return first_order_lap(m, u1, u2);
  if (u1 == u2) throw braid_error(errc::invalid_argument, "lap ends coincide");
  return second_order_lap(m, E, u1, u2, nodes);
}

GeneratingFunction lap_generating_function(const LagrangianModel& m, double E, int nodes) {
  struct Cache {
    std::mutex mu;
    std::map<std::pair<double, double>, double> values;
  };
  auto cache = std::make_shared<Cache>();
  // a fixed-time first order lap has d12 S < 0; flip it so the twist is positive
  const double sign = m.kind == LagrangianKind::first_order ? -1 : 1;
  auto S = [m, E, nodes, cache, sign](double x, double y) {
    {
      std::lock_guard<std::mutex> lock(cache->mu);
      auto it = cache->values.find({x, y});
      if (it != cache->values.end()) return it->second;
    }
    // failed laps read as NaN so line searches back off
    double v = std::numeric_limits<double>::quiet_NaN();
    try {
      v = sign * lap_action(m, E, x, y, nodes).S;
    } catch (const braid_error& e) {
      if (e.code() != errc::no_minimizer && e.code() != errc::outside_component && e.code() != errc::invalid_argument)
        throw;
    }
    std::lock_guard<std::mutex> lock(cache->mu);
    cache->values.emplace(std::make_pair(x, y), v);
    return v;
  };
  GeneratingFunction g;
  g.S = S;
  g.S1 = [S](double x, double y) {
    const double h = 1e-4 * std::max(1.0, std::abs(x));
    return (8 * (S(x + h, y) - S(x - h, y)) - (S(x + 2 * h, y) - S(x - 2 * h, y))) / (12 * h);
  };
  g.S2 = [S](double x, double y) {
    const double h = 1e-4 * std::max(1.0, std::abs(y));
    return (8 * (S(x, y + h) - S(x, y - h)) - (S(x, y + 2 * h) - S(x, y - 2 * h))) / (12 * h);
  };
  g.S12 = [S](double x, double y) {
    const double h = 1e-3 * std::max(1.0, std::max(std::abs(x), std::abs(y)));
    return (S(x + h, y + h) - S(x + h, y - h) - S(x - h, y + h) + S(x - h, y - h)) / (4 * h * h);
  };
  g.S11 = [S](double x, double y) {
    const double h = 1e-3 * std::max(1.0, std::abs(x));
    return (S(x + h, y) - 2 * S(x, y) + S(x - h, y)) / (h * h);
  };
  g.S22 = [S](double x, double y) {
    const double h = 1e-3 * std::max(1.0, std::abs(y));
    return (S(x, y + h) - 2 * S(x, y) + S(x, y - h)) / (h * h);
  };
  return g;
}

RecurrenceSystem lap_system(const LagrangianModel& m, double E, int d, int nodes) {
  GeneratingFunction S = lap_generating_function(m, E, nodes);
  RecurrenceSystem sys;
  if (m.kind == LagrangianKind::first_order) {
    sys = exact_system({S}, d);
  } else {
    // sample inside the first bounded component that carries an equilibrium
    double lo = -3, hi = 3;
    for (const auto& c : interval_components(m, E))
      if (std::isfinite(c.lo) && std::isfinite(c.hi) && c.lo < c.hi) {
        lo = c.lo;
        hi = c.hi;
        break;
      }
    // laps ending on the boundary of the component are not defined
    const double pad = 0.1 * (hi - lo);
    sys = updown_system(S, d, 1e-2 * (hi - lo), lo + pad, hi - pad, 5);
  }
  sys.tol = lap_tolerance;
  return sys;
}

RecurrenceSystem updown_system(const GeneratingFunction& S, int d, double eps, double lo, double hi, int points) {
  if (d % 2) throw braid_error(errc::odd_period, "up-down systems have even period");
  if (!(eps > 0)) throw braid_error(errc::invalid_argument, "eps must be positive");
  const double step = (hi - lo) / (points - 1);
  for (int a = 0; a < points; ++a)
    for (int b = 0; b < points; ++b) {
      const double x = lo + a * step, y = lo + b * step;
      if (std::abs(x - y) < eps) continue;
      const double v = S.d12(x, y);
      if (!(v > 0))
        throw braid_error(errc::monotonicity_violation,
                          "mixed partial " + std::to_string(v) + " at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
    }
  RecurrenceSystem sys = exact_system({S}, d);
  sys.domain = DomainKind::updown;
  sys.eps = eps;
  return sys;
}

DiagonalTrend diagonal_trend(const RecurrenceSystem& sys, int i, double r, double t, double eps, int halvings) {
  DiagonalTrend tr;
  double gap = eps;
  for (int k = 0; k <= halvings; ++k, gap /= 2) tr.values.push_back(sys(i, r, r + gap, t));
  tr.to_plus_infinity = true;
  for (std::size_t k = 1; k < tr.values.size(); ++k)
    if (!(tr.values[k] > tr.values[k - 1])) tr.to_plus_infinity = false;
  return tr;
}

// ---- canonical skeleta ----

ForcingCase parse_case(const std::string& s) {
  if (s == "I") return ForcingCase::I;
  if (s == "II") return ForcingCase::II;
  if (s == "III") return ForcingCase::III;
  throw braid_error(errc::invalid_argument, "case must be I, II or III");
}

const char* case_name(ForcingCase c) {
  switch (c) {
    case ForcingCase::I: return "I";
    case ForcingCase::II: return "II";
    case ForcingCase::III: return "III";
  }
  return "?";
}

std::pair<int, int> linked_pair(ForcingCase c) { return c == ForcingCase::I ? std::make_pair(2, 3) : std::make_pair(1, 2); }

namespace {

Rational milli(double x) { return Rational(static_cast<long long>(std::llround(x * 1000)), 1000); }

std::vector<Rational> sampled(int d, double amp, double freq, double phase) {
  std::vector<Rational> v(d + 1);
  for (int i = 0; i <= d; ++i) v[i] = milli(amp * std::cos(2 * M_PI * freq * i / d + phase));
  return v;
}

Braid rows(const std::vector<std::vector<Rational>>& rs, std::vector<int> tau) {
  MatQ m(rs.size(), rs[0].size());
  for (std::size_t a = 0; a < rs.size(); ++a)
    for (std::size_t i = 0; i < rs[a].size(); ++i) m(a, i) = rs[a][i];
  return Braid(m, Permutation(std::move(tau)));
}

// the r-crossing pair inside the unit band; a tau-swap when r is odd
std::vector<std::vector<Rational>> band_pair(int r, int p) {
  const int d = 2 * p;
  auto v = sampled(d, 0.5, r / 2.0, 0);
  std::vector<Rational> w(d + 1);
  for (int i = 0; i <= d; ++i) w[i] = -v[i];
  return {v, w};
}

void require(bool ok, const std::string& what) {
  if (!ok) throw braid_error(errc::infeasible, what);
}

// raw (carrier-free) skeleton and free strand
std::pair<Braid, Braid> raw_case(ForcingCase c, int q, int r, int p) {
  require(p >= 1, "p must be positive");
  const int d = 2 * p;
  if (c == ForcingCase::II) {
    require(0 <= r && r < 2 * q && 2 * q < 2 * p, "case II needs 0 <= r < 2q < 2p");
    auto [v, u] = raw_case(ForcingCase::III, p - q, 2 * p - r, p);
    return {dualize(augment(v, AugmentMode::constant)), dualize(u)};
  }
  require(0 < 2 * q && 2 * q < r && r <= 2 * p, "cases I and III need 0 < 2q < r <= 2p");
  auto band = band_pair(r, p);
  std::vector<std::vector<Rational>> rs;
  std::vector<int> tau;
  if (c == ForcingCase::I) {
    rs = {std::vector<Rational>(d + 1, Rational(-1)), std::vector<Rational>(d + 1, Rational(1)), band[0], band[1]};
    tau = r % 2 ? std::vector<int>{0, 1, 3, 2} : std::vector<int>{0, 1, 2, 3};
  } else {
    rs = {std::vector<Rational>(d + 1, Rational(-1)), band[0], band[1], sampled(d, 2.5, p, 0), sampled(d, -2.5, p, 0)};
    tau = r % 2 ? std::vector<int>{0, 2, 1, 3, 4} : std::vector<int>{0, 1, 2, 3, 4};
  }
  Braid u = rows({sampled(d, 0.8, q, 0.3)}, {0});
  return {rows(rs, tau), u};
}

Rational carrier_height(const Braid& v) {
  Rational m = 0;
  for (Eigen::Index a = 0; a < v.anchors().rows(); ++a)
    for (Eigen::Index i = 0; i < v.anchors().cols(); ++i) m = std::max(m, Rational(abs(v.anchors()(a, i))));
  return Rational(static_cast<long long>(std::ceil(to_double(m)))) + 1;
}

Braid carried(const Braid& b, const Rational& D) {
  MatQ m = b.anchors();
  for (Eigen::Index i = 0; i < m.cols(); ++i)
    for (Eigen::Index a = 0; a < m.rows(); ++a) m(a, i) += i % 2 ? D : Rational(-D);
  return Braid(m, b.tau());
}

std::pair<Braid, Braid> build_case(ForcingCase c, int q, int r, int p, bool carrier) {
  auto [v, u] = raw_case(c, q, r, p);
  const Rational D = carrier ? carrier_height(v) : Rational(0);
  Braid vc = carried(v, D), uc = carried(u, D);
  require(validate(vc).regular(), "skeleton is not regular");
  require(!carrier || is_updown(vc), "skeleton is not up-down");
  const auto [a, b] = linked_pair(c);
  require(crossing_count(vc, a, b) == r, "band pair does not cross r times");
  if (c == ForcingCase::I) require(crossing_count(vc, 0, 1) == 0 && crossing_count(vc, 0, a) == 0 &&
                                       crossing_count(vc, 1, b) == 0,
                                   "bounding strands cross the band");
  if (c == ForcingCase::III) require(crossing_count(vc, 3, 4) == 2 * p, "outer pair is not maximally linked");
  const Braid both = stack(uc, vc);
  require(validate(both).regular(), "free strand meets the skeleton");
  require(crossing_count(both, 0, a + 1) == 2 * q && crossing_count(both, 0, b + 1) == 2 * q,
          "free strand does not link the band pair 2q times");
  return {vc, uc};
}

} // namespace

Braid canonical_skeleton(ForcingCase c, int q, int r, int p, bool carrier) {
  return build_case(c, q, r, p, carrier).first;
}

Braid canonical_free(ForcingCase c, int q, int r, int p, bool carrier) { return build_case(c, q, r, p, carrier).second; }

int default_r(ForcingCase c, int q, int p) {
  return c == ForcingCase::II ? std::max(2 * q - 3, 0) : std::min(2 * q + 2, 2 * p);
}

Braid settle_skeleton(const RecurrenceSystem& sys, const Braid& guess, double tol) {
  const int d = guess.d();
  if (sys.d != d) throw braid_error(errc::invalid_argument, "system and skeleton periods differ");
  Eigen::MatrixXd m(guess.n(), d + 1);
  for (const auto& cyc : guess.tau().cycles()) {
    Eigen::VectorXd u(cyc.size() * d);
    for (std::size_t k = 0; k < cyc.size(); ++k)
      for (int i = 0; i < d; ++i) u(k * d + i) = to_double(guess(cyc[k], i));
    if (!newton_strand(sys, u, tol)) throw braid_error(errc::none_found, "skeleton orbit did not converge");
    for (std::size_t k = 0; k < cyc.size(); ++k)
      for (int i = 0; i < d; ++i) m(cyc[k], i) = u(k * d + i);
  }
  for (int a = 0; a < guess.n(); ++a) m(a, d) = m(guess.tau()(a), 0);
  MatQ q(m.rows(), m.cols());
  for (Eigen::Index a = 0; a < m.rows(); ++a)
    for (Eigen::Index i = 0; i < m.cols(); ++i) q(a, i) = to_rational(m(a, i));
  Braid out(q, guess.tau());
  if (!validate(out).regular()) throw braid_error(errc::none_found, "settled skeleton is singular");
  for (int a = 0; a < guess.n(); ++a)
    for (int b = a + 1; b < guess.n(); ++b)
      if (crossing_count(out, a, b) != crossing_count(guess, a, b))
        throw braid_error(errc::none_found, "settled skeleton changed its crossing data");
  return out;
}

std::vector<ForcedSolution> forced_characteristics(const RecurrenceSystem& sys, const Braid& skeleton,
                                                   const Braid& seed, int budget, const LagrangianModel* model,
                                                   double E) {
  const BraidClassComplex cls = enumerate_class(seed, skeleton);
  if (!cls.bounded) throw braid_error(errc::not_bounded, "forcing class is unbounded");
  if (!cls.proper) throw braid_error(errc::not_proper, "forcing class is not proper");
  const FixedPointSearch found = find_fixed_points(sys, cls, budget);
  std::vector<ForcedSolution> out;
  for (const auto& fp : found.solutions) {
    if (!(fp.residual < 1e-8)) continue;
    ForcedSolution s;
    s.point = fp;
    const BraidD both = stack(fp.braid, skeleton.cast<double>());
    for (int k = 0; k < skeleton.n(); ++k) s.linking.push_back(crossing_count(both, 0, k + 1));
    if (s.linking != cls.signature) continue;
    if (model) {
      double x0 = 0;
      for (int i = 0; i < fp.braid.d(); ++i) {
        const Lap lap = lap_action(*model, E, fp.braid(0, i), fp.braid(0, i + 1));
        for (std::size_t k = (i == 0 ? 0 : 1); k < lap.u.size(); ++k) s.profile.emplace_back(x0 + lap.x[k], lap.u[k]);
        x0 += lap.tau;
      }
    }
    out.push_back(std::move(s));
  }
  if (out.empty())
    throw braid_error(errc::none_found, "no forced solution within " + std::to_string(budget) + " starts");
  return out;
}

bool dissipativity_check(const GeneratingFunction& S, const std::vector<std::pair<double, double>>& probes,
                         double hull_lo, double hull_hi) {
  bool any = false;
  for (auto [a, b] : probes) {
    if (!(a < hull_lo && b > hull_hi)) throw braid_error(errc::invalid_argument, "probe lies inside the skeleton hull");
    if (-S.d1(a, b) > 0 && S.d2(a, b) > 0 && S.d1(b, a) > 0 && -S.d2(b, a) > 0) any = true;
  }
  return any;
}

bool dissipativity_check(const GeneratingFunction& S, double ubar, const std::vector<double>& probes, double hull_hi) {
  bool any = false;
  for (double u : probes) {
    if (!(u > hull_hi && u > ubar)) throw braid_error(errc::invalid_argument, "probe lies inside the skeleton hull");
    if (S.d1(ubar, u) > 0 && S.d2(ubar, u) > 0 && S.d1(u, ubar) > 0 && S.d2(u, ubar) > 0) any = true;
  }
  return any;
}

} // namespace braidforce
