#include "braidforce/flows.hpp"
#include "braidforce/parallel.hpp"
#include "braidforce/skeletal.hpp"

#include <Eigen/Eigenvalues>
#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <map>
#include <limits>
#include <memory>
#include <optional>
#include <random>

namespace braidforce {

namespace {

double fd_step(double x) { return 1e-5 * std::max(1.0, std::abs(x)); }

int wrap(int i, int d) { return ((i % d) + d) % d; }

} // namespace

double GeneratingFunction::d1(double x, double y) const {
  if (S1) return S1(x, y);
  const double h = fd_step(x);
  return (S(x + h, y) - S(x - h, y)) / (2 * h);
}

double GeneratingFunction::d2(double x, double y) const {
  if (S2) return S2(x, y);
  const double h = fd_step(y);
  return (S(x, y + h) - S(x, y - h)) / (2 * h);
}

double GeneratingFunction::d11(double x, double y) const {
  if (S11) return S11(x, y);
  const double h = fd_step(x);
  return (d1(x + h, y) - d1(x - h, y)) / (2 * h);
}

double GeneratingFunction::d12(double x, double y) const {
  if (S12) return S12(x, y);
  const double h = fd_step(y);
  return (d1(x, y + h) - d1(x, y - h)) / (2 * h);
}

double GeneratingFunction::d22(double x, double y) const {
  if (S22) return S22(x, y);
  const double h = fd_step(y);
  return (d2(x, y + h) - d2(x, y - h)) / (2 * h);
}

double RecurrenceSystem::operator()(int i, double r, double s, double t) const { return R(wrap(i, d), r, s, t); }

Partials RecurrenceSystem::partials(int i, double r, double s, double t) const {
  i = wrap(i, d);
  if (dR) return dR(i, r, s, t);
  Partials p;
  double h = fd_step(r);
  p.d1 = (R(i, r + h, s, t) - R(i, r - h, s, t)) / (2 * h);
  h = fd_step(s);
  p.d2 = (R(i, r, s + h, t) - R(i, r, s - h, t)) / (2 * h);
  h = fd_step(t);
  p.d3 = (R(i, r, s, t + h) - R(i, r, s, t - h)) / (2 * h);
  return p;
}

Eigen::MatrixXd RecurrenceSystem::residual(const BraidD& b) const {
  Eigen::MatrixXd out(b.n(), b.d());
  for (int a = 0; a < b.n(); ++a)
    for (int i = 0; i < b.d(); ++i) out(a, i) = (*this)(i, b.at(a, i - 1), b(a, i), b.at(a, i + 1));
  return out;
}

double RecurrenceSystem::W(const BraidD& b) const {
  if (!exact()) throw braid_error(errc::invalid_argument, "system has no generating functions");
  double w = 0;
  for (int a = 0; a < b.n(); ++a)
    for (int i = 0; i < b.d(); ++i) w += S[wrap(i, d) % S.size()].S(b(a, i), b.at(a, i + 1));
  return w;
}

SamplingReport sample_parabolic(const RecurrenceSystem& sys, double lo, double hi, int points) {
  SamplingReport rep;
  rep.min_d1 = rep.min_d3 = std::numeric_limits<double>::infinity();
  const double step = points > 1 ? (hi - lo) / (points - 1) : 0;
  for (int i = 0; i < sys.d; ++i)
    for (int x = 0; x < points; ++x)
      for (int y = 0; y < points; ++y)
        for (int z = 0; z < points; ++z) {
          const Partials p = sys.partials(i, lo + x * step, lo + y * step, lo + z * step);
          ++rep.samples;
          rep.min_d1 = std::min(rep.min_d1, p.d1);
          rep.min_d3 = std::min(rep.min_d3, p.d3);
          const bool good = sys.strict_d1 ? (p.d1 > 0 && p.d3 >= 0) : (p.d1 >= 0 && p.d3 > 0);
          if (!good) ++rep.violations;
        }
  return rep;
}

std::pair<PiecewiseLinear<Rational>, PiecewiseLinear<Rational>>
increasing_pair(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  if (xs.size() != ys.size() || xs.empty())
    throw braid_error(errc::not_increasing, "node sequences differ in length");
  for (std::size_t j = 1; j < xs.size(); ++j)
    if (!(xs[j] > xs[j - 1]) || !(ys[j] > ys[j - 1]))
      throw braid_error(errc::not_increasing, "nodes must be strictly increasing");
  PiecewiseLinear<Rational> f{{xs[0]}, {0}}, g{{ys[0]}, {0}};
  for (std::size_t j = 1; j < xs.size(); ++j) {
    const Rational c = std::min(Rational(xs[j] - xs[j - 1]), Rational(ys[j] - ys[j - 1]));
    f.x.push_back(xs[j]);
    f.y.push_back(f.y.back() + c);
    g.x.push_back(ys[j]);
    g.y.push_back(g.y.back() + c);
  }
  return {f, g};
}

RecurrenceSystem skeletal_system(const Braid& skeleton) {
  auto rec = std::make_shared<const SkeletalRecurrence<double>>(skeleton);
  RecurrenceSystem sys;
  sys.d = skeleton.d();
  sys.R = [rec](int i, double r, double s, double t) { return (*rec)(i, r, s, t); };
  sys.dR = [rec](int i, double r, double s, double t) {
    auto p = rec->partials(i, r, s, t);
    return Partials{p[0], p[1], p[2]};
  };
  return sys;
}

Rational skeletal_residual_exact(const Braid& skeleton) {
  const SkeletalRecurrence<Rational> rec(skeleton);
  Rational worst = 0;
  for (int a = 0; a < skeleton.n(); ++a)
    for (int i = 0; i < skeleton.d(); ++i) {
      Rational r = rec(i, skeleton.at(a, i - 1), skeleton(a, i), skeleton.at(a, i + 1));
      worst = std::max(worst, Rational(abs(r)));
    }
  return worst;
}

double skeletal_residual(const Braid& skeleton) {
  const BraidD v = skeleton.cast<double>();
  return skeletal_system(skeleton).residual(v).cwiseAbs().maxCoeff();
}

RecurrenceSystem from_generating(std::vector<GeneratingFunction> S, int d, double lo, double hi, int points) {
  if (S.empty() || d < 1) throw braid_error(errc::invalid_argument, "need at least one generating function");
  const double step = (hi - lo) / (points - 1);
  for (const auto& g : S)
    for (int x = 0; x < points; ++x)
      for (int y = 0; y < points; ++y) {
        const double v = g.d12(lo + x * step, lo + y * step);
        if (!(v > 1e-12))
          throw braid_error(errc::monotonicity_violation,
                            "mixed partial " + std::to_string(v) + " at (" + std::to_string(lo + x * step) +
                                ", " + std::to_string(lo + y * step) + ")");
      }
  return exact_system(std::move(S), d);
}

RecurrenceSystem exact_system(std::vector<GeneratingFunction> S, int d) {
  if (S.empty() || d < 1) throw braid_error(errc::invalid_argument, "need at least one generating function");
  auto gens = std::make_shared<const std::vector<GeneratingFunction>>(std::move(S));
  RecurrenceSystem sys;
  sys.d = d;
  auto at = [gens](int i) -> const GeneratingFunction& { return (*gens)[static_cast<std::size_t>(i) % gens->size()]; };
  sys.R = [at, d](int i, double r, double s, double t) {
    return at(wrap(i - 1, d)).d2(r, s) + at(i).d1(s, t);
  };
  sys.dR = [at, d](int i, double r, double s, double t) {
    const auto& prev = at(wrap(i - 1, d));
    const auto& cur = at(i);
    return Partials{prev.d12(r, s), prev.d22(r, s) + cur.d11(s, t), cur.d12(s, t)};
  };
  sys.S.assign(gens->begin(), gens->end());
  return sys;
}

GeneratingFunction allen_cahn_generator(double c) {
  GeneratingFunction g;
  g.S = [c](double x, double y) { return -0.5 * (x - y) * (x - y) - c * (0.25 * x * x * x * x - 0.5 * x * x); };
  g.S1 = [c](double x, double y) { return -(x - y) - c * (x * x * x - x); };
  g.S2 = [](double x, double y) { return x - y; };
  g.S11 = [c](double x, double) { return -1 - c * (3 * x * x - 1); };
  g.S12 = [](double, double) { return 1.0; };
  g.S22 = [](double, double) { return -1.0; };
  return g;
}

GeneratingFunction frenkel_kontorova_generator(double k) {
  const double tp = 2 * M_PI;
  GeneratingFunction g;
  g.S = [k, tp](double x, double y) { return -0.5 * (x - y) * (x - y) - k / (tp * tp) * (1 - std::cos(tp * x)); };
  g.S1 = [k, tp](double x, double y) { return -(x - y) - k / tp * std::sin(tp * x); };
  g.S2 = [](double x, double y) { return x - y; };
  g.S11 = [k, tp](double x, double) { return -1 - k * std::cos(tp * x); };
  g.S12 = [](double, double) { return 1.0; };
  g.S22 = [](double, double) { return -1.0; };
  return g;
}

RecurrenceSystem allen_cahn(int d, double c) { return from_generating({allen_cahn_generator(c)}, d); }

RecurrenceSystem frenkel_kontorova(int d, double k) { return from_generating({frenkel_kontorova_generator(k)}, d); }

RecurrenceSystem blend(const RecurrenceSystem& a, const RecurrenceSystem& b, double lambda) {
  if (a.d != b.d) throw braid_error(errc::invalid_argument, "periods differ");
  if (lambda == 0) return a;
  if (lambda == 1) return b;
  RecurrenceSystem out;
  out.d = a.d;
  out.strict_d1 = a.strict_d1 || b.strict_d1;
  out.domain = a.domain;
  out.eps = a.eps;
  out.tol = std::max(a.tol, b.tol);
  out.R = [a, b, lambda](int i, double r, double s, double t) {
    return (1 - lambda) * a(i, r, s, t) + lambda * b(i, r, s, t);
  };
  out.dR = [a, b, lambda](int i, double r, double s, double t) {
    const Partials p = a.partials(i, r, s, t), q = b.partials(i, r, s, t);
    return Partials{(1 - lambda) * p.d1 + lambda * q.d1, (1 - lambda) * p.d2 + lambda * q.d2,
                    (1 - lambda) * p.d3 + lambda * q.d3};
  };
  if (a.exact() && b.exact()) {
    const std::size_t m = std::max(a.S.size(), b.S.size());
    for (std::size_t k = 0; k < m; ++k) {
      const GeneratingFunction ga = a.S[k % a.S.size()], gb = b.S[k % b.S.size()];
      GeneratingFunction g;
      g.S = [ga, gb, lambda](double x, double y) { return (1 - lambda) * ga.S(x, y) + lambda * gb.S(x, y); };
      g.S1 = [ga, gb, lambda](double x, double y) { return (1 - lambda) * ga.d1(x, y) + lambda * gb.d1(x, y); };
      g.S2 = [ga, gb, lambda](double x, double y) { return (1 - lambda) * ga.d2(x, y) + lambda * gb.d2(x, y); };
      out.S.push_back(g);
    }
  }
  return out;
}

// ---- integration ----

namespace {

using State = std::vector<double>;

struct Layout {
  int n, d;
  Permutation tau;
  std::vector<int> prev, next;  // state index of at(a, i-1), at(a, i+1)

  Layout(int n_, int d_, const Permutation& t) : n(n_), d(d_), tau(t), prev(n_ * d_), next(n_ * d_) {
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < d; ++i) {
        prev[a * d + i] = i > 0 ? a * d + i - 1 : tau.inverse(a) * d + d - 1;
        next[a * d + i] = i + 1 < d ? a * d + i + 1 : tau(a) * d;
      }
  }

  State pack(const BraidD& b) const {
    State x(n * d);
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < d; ++i) x[a * d + i] = b(a, i);
    return x;
  }
  BraidD unpack(const State& x) const {
    Eigen::MatrixXd m(n, d + 1);
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < d; ++i) m(a, i) = x[a * d + i];
    for (int a = 0; a < n; ++a) m(a, d) = x[tau(a) * d];
    return BraidD(m, tau);
  }
};

std::vector<int> safe_crossings(const BraidD& b, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> out;
  out.reserve(pairs.size());
  for (auto [a, c] : pairs) {
    try {
      out.push_back(crossing_count(b, a, c));
    } catch (const braid_error&) {
      out.push_back(-1);
    }
  }
  return out;
}

double min_gap(const State& x, const Layout& L) {
  double g = std::numeric_limits<double>::infinity();
  for (int k = 0; k < L.n * L.d; ++k) {
    const int i = k % L.d;
    const double step = x[L.next[k]] - x[k];
    g = std::min(g, i % 2 ? -step : step);
  }
  return g;
}

} // namespace

Trajectory integrate(const BraidD& b0, const RecurrenceSystem& sys, double T, double tol) {
  namespace ode = boost::numeric::odeint;
  if (sys.d != b0.d()) throw braid_error(errc::invalid_argument, "system and braid periods differ");
  b0.check_closure();
  const Layout L(b0.n(), b0.d(), b0.tau());
  const int N = L.n * L.d;
  auto rhs = [&](const State& x, State& dx, double) {
    for (int k = 0; k < N; ++k) dx[k] = sys(k % L.d, x[L.prev[k]], x[k], x[L.next[k]]);
  };

  Trajectory traj;
  for (int a = 0; a < L.n; ++a)
    for (int c = a + 1; c < L.n; ++c) traj.pairs.emplace_back(a, c);

  State x = L.pack(b0);
  traj.times.push_back(0);
  traj.states.push_back(b0);
  traj.crossings.push_back(safe_crossings(b0, traj.pairs));
  if (T <= 0) return traj;

  const bool updown = sys.domain == DomainKind::updown;
  double gap = updown ? min_gap(x, L) : 0;
  if (updown && gap < sys.eps) throw braid_error(errc::gap_collapse, "initial braid violates the up-down guard");

  auto stepper = ode::make_dense_output(tol * 1e-3, tol, ode::runge_kutta_dopri5<State>());
  stepper.initialize(x, 0.0, std::min(1e-3, T));
  State x0 = x, x1(N), xm(N);
  while (stepper.current_time() < T) {
    stepper.do_step(rhs);
    const double t0 = stepper.previous_time();
    const double t1 = std::min(stepper.current_time(), T);
    if (t1 - t0 < 1e-14 * std::max(1.0, t0)) throw braid_error(errc::blow_up, "step size underflow");
    if (t1 < stepper.current_time())
      stepper.calc_state(t1, x1);
    else
      x1 = stepper.current_state();
    for (double v : x1)
      if (!std::isfinite(v) || std::abs(v) > 1e8) throw braid_error(errc::blow_up, "state left every bounded window");

    for (std::size_t p = 0; p < traj.pairs.size(); ++p) {
      const auto [a, c] = traj.pairs[p];
      for (int i = 0; i < L.d; ++i) {
        const int ka = a * L.d + i, kc = c * L.d + i;
        const double f0 = x0[ka] - x0[kc], f1 = x1[ka] - x1[kc];
        if (f0 == 0 || (f0 > 0) == (f1 > 0)) continue;
        double lo = t0, hi = t1;
        for (int it = 0; it < 60 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
          const double mid = 0.5 * (lo + hi);
          stepper.calc_state(mid, xm);
          const double fm = xm[ka] - xm[kc];
          if ((fm > 0) == (f0 > 0))
            lo = mid;
          else
            hi = mid;
        }
        stepper.calc_state(0.5 * (lo + hi), xm);
        const double left = xm[L.prev[ka]] - xm[L.prev[kc]];
        const double right = xm[L.next[ka]] - xm[L.next[kc]];
        traj.events.push_back({0.5 * (lo + hi), i, a, c, left * right > 0});
      }
    }

    if (updown) {
      const double g = min_gap(x1, L);
      if (g <= 0 || (g < sys.eps && g < gap))
        throw braid_error(errc::gap_collapse, "up-down gap fell to " + std::to_string(g));
      gap = g;
    }
    const BraidD b = L.unpack(x1);
    traj.times.push_back(t1);
    traj.crossings.push_back(safe_crossings(b, traj.pairs));
    traj.states.push_back(b);
    x0 = x1;
  }
  return traj;
}

ComparisonReport comparison_report(const Trajectory& traj, const Permutation& tau) {
  // orbit id of each unordered pair under tau
  const int n = tau.size();
  std::map<std::pair<int, int>, int> orbit;
  std::vector<int> pair_orbit(traj.pairs.size());
  int orbits = 0;
  for (std::size_t p = 0; p < traj.pairs.size(); ++p) {
    auto [a, c] = traj.pairs[p];
    auto it = orbit.find({a, c});
    if (it == orbit.end()) {
      int x = a, y = c;
      do {
        orbit[{std::min(x, y), std::max(x, y)}] = orbits;
        x = tau(x);
        y = tau(y);
      } while (!(std::min(x, y) == a && std::max(x, y) == c));
      pair_orbit[p] = orbits++;
    } else {
      pair_orbit[p] = it->second;
    }
  }
  (void)n;

  ComparisonReport rep;
  std::size_t ev = 0;
  for (std::size_t k = 0; k + 1 < traj.times.size(); ++k) {
    ++rep.steps;
    std::vector<long long> before(orbits, 0), after(orbits, 0), tang(orbits, 0);
    bool skip = false;
    for (std::size_t p = 0; p < traj.pairs.size(); ++p) {
      if (traj.crossings[k][p] < 0 || traj.crossings[k + 1][p] < 0) skip = true;
      before[pair_orbit[p]] += traj.crossings[k][p];
      after[pair_orbit[p]] += traj.crossings[k + 1][p];
    }
    while (ev < traj.events.size() && traj.events[ev].t <= traj.times[k + 1]) {
      const auto& e = traj.events[ev++];
      if (!e.tangency) continue;
      ++rep.tangencies;
      ++tang[orbit.at({e.a, e.b})];
    }
    if (skip) {
      ++rep.skipped;
      continue;
    }
    for (int o = 0; o < orbits; ++o) {
      const long long delta = after[o] - before[o];
      if (delta > 0) ++rep.increases;
      if (delta != 0) ++rep.jumps;
      if (delta != -2 * tang[o]) ++rep.mismatches;
    }
  }
  return rep;
}

ComparisonReport verify_comparison(const Trajectory& traj, const Permutation& tau) {
  ComparisonReport rep = comparison_report(traj, tau);
  if (!rep.ok())
    throw braid_error(errc::monotonicity_breach, std::to_string(rep.increases) + " increases, " +
                                                     std::to_string(rep.mismatches) +
                                                     " jumps not matching -2 per tangency");
  return rep;
}

// ---- fixed points ----

Eigen::MatrixXd strand_jacobian(const RecurrenceSystem& sys, const Eigen::VectorXd& u) {
  const int d = static_cast<int>(u.size());
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const int ip = wrap(i - 1, d), in = wrap(i + 1, d);
    const Partials p = sys.partials(i, u(ip), u(i), u(in));
    J(i, ip) += p.d1;
    J(i, i) += p.d2;
    J(i, in) += p.d3;
  }
  return J;
}

namespace {

Eigen::VectorXd strand_residual(const RecurrenceSystem& sys, const Eigen::VectorXd& u) {
  const int d = static_cast<int>(u.size());
  Eigen::VectorXd F(d);
  for (int i = 0; i < d; ++i) F(i) = sys(i, u(wrap(i - 1, d)), u(i), u(wrap(i + 1, d)));
  return F;
}

} // namespace

bool newton_strand(const RecurrenceSystem& sys, Eigen::VectorXd& u, double tol, int max_iter) {
  if (tol <= 0) tol = sys.tol;
  Eigen::VectorXd F = strand_residual(sys, u);
  double norm = F.lpNorm<Eigen::Infinity>();
  for (int it = 0; it < max_iter; ++it) {
    if (!std::isfinite(norm)) return false;
    if (norm < tol) return true;
    const Eigen::MatrixXd J = strand_jacobian(sys, u);
    const Eigen::VectorXd step = J.colPivHouseholderQr().solve(-F);
    if (!step.allFinite()) return false;
    double lambda = 1;
    bool moved = false;
    for (int k = 0; k < 30; ++k, lambda /= 2) {
      const Eigen::VectorXd trial = u + lambda * step;
      const Eigen::VectorXd Ft = strand_residual(sys, trial);
      const double nt = Ft.lpNorm<Eigen::Infinity>();
      if (nt < (1 - 1e-4 * lambda) * norm || nt < tol) {
        u = trial;
        F = Ft;
        norm = nt;
        moved = true;
        break;
      }
    }
    if (!moved) return norm < tol;
  }
  return norm < tol;
}

FixedPointSearch find_fixed_points(const RecurrenceSystem& sys, const BraidClassComplex& cls, int budget,
                                   std::uint64_t seed) {
  if (!cls.bounded || !cls.proper) throw braid_error(errc::not_bounded, "fixed point search needs a bounded proper class");
  const SkeletonGrid& grid = *cls.grid;
  const int d = grid.d();
  if (sys.d != d) throw braid_error(errc::invalid_argument, "system and class periods differ");
  const IntervalPartition& P = grid.partition();

  // starts: every box midpoint, then uniform points inside random boxes
  std::vector<Eigen::VectorXd> starts;
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < cls.boxes.size() && static_cast<int>(starts.size()) < budget; ++k) {
    Eigen::VectorXd u(d);
    for (int i = 0; i < d; ++i) u(i) = to_double(P.midpoint(i, cls.boxes[k][i]));
    starts.push_back(u);
  }
  std::uniform_real_distribution<double> unit(0.02, 0.98);
  while (static_cast<int>(starts.size()) < budget) {
    const BoxLabel& box = cls.boxes[rng() % cls.boxes.size()];
    Eigen::VectorXd u(d);
    for (int i = 0; i < d; ++i) {
      const double lo = to_double(P.values(i)[box[i] - 1]);
      const double hi = to_double(P.values(i)[box[i]]);
      u(i) = lo + unit(rng) * (hi - lo);
    }
    starts.push_back(u);
  }

  std::vector<std::optional<Eigen::VectorXd>> found(starts.size());
  parallel_for(starts.size(), [&](std::size_t k) {
    Eigen::VectorXd u = starts[k];
    if (sys.exact()) {
      // a short settle along the flow pulls starts toward attracting pieces of the invariant set
      Eigen::VectorXd F = strand_residual(sys, u);
      for (int s = 0; s < 50 && F.lpNorm<Eigen::Infinity>() > 1e-3; ++s) {
        u += 0.05 * F;
        F = strand_residual(sys, u);
      }
    }
    if (newton_strand(sys, u)) {
      found[k] = u;
      return;
    }
    // undamped retry from the raw start
    u = starts[k];
    for (int it = 0; it < 40; ++it) {
      const Eigen::VectorXd F = strand_residual(sys, u);
      if (!F.allFinite() || F.lpNorm<Eigen::Infinity>() < sys.tol) break;
      u -= strand_jacobian(sys, u).colPivHouseholderQr().solve(F);
    }
    if (u.allFinite() && newton_strand(sys, u)) found[k] = u;
  });

  FixedPointSearch out;
  out.seeds_used = static_cast<int>(starts.size());
  for (auto& f : found) {
    if (!f) continue;
    const Eigen::VectorXd& u = *f;
    bool dup = false;
    for (const auto& s : out.solutions) {
      double dist = 0;
      for (int i = 0; i < d; ++i) dist = std::max(dist, std::abs(s.braid(0, i) - u(i)));
      if (dist < 1e-6) dup = true;
    }
    if (dup) continue;
    VecQ q(d);
    for (int i = 0; i < d; ++i) q(i) = to_rational(u(i));
    BoxLabel box;
    try {
      box = grid.box_of(closed_strand(q));
    } catch (const braid_error&) {
      continue;
    }
    if (!cls.contains(box)) continue;
    FixedPoint fp;
    fp.braid = closed_strand(Eigen::VectorXd(u));
    fp.residual = strand_residual(sys, u).lpNorm<Eigen::Infinity>();
    const Eigen::MatrixXd J = strand_jacobian(sys, u);
    Eigen::EigenSolver<Eigen::MatrixXd> es(J, false);
    for (int i = 0; i < d; ++i) {
      const auto ev = es.eigenvalues()(i);
      fp.spectrum.push_back(ev);
      if (ev.real() > 1e-9) ++fp.coindex;
      if (std::abs(ev) <= 1e-9) ++fp.nullity;
    }
    fp.degenerate = fp.nullity > 0;
    out.solutions.push_back(std::move(fp));
  }
  std::sort(out.solutions.begin(), out.solutions.end(), [](const FixedPoint& a, const FixedPoint& b) {
    for (int i = 0; i < a.braid.d(); ++i)
      if (a.braid(0, i) != b.braid(0, i)) return a.braid(0, i) < b.braid(0, i);
    return false;
  });
  const ConleyIndex h = conley_index(cls);
  out.morse_bound = morse_bounds(h, sys.exact() ? MorseRegime::exact_nondegenerate : MorseRegime::non_exact_nondegenerate);
  out.exhausted = static_cast<long long>(out.solutions.size()) < out.morse_bound;
  return out;
}

} // namespace braidforce
