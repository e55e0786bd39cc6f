#pragma once

#include "homology.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace braidforce {

struct Partials {
  double d1 = 0, d2 = 0, d3 = 0;
};

// S(x, y) with its partials; missing partials fall back to central differences
struct GeneratingFunction {
  std::function<double(double, double)> S;
  std::function<double(double, double)> S1, S2;
  std::function<double(double, double)> S11, S12, S22;

  double d1(double x, double y) const;
  double d2(double x, double y) const;
  double d11(double x, double y) const;
  double d12(double x, double y) const;
  double d22(double x, double y) const;
};

enum class DomainKind { full, updown };

struct RecurrenceSystem {
  int d = 0;
  std::function<double(int, double, double, double)> R;
  std::function<Partials(int, double, double, double)> dR;
  // true: d1 > 0 and d3 >= 0; false: the one-sided alternative d1 >= 0, d3 > 0
  bool strict_d1 = true;
  std::vector<GeneratingFunction> S;  // one per index when exact
  DomainKind domain = DomainKind::full;
  double eps = 0;
  double tol = 1e-12;  // residual level Newton can reach; larger for numerically evaluated S

  // i is taken mod d
  double operator()(int i, double r, double s, double t) const;
  Partials partials(int i, double r, double s, double t) const;
  bool exact() const { return !S.empty(); }

  // R at every anchor i = 0..d-1 of every strand
  Eigen::MatrixXd residual(const BraidD& b) const;
  double W(const BraidD& b) const;
  double lyapunov(const BraidD& b) const { return -W(b); }
};

struct SamplingReport {
  long long samples = 0;
  long long violations = 0;
  double min_d1 = 0, min_d3 = 0;
  bool ok() const { return violations == 0; }
};
// (A1) on a points^3 grid of [lo, hi]^3 for every i
SamplingReport sample_parabolic(const RecurrenceSystem& sys, double lo, double hi, int points = 10);

// piecewise linear through nodes, slope 1 beyond the ends
template <typename Scalar>
struct PiecewiseLinear {
  std::vector<Scalar> x, y;

  Scalar operator()(const Scalar& s) const {
    if (x.size() == 1 || s <= x.front()) return y.front() + (s - x.front());
    if (s >= x.back()) return y.back() + (s - x.back());
    auto k = std::upper_bound(x.begin(), x.end(), s) - x.begin() - 1;
    return y[k] + (y[k + 1] - y[k]) * (s - x[k]) / (x[k + 1] - x[k]);
  }
  Scalar slope(const Scalar& s) const {
    if (x.size() == 1 || s < x.front() || s >= x.back()) return Scalar(1);
    auto k = std::upper_bound(x.begin(), x.end(), s) - x.begin() - 1;
    return (y[k + 1] - y[k]) / (x[k + 1] - x[k]);
  }
  template <typename Other>
  PiecewiseLinear<Other> cast() const {
    PiecewiseLinear<Other> o;
    for (const auto& v : x) o.x.push_back(convert<Other>(v));
    for (const auto& v : y) o.y.push_back(convert<Other>(v));
    return o;
  }

  template <typename Other, typename From>
  static Other convert(const From& v) {
    if constexpr (std::is_same_v<Other, double>)
      return to_double(v);
    else
      return Other(v);
  }
};

// f(x_j) - f(x_k) = g(y_j) - g(y_k) at every node pair, both strictly increasing
std::pair<PiecewiseLinear<Rational>, PiecewiseLinear<Rational>>
increasing_pair(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

RecurrenceSystem skeletal_system(const Braid& skeleton);
// exact max |R_i| over skeleton anchors, and the same in floating point
Rational skeletal_residual_exact(const Braid& skeleton);
double skeletal_residual(const Braid& skeleton);

// throws MonotonicityViolation when d12 S <= 0 somewhere on the window grid
RecurrenceSystem from_generating(std::vector<GeneratingFunction> S, int d, double lo = -3, double hi = 3,
                                 int points = 25);
// same without the sampling check
RecurrenceSystem exact_system(std::vector<GeneratingFunction> S, int d);
GeneratingFunction allen_cahn_generator(double c = 1);
GeneratingFunction frenkel_kontorova_generator(double k);
RecurrenceSystem allen_cahn(int d, double c = 1);
RecurrenceSystem frenkel_kontorova(int d, double k);

RecurrenceSystem blend(const RecurrenceSystem& a, const RecurrenceSystem& b, double lambda);

struct CrossingEvent {
  double t;
  int i;
  int a, b;
  bool tangency;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<BraidD> states;
  std::vector<std::pair<int, int>> pairs;  // a < b, lexicographic
  std::vector<std::vector<int>> crossings;  // per time, per pair; -1 when the state sits on a tangency
  std::vector<CrossingEvent> events;
  int rejected_steps = 0;
};

Trajectory integrate(const BraidD& b0, const RecurrenceSystem& sys, double T, double tol = 1e-9);

struct ComparisonReport {
  int steps = 0;
  int increases = 0;
  int jumps = 0;        // nonzero changes of an orbit total
  int tangencies = 0;
  int mismatches = 0;   // jump differs from -2 per tangency
  int skipped = 0;
  bool ok() const { return increases == 0 && mismatches == 0; }
};
// crossing totals over tau-orbits of strand pairs, step by step against detected events
ComparisonReport comparison_report(const Trajectory& traj, const Permutation& tau);
// throws MonotonicityBreach
ComparisonReport verify_comparison(const Trajectory& traj, const Permutation& tau);

struct FixedPoint {
  BraidD braid;
  double residual = 0;
  std::vector<std::complex<double>> spectrum;
  int coindex = 0;  // eigenvalues with positive real part
  bool degenerate = false;
  int nullity = 0;
};

struct FixedPointSearch {
  std::vector<FixedPoint> solutions;
  long long morse_bound = 0;
  int seeds_used = 0;
  bool exhausted = false;  // fewer solutions than the bound
};

// free strand zeros of R inside the class; budget caps the Newton starts
FixedPointSearch find_fixed_points(const RecurrenceSystem& sys, const BraidClassComplex& cls, int budget,
                                   std::uint64_t seed = 1);
// damped Newton on a single tau = id strand; returns false when it stalls. tol 0 means sys.tol
bool newton_strand(const RecurrenceSystem& sys, Eigen::VectorXd& u, double tol = 0, int max_iter = 100);
Eigen::MatrixXd strand_jacobian(const RecurrenceSystem& sys, const Eigen::VectorXd& u);

} // namespace braidforce
