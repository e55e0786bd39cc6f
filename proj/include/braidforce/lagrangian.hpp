#pragma once

#include "flows.hpp"

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace braidforce {

enum class LagrangianKind { first_order, second_order };

// first order: L = v^2/2 + lambda F(u)
// second order (Swift-Hohenberg): L = w^2/2 - v^2 + F(u), F = u^4/4 + (1-alpha) u^2/2
struct LagrangianModel {
  LagrangianKind kind = LagrangianKind::first_order;
  double lambda = 1;
  double alpha = 0;
  double delta = 1;  // lower bound for d^2 L / dw^2
  std::string potential;
  std::function<double(double)> F, dF, d2F;

  double L(double u, double v, double w = 0) const;
  double rest(double u) const;        // L(u, 0, 0)
  double rest_slope(double u) const;  // dL/du (u, 0, 0)
};

// potential: quadratic, double-well, four-well
LagrangianModel first_order_model(double lambda, const std::string& potential);
LagrangianModel swift_hohenberg(double alpha);
// d^2 L / dw^2 >= delta sampled on a grid; always true for the built-in models
bool convexity_holds(const LagrangianModel& m, double lo = -5, double hi = 5, int points = 21);

struct IntervalComponent {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  std::vector<double> equilibria;  // zeros of dL/du (u,0,0) inside
  bool regular = true;
};

// components of {u : L(u,0,0) + E >= 0} found by bracketing on [-window, window];
// throws WindowTooSmall when a component reaches the edge without growth
std::vector<IntervalComponent> interval_components(const LagrangianModel& m, double E, double window = 20,
                                                   int samples = 4000);

struct Lap {
  double S = 0;
  double tau = 0;  // lap length
  std::vector<double> x, u;
  double energy_drift = 0;  // first order: spread of v^2/2 - lambda F along the lap
};

// first order: fixed length 1 boundary value problem by shooting.
// second order: monotone collocation with free length, log-gap parameters.
Lap lap_action(const LagrangianModel& m, double E, double u1, double u2, int nodes = 64);

// S and its partials through lap_action with central differences, memoized; negated for first order.
// systems built on it should set tol to lap_tolerance
GeneratingFunction lap_generating_function(const LagrangianModel& m, double E, int nodes = 64);
constexpr double lap_tolerance = 1e-10;
// exact system of period d from the laps of m at energy E; up-down for second order models
RecurrenceSystem lap_system(const LagrangianModel& m, double E, int d, int nodes = 64);

// R_i = d2 S(u_{i-1}, u_i) + d1 S(u_i, u_{i+1}) on the up-down domain; A1 sampled off the diagonal
RecurrenceSystem updown_system(const GeneratingFunction& S, int d, double eps, double lo = -3, double hi = 3,
                               int points = 9);

struct DiagonalTrend {
  std::vector<double> values;  // R_i(r, r + eps / 2^k, t)
  bool to_plus_infinity = false;
};
DiagonalTrend diagonal_trend(const RecurrenceSystem& sys, int i, double r, double t, double eps, int halvings = 6);

enum class ForcingCase { I, II, III };
ForcingCase parse_case(const std::string& s);
const char* case_name(ForcingCase c);

// period-2p skeleton; crossing data checked before return, throws Infeasible.
// with the carrier every strand gets an alternating offset and the result is up-down
Braid canonical_skeleton(ForcingCase c, int q, int r, int p, bool carrier = true);
// free strand of the forced class for the same parameters
Braid canonical_free(ForcingCase c, int q, int r, int p, bool carrier = true);
// r used when the caller gives none: min(2q + 2, 2p) for I and III, max(2q - 3, 0) for II
int default_r(ForcingCase c, int q, int p);
// the two strands whose intersection number with the free strand is 2q
std::pair<int, int> linked_pair(ForcingCase c);

// Newton on each tau-cycle of a skeleton guess; throws NoneFound if the crossing data changes
Braid settle_skeleton(const RecurrenceSystem& sys, const Braid& guess, double tol = 0);

struct ForcedSolution {
  FixedPoint point;
  std::vector<int> linking;  // crossing number with each skeleton strand
  std::vector<std::pair<double, double>> profile;  // (x, u) concatenated laps, empty without a model
};

// zeros of sys in the class of seed rel skeleton with the seed's linking data, residual < 1e-8;
// throws NoneFound
std::vector<ForcedSolution> forced_characteristics(const RecurrenceSystem& sys, const Braid& skeleton,
                                                   const Braid& seed, int budget,
                                                   const LagrangianModel* model = nullptr, double E = 0);

// some probe pair beyond the hull satisfies the dissipativity signs; probes inside throw
bool dissipativity_check(const GeneratingFunction& S, const std::vector<std::pair<double, double>>& probes,
                         double hull_lo, double hull_hi);
// half-line version on [ubar, inf)
bool dissipativity_check(const GeneratingFunction& S, double ubar, const std::vector<double>& probes,
                         double hull_hi);

} // namespace braidforce
