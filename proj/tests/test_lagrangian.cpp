#include "braidforce/corpus.hpp"
#include "braidforce/lagrangian.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace braidforce;

TEST_CASE("harmonic lap against the closed form") {
  // u'' = lambda u on [0, 1]
  const double lambda = 0.5, w = std::sqrt(lambda);
  const LagrangianModel m = first_order_model(lambda, "quadratic");
  for (auto [a, b] : {std::pair{0.3, 0.9}, std::pair{-1.0, 0.5}, std::pair{0.0, 0.0}}) {
    const Lap lap = lap_action(m, 0, a, b);
    const double exact = w * ((a * a + b * b) * std::cosh(w) - 2 * a * b) / (2 * std::sinh(w));
    CHECK(lap.S == doctest::Approx(exact).epsilon(1e-6).scale(1));
    CHECK(lap.energy_drift < 1e-6);
    CHECK(lap.tau == 1);
  }
}

TEST_CASE("lap action is symmetric under u -> -u for even potentials") {
  for (const char* pot : {"double-well", "four-well"}) {
    const LagrangianModel m = first_order_model(0.5, pot);
    const double s1 = lap_action(m, 0, 0.4, -0.7).S;
    const double s2 = lap_action(m, 0, -0.4, 0.7).S;
    CHECK(s1 == doctest::Approx(s2).epsilon(1e-9));
  }
}

TEST_CASE("lap generating function has positive twist") {
  const GeneratingFunction S = lap_generating_function(first_order_model(1, "double-well"), 0);
  for (double x : {-0.8, 0.1, 0.6})
    for (double y : {-0.5, 0.4}) CHECK(S.d12(x, y) > 0);
}

TEST_CASE("interval components") {
  const LagrangianModel sh = swift_hohenberg(2);
  // F = u^4/4 - u^2/2, minimum -1/4 at u = +-1
  const auto big = interval_components(sh, 5);
  CHECK(big.size() == 1);
  CHECK(std::isinf(big[0].lo));
  CHECK(std::isinf(big[0].hi));
  CHECK(big[0].equilibria.size() == 3);
  const auto two = interval_components(sh, 0.1);
  REQUIRE(two.size() == 3);
  CHECK(std::isinf(two[0].lo));
  CHECK(two[1].lo == doctest::Approx(-std::sqrt(1 - std::sqrt(0.6))).epsilon(1e-6));
  CHECK(two[1].equilibria.size() == 1);
  CHECK(interval_components(sh, -0.25).size() == 2);
  CHECK(std::isinf(two[2].hi));
  // the level -(alpha-1)^2/4 touches the wells
  const auto touch = interval_components(sh, 0.25);
  bool singular = false;
  for (const auto& c : touch) singular |= !c.regular;
  CHECK(singular);
  CHECK_THROWS_AS(interval_components(first_order_model(-1, "quadratic"), 0, 2, 100), braid_error);
}

TEST_CASE("convexity") {
  CHECK(convexity_holds(swift_hohenberg(1.5)));
  CHECK(convexity_holds(first_order_model(2, "four-well")));
}

TEST_CASE("canonical skeleta carry the prescribed crossing data") {
  for (ForcingCase c : {ForcingCase::I, ForcingCase::III}) {
    const Braid v = canonical_skeleton(c, 1, 4, 3);
    CHECK(validate(v).regular());
    CHECK(is_updown(v));
    const auto [a, b] = linked_pair(c);
    CHECK(crossing_count(v, a, b) == 4);
    const Braid u = canonical_free(c, 1, 4, 3);
    CHECK(crossing_count(stack(u, v), 0, a + 1) == 2);
    CHECK(crossing_count(stack(u, v), 0, b + 1) == 2);
  }
  const Braid w = canonical_skeleton(ForcingCase::II, 2, 1, 3);
  CHECK(validate(w).regular());
  CHECK(w.d() == 6);
  CHECK_THROWS_AS(canonical_skeleton(ForcingCase::I, 2, 4, 3), braid_error);
  CHECK(default_r(ForcingCase::I, 1, 3) == 4);
  CHECK(default_r(ForcingCase::II, 2, 3) == 1);
  CHECK(parse_case("II") == ForcingCase::II);
  CHECK_THROWS_AS(parse_case("IV"), braid_error);
}

TEST_CASE("canonical classes reproduce the comp indices") {
  CHECK(format_cp(conley_index(enumerate_class(comp_case(ForcingCase::I).free, comp_case(ForcingCase::I).skeleton)).cp) == "t + t^2");
  CHECK(format_cp(conley_index(enumerate_class(comp_case(ForcingCase::II).free, comp_case(ForcingCase::II).skeleton)).cp) == "t^4 + t^5");
}

TEST_CASE("dissipativity") {
  GeneratingFunction coercive;
  coercive.S = [](double x, double y) { return -0.5 * (x - y) * (x - y) + 0.25 * (x * x * x * x + y * y * y * y); };
  CHECK(dissipativity_check(coercive, {{-5, 5}, {-8, 9}}, -4, 4));
  CHECK_THROWS_AS(dissipativity_check(coercive, {{-0.5, 0.5}}, -4, 4), braid_error);
  GeneratingFunction flat;
  flat.S = [](double x, double y) { return -0.5 * (x - y) * (x - y); };
  CHECK_FALSE(dissipativity_check(flat, {{-5, 5}, {-8, 9}, {-20, 20}}, -4, 4));
  CHECK(dissipativity_check(coercive, 0.5, {6, 10}, 4));
  CHECK_FALSE(dissipativity_check(flat, 0.5, {6, 10}, 4));
}

TEST_CASE("diagonal trend of an up-down system") {
  const LagrangianModel sh = swift_hohenberg(2);
  const RecurrenceSystem sys = lap_system(sh, 0.5, 2, 24);
  CHECK(sys.domain == DomainKind::updown);
  CHECK(sys.tol == lap_tolerance);
  const GeneratingFunction S = lap_generating_function(sh, 0.5, 24);
  CHECK(S.d12(-0.9, 0.6) > 0);
  const Lap lap = lap_action(sh, 0.5, -0.9, 0.6, 24);
  CHECK(lap.tau > 0);
  CHECK(lap.x.front() == 0);
  CHECK(lap.u.front() == doctest::Approx(-0.9));
  CHECK(lap.u.back() == doctest::Approx(0.6));
  for (std::size_t k = 1; k < lap.u.size(); ++k) CHECK(lap.u[k] >= lap.u[k - 1]);
}

TEST_CASE("forced characteristics of the allen-cahn system") {
  const RecurrenceSystem sys = allen_cahn(6, 3.1);
  const Braid v = settle_skeleton(sys, canonical_skeleton(ForcingCase::I, 1, 4, 3, false));
  CHECK(sys.residual(v.cast<double>()).cwiseAbs().maxCoeff() < 1e-10);
  const auto sols = forced_characteristics(sys, v, canonical_free(ForcingCase::I, 1, 4, 3, false), 120);
  CHECK(sols.size() >= 2);
  for (const auto& s : sols) CHECK(s.linking == std::vector<int>{0, 0, 2, 2});
}
