#include "braidforce/braid_io.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace braidforce;
using bft::B;
using bft::Q;

TEST_CASE("rationals parse and print exactly") {
  CHECK(parse_rational("3/6") == Q(1, 2));
  CHECK(parse_rational("-7") == Q(-7));
  CHECK(format_rational(Q(-4, 6)) == "-2/3");
  CHECK(format_rational(Q(5)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), braid_error);
  CHECK_THROWS_AS(parse_rational("0.5"), braid_error);
  CHECK_THROWS_AS(parse_rational(""), braid_error);
  CHECK(to_rational(0.375) == Q(3, 8));
}

TEST_CASE("permutation cycles and composition") {
  Permutation p({1, 2, 0, 3});
  CHECK(p.cycles() == std::vector<std::vector<int>>{{0, 1, 2}, {3}});
  CHECK((p * p.inverted()).is_identity());
  CHECK(p.pow(3).is_identity());
  CHECK(p(2) == 0);
  CHECK(p.inverse(0) == 2);
  CHECK_THROWS(Permutation({0, 0}));
}

TEST_CASE("validate") {
  SUBCASE("transversal crossing through a swap") {
    auto r = validate(B({{0, 1, 2}, {2, 1, 0}}, {1, 0}));
    CHECK(r.regular());
  }
  SUBCASE("tangency") {
    auto r = validate(B({{0, 1, 0}, {2, 1, 2}}));
    CHECK(r.kind == BraidRegularity::Kind::singular);
    CHECK(r.codimension == 1);
    REQUIRE(r.witnesses.size() == 1);
    CHECK(r.witnesses[0] == SingularWitness{1, 0, 1});
  }
  SUBCASE("collapsed") {
    auto r = validate(B({{1, 1, 1}, {1, 1, 1}}));
    CHECK(r.kind == BraidRegularity::Kind::collapsed);
    CHECK(r.codimension >= 2);
  }
  SUBCASE("closure") {
    CHECK_THROWS_AS(validate(B({{0, 1, 2}})), braid_error);
  }
}

TEST_CASE("crossing counts and word metric") {
  CHECK(crossing_count(B({{0, 2, 0}, {2, 0, 2}}), 0, 1) == 2);
  CHECK(crossing_count(B({{0, 0, 0}, {1, 1, 1}}), 0, 1) == 0);
  CHECK(crossing_count(B({{0, 2, 0, 2, 0}, {1, 1, 1, 1, 1}}), 0, 1) == 4);
  CHECK(word_metric(B({{0, 2, 0}, {2, 0, 2}})) == 2);
  CHECK(word_metric(B({{3, 1, 3}})) == 0);
  CHECK(word_metric(B({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}})) == 0);
  CHECK_THROWS_AS(crossing_count(B({{0, 1, 0}, {2, 1, 2}}), 0, 1), braid_error);
}

TEST_CASE("dualize") {
  CHECK(dualize(B({{1, 2, 1}})) == B({{1, -2, 1}}));
  const Braid twist = dualize(B({{0, 0, 0}, {1, 1, 1}}));
  CHECK(twist == B({{0, 0, 0}, {1, -1, 1}}));
  CHECK(crossing_count(twist, 0, 1) == 2);
  CHECK_THROWS_AS(dualize(B({{0, 1, 2, 0}})), braid_error);
}

TEST_CASE("extend") {
  CHECK(extend(B({{1, 3, 1}})) == B({{1, 3, 1, 1}}));
  const Braid e = extend(B({{0, 1, 2}, {2, 1, 0}}, {1, 0}));
  CHECK(e.d() == 3);
  CHECK(e(0, 3) == 2);
  CHECK(e(1, 3) == 0);
  CHECK(validate(e).regular());
  try {
    extend(B({{0, 1, 2, -1, 0}, {0, -1, -2, 1, 0}}));
    FAIL("seam collision accepted");
  } catch (const braid_error& err) {
    CHECK(err.code() == errc::non_generic_at_seam);
  }
}

TEST_CASE("lift") {
  const Braid l = lift(B({{0, 2, 0}}), 2);
  CHECK(l == B({{0, 2, 0, 2, 0}}));
  const Braid pair = B({{0, 2, 0}, {1, 1, 1}});
  CHECK(crossing_count(lift(pair, 2), 0, 1) == 2 * crossing_count(pair, 0, 1));
  CHECK(lift(pair, 1) == pair);
}

TEST_CASE("augment") {
  const Braid v = B({{0, 5, 0}, {2, 1, 2}});
  const Braid c = augment(v, AugmentMode::constant);
  CHECK(c.n() == 4);
  CHECK(c.strand(2) == bft::B({{-1, -1, -1}}).strand(0));
  CHECK(c.strand(3) == bft::B({{6, 6, 6}}).strand(0));
  for (int a = 0; a < 2; ++a) {
    CHECK(crossing_count(c, a, 2) == 0);
    CHECK(crossing_count(c, a, 3) == 0);
  }
  const Braid u = augment(B({{0, 2, 0}}), AugmentMode::updown);
  CHECK(u.strand(1) == bft::B({{-2, 0, -2}}).strand(0));
}

TEST_CASE("up-down test") {
  CHECK(is_updown(B({{0, 2, 0}})));
  CHECK_FALSE(is_updown(B({{2, 0, 2}})));
  CHECK_THROWS_AS(is_updown(B({{0, 1, 2, 0}})), braid_error);
}

TEST_CASE("json round trip and errors") {
  const Braid b = B({{Q(1, 2), Q(-3), Q(1, 2)}, {Q(7, 3), Q(0), Q(7, 3)}});
  CHECK(braid_from_json(braid_to_json(b)) == b);
  const json j = parse_json_text(R"({"n":2,"d":2,"tau":[1,0],"strands":[["0","1","2"],[2,"1","0"]]})");
  CHECK(braid_from_json(j).tau()(0) == 1);
  CHECK_THROWS_AS(braid_from_json(parse_json_text(R"({"n":1,"d":2,"strands":[["1/0","1","1/0"]]})")), braid_error);
  try {
    parse_json_text("{\n \"n\": 1,\n \"d\": }");
    FAIL("malformed json accepted");
  } catch (const braid_error& e) {
    CHECK(e.code() == errc::parse_error);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  RelativeBraid r{B({{Q(3, 2), Q(3, 2), Q(3, 2)}}), B({{2, 3, 2}, {1, 0, 1}})};
  const RelativeBraid back = relative_from_json(relative_to_json(r));
  CHECK(back.free == r.free);
  CHECK(back.skeleton == r.skeleton);
}

namespace {

Braid random_regular(std::mt19937& rng, int n, int d) {
  for (;;) {
    MatQ m(n, d + 1);
    for (int a = 0; a < n; ++a) {
      for (int i = 0; i < d; ++i) m(a, i) = Rational(static_cast<int>(rng() % 11) - 5, 1 + static_cast<int>(rng() % 3));
      m(a, d) = m(a, 0);
    }
    Braid b(m);
    if (validate(b).regular()) return b;
  }
}

} // namespace

TEST_CASE("properties over random regular braids") {
  std::mt19937 rng(11);
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + static_cast<int>(rng() % 4), d = 2 * (1 + static_cast<int>(rng() % 3));
    const Braid b = random_regular(rng, n, d);
    CHECK(dualize(dualize(b)) == b);
    CHECK(validate(dualize(b)).regular());
    CHECK(validate(augment(b, AugmentMode::constant)).regular());
    CHECK(validate(lift(b, 2)).regular());
    if (generic_at_seam(b)) CHECK(word_metric(extend(b)) == word_metric(b));
    // relabeling commutes with validation
    std::vector<int> perm(n);
    for (int a = 0; a < n; ++a) perm[a] = n - 1 - a;
    CHECK(validate(select_strands(b, perm)).regular());
  }
}

TEST_CASE("two-strand duality flips the full twist") {
  std::mt19937 rng(3);
  for (int k = 0; k < 50; ++k) {
    const Braid b = random_regular(rng, 2, 2);
    const int i0 = crossing_count(b, 0, 1);
    CHECK(crossing_count(dualize(b), 0, 1) == 2 - i0);
  }
}
