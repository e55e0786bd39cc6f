#include "braidforce/corpus.hpp"
#include "braidforce/report.hpp"
#include "support.hpp"

#include <doctest.h>

#include <iostream>

using namespace braidforce;
using bft::B;
using bft::Q;

TEST_CASE("point and interval") {
  ChainComplex pt;
  pt.add_cell(0, {});
  CHECK(homology(pt).cp == std::vector<long long>{1});
  ChainComplex seg;
  const int a = seg.add_cell(0, {}), b = seg.add_cell(0, {});
  seg.add_cell(1, {{a, -1}, {b, 1}});
  CHECK(homology(seg).betti == std::vector<long long>{1});
  ChainComplex bad;
  const int x = bad.add_cell(0, {});
  const int e = bad.add_cell(1, {{x, 1}});
  bad.add_cell(2, {{e, 1}});
  CHECK_THROWS(bad.check_square_zero());
}

TEST_CASE("torsion shows up in the normal form") {
  // a 2-cell wrapped twice around a circle: projective plane
  ChainComplex rp;
  const int v = rp.add_cell(0, {});
  const int e = rp.add_cell(1, {{v, 0}});
  rp.add_cell(2, {{e, 2}});
  const ConleyIndex h = homology(rp);
  CHECK(h.betti == std::vector<long long>{1, 0});
  CHECK(h.has_torsion());
  CHECK(h.torsion[1] == std::vector<std::string>{"2"});
}

TEST_CASE("example indices") {
  const CorpusEntry e1 = example1();
  const ConleyIndex h1 = conley_index(enumerate_class(e1.free, e1.skeleton));
  CHECK(h1.betti == std::vector<long long>{0, 1});
  CHECK(format_cp(h1.cp) == "t");
  CHECK(h1.euler == -1);
  const CorpusEntry e2 = example2();
  const ConleyIndex h2 = conley_index(enumerate_class(e2.free, e2.skeleton));
  CHECK(format_cp(h2.cp) == "t^2 + t^3");
  CHECK(format_cp(h2.cp, true) == "t^2 + t^3");
  CHECK(h2.euler == 0);
}

TEST_CASE("formatting") {
  CHECK(format_cp({0, 1, 1}) == "t + t^2");
  CHECK(format_cp({0, 1, 1}, true) == "t^1 + t^2");
  CHECK(format_cp({1}) == "1");
  CHECK(format_cp({}) == "0");
  CHECK(format_cp({2, 0, 3}) == "2 + 3t^2");
  const json j = index_to_json(make_index({0, 1, 1}));
  CHECK(j.at("cp") == "t^1 + t^2");
  CHECK(j.at("euler") == 0);
  CHECK(j.at("betti") == json({0, 1, 1}));
}

TEST_CASE("morse bounds") {
  const ConleyIndex a = make_index({0, 1, 1});
  CHECK(morse_bounds(a, MorseRegime::exact) == 2);
  CHECK(morse_bounds(a, MorseRegime::exact_nondegenerate) == 2);
  CHECK(morse_bounds(a, MorseRegime::non_exact) == 0);
  CHECK(morse_bounds(a, MorseRegime::non_exact_nondegenerate) == 0);
  const ConleyIndex b = make_index({0, 0, 1});
  CHECK(morse_bounds(b, MorseRegime::non_exact) == 1);
  CHECK(morse_bounds(b, MorseRegime::non_exact_nondegenerate) == 1);
  const ConleyIndex c = make_index({0, 2, 0, 1});
  CHECK(morse_bounds(c, MorseRegime::exact_nondegenerate) == 3);
  CHECK(morse_bounds(c, MorseRegime::exact) == 2);
}

TEST_CASE("wedge adds polynomials") {
  const Census c = example3(2);
  std::vector<BraidClassComplex> parts;
  std::vector<long long> sum;
  for (const auto& s : c.seeds) {
    const BraidClassComplex cls = enumerate_class(s, c.skeleton);
    if (!(cls.bounded && cls.proper)) continue;
    const auto cp = conley_index(cls).cp;
    if (parts.size() == 2) break;
    if (!parts.empty() && cls.signature != parts[0].signature) continue;
    parts.push_back(cls);
    if (sum.size() < cp.size()) sum.resize(cp.size());
    for (std::size_t k = 0; k < cp.size(); ++k) sum[k] += cp[k];
  }
  REQUIRE(!parts.empty());
  CHECK(wedge_index({parts[0]}).cp == conley_index(parts[0]).cp);
  if (parts.size() == 2) CHECK(wedge_index(parts).cp == sum);
}

TEST_CASE("duality on small classes") {
  const CorpusEntry e1 = example1();
  const DualityReport r = verify_duality(e1.free, e1.skeleton);
  CHECK(r.holds);
  CHECK(format_cp(r.dual.cp) == "t");
  const CorpusEntry c1 = comp_case(ForcingCase::I);
  const DualityReport r1 = verify_duality(c1.free, c1.skeleton);
  CHECK(r1.holds);
  CHECK(format_cp(r1.dual.cp) == "t^4 + t^5");
}

TEST_CASE("stabilization of the first example") {
  const CorpusEntry e1 = example1();
  const StabilizationReport s = verify_stabilization(e1.free, e1.skeleton, 2);
  CHECK(s.holds);
  REQUIRE(s.indices.size() == 3);
  for (const auto& h : s.indices) CHECK(format_cp(h.cp) == "t");
}

TEST_CASE("second example through its augmented skeleton") {
  const CorpusEntry e2 = example2();
  const Braid vs = augment(e2.skeleton, AugmentMode::constant);
  CHECK(format_cp(conley_index(enumerate_class(e2.free, vs)).cp) == "t^2 + t^3");
  const StabilizationReport s = verify_stabilization(e2.free, vs, 1);
  CHECK(s.holds);
}

TEST_CASE("shift under double extension") {
  const CorpusEntry e1 = example1();
  const ShiftReport r = shift_check(e1.free, augment(e1.skeleton, AugmentMode::constant));
  CHECK(r.holds);
  REQUIRE(r.dual.cp.size() + 2 == r.dual_extended.cp.size());
  for (std::size_t k = 0; k < r.dual.cp.size(); ++k) CHECK(r.dual.cp[k] == r.dual_extended.cp[k + 2]);
  const ShiftReport twice = shift_check(e1.free, augment(e1.skeleton, AugmentMode::constant), 2);
  CHECK(twice.holds);
  CHECK(twice.dual_extended.cp.size() == r.dual.cp.size() + 4);
}

TEST_CASE("index dimension never exceeds the period and torsion is logged") {
  int torsion = 0;
  for (const auto& e : corpus()) {
    const ConleyIndex h = conley_index(enumerate_class(e.free, e.skeleton));
    CHECK(format_cp(h.cp) == e.cp);
    for (std::size_t k = e.skeleton.d() + 1; k < h.betti.size(); ++k) CHECK(h.betti[k] == 0);
    torsion += h.has_torsion();
  }
  MESSAGE("classes with torsion in the corpus: " << torsion);
}

TEST_CASE("svg rendering") {
  const CorpusEntry e = example1();
  const Braid all = stack(e.free, e.skeleton);
  const std::string svg = render_svg(all, 1);
  CHECK(svg == render_svg(all, 1));
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("#888888") != std::string::npos);
  CHECK(svg.find("<circle") == std::string::npos);
  // a tangency at i = 1 gets a marker
  const std::string sing = render_svg(B({{0, 1, 0}, {1, 1, 1}}));
  CHECK(sing.find("<circle") != std::string::npos);
  CHECK(sing.find("#888888") == std::string::npos);
}
