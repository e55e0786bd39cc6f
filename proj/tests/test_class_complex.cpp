#include "braidforce/corpus.hpp"
#include "braidforce/report.hpp"
#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace braidforce;
using bft::B;
using bft::Q;

TEST_CASE("box labels") {
  const Braid v = B({{1, 1, 1}, {3, 3, 3}});
  CHECK(box_of(B({{2, 2, 2}}), v) == BoxLabel{1, 1});
  CHECK(box_of(B({{0, 2, 0}}), v) == BoxLabel{0, 1});
  try {
    box_of(B({{3, 2, 3}}), v);
    FAIL("value on a skeleton anchor accepted");
  } catch (const braid_error& e) {
    CHECK(e.code() == errc::on_hyperplane);
  }
}

TEST_CASE("singular faces") {
  // u_1 rising through 2 meets (0,2,0) with both neighbours above it
  CHECK(face_is_singular({1, 1}, 1, +1, B({{0, 2, 0}, {2, 0, 2}})));
  // u_0 rising through 0 with u_2 below and u_1 above: a transversal crossing
  CHECK_FALSE(face_is_singular({0, 1, 0}, 0, +1, B({{0, 0, 0, 0}})));
  CHECK(face_is_singular({0, 1, 1}, 0, +1, B({{0, 0, 0, 0}})));
  CHECK_THROWS_AS(face_is_singular({1, 1}, 1, +1, B({{0, 0, 0}})), braid_error);
}

TEST_CASE("first example") {
  const CorpusEntry e = example1();
  const BraidClassComplex c = enumerate_class(e.free, e.skeleton);
  CHECK(c.boxes == std::vector<BoxLabel>{{2, 2}});
  CHECK(c.bounded);
  CHECK(c.proper);
  CHECK(c.signature == std::vector<int>{0, 0, 2, 2});
  const ExitSet ex = exit_set(c);
  int exits = 0;
  for (const auto& [face, is_exit] : ex.faces) {
    // the faces on which u_1 meets the skeleton leave, the u_0 faces enter
    CHECK(is_exit == (face[1] % 2 == 1));
    exits += is_exit;
  }
  CHECK(exits == 2);
  CHECK(ex.ties == 0);
}

TEST_CASE("second example is a solid torus with exit set the whole boundary") {
  const CorpusEntry e = example2();
  const BraidClassComplex c = enumerate_class(e.free, e.skeleton);
  CHECK(c.bounded);
  CHECK(c.proper);
  const ExitSet ex = exit_set(c);
  for (const auto& [face, is_exit] : ex.faces) CHECK(is_exit);
  // Euler characteristic of a solid torus is 0
  const CellSet cl = closed_cells(c);
  long long chi = 0;
  for (std::size_t k = 0; k < cl.by_dim.size(); ++k) chi += (k % 2 ? -1 : 1) * static_cast<long long>(cl.by_dim[k].size());
  CHECK(chi == 0);
}

TEST_CASE("census seeds over the double cover") {
  const Census c = example3(2);
  CHECK(c.seeds.size() == 9);
  int good = 0;
  for (const auto& s : c.seeds) {
    const BraidClassComplex cls = enumerate_class(s, c.skeleton);
    good += cls.bounded && cls.proper;
  }
  CHECK(good == 7);
}

TEST_CASE("every box lands in exactly one class") {
  const Braid v = example1().skeleton;
  const auto all = enumerate_all_classes(v);
  std::set<BoxLabel> seen;
  std::size_t total = 0;
  bool improper = false;
  for (const auto& c : all) {
    total += c.boxes.size();
    for (const auto& k : c.boxes) seen.insert(k);
    improper = improper || !c.proper;
    // signature is constant across the class
    for (const auto& k : c.boxes) {
      auto g = std::make_shared<const SkeletonGrid>(v);
      const BraidClassComplex again = enumerate_class(g->midpoint_strand(k), g);
      CHECK(again.signature == c.signature);
    }
  }
  CHECK(seen.size() == total);
  std::size_t expect = 1;
  const IntervalPartition P(v);
  for (int i = 0; i < P.d(); ++i) expect *= P.m(i) + 1;
  CHECK(total == expect);
  CHECK(improper);
}

TEST_CASE("a class touching a skeleton strand is improper") {
  // one skeleton strand, the free strand may slide onto it
  const BraidClassComplex c = enumerate_class(B({{Q(1, 2), Q(1, 2), Q(1, 2)}}), B({{0, 0, 0}, {2, -1, 2}}));
  CHECK_FALSE(c.proper);
  CHECK(check_proper(c) == c.proper);
}

TEST_CASE("exit set is a closed subcomplex and stable") {
  for (const auto& e : {example1(), example2(), comp_case(ForcingCase::I)}) {
    const BraidClassComplex c = enumerate_class(e.free, e.skeleton);
    const ExitSet a = exit_set(c), b = exit_set(c);
    CHECK(a.cells.by_dim == b.cells.by_dim);
    const CellSet cl = closed_cells(c);
    for (const auto& level : a.cells.by_dim)
      for (const auto& g : level) {
        CHECK(cl.contains(g));
        // every face of an exit cell is an exit cell
        for (std::size_t i = 0; i < g.size(); ++i) {
          if (g[i] % 2) continue;
          for (int s : {-1, 1}) {
            Cell f = g;
            f[i] += s;
            CHECK(a.cells.contains(f));
          }
        }
      }
  }
}

TEST_CASE("duality reflects box labels") {
  const CorpusEntry e = comp_case(ForcingCase::I);
  const BraidClassComplex c = enumerate_class(e.free, e.skeleton);
  const BraidClassComplex dc = enumerate_class(dualize(e.free), dualize(e.skeleton));
  REQUIRE(c.boxes.size() == dc.boxes.size());
  const IntervalPartition P(e.skeleton);
  std::set<BoxLabel> image;
  for (auto k : c.boxes) {
    for (int i = 1; i < P.d(); i += 2) k[i] = P.m(i) - k[i];
    image.insert(k);
  }
  CHECK(image == std::set<BoxLabel>(dc.boxes.begin(), dc.boxes.end()));
}

TEST_CASE("free classes merge after extension") {
  const CorpusEntry e = example1();
  CHECK(are_topologically_equal(e.free, e.free, e.skeleton));
  // different crossing data never merge
  CHECK_FALSE(are_topologically_equal(e.free, B({{Q(5, 2), Q(1, 2), Q(5, 2)}}), e.skeleton));
}

TEST_CASE("complex dump is ordered") {
  const CorpusEntry e = example2();
  const BraidClassComplex c = enumerate_class(e.free, e.skeleton);
  const ExitSet ex = exit_set(c);
  const json j = complex_to_json(c, ex);
  std::vector<BoxLabel> boxes = j.at("boxes").get<std::vector<BoxLabel>>();
  CHECK(std::is_sorted(boxes.begin(), boxes.end()));
  for (const auto& level : j.at("cells")) {
    std::vector<Cell> cells;
    for (const auto& x : level) cells.push_back(x.at("cell").get<Cell>());
    CHECK(std::is_sorted(cells.begin(), cells.end()));
    for (const auto& x : level) CHECK(x.at("exit").get<bool>() == ex.cells.contains(x.at("cell").get<Cell>()));
  }
  CHECK(complex_to_json(c, exit_set(c)).dump() == j.dump());
}
