#include "braidforce/corpus.hpp"

namespace braidforce {

namespace {

Braid constant_strand(std::vector<Rational> u) {
  VecQ v(static_cast<Eigen::Index>(u.size()));
  for (std::size_t i = 0; i < u.size(); ++i) v(static_cast<Eigen::Index>(i)) = u[i];
  return closed_strand(v);
}

MatQ example1_rows() {
  MatQ m(4, 3);
  m << 2, 3, 2, 1, 0, 1, 0, 2, 0, 3, 1, 3;
  return m;
}

} // namespace

CorpusEntry example1() {
  return {"example1", constant_strand({Rational(3, 2), Rational(3, 2)}), Braid(example1_rows()), "t"};
}

CorpusEntry example2() {
  MatQ m(4, 4);
  m << 2, 3, 1, 2, 4, 0, 4, 1, 2, 4, 2, 2, 1, 5, 0, 4;
  Braid v(m, Permutation({2, 3, 0, 1}));
  // no stably bounded realization of this skeleton is known; use v* for extensions
  return {"example2", constant_strand({Rational(3, 2), Rational(3, 2), Rational(3)}), v, "t^2 + t^3", true};
}

Census example3(int n) {
  if (n < 1) throw braid_error(errc::invalid_argument, "cover degree must be positive");
  Census c;
  c.skeleton = lift(Braid(example1_rows()), n);
  int combos = 1;
  for (int k = 0; k < n; ++k) combos *= 3;
  for (int code = 0; code < combos; ++code) {
    std::vector<Rational> u(2 * n);
    for (int k = 0, x = code; k < n; ++k, x /= 3) {
      u[2 * k] = Rational(3, 2);
      u[2 * k + 1] = Rational(2 * (x % 3) + 1, 2);
    }
    c.seeds.push_back(constant_strand(u));
  }
  return c;
}

CorpusEntry comp_case(ForcingCase c) {
  switch (c) {
    case ForcingCase::I:
      return {"caseI", canonical_free(c, 1, 4, 3), canonical_skeleton(c, 1, 4, 3), "t + t^2"};
    case ForcingCase::II:
      return {"caseII", canonical_free(c, 2, 1, 3), canonical_skeleton(c, 2, 1, 3), "t^4 + t^5"};
    case ForcingCase::III:
      return {"caseIII*", canonical_free(c, 1, 4, 3), augment(canonical_skeleton(c, 1, 4, 3), AugmentMode::constant),
              "t + t^2"};
  }
  throw braid_error(errc::invalid_argument, "unknown case");
}

std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> out{example1(), example2()};
  const Census c = example3(2);
  auto grid = std::make_shared<const SkeletonGrid>(c.skeleton);
  for (std::size_t k = 0; k < c.seeds.size(); ++k) {
    const BraidClassComplex cls = enumerate_class(c.seeds[k], grid);
    if (!(cls.bounded && cls.proper)) continue;
    out.push_back({"example3.n2." + std::to_string(k), c.seeds[k], c.skeleton, format_cp(conley_index(cls).cp)});
  }
  for (ForcingCase f : {ForcingCase::I, ForcingCase::II, ForcingCase::III}) out.push_back(comp_case(f));
  return out;
}

} // namespace braidforce
