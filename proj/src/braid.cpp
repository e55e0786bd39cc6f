#include "braidforce/braid.hpp"

namespace braidforce {

const char* kind_name(BraidRegularity::Kind k) {
  switch (k) {
  case BraidRegularity::Kind::regular: return "Regular";
  case BraidRegularity::Kind::singular: return "Singular";
  case BraidRegularity::Kind::collapsed: return "Collapsed";
  }
  return "?";
}

Braid nudge_seam(const Braid& b, const Braid* fixed) {
  b.check_closure();
  if (fixed && fixed->d() != b.d()) throw braid_error(errc::invalid_argument, "periods differ");
  const int d = b.d();
  Braid all = fixed ? stack(b, *fixed) : b;
  bool tied = false;
  for (int a = 0; a < b.n() && !tied; ++a)
    for (int c = a + 1; c < all.n(); ++c)
      if (all(a, d) == all(c, d)) tied = true;
  if (!tied) return b;

  Rational gap = 0;
  for (int i = 0; i <= d; ++i)
    for (int a = 0; a < all.n(); ++a)
      for (int c = a + 1; c < all.n(); ++c) {
        Rational g = abs(Rational(all(a, i) - all(c, i)));
        if (g != 0 && (gap == 0 || g < gap)) gap = g;
      }
  if (gap == 0) gap = 1;
  const Rational eps = gap / (2 * (b.n() + 2));

  MatQ m = b.anchors();
  for (int a = 0; a < b.n(); ++a) {
    const Rational shift = eps * (a + 1);
    m(a, d) += shift;
    m(b.tau()(a), 0) += shift;
  }
  return Braid(std::move(m), b.tau());
}

} // namespace braidforce
