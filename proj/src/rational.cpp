#include "braidforce/rational.hpp"
#include "braidforce/error.hpp"

#include <cmath>

namespace braidforce {

namespace {

bool integer_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t k = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (k == s.size()) return false;
  for (; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') return false;
  return true;
}

} // namespace

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!integer_literal(num) || !integer_literal(den) || den[0] == '-' || den[0] == '+')
    throw braid_error(errc::parse_error, "malformed rational \"" + s + "\"");
  Integer p(num[0] == '+' ? num.substr(1) : num);
  Integer q(den);
  if (q == 0) throw braid_error(errc::parse_error, "zero denominator in \"" + s + "\"");
  return Rational(p, q);
}

std::string format_rational(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational to_rational(double x) {
  if (!std::isfinite(x)) throw braid_error(errc::invalid_argument, "non-finite value");
  int e = 0;
  double m = std::frexp(x, &e);
  // m * 2^53 is an exact integer
  long long mi = static_cast<long long>(std::ldexp(m, 53));
  e -= 53;
  Rational r(mi);
  if (e > 0)
    r *= Rational(Integer(1) << e);
  else if (e < 0)
    r /= Rational(Integer(1) << -e);
  return r;
}

} // namespace braidforce
