#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <string>

namespace braidforce {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatQ = Mat<Rational>;
using VecQ = Vec<Rational>;

// "p/q" or "p"; rejects decimals, blanks and zero denominators
Rational parse_rational(const std::string& s);
std::string format_rational(const Rational& q);

// exact conversion, every finite double is dyadic
Rational to_rational(double x);

template <typename Scalar>
double to_double(const Scalar& x) {
  if constexpr (std::is_arithmetic_v<Scalar>)
    return static_cast<double>(x);
  else
    return x.template convert_to<double>();
}

template <typename Scalar>
int sign(const Scalar& x) {
  return (x > 0) - (x < 0);
}

} // namespace braidforce
