#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Dense>

namespace psc {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator. Expression templates are off so that the type composes with
/// Eigen's own expression machinery.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RationalVector = DenseVector<Rational>;
using RationalMatrix = DenseMatrix<Rational>;

/// Parses "p/q", "p", or "-p/q". Throws std::invalid_argument on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "5/12", "1", "0", "-1/3".
std::string format_rational(const Rational& value);

inline Integer numerator_of(const Rational& value) {
  return boost::multiprecision::numerator(value);
}
inline Integer denominator_of(const Rational& value) {
  return boost::multiprecision::denominator(value);
}

}  // namespace psc
