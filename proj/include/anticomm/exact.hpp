#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace anticomm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// (n)!! with the conventions (-1)!! = 0!! = 1.
inline BigInt double_factorial(long n) {
  BigInt r = 1;
  for (long i = n; i > 1; i -= 2) r *= i;
  return r;
}

inline BigInt factorial(long n) {
  BigInt r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline BigInt pow_int(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

inline Rational pow_rational(const Rational& base, int exponent) {
  Rational r = 1;
  const Rational b = exponent >= 0 ? base : Rational(1) / base;
  for (int i = 0; i < (exponent >= 0 ? exponent : -exponent); ++i) r *= b;
  return r;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const BigInt& n) { return n.convert_to<double>(); }

inline std::string to_decimal(const BigInt& n) { return n.str(); }

inline std::string to_fraction(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

}  // namespace anticomm
