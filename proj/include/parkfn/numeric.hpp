#pragma once

// Exact integer and rational helpers shared by the counting code.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <span>
#include <string>

#include "parkfn/errors.hpp"

namespace parkfn {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

inline BigInt factorial(std::int64_t n) {
  BigInt result = 1;
  for (std::int64_t i = 2; i <= n; ++i) result *= i;
  return result;
}

/// (p_1 + ... + p_k)! / (p_1! ... p_k!); the empty composition gives 1.
inline BigInt multinomial(std::span<const std::int64_t> parts) {
  BigInt result = 1;
  std::int64_t total = 0;
  for (auto p : parts) {
    if (p < 0) return 0;
    total += p;
    result *= binomial(total, p);
  }
  return result;
}

inline BigInt ipow(const BigInt& base, std::uint64_t exponent) {
  BigInt result = 1;
  BigInt b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

/// base^exponent for any integer exponent; 0^0 = 1.
inline Rational rpow(const Rational& base, std::int64_t exponent) {
  if (exponent >= 0) {
    const BigInt num = ipow(boost::multiprecision::numerator(base), static_cast<std::uint64_t>(exponent));
    const BigInt den = ipow(boost::multiprecision::denominator(base), static_cast<std::uint64_t>(exponent));
    return Rational(num, den);
  }
  if (base == 0) throw DomainError("zero raised to a negative power");
  return 1 / rpow(base, -exponent);
}

inline Rational rpow(std::int64_t base, std::int64_t exponent) { return rpow(Rational(base), exponent); }

/// True iff the rational has denominator 1.
inline bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

inline BigInt to_integer(const Rational& r) {
  if (!is_integer(r)) throw DomainError("expected an integer, got " + r.str());
  return boost::multiprecision::numerator(r);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

/// "p/q" or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.str(); }
inline std::string to_string(const BigInt& v) { return v.str(); }

inline Rational parse_rational(const std::string& text) {
  try {
    return Rational(text);
  } catch (const std::exception&) {
    throw ParseError("not a rational number: '" + text + "'");
  }
}

}  // namespace parkfn
