// Exact rationals for epsilon-type parameters and probability bounds.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace rsinsdel {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt floor(const Rational& x);
BigInt ceil(const Rational& x);
double to_double(const Rational& x);
std::string to_string(const Rational& x);

/// Accepts "a/b", integers, and finite decimals ("0.3" is exactly 3/10).
/// Throws std::invalid_argument otherwise.
Rational parse_rational(const std::string& text);

BigInt binomial(std::uint64_t n, std::uint64_t k);

inline Rational rational(std::int64_t num, std::int64_t den = 1) { return Rational(num, den); }

}  // namespace rsinsdel
