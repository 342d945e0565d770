#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace cubesense {

// All bound verification runs on exact big-integer rationals; floating point
// is reserved for entropy/log reporting where no comparison depends on it.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt binomial(int n, int k);
BigInt falling_factorial(BigInt x, int k);
BigInt factorial(int k);
BigInt ipow(BigInt base, int exp);

inline BigInt pow2(int e) { return BigInt{1} << e; }

// Serialized as "p/q" with q always explicit ("3/1"), canonical reduced form.
std::string rat_string(const Rational& r);
Rational parse_rational(std::string_view s);

}  // namespace cubesense
