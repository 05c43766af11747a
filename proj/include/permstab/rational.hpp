#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace permstab {

/// Exact rational used for every measure in the library.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t num, std::int64_t den) {
  return Rational(BigInt(num), BigInt(den));
}

/// "p/q" in lowest terms. Integral values print without a denominator
/// ("0", "1").
std::string to_string(const Rational& r);

/// Accepts "p/q" or "p". Throws ParseError on malformed text or zero
/// denominator.
Rational parse_rational(std::string_view text);

}  // namespace permstab
