#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "rainbow/errors.hpp"

namespace rainbow {

/// Exact nonnegative counts. Homomorphism counts outgrow 64 bits quickly.
using BigCount = boost::multiprecision::cpp_int;

/// Thrown by the checked 64-bit fast paths; callers retry with BigCount.
struct Overflow {};

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}

inline BigCount checked_add(const BigCount& a, const BigCount& b) { return a + b; }
inline BigCount checked_mul(const BigCount& a, const BigCount& b) { return a * b; }

inline std::string to_string(const BigCount& x) { return x.str(); }

inline BigCount big_pow(const BigCount& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

/// Nearest long double; correct to within one ulp of long double even when
/// the value exceeds double range.
inline long double to_long_double(const BigCount& x) {
  return x.convert_to<long double>();
}

/// log2 of a positive count; -inf for zero.
inline long double log2_of(const BigCount& x) {
  if (x == 0) return -std::numeric_limits<long double>::infinity();
  const std::size_t bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 60) return std::log2(to_long_double(x));
  // Keep the top 60 bits so the conversion cannot overflow.
  const std::size_t shift = bits - 60;
  const BigCount top = x >> shift;
  return std::log2(to_long_double(top)) + static_cast<long double>(shift);
}

/// Exact test count <= bound for a finite nonnegative floating bound:
/// count <= bound iff count <= floor(bound).
inline bool count_le_bound(const BigCount& count, long double bound) {
  if (std::isnan(bound)) return false;
  if (std::isinf(bound)) return bound > 0;
  if (bound < 0) return false;
  const long double fl = std::floor(bound);
  int exp = 0;
  const long double mant = std::frexp(fl, &exp);
  if (exp <= 63) {
    return count <= BigCount(static_cast<std::uint64_t>(fl));
  }
  // fl = mant * 2^exp with mant in [0.5, 1); 64 mantissa bits are exact.
  const auto scaled = static_cast<std::uint64_t>(std::ldexp(mant, 64));
  const BigCount whole = BigCount(scaled) << (exp - 64);
  return count <= whole;
}

/// bound - count as floating, for reporting only.
inline long double margin_of(long double bound, const BigCount& count) {
  return bound - to_long_double(count);
}

}  // namespace rainbow
