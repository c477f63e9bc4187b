#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "dseq/errors.hpp"

namespace dseq::arith {

// Overloads share names so templated kernels run unchanged on both numeric
// paths: the int64 versions throw ValueOverflow, the double versions never do.

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ValueOverflow("integer overflow in addition");
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw ValueOverflow("integer overflow in subtraction");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ValueOverflow("integer overflow in multiplication");
  return r;
}

inline std::int64_t neg(std::int64_t a) { return sub(0, a); }

inline std::int64_t abs(std::int64_t a) { return a < 0 ? neg(a) : a; }

inline double add(double a, double b) { return a + b; }
inline double sub(double a, double b) { return a - b; }
inline double mul(double a, double b) { return a * b; }
inline double neg(double a) { return -a; }
inline double abs(double a) { return std::fabs(a); }

/// True when v is an integer that converts to int64 without loss.
inline bool is_integral(double v) {
  return std::isfinite(v) && std::trunc(v) == v && std::fabs(v) < 9.2e18;
}

/// Converts a value produced on the floating path to the exact path.
inline std::int64_t to_exact(double v) {
  if (!is_integral(v)) throw ValueOverflow("value is not representable as a 64-bit integer");
  return static_cast<std::int64_t>(v);
}

}  // namespace dseq::arith
