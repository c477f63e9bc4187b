#include "dseq/zmap.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dseq/errors.hpp"

namespace dseq {

namespace {

// Largest shell whose square still fits in int64.
constexpr std::int64_t kMaxShell = 3037000499;

std::int64_t isqrt(std::int64_t v) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && (r > kMaxShell || r * r > v)) --r;
  while (r < kMaxShell && (r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace

std::int64_t phi(std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 1)
    throw IndexOutOfDomain("phi is defined on positive integers, got (" + std::to_string(m) + ", " +
                           std::to_string(n) + ")");
  if (std::max(m, n) > kMaxShell) throw ValueOverflow("phi argument too large");
  if (n >= m) return (n - 1) * (n - 1) + m;
  return m * m - n + 1;
}

std::pair<std::int64_t, std::int64_t> phi_inv(std::int64_t i) {
  if (i < 1) throw IndexOutOfDomain("phi_inv is defined on positive integers, got " + std::to_string(i));
  std::int64_t r = isqrt(i);
  std::int64_t s = r * r == i ? r : r + 1;
  std::int64_t offset = i - (s - 1) * (s - 1);
  if (offset <= s) return {offset, s};
  return {s, s * s - i + 1};
}

std::int64_t phi_zero_based(std::int64_t m, std::int64_t n) {
  if (m < 0 || n < 0) throw IndexOutOfDomain("0-based phi needs nonnegative indices");
  return phi(m + 1, n + 1) - 1;
}

std::pair<std::int64_t, std::int64_t> phi_inv_zero_based(std::int64_t i) {
  if (i < 0) throw IndexOutOfDomain("0-based phi_inv needs a nonnegative position");
  auto [m, n] = phi_inv(i + 1);
  return {m - 1, n - 1};
}

std::vector<double> flatten(const DoubleSequence& x, std::int64_t count) {
  if (count < 1) throw InvalidArgument("flatten needs count >= 1");
  std::vector<double> z;
  z.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 1; i <= count; ++i) {
    auto [m, n] = phi_inv(i);
    z.push_back(x.at(m - 1, n - 1));
  }
  return z;
}

}  // namespace dseq
