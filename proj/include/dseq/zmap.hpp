#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dseq/seqcore.hpp"

namespace dseq {

/// Square-shell enumeration of pairs of positive integers:
/// phi(m, n) = (n-1)^2 + m when n >= m, m^2 - n + 1 when m > n.
/// Throws IndexOutOfDomain unless m, n >= 1.
std::int64_t phi(std::int64_t m, std::int64_t n);

/// Inverse of phi; throws IndexOutOfDomain unless i >= 1.
std::pair<std::int64_t, std::int64_t> phi_inv(std::int64_t i);

/// Same enumeration on 0-based pairs and 0-based positions.
std::int64_t phi_zero_based(std::int64_t m, std::int64_t n);
std::pair<std::int64_t, std::int64_t> phi_inv_zero_based(std::int64_t i);

/// z_i = x at phi_inv(i) shifted to 0-based indices, for i = 1..count.
std::vector<double> flatten(const DoubleSequence& x, std::int64_t count);

}  // namespace dseq
