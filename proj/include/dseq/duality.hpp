#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "dseq/config.hpp"
#include "dseq/convergence.hpp"
#include "dseq/matrix.hpp"
#include "dseq/seqcore.hpp"

namespace dseq {

/// b_mnij = sum of a over the rectangle [i..m] x [j..n] for rows (m, n) inside
/// `w`; rows outside `w` are zero. Built from one prefix-sum table of a.
FourDimMatrix b_matrix(const DoubleSequence& a, const Window& w);

/// z_mn = sum_{i<=m, j<=n} a_ij x_ij.
DoubleSequence pairing_partial_sums(const DoubleSequence& a, const DoubleSequence& x);

enum class DualVerdict { holds, fails, inconclusive };
std::string_view to_string(DualVerdict v);

struct DualConditionReport {
  std::string condition;  // "F1", "F2", "F3", "Lu_abs" or "alpha"
  DualVerdict verdict = DualVerdict::inconclusive;
  /// Certified value of the underlying sum or limit when the verdict is `holds`.
  std::optional<double> value;
  /// Fixed index j0 (F2) or i0 (F3).
  std::optional<Index> index;
  ConvergenceReport report;
};

/// sum (i+1)(j+1)|a_ij| < inf.
DualConditionReport check_F1(const DoubleSequence& a, const RunConfig& cfg = {});
/// r-limit over (m, n) of sum_{i<=m} sum_{p=i..m} sum_{q=j0..n} a_pq exists.
DualConditionReport check_F2(const DoubleSequence& a, Index j0, const RunConfig& cfg = {});
/// r-limit over (m, n) of sum_{j<=n} sum_{p=i0..m} sum_{q=j..n} a_pq exists.
DualConditionReport check_F3(const DoubleSequence& a, Index i0, const RunConfig& cfg = {});
/// sum |a_ij| < inf.
DualConditionReport check_Lu_abs(const DoubleSequence& a, const RunConfig& cfg = {});

/// Certifies the monotone partial sums of |a_ij x_ij|.
ConvergenceReport alpha_pairing_abs(const DoubleSequence& a, const DoubleSequence& x, const RunConfig& cfg = {});

DualConditionReport as_condition(std::string condition, ConvergenceReport rep);

}  // namespace dseq
