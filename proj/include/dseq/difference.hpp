#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "dseq/config.hpp"
#include "dseq/convergence.hpp"
#include "dseq/matrix.hpp"
#include "dseq/seqcore.hpp"

namespace dseq {

/// (delta x)_mn = x_mn - x_{m,n-1} - x_{m-1,n} + x_{m-1,n-1}, zero-extended.
DoubleSequence delta(const DoubleSequence& x);

/// Rectangular prefix sums: x_jk = sum_{m<=j, n<=k} y_mn. Tabulation costs
/// O(1) per cell.
DoubleSequence inv_delta(const DoubleSequence& y);

/// Operator for the serialized names "delta" and "inv_delta"; nullptr otherwise.
std::shared_ptr<const SequenceOp> difference_op(std::string_view name);

struct RowResult {
  Index2 row;
  ConvergenceReport report;
};

/// Ax over a window of rows. `values` holds NaN for rows whose series was not
/// certified convergent.
struct MatApplyResult {
  Grid<double> values;
  std::vector<RowResult> rows;
};

/// Computes (Ax)_mn = rule-sum over (k, l) of a_mnkl x_kl for every row in
/// `rows`. Rows whose support fits in the schedule's largest window are
/// summed exactly; rows with unbounded support go through the rule certifier
/// on their rectangular partial sums; rows with finite support beyond the
/// largest window are reported inconclusive.
MatApplyResult apply_4d(const FourDimMatrix& a, const DoubleSequence& x, Rule rule, const Window& rows,
                        const WindowSchedule& sched, const RunConfig& cfg = {});

/// f_mnkl = sum_{i=m-1..m} sum_{j=n-1..n} (-1)^{m+n-i-j} e_ijkl, with rows at
/// negative indices taken as zero.
FourDimMatrix e_to_f(const FourDimMatrix& e);

}  // namespace dseq
