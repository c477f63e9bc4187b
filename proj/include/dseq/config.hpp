#pragma once

#include <cstdint>
#include <vector>

#include "dseq/seqcore.hpp"

namespace dseq {

/// Tunables shared by every certifier.
struct RunConfig {
  /// Tail residual accepted as convergence.
  double tol = 1e-8;
  /// Sup ratio between consecutive windows that counts as unbounded growth.
  double growth_factor = 2.0;
  /// Leading rows and columns checked individually for regular convergence.
  Index fringe = 4;
  /// Window sides for sequence certifiers (squares of side 2^t, t = 3..10).
  std::vector<Index> schedule_sides = {8, 16, 32, 64, 128, 256, 512, 1024};
  /// Window sides over row indices (m, n) for matrix batteries. The tail of
  /// the second-to-last window must start past prefix_p.
  std::vector<Index> matrix_sides = {16, 32, 64, 128};
  /// Entrywise matrix conditions are checked on (k, l) in [0..prefix_p]^2.
  Index prefix_p = 16;
  std::uint64_t cell_cap = kDefaultCellCap;
  /// Relative sup increase over the last schedule step still counted as bounded.
  double bound_slack = 1e-3;

  WindowSchedule schedule() const { return WindowSchedule::squares(schedule_sides); }
  WindowSchedule matrix_schedule() const { return WindowSchedule::squares(matrix_sides); }

  /// Throws InvalidArgument unless every field is positive and both
  /// schedules are strictly increasing.
  void validate() const;
};

}  // namespace dseq
