#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dseq/config.hpp"
#include "dseq/seqcore.hpp"

namespace dseq {

/// Limit notion for double sequences: Pringsheim, bounded Pringsheim, regular.
enum class Rule { p, bp, r };

enum class Verdict { converges, unbounded, inconclusive };

std::string_view to_string(Rule r);
std::string_view to_string(Verdict v);
Rule parse_rule(std::string_view s);

/// Measurements over one schedule window. `tail_*` range over the quarter
/// where both indices exceed half the window.
struct Evidence {
  Window window;
  double tail_residual = 0.0;
  double sup = 0.0;
  double tail_sup = 0.0;
};

/// Verdict of the one-index certifier on a single row or column.
struct LineReport {
  bool is_row = true;
  Index index = 0;
  Verdict verdict = Verdict::inconclusive;
  double limit = 0.0;
};

/// Indices of the largest observed growth, kept for `unbounded` verdicts.
struct GrowthWitness {
  Index2 at;
  Window window;
  double observed = 0.0;
  double previous_sup = 0.0;
};

struct ConvergenceReport {
  Rule rule = Rule::p;
  Verdict verdict = Verdict::inconclusive;
  /// Limit (or sup, for boundedness) when the verdict is `converges`.
  double limit = 0.0;
  std::vector<Evidence> evidence;
  std::vector<LineReport> lines;
  std::optional<GrowthWitness> witness;
  /// Set when the value was computed without truncation.
  bool exact = false;

  bool converges() const { return verdict == Verdict::converges; }
};

// Grid overloads certify an array tabulated over (at least) the schedule's
// largest window; sequence overloads tabulate first.

ConvergenceReport p_limit(const Grid<double>& x, const WindowSchedule& sched, const RunConfig& cfg = {});
ConvergenceReport bounded(const Grid<double>& x, const WindowSchedule& sched, const RunConfig& cfg = {});
ConvergenceReport bp_limit(const Grid<double>& x, const WindowSchedule& sched, const RunConfig& cfg = {});
ConvergenceReport r_limit(const Grid<double>& x, const WindowSchedule& sched, const RunConfig& cfg = {});
ConvergenceReport rule_limit(const Grid<double>& x, Rule rule, const WindowSchedule& sched,
                             const RunConfig& cfg = {});

/// Certifier for nondecreasing partial-sum arrays. Besides the sup-growth
/// rule it reports `unbounded` when the increments between the last three
/// consecutive windows do not shrink, which catches logarithmic divergence.
ConvergenceReport monotone_sum(const Grid<double>& partial_sums, const WindowSchedule& sched,
                               const RunConfig& cfg = {});

ConvergenceReport p_limit(const DoubleSequence& x, const WindowSchedule& sched, const RunConfig& cfg = {});
ConvergenceReport bounded(const DoubleSequence& x, const WindowSchedule& sched, const RunConfig& cfg = {});
ConvergenceReport bp_limit(const DoubleSequence& x, const WindowSchedule& sched, const RunConfig& cfg = {});
ConvergenceReport r_limit(const DoubleSequence& x, const WindowSchedule& sched, const RunConfig& cfg = {});
ConvergenceReport rule_limit(const DoubleSequence& x, Rule rule, const WindowSchedule& sched,
                             const RunConfig& cfg = {});

/// One-index certifier over `values`, checked at each prefix length in `lengths`.
LineReport line_limit(std::span<const double> values, std::span<const Index> lengths, const RunConfig& cfg);

/// sup |(delta x)_mn|, certified as `bounded(delta(x))`.
ConvergenceReport sup_norm_delta(const DoubleSequence& x, const WindowSchedule& sched, const RunConfig& cfg = {});
/// (sum |(delta x)_mn|^q)^(1/q); the report's limit holds the norm. Throws
/// InvalidExponent for q < 1.
ConvergenceReport lq_norm_delta(const DoubleSequence& x, double q, const WindowSchedule& sched,
                                const RunConfig& cfg = {});
/// (sum |x_mn|^q)^(1/q).
ConvergenceReport lq_norm(const DoubleSequence& x, double q, const WindowSchedule& sched, const RunConfig& cfg = {});

/// Rule-v sum of a double series: the rule-v limit of its rectangular
/// partial sums.
ConvergenceReport v_sum(const DoubleSequence& terms, Rule rule, const WindowSchedule& sched,
                        const RunConfig& cfg = {});

}  // namespace dseq
