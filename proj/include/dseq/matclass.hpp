#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dseq/config.hpp"
#include "dseq/convergence.hpp"
#include "dseq/duality.hpp"
#include "dseq/matrix.hpp"

namespace dseq {

enum class ClassKind {
  Cr_to_Cv,         // r1-r5
  Cbp_to_Cv,        // r1-r3, bp1, bp2
  Cp_to_Cv,         // r1-r3, p1, p2
  CrDelta_to_Cv,    // s1-s7
  Cr_to_Cr,         // 4.7-4.10
  Cbp_to_Cbp,       // 4.11-4.14
  Cr_to_CrDelta,    // 4.7-4.10 on e_to_f(A)
  Cbp_to_CbpDelta,  // 4.11-4.14 on e_to_f(A)
};

/// Matrix class (lambda : mu). `v` is the target rule for the *_to_Cv kinds
/// and fixed to r or bp for the others.
struct ClassId {
  ClassKind kind = ClassKind::Cr_to_Cr;
  Rule v = Rule::r;
};

/// Accepts the kind names above plus "domain" for CrDelta_to_Cv. `v` is
/// ignored for kinds with a fixed target rule.
ClassId parse_class(std::string_view name, Rule v = Rule::r);
std::string to_string(const ClassId& c);

using ConditionVerdict = DualVerdict;

/// Concrete location backing a verdict: row (m, n), optionally a column
/// (k, l), the window it was observed in and the value against its bound.
struct ConditionWitness {
  Index m = 0;
  Index n = 0;
  std::optional<Index> k;
  std::optional<Index> l;
  Window window;
  double observed = 0.0;
  double bound = 0.0;
};

struct ConditionReport {
  std::string id;
  ConditionVerdict verdict = ConditionVerdict::inconclusive;
  /// Sup or limit for single-valued conditions.
  std::optional<double> value;
  /// Per-index limits, keyed like "a(2,3)", "u^1" or "v_0".
  std::vector<std::pair<std::string, double>> limits;
  std::vector<ConditionWitness> witnesses;
  /// True when every row involved had its full support enumerated.
  bool exact = true;
  std::string note;
};

struct BatteryReport {
  ClassId cls;
  ConditionVerdict overall = ConditionVerdict::inconclusive;
  std::vector<ConditionReport> conditions;
  Index prefix_p = 0;
  Window rows;

  const ConditionReport* find(std::string_view id) const;
};

/// Runs the condition list of `cls` on the rows inside the largest window of
/// cfg.matrix_schedule(). Entrywise conditions cover (k, l) in [0..prefix_p]^2.
BatteryReport check_class(const FourDimMatrix& a, const ClassId& cls, const RunConfig& cfg = {});

struct TailSum {
  double value = 0.0;
  bool exact = false;
};

/// sum_{p>=k, q>=l} a_mnpq over row (m, n) enumerated inside `w`; exact when
/// the row's declared support fits in `w`.
TailSum tail_sum(const FourDimMatrix& a, Index m, Index n, Index k, Index l, const Window& w);

/// Matrix of tail sums t_mnkl = sum_{p>=k, q>=l} a_mnpq. Rows without a
/// declared support are truncated to `w`.
FourDimMatrix tail_sum_matrix(const FourDimMatrix& a, const Window& w);

/// (s1)-(s7) for the class (C_r(delta) : C_v).
BatteryReport check_domain_class(const FourDimMatrix& a, Rule v = Rule::r, const RunConfig& cfg = {});

/// Battery for e_to_f(E): 4.7-4.10 when `variant` is r, 4.11-4.14 when bp.
BatteryReport corollary_check(const FourDimMatrix& e, Rule variant, const RunConfig& cfg = {});

}  // namespace dseq
