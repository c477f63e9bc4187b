#include "dseq/duality.hpp"

#include "dseq/difference.hpp"
#include "dseq/errors.hpp"

namespace dseq {

namespace {

Grid<double> prefix_table(const DoubleSequence& a, const Window& w) {
  DoubleSequence p = inv_delta(a);
  if (!a.exact()) return p.table(w);
  Grid<std::int64_t> exact = p.table_exact(w);
  Grid<double> out(w);
  constexpr std::int64_t kSafe = std::int64_t{1} << 53;
  for (Index m = 0; m <= w.m_max(); ++m)
    for (Index n = 0; n <= w.n_max(); ++n) {
      std::int64_t v = exact(m, n);
      if (v > kSafe || v < -kSafe) throw ValueOverflow("prefix sum exceeds the exactly representable range");
      out(m, n) = static_cast<double>(v);
    }
  return out;
}

}  // namespace

FourDimMatrix b_matrix(const DoubleSequence& a, const Window& w) {
  auto prefix = std::make_shared<const Grid<double>>(prefix_table(a, w));
  auto p = [prefix](Index m, Index n) { return m < 0 || n < 0 ? 0.0 : (*prefix)(m, n); };
  auto rect = [p](Index m, Index n, Index i, Index j) {
    return p(m, n) - p(i - 1, n) - p(m, j - 1) + p(i - 1, j - 1);
  };

  RowFamily f;
  f.name = "b_matrix";
  f.params = {{"m_max", static_cast<double>(w.m_max())}, {"n_max", static_cast<double>(w.n_max())}};
  f.seq_sources = {a};
  f.entry = [w, rect](Index m, Index n, Index i, Index j) {
    if (!w.contains(m, n) || i > m || j > n) return 0.0;
    return rect(m, n, i, j);
  };
  f.row = [w, rect](Index m, Index n, const Window& bound) {
    std::vector<RowEntry> out;
    if (!w.contains(m, n)) return out;
    for (Index i = 0; i <= std::min(m, bound.m_max()); ++i)
      for (Index j = 0; j <= std::min(n, bound.n_max()); ++j) {
        double v = rect(m, n, i, j);
        if (v != 0.0) out.push_back({i, j, v});
      }
    return out;
  };
  f.support = [w](Index m, Index n) -> std::optional<Box> {
    if (!w.contains(m, n)) return Box::empty_box();
    return Box{0, m, 0, n};
  };
  return FourDimMatrix(std::move(f));
}

DoubleSequence pairing_partial_sums(const DoubleSequence& a, const DoubleSequence& x) {
  return inv_delta(mul(a, x));
}

std::string_view to_string(DualVerdict v) {
  switch (v) {
    case DualVerdict::holds:
      return "holds";
    case DualVerdict::fails:
      return "fails";
    case DualVerdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

DualConditionReport as_condition(std::string condition, ConvergenceReport rep) {
  DualConditionReport out;
  out.condition = std::move(condition);
  if (rep.verdict == Verdict::converges) {
    out.verdict = DualVerdict::holds;
    out.value = rep.limit;
  } else if (rep.verdict == Verdict::unbounded) {
    out.verdict = DualVerdict::fails;
  }
  out.report = std::move(rep);
  return out;
}

namespace {

ConvergenceReport monotone(const DoubleSequence& terms, const RunConfig& cfg) {
  const WindowSchedule sched = cfg.schedule();
  return monotone_sum(inv_delta(terms).table(sched.largest(), cfg.cell_cap), sched, cfg);
}

void check_fixed_index(Index i) {
  if (i < 0) throw InvalidArgument("fixed index must be nonnegative");
}

}  // namespace

DualConditionReport check_F1(const DoubleSequence& a, const RunConfig& cfg) {
  return as_condition("F1", monotone(index_weight(abs_pow(a, 1.0), true, true), cfg));
}

DualConditionReport check_F2(const DoubleSequence& a, Index j0, const RunConfig& cfg) {
  check_fixed_index(j0);
  // sum_{i<=m} sum_{p=i..m} = sum_{p<=m} (p+1), so the array is a prefix sum.
  DoubleSequence terms = index_weight(mask_from(a, 0, j0), true, false);
  DualConditionReport out = as_condition("F2", r_limit(inv_delta(terms), cfg.schedule(), cfg));
  out.index = j0;
  return out;
}

DualConditionReport check_F3(const DoubleSequence& a, Index i0, const RunConfig& cfg) {
  check_fixed_index(i0);
  DoubleSequence terms = index_weight(mask_from(a, i0, 0), false, true);
  DualConditionReport out = as_condition("F3", r_limit(inv_delta(terms), cfg.schedule(), cfg));
  out.index = i0;
  return out;
}

DualConditionReport check_Lu_abs(const DoubleSequence& a, const RunConfig& cfg) {
  return as_condition("Lu_abs", monotone(abs_pow(a, 1.0), cfg));
}

ConvergenceReport alpha_pairing_abs(const DoubleSequence& a, const DoubleSequence& x, const RunConfig& cfg) {
  return monotone(abs_pow(mul(a, x), 1.0), cfg);
}

}  // namespace dseq
