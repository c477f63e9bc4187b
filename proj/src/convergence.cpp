#include "dseq/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dseq/difference.hpp"

namespace dseq {

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::p:
      return "p";
    case Rule::bp:
      return "bp";
    case Rule::r:
      return "r";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::converges:
      return "converges";
    case Verdict::unbounded:
      return "unbounded";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

Rule parse_rule(std::string_view s) {
  if (s == "p") return Rule::p;
  if (s == "bp") return Rule::bp;
  if (s == "r") return Rule::r;
  throw InvalidArgument("unknown convergence rule '" + std::string(s) + "' (expected p, bp or r)");
}

void RunConfig::validate() const {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw InvalidArgument("tol must be positive");
  if (!(growth_factor > 1.0) || !std::isfinite(growth_factor)) throw InvalidArgument("growth_factor must exceed 1");
  if (fringe < 1) throw InvalidArgument("fringe must be at least 1");
  if (prefix_p < 0) throw InvalidArgument("prefix_p must be nonnegative");
  if (cell_cap == 0) throw InvalidArgument("cell_cap must be positive");
  if (!(bound_slack >= 0.0) || !std::isfinite(bound_slack)) throw InvalidArgument("bound_slack must be nonnegative");
  (void)schedule();
  (void)matrix_schedule();
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_covers(const Grid<double>& x, const WindowSchedule& sched) {
  const Window& w = x.window();
  const Window& l = sched.largest();
  if (w.m_max() < l.m_max() || w.n_max() < l.n_max())
    throw InvalidArgument("tabulated array does not cover the schedule's largest window");
}

double growth_ratio(double prev, double cur) {
  if (prev > 0.0) return cur / prev;
  return cur > 0.0 ? kInf : 1.0;
}

/// Both of the last two schedule steps grew by at least the factor.
template <typename Get>
bool grows(std::size_t count, Get sup_at, double factor) {
  if (count < 3) return false;
  double a = sup_at(count - 3), b = sup_at(count - 2), c = sup_at(count - 1);
  return growth_ratio(a, b) >= factor && growth_ratio(b, c) >= factor;
}

struct Scan {
  std::vector<Evidence> evidence;
  double estimate = 0.0;
  bool finite = true;
};

Scan scan(const Grid<double>& x, const WindowSchedule& sched) {
  require_covers(x, sched);
  Scan s;
  const Window& big = sched.largest();
  s.estimate = x(big.m_max(), big.n_max());
  s.finite = std::isfinite(s.estimate);
  for (const Window& w : sched.windows()) {
    Evidence ev{w, 0.0, 0.0, 0.0};
    const Index m0 = w.m_max() / 2 + 1;
    const Index n0 = w.n_max() / 2 + 1;
    for (Index m = 0; m <= w.m_max(); ++m) {
      auto row = x.row(m);
      for (Index n = 0; n <= w.n_max(); ++n) {
        double v = row[static_cast<std::size_t>(n)];
        if (!std::isfinite(v)) {
          s.finite = false;
          continue;
        }
        double a = std::fabs(v);
        ev.sup = std::max(ev.sup, a);
        if (m >= m0 && n >= n0) {
          ev.tail_sup = std::max(ev.tail_sup, a);
          ev.tail_residual = std::max(ev.tail_residual, std::fabs(v - s.estimate));
        }
      }
    }
    s.evidence.push_back(ev);
  }
  return s;
}

bool settled(const std::vector<Evidence>& ev, double tol) {
  std::size_t k = ev.size();
  return ev[k - 1].tail_residual <= tol && ev[k - 2].tail_residual <= tol;
}

GrowthWitness witness_in(const Grid<double>& x, const Window& w, bool tail_only, double previous_sup) {
  GrowthWitness g{{0, 0}, w, -1.0, previous_sup};
  const Index m0 = tail_only ? w.m_max() / 2 + 1 : 0;
  const Index n0 = tail_only ? w.n_max() / 2 + 1 : 0;
  for (Index m = m0; m <= w.m_max(); ++m)
    for (Index n = n0; n <= w.n_max(); ++n) {
      double a = std::fabs(x(m, n));
      if (a > g.observed) g = {{m, n}, w, a, previous_sup};
    }
  return g;
}

ConvergenceReport p_from_scan(const Grid<double>& x, const RunConfig& cfg, Scan s) {
  ConvergenceReport rep;
  rep.rule = Rule::p;
  rep.evidence = std::move(s.evidence);
  const auto& ev = rep.evidence;
  if (!s.finite) return rep;
  if (settled(ev, cfg.tol)) {
    rep.verdict = Verdict::converges;
    rep.limit = s.estimate;
  } else if (grows(ev.size(), [&](std::size_t i) { return ev[i].tail_sup; }, cfg.growth_factor)) {
    rep.verdict = Verdict::unbounded;
    rep.witness = witness_in(x, ev.back().window, true, ev[ev.size() - 2].tail_sup);
  }
  return rep;
}

ConvergenceReport bounded_from_scan(const Grid<double>& x, const RunConfig& cfg, Scan s) {
  ConvergenceReport rep;
  rep.rule = Rule::bp;
  rep.evidence = std::move(s.evidence);
  const auto& ev = rep.evidence;
  if (!s.finite) return rep;
  std::size_t k = ev.size();
  double last = ev[k - 1].sup, prev = ev[k - 2].sup;
  if (last <= prev * (1.0 + cfg.bound_slack)) {
    rep.verdict = Verdict::converges;
    rep.limit = last;
  } else if (grows(k, [&](std::size_t i) { return ev[i].sup; }, cfg.growth_factor)) {
    rep.verdict = Verdict::unbounded;
    rep.witness = witness_in(x, ev.back().window, false, prev);
  }
  return rep;
}

std::vector<LineReport> fringe_lines(const Grid<double>& x, const WindowSchedule& sched, const RunConfig& cfg) {
  std::vector<LineReport> lines;
  const Window& big = sched.largest();
  std::vector<Index> row_lengths, col_lengths;
  for (const Window& w : sched.windows()) {
    row_lengths.push_back(w.cols());
    col_lengths.push_back(w.rows());
  }
  for (Index m0 = 0; m0 < std::min(cfg.fringe, big.rows()); ++m0) {
    auto row = x.row(m0);
    LineReport r = line_limit(row.subspan(0, static_cast<std::size_t>(big.cols())), row_lengths, cfg);
    r.is_row = true;
    r.index = m0;
    lines.push_back(r);
  }
  std::vector<double> col(static_cast<std::size_t>(big.rows()));
  for (Index n0 = 0; n0 < std::min(cfg.fringe, big.cols()); ++n0) {
    for (Index m = 0; m <= big.m_max(); ++m) col[static_cast<std::size_t>(m)] = x(m, n0);
    LineReport r = line_limit(col, col_lengths, cfg);
    r.is_row = false;
    r.index = n0;
    lines.push_back(r);
  }
  return lines;
}

Verdict conjunction(std::initializer_list<Verdict> parts) {
  bool all = true;
  for (Verdict v : parts) {
    if (v == Verdict::unbounded) return Verdict::unbounded;
    all = all && v == Verdict::converges;
  }
  return all ? Verdict::converges : Verdict::inconclusive;
}

}  // namespace

LineReport line_limit(std::span<const double> values, std::span<const Index> lengths, const RunConfig& cfg) {
  if (lengths.size() < 3) throw InvalidArgument("line certifier needs at least 3 prefix lengths");
  LineReport rep;
  const auto len_last = static_cast<std::size_t>(lengths.back());
  if (len_last > values.size() || len_last == 0) throw InvalidArgument("line shorter than its schedule");
  double est = values[len_last - 1];
  std::vector<double> residual, sup;
  for (Index len : lengths) {
    double r = 0.0, s = 0.0;
    const Index start = (len - 1) / 2 + 1;
    for (Index i = 0; i < len; ++i) {
      double v = values[static_cast<std::size_t>(i)];
      if (!std::isfinite(v)) return rep;
      s = std::max(s, std::fabs(v));
      if (i >= start) r = std::max(r, std::fabs(v - est));
    }
    residual.push_back(r);
    sup.push_back(s);
  }
  std::size_t k = lengths.size();
  if (!std::isfinite(est)) return rep;
  if (residual[k - 1] <= cfg.tol && residual[k - 2] <= cfg.tol) {
    rep.verdict = Verdict::converges;
    rep.limit = est;
  } else if (grows(k, [&](std::size_t i) { return sup[i]; }, cfg.growth_factor)) {
    rep.verdict = Verdict::unbounded;
  }
  return rep;
}

ConvergenceReport p_limit(const Grid<double>& x, const WindowSchedule& sched, const RunConfig& cfg) {
  return p_from_scan(x, cfg, scan(x, sched));
}

ConvergenceReport bounded(const Grid<double>& x, const WindowSchedule& sched, const RunConfig& cfg) {
  return bounded_from_scan(x, cfg, scan(x, sched));
}

ConvergenceReport bp_limit(const Grid<double>& x, const WindowSchedule& sched, const RunConfig& cfg) {
  Scan s = scan(x, sched);
  ConvergenceReport p = p_from_scan(x, cfg, s);
  ConvergenceReport b = bounded_from_scan(x, cfg, s);
  ConvergenceReport rep = p;
  rep.rule = Rule::bp;
  rep.verdict = conjunction({p.verdict, b.verdict});
  if (rep.verdict == Verdict::unbounded) rep.witness = b.witness ? b.witness : p.witness;
  return rep;
}

ConvergenceReport r_limit(const Grid<double>& x, const WindowSchedule& sched, const RunConfig& cfg) {
  ConvergenceReport rep = bp_limit(x, sched, cfg);
  rep.rule = Rule::r;
  rep.lines = fringe_lines(x, sched, cfg);
  for (const auto& line : rep.lines) rep.verdict = conjunction({rep.verdict, line.verdict});
  return rep;
}

ConvergenceReport rule_limit(const Grid<double>& x, Rule rule, const WindowSchedule& sched, const RunConfig& cfg) {
  switch (rule) {
    case Rule::p:
      return p_limit(x, sched, cfg);
    case Rule::bp:
      return bp_limit(x, sched, cfg);
    case Rule::r:
      return r_limit(x, sched, cfg);
  }
  throw InvalidArgument("unknown rule");
}

ConvergenceReport monotone_sum(const Grid<double>& partial_sums, const WindowSchedule& sched, const RunConfig& cfg) {
  Scan s = scan(partial_sums, sched);
  ConvergenceReport rep = p_from_scan(partial_sums, cfg, s);
  if (rep.verdict != Verdict::inconclusive || sched.size() < 4) return rep;

  // Increments over the last three steps that do not shrink mean the series
  // keeps gaining at least as much per block: divergent at least
  // logarithmically on a geometric schedule.
  std::vector<double> corner;
  for (const Window& w : sched.windows()) corner.push_back(partial_sums(w.m_max(), w.n_max()));
  std::size_t k = corner.size();
  double d1 = corner[k - 3] - corner[k - 4];
  double d2 = corner[k - 2] - corner[k - 3];
  double d3 = corner[k - 1] - corner[k - 2];
  if (d1 > cfg.tol && d2 >= d1 && d3 >= d2) {
    rep.verdict = Verdict::unbounded;
    const Window& w = sched.largest();
    rep.witness = GrowthWitness{{w.m_max(), w.n_max()}, w, corner[k - 1], corner[k - 2]};
  }
  return rep;
}

ConvergenceReport p_limit(const DoubleSequence& x, const WindowSchedule& sched, const RunConfig& cfg) {
  return p_limit(x.table(sched.largest(), cfg.cell_cap), sched, cfg);
}

ConvergenceReport bounded(const DoubleSequence& x, const WindowSchedule& sched, const RunConfig& cfg) {
  return bounded(x.table(sched.largest(), cfg.cell_cap), sched, cfg);
}

ConvergenceReport bp_limit(const DoubleSequence& x, const WindowSchedule& sched, const RunConfig& cfg) {
  return bp_limit(x.table(sched.largest(), cfg.cell_cap), sched, cfg);
}

ConvergenceReport r_limit(const DoubleSequence& x, const WindowSchedule& sched, const RunConfig& cfg) {
  return r_limit(x.table(sched.largest(), cfg.cell_cap), sched, cfg);
}

ConvergenceReport rule_limit(const DoubleSequence& x, Rule rule, const WindowSchedule& sched, const RunConfig& cfg) {
  return rule_limit(x.table(sched.largest(), cfg.cell_cap), rule, sched, cfg);
}

ConvergenceReport sup_norm_delta(const DoubleSequence& x, const WindowSchedule& sched, const RunConfig& cfg) {
  return bounded(delta(x), sched, cfg);
}

namespace {

void check_exponent(double q) {
  if (!std::isfinite(q) || q < 1.0) throw InvalidExponent("exponent q must satisfy 1 <= q < inf");
}

ConvergenceReport lq_of(const DoubleSequence& y, double q, const WindowSchedule& sched, const RunConfig& cfg) {
  check_exponent(q);
  Grid<double> sums = inv_delta(abs_pow(y, q)).table(sched.largest(), cfg.cell_cap);
  ConvergenceReport rep = monotone_sum(sums, sched, cfg);
  if (rep.converges()) rep.limit = std::pow(rep.limit, 1.0 / q);
  return rep;
}

}  // namespace

ConvergenceReport lq_norm_delta(const DoubleSequence& x, double q, const WindowSchedule& sched,
                                const RunConfig& cfg) {
  return lq_of(delta(x), q, sched, cfg);
}

ConvergenceReport lq_norm(const DoubleSequence& x, double q, const WindowSchedule& sched, const RunConfig& cfg) {
  return lq_of(x, q, sched, cfg);
}

ConvergenceReport v_sum(const DoubleSequence& terms, Rule rule, const WindowSchedule& sched, const RunConfig& cfg) {
  return rule_limit(inv_delta(terms), rule, sched, cfg);
}

}  // namespace dseq
