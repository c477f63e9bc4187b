#include "dseq/matclass.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dseq/difference.hpp"
#include "dseq/errors.hpp"

namespace dseq {

namespace {

const std::map<std::string, ClassKind, std::less<>>& class_names() {
  static const std::map<std::string, ClassKind, std::less<>> names = {
      {"Cr_to_Cv", ClassKind::Cr_to_Cv},
      {"Cbp_to_Cv", ClassKind::Cbp_to_Cv},
      {"Cp_to_Cv", ClassKind::Cp_to_Cv},
      {"CrDelta_to_Cv", ClassKind::CrDelta_to_Cv},
      {"Cr_to_Cr", ClassKind::Cr_to_Cr},
      {"Cbp_to_Cbp", ClassKind::Cbp_to_Cbp},
      {"Cr_to_CrDelta", ClassKind::Cr_to_CrDelta},
      {"Cbp_to_CbpDelta", ClassKind::Cbp_to_CbpDelta},
  };
  return names;
}

bool has_free_rule(ClassKind k) {
  return k == ClassKind::Cr_to_Cv || k == ClassKind::Cbp_to_Cv || k == ClassKind::Cp_to_Cv ||
         k == ClassKind::CrDelta_to_Cv;
}

}  // namespace

ClassId parse_class(std::string_view name, Rule v) {
  if (name == "domain") return {ClassKind::CrDelta_to_Cv, v};
  auto it = class_names().find(name);
  if (it == class_names().end()) throw InvalidArgument("unknown matrix class '" + std::string(name) + "'");
  ClassId id{it->second, v};
  switch (id.kind) {
    case ClassKind::Cr_to_Cr:
    case ClassKind::Cr_to_CrDelta:
      id.v = Rule::r;
      break;
    case ClassKind::Cbp_to_Cbp:
    case ClassKind::Cbp_to_CbpDelta:
      id.v = Rule::bp;
      break;
    default:
      break;
  }
  return id;
}

std::string to_string(const ClassId& c) {
  for (const auto& [name, kind] : class_names())
    if (kind == c.kind) return has_free_rule(kind) ? name + "(" + std::string(to_string(c.v)) + ")" : name;
  return "?";
}

const ConditionReport* BatteryReport::find(std::string_view id) const {
  for (const auto& c : conditions)
    if (c.id == id) return &c;
  return nullptr;
}

TailSum tail_sum(const FourDimMatrix& a, Index m, Index n, Index k, Index l, const Window& w) {
  SparseRow row = a.row(m, n, w);
  TailSum out{0.0, row.exact};
  for (const auto& e : row.entries)
    if (e.k >= k && e.l >= l) out.value += e.value;
  return out;
}

namespace {

/// Row (m, n) with its whole declared support, or cut at `cols` when the
/// support is unbounded.
SparseRow full_row(const FourDimMatrix& a, Index m, Index n, const Window& cols) {
  std::optional<Box> box = a.support(m, n);
  if (box && !box->empty())
    return a.row(m, n, Window(std::max(cols.m_max(), box->k_hi), std::max(cols.n_max(), box->l_hi)));
  return a.row(m, n, cols);
}

/// Dense copy of a row over [0..w.m_max] x [0..w.n_max].
Grid<double> dense_row(const SparseRow& row, const Window& w) {
  Grid<double> d(w, 0.0);
  for (const auto& e : row.entries)
    if (w.contains(e.k, e.l)) d(e.k, e.l) = e.value;
  return d;
}

}  // namespace

FourDimMatrix tail_sum_matrix(const FourDimMatrix& a, const Window& w) {
  RowFamily f;
  f.name = "tail_sum";
  f.params = {{"m_max", static_cast<double>(w.m_max())}, {"n_max", static_cast<double>(w.n_max())}};
  f.mat_sources = {a};
  auto row_of = [a, w](Index m, Index n, const Window& bound) {
    std::vector<RowEntry> out;
    std::optional<Box> box = a.support(m, n);
    if (box && box->empty()) return out;
    Window cols = box ? Window(box->k_hi, box->l_hi) : w;
    Grid<double> d = dense_row(a.row(m, n, cols), cols);
    for (Index k = cols.m_max(); k >= 0; --k)
      for (Index l = cols.n_max(); l >= 0; --l) {
        double below = k < cols.m_max() ? d(k + 1, l) : 0.0;
        double right = l < cols.n_max() ? d(k, l + 1) : 0.0;
        double diag = k < cols.m_max() && l < cols.n_max() ? d(k + 1, l + 1) : 0.0;
        d(k, l) += below + right - diag;
      }
    for (Index k = 0; k <= std::min(cols.m_max(), bound.m_max()); ++k)
      for (Index l = 0; l <= std::min(cols.n_max(), bound.n_max()); ++l)
        if (d(k, l) != 0.0) out.push_back({k, l, d(k, l)});
    return out;
  };
  f.row = row_of;
  f.entry = [row_of](Index m, Index n, Index k, Index l) {
    for (const auto& e : row_of(m, n, Window(k, l)))
      if (e.k == k && e.l == l) return e.value;
    return 0.0;
  };
  f.support = [a](Index m, Index n) -> std::optional<Box> {
    std::optional<Box> box = a.support(m, n);
    if (!box) return std::nullopt;
    if (box->empty()) return Box::empty_box();
    return Box{0, box->k_hi, 0, box->l_hi};
  };
  return FourDimMatrix(std::move(f));
}

namespace {

/// Row aggregates of a matrix, one array over (m, n) per quantity.
struct Aggregates {
  Window rows;
  Index p = 0;
  Grid<double> abs_sum;
  Grid<double> total;
  std::vector<Grid<double>> entry;    // [k * (p + 1) + l]
  std::vector<Grid<double>> col_sum;  // sum_k a_mnkl0, per l0
  std::vector<Grid<double>> row_sum;  // sum_l a_mnk0l, per k0
  std::vector<Grid<double>> col_dev;  // sum_k |a_mnkl0 - a_kl0|
  std::vector<Grid<double>> row_dev;  // sum_l |a_mnk0l - a_k0l|
  bool exact = true;
};

Aggregates aggregate(const FourDimMatrix& a, const Window& rows, Index p, bool deviations) {
  Aggregates g;
  g.rows = rows;
  g.p = p;
  const auto np = static_cast<std::size_t>(p + 1);
  g.abs_sum = Grid<double>(rows, 0.0);
  g.total = Grid<double>(rows, 0.0);
  g.entry.assign(np * np, Grid<double>(rows, 0.0));
  g.col_sum.assign(np, Grid<double>(rows, 0.0));
  g.row_sum.assign(np, Grid<double>(rows, 0.0));

  // Entrywise limits a_kl are estimated by the corner row, as for any other
  // limit in the certifiers.
  std::map<std::pair<Index, Index>, double> corner;
  std::vector<double> corner_col_abs(np, 0.0), corner_row_abs(np, 0.0);
  if (deviations) {
    g.col_dev.assign(np, Grid<double>(rows, 0.0));
    g.row_dev.assign(np, Grid<double>(rows, 0.0));
    for (const auto& e : full_row(a, rows.m_max(), rows.n_max(), rows).entries) {
      corner[{e.k, e.l}] = e.value;
      if (e.l <= p) corner_col_abs[static_cast<std::size_t>(e.l)] += std::fabs(e.value);
      if (e.k <= p) corner_row_abs[static_cast<std::size_t>(e.k)] += std::fabs(e.value);
    }
  }
  auto corner_at = [&](Index k, Index l) {
    auto it = corner.find({k, l});
    return it == corner.end() ? 0.0 : it->second;
  };

  std::vector<double> col_acc(np), row_acc(np);
  for (Index m = 0; m <= rows.m_max(); ++m)
    for (Index n = 0; n <= rows.n_max(); ++n) {
      SparseRow row = full_row(a, m, n, rows);
      g.exact = g.exact && row.exact;
      std::fill(col_acc.begin(), col_acc.end(), 0.0);
      std::fill(row_acc.begin(), row_acc.end(), 0.0);
      double abs_sum = 0.0, total = 0.0;
      for (const auto& e : row.entries) {
        abs_sum += std::fabs(e.value);
        total += e.value;
        const auto k = static_cast<std::size_t>(e.k), l = static_cast<std::size_t>(e.l);
        if (e.k <= p && e.l <= p) g.entry[k * np + l](m, n) = e.value;
        double c = deviations ? corner_at(e.k, e.l) : 0.0;
        if (e.l <= p) {
          g.col_sum[l](m, n) += e.value;
          col_acc[l] += std::fabs(e.value - c) - std::fabs(c);
        }
        if (e.k <= p) {
          g.row_sum[k](m, n) += e.value;
          row_acc[k] += std::fabs(e.value - c) - std::fabs(c);
        }
      }
      g.abs_sum(m, n) = abs_sum;
      g.total(m, n) = total;
      if (deviations)
        for (std::size_t i = 0; i < np; ++i) {
          g.col_dev[i](m, n) = std::max(0.0, corner_col_abs[i] + col_acc[i]);
          g.row_dev[i](m, n) = std::max(0.0, corner_row_abs[i] + row_acc[i]);
        }
    }
  return g;
}

ConditionReport named(std::string id) {
  ConditionReport r;
  r.id = std::move(id);
  return r;
}

ConditionVerdict verdict_of(Verdict v) {
  switch (v) {
    case Verdict::converges:
      return ConditionVerdict::holds;
    case Verdict::unbounded:
      return ConditionVerdict::fails;
    case Verdict::inconclusive:
      break;
  }
  return ConditionVerdict::inconclusive;
}

ConditionVerdict conjoin(ConditionVerdict a, ConditionVerdict b) {
  if (a == ConditionVerdict::fails || b == ConditionVerdict::fails) return ConditionVerdict::fails;
  if (a == ConditionVerdict::holds && b == ConditionVerdict::holds) return ConditionVerdict::holds;
  return ConditionVerdict::inconclusive;
}

/// Finite evidence for an `unbounded` report on array g.
ConditionWitness growth_witness(const ConvergenceReport& rep, const Grid<double>& g, const WindowSchedule& sched) {
  if (rep.witness) {
    const GrowthWitness& w = *rep.witness;
    return {w.at.m, w.at.n, std::nullopt, std::nullopt, w.window, w.observed, w.previous_sup};
  }
  // Divergence came from a fringe line; report its largest value in the last
  // window against its sup over the previous one.
  const Window& big = sched.largest();
  const Window& prev = sched[sched.size() - 2];
  for (const LineReport& line : rep.lines) {
    if (line.verdict != Verdict::unbounded) continue;
    ConditionWitness w{0, 0, std::nullopt, std::nullopt, big, -1.0, 0.0};
    Index len = line.is_row ? big.n_max() : big.m_max();
    Index prev_len = line.is_row ? prev.n_max() : prev.m_max();
    for (Index i = 0; i <= len; ++i) {
      double v = std::fabs(line.is_row ? g(line.index, i) : g(i, line.index));
      if (i <= prev_len) w.bound = std::max(w.bound, v);
      if (v > w.observed) {
        w.observed = v;
        w.m = line.is_row ? line.index : i;
        w.n = line.is_row ? i : line.index;
      }
    }
    return w;
  }
  return {0, 0, std::nullopt, std::nullopt, big, 0.0, 0.0};
}

struct Battery {
  const Aggregates& g;
  WindowSchedule sched;
  const RunConfig& cfg;

  ConditionReport sup(std::string id) const {
    ConditionReport r = named(std::move(id));
    ConvergenceReport rep = bounded(g.abs_sum, sched, cfg);
    r.verdict = verdict_of(rep.verdict);
    r.exact = g.exact;
    if (rep.converges()) r.value = rep.limit;
    if (rep.verdict == Verdict::unbounded) r.witnesses.push_back(growth_witness(rep, g.abs_sum, sched));
    return r;
  }

  ConditionReport limit(std::string id, const Grid<double>& arr, Rule v) const {
    ConditionReport r = named(std::move(id));
    ConvergenceReport rep = rule_limit(arr, v, sched, cfg);
    r.verdict = verdict_of(rep.verdict);
    r.exact = g.exact;
    if (rep.converges()) r.value = rep.limit;
    if (rep.verdict == Verdict::unbounded) r.witnesses.push_back(growth_witness(rep, arr, sched));
    return r;
  }

  /// One limit per array; `zero` demands each limit vanish within tol.
  void add_family(ConditionReport& r, const std::vector<Grid<double>>& arrays, Rule v, bool zero,
                  const std::string& key, bool index_is_k) const {
    const Window& big = sched.largest();
    for (std::size_t i = 0; i < arrays.size(); ++i) {
      ConvergenceReport rep = rule_limit(arrays[i], v, sched, cfg);
      ConditionVerdict cv = verdict_of(rep.verdict);
      const auto idx = static_cast<Index>(i);
      if (rep.converges()) {
        r.limits.push_back({key + std::to_string(i), rep.limit});
        if (zero && std::fabs(rep.limit) > cfg.tol) {
          cv = ConditionVerdict::fails;
          ConditionWitness w{big.m_max(), big.n_max(), std::nullopt, std::nullopt, big, std::fabs(rep.limit), cfg.tol};
          (index_is_k ? w.k : w.l) = idx;
          r.witnesses.push_back(w);
        }
      } else if (rep.verdict == Verdict::unbounded) {
        ConditionWitness w = growth_witness(rep, arrays[i], sched);
        (index_is_k ? w.k : w.l) = idx;
        r.witnesses.push_back(w);
      }
      r.verdict = i == 0 ? cv : conjoin(r.verdict, cv);
    }
  }

  ConditionReport entrywise(std::string id, Rule v) const {
    ConditionReport r = named(std::move(id));
    r.exact = g.exact;
    r.note = "checked on (k, l) in [0.." + std::to_string(g.p) + "]^2";
    const auto np = static_cast<std::size_t>(g.p + 1);
    for (std::size_t i = 0; i < g.entry.size(); ++i) {
      const Index k = static_cast<Index>(i / np), l = static_cast<Index>(i % np);
      ConvergenceReport rep = rule_limit(g.entry[i], v, sched, cfg);
      ConditionVerdict cv = verdict_of(rep.verdict);
      if (rep.converges()) r.limits.push_back({"a(" + std::to_string(k) + "," + std::to_string(l) + ")", rep.limit});
      if (rep.verdict == Verdict::unbounded) {
        ConditionWitness w = growth_witness(rep, g.entry[i], sched);
        w.k = k;
        w.l = l;
        r.witnesses.push_back(w);
      }
      r.verdict = i == 0 ? cv : conjoin(r.verdict, cv);
    }
    return r;
  }

  ConditionReport columns(std::string id, Rule v) const {
    ConditionReport r = named(std::move(id));
    r.exact = g.exact;
    add_family(r, g.col_sum, v, false, "u^", false);
    return r;
  }

  ConditionReport rows_(std::string id, Rule v) const {
    ConditionReport r = named(std::move(id));
    r.exact = g.exact;
    add_family(r, g.row_sum, v, false, "v_", true);
    return r;
  }

  ConditionReport col_rows(std::string id, Rule v) const {
    ConditionReport r = named(std::move(id));
    r.exact = g.exact;
    add_family(r, g.col_sum, v, false, "u^", false);
    ConditionVerdict first = r.verdict;
    add_family(r, g.row_sum, v, false, "v_", true);
    r.verdict = conjoin(first, r.verdict);
    return r;
  }

  ConditionReport deviations(std::string id, Rule v, bool cols, bool rows) const {
    ConditionReport r = named(std::move(id));
    r.exact = g.exact;
    r.note = "limits a_kl estimated by the corner row";
    ConditionVerdict acc = ConditionVerdict::holds;
    if (cols) {
      add_family(r, g.col_dev, v, true, "dev^", false);
      acc = conjoin(acc, r.verdict);
    }
    if (rows) {
      add_family(r, g.row_dev, v, true, "dev_", true);
      acc = conjoin(acc, r.verdict);
    }
    r.verdict = acc;
    return r;
  }
};

/// (p1)/(p2): support bounded in j for each fixed i, resp. in i for each fixed j.
std::pair<ConditionReport, ConditionReport> structural(const FourDimMatrix& a, const WindowSchedule& sched) {
  ConditionReport p1 = named("p1"), p2 = named("p2");
  const Window& big = sched.largest();
  const Window& prev = sched[sched.size() - 2];
  auto fail = [&](ConditionReport& r, Index m, Index n, Index k, Index l, double prev_extent) {
    r.verdict = ConditionVerdict::fails;
    r.witnesses.push_back({m, n, k, l, big, static_cast<double>(r.id == "p1" ? l : k), prev_extent});
    r.note = "nonzero entry index grows with the row index";
  };
  auto hold = [](ConditionReport& r, const std::string& note) {
    r.verdict = ConditionVerdict::holds;
    r.note = note;
  };

  std::visit(
      [&](const auto& body) {
        using B = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<B, MatrixEntries>) {
          hold(p1, "finitely many nonzero entries");
          hold(p2, "finitely many nonzero entries");
        } else if constexpr (std::is_same_v<B, RowFamily>) {
          p1.note = p2.note = "structural condition is not decidable for a row family";
          p1.exact = p2.exact = false;
        } else {
          const auto N = static_cast<double>(prev.n_max()), M = static_cast<double>(prev.m_max());
          switch (body.kind) {
            case BuiltinKind::zero:
              hold(p1, "no nonzero entries");
              hold(p2, "no nonzero entries");
              break;
            case BuiltinKind::geometric_row:
              if (body.rho == 0.0) {
                hold(p1, "only a_mn00 is nonzero");
                hold(p2, "only a_mn00 is nonzero");
              } else {
                fail(p1, 0, 0, 0, big.n_max(), N);
                fail(p2, 0, 0, big.m_max(), 0, M);
              }
              break;
            case BuiltinKind::column_at_row_index:
              fail(p1, big.m_max(), 0, 0, big.m_max(), M);
              hold(p2, "every nonzero entry has k = 0");
              break;
            default:
              fail(p1, 0, big.n_max(), 0, big.n_max(), N);
              fail(p2, big.m_max(), 0, big.m_max(), 0, M);
              break;
          }
        }
      },
      a.body());
  return {p1, p2};
}

/// (s2)/(s3) for each row in the smallest schedule window: v-limits over
/// (s, t) of sum_{p<=s} (p+1) sum_{q=j0..t} a_mnpq and its transpose.
std::pair<ConditionReport, ConditionReport> inner_limits(const FourDimMatrix& a, Rule v, const WindowSchedule& sched,
                                                         const RunConfig& cfg) {
  ConditionReport s2 = named("s2"), s3 = named("s3");
  s2.verdict = s3.verdict = ConditionVerdict::holds;
  const Window& rows = sched[0];
  const Window& cols = sched.largest();
  const Index p_max = cfg.prefix_p;
  Index exact_rows = 0;

  auto weighted = [](const Grid<double>& d, Index fixed, bool by_col) {
    // by_col: G(s,t) = sum_{p<=s, j0<=q<=t} (p+1) a_pq; otherwise the transpose.
    Grid<double> out(d.window(), 0.0);
    const Window& w = d.window();
    for (Index s = 0; s <= w.m_max(); ++s) {
      double run = 0.0;
      for (Index t = 0; t <= w.n_max(); ++t) {
        bool in = by_col ? t >= fixed : s >= fixed;
        double weight = by_col ? static_cast<double>(s + 1) : static_cast<double>(t + 1);
        if (in) run += weight * d(s, t);
        out(s, t) = run + (s > 0 ? out(s - 1, t) : 0.0);
      }
    }
    return out;
  };
  auto record = [&](ConditionReport& r, ConditionVerdict cv, Index m, Index n, Index idx, bool by_col,
                    const ConvergenceReport* rep, const Grid<double>* arr) {
    if (cv == ConditionVerdict::fails && rep) {
      ConditionWitness w = growth_witness(*rep, *arr, sched);
      ConditionWitness out{m, n, std::nullopt, std::nullopt, w.window, w.observed, w.bound};
      (by_col ? out.l : out.k) = idx;
      r.witnesses.push_back(out);
    }
    r.verdict = conjoin(r.verdict, cv);
  };

  for (Index m = 0; m <= rows.m_max(); ++m)
    for (Index n = 0; n <= rows.n_max(); ++n) {
      std::optional<Box> box = a.support(m, n);
      if (box) {
        // Finite support: both arrays are eventually constant in every
        // direction, so the limits exist and equal the full sums.
        ++exact_rows;
        continue;
      }
      s2.exact = s3.exact = false;
      Grid<double> d = dense_row(a.row(m, n, cols), cols);
      for (Index idx = 0; idx <= p_max; ++idx) {
        for (bool by_col : {true, false}) {
          Grid<double> arr = weighted(d, idx, by_col);
          ConvergenceReport rep = rule_limit(arr, v, sched, cfg);
          record(by_col ? s2 : s3, verdict_of(rep.verdict), m, n, idx, by_col, &rep, &arr);
        }
      }
    }
  std::string note = "rows in [0.." + std::to_string(rows.m_max()) + "]x[0.." + std::to_string(rows.n_max()) +
                     "], fixed index in [0.." + std::to_string(p_max) + "]; " + std::to_string(exact_rows) +
                     " rows decided exactly from finite support";
  s2.note = s3.note = note;
  return {s2, s3};
}

ConditionVerdict overall(const std::vector<ConditionReport>& cs) {
  ConditionVerdict v = ConditionVerdict::holds;
  for (const auto& c : cs) v = conjoin(v, c.verdict);
  return v;
}

bool needs_deviations(ClassKind k) {
  return k == ClassKind::Cbp_to_Cv || k == ClassKind::Cbp_to_Cbp || k == ClassKind::Cbp_to_CbpDelta;
}

}  // namespace

BatteryReport check_class(const FourDimMatrix& a_in, const ClassId& cls, const RunConfig& cfg) {
  if (cls.kind == ClassKind::CrDelta_to_Cv) return check_domain_class(a_in, cls.v, cfg);
  const bool via_f = cls.kind == ClassKind::Cr_to_CrDelta || cls.kind == ClassKind::Cbp_to_CbpDelta;
  const FourDimMatrix a = via_f ? e_to_f(a_in) : a_in;

  const WindowSchedule sched = cfg.matrix_schedule();
  BatteryReport out;
  out.cls = cls;
  out.prefix_p = cfg.prefix_p;
  out.rows = sched.largest();

  Aggregates g = aggregate(a, sched.largest(), cfg.prefix_p, needs_deviations(cls.kind));
  Battery b{g, sched, cfg};
  const Rule v = cls.v;
  auto& cs = out.conditions;
  switch (cls.kind) {
    case ClassKind::Cr_to_Cv:
      cs = {b.sup("r1"), b.limit("r2", g.total, v), b.entrywise("r3", v), b.columns("r4", v), b.rows_("r5", v)};
      break;
    case ClassKind::Cbp_to_Cv:
      cs = {b.sup("r1"), b.limit("r2", g.total, v), b.entrywise("r3", v), b.deviations("bp1", v, true, false),
            b.deviations("bp2", v, false, true)};
      break;
    case ClassKind::Cp_to_Cv: {
      auto [p1, p2] = structural(a, sched);
      cs = {b.sup("r1"), b.limit("r2", g.total, v), b.entrywise("r3", v), p1, p2};
      break;
    }
    case ClassKind::Cr_to_Cr:
    case ClassKind::Cr_to_CrDelta:
      cs = {b.sup("4.7"), b.entrywise("4.8", Rule::r), b.limit("4.9", g.total, Rule::r), b.col_rows("4.10", Rule::r)};
      break;
    case ClassKind::Cbp_to_Cbp:
    case ClassKind::Cbp_to_CbpDelta:
      cs = {b.sup("4.11"), b.entrywise("4.12", Rule::bp), b.limit("4.13", g.total, Rule::bp),
            b.deviations("4.14", Rule::bp, true, true)};
      break;
    case ClassKind::CrDelta_to_Cv:
      break;
  }
  out.overall = overall(cs);
  return out;
}

BatteryReport check_domain_class(const FourDimMatrix& a, Rule v, const RunConfig& cfg) {
  const WindowSchedule sched = cfg.matrix_schedule();
  BatteryReport out;
  out.cls = {ClassKind::CrDelta_to_Cv, v};
  out.prefix_p = cfg.prefix_p;
  out.rows = sched.largest();

  FourDimMatrix t = tail_sum_matrix(a, sched.largest());
  Aggregates g = aggregate(t, sched.largest(), cfg.prefix_p, false);
  Battery b{g, sched, cfg};
  auto [s2, s3] = inner_limits(a, v, sched, cfg);
  out.conditions = {b.sup("s1"),        s2, s3, b.entrywise("s4", v), b.columns("s5", v), b.rows_("s6", v),
                    b.limit("s7", g.total, v)};
  out.overall = overall(out.conditions);
  return out;
}

BatteryReport corollary_check(const FourDimMatrix& e, Rule variant, const RunConfig& cfg) {
  if (variant == Rule::p) throw InvalidArgument("corollary variant must be r or bp");
  return check_class(e, {variant == Rule::r ? ClassKind::Cr_to_CrDelta : ClassKind::Cbp_to_CbpDelta, variant}, cfg);
}

}  // namespace dseq
