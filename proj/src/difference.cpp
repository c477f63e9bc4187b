#include "dseq/difference.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <limits>

#include "dseq/arith.hpp"
#include "dseq/op_support.hpp"

namespace dseq {

namespace {

using detail::OpAdapter;
using detail::table_of;
using detail::value_at;

class DeltaOp final : public OpAdapter<DeltaOp> {
 public:
  std::string_view name() const override { return "delta"; }
  std::size_t arity() const override { return 1; }

  template <typename T>
  T eval(std::span<const DoubleSequence> c, Index m, Index n) const {
    if (m < 0 || n < 0) return T{0};
    const DoubleSequence& x = c[0];
    T v = arith::sub(value_at<T>(x, m, n), value_at<T>(x, m, n - 1));
    v = arith::sub(v, value_at<T>(x, m - 1, n));
    return arith::add(v, value_at<T>(x, m - 1, n - 1));
  }

  template <typename T>
  Grid<T> tabulate(std::span<const DoubleSequence> c, const Window& w, std::uint64_t cell_cap) const {
    Grid<T> x = table_of<T>(c[0], w, cell_cap);
    Grid<T> out(w);
    auto at = [&](Index m, Index n) { return m < 0 || n < 0 ? T{0} : x(m, n); };
    for (Index m = 0; m <= w.m_max(); ++m)
      for (Index n = 0; n <= w.n_max(); ++n) {
        T v = arith::sub(x(m, n), at(m, n - 1));
        v = arith::sub(v, at(m - 1, n));
        out(m, n) = arith::add(v, at(m - 1, n - 1));
      }
    return out;
  }
};

class InvDeltaOp final : public OpAdapter<InvDeltaOp> {
 public:
  std::string_view name() const override { return "inv_delta"; }
  std::size_t arity() const override { return 1; }

  template <typename T>
  T eval(std::span<const DoubleSequence> c, Index m, Index n) const {
    if (m < 0 || n < 0) return T{0};
    Window w(m, n);
    check_cell_cap(w, kDefaultCellCap);
    Grid<T> p = tabulate<T>(c, w, kDefaultCellCap);
    return p(m, n);
  }

  // Row running sums accumulated down the columns; no cancellation on the
  // floating path.
  template <typename T>
  Grid<T> tabulate(std::span<const DoubleSequence> c, const Window& w, std::uint64_t cell_cap) const {
    Grid<T> out = table_of<T>(c[0], w, cell_cap);
    for (Index m = 0; m <= w.m_max(); ++m) {
      auto cur = out.row(m);
      T run{0};
      for (Index n = 0; n <= w.n_max(); ++n) {
        run = arith::add(run, cur[static_cast<std::size_t>(n)]);
        cur[static_cast<std::size_t>(n)] = m == 0 ? run : arith::add(out(m - 1, n), run);
      }
    }
    return out;
  }
};

}  // namespace

DoubleSequence delta(const DoubleSequence& x) { return make_combinator(std::make_shared<DeltaOp>(), {x}); }

DoubleSequence inv_delta(const DoubleSequence& y) { return make_combinator(std::make_shared<InvDeltaOp>(), {y}); }

std::shared_ptr<const SequenceOp> difference_op(std::string_view name) {
  if (name == "delta") return std::make_shared<DeltaOp>();
  if (name == "inv_delta") return std::make_shared<InvDeltaOp>();
  return nullptr;
}

MatApplyResult apply_4d(const FourDimMatrix& a, const DoubleSequence& x, Rule rule, const Window& rows,
                        const WindowSchedule& sched, const RunConfig& cfg) {
  const Window& largest = sched.largest();
  check_cell_cap(rows, cfg.cell_cap);
  MatApplyResult out{Grid<double>(rows, std::numeric_limits<double>::quiet_NaN()), {}};
  out.rows.reserve(static_cast<std::size_t>(rows.cells()));

  std::optional<Grid<double>> x_table;
  for (Index m = 0; m <= rows.m_max(); ++m)
    for (Index n = 0; n <= rows.n_max(); ++n) {
      ConvergenceReport rep;
      rep.rule = rule;
      std::optional<Box> box = a.support(m, n);
      if (box && box->within(largest)) {
        SparseRow row = a.row(m, n, largest);
        double s = 0.0;
        for (const auto& e : row.entries) s += e.value * x.at(e.k, e.l);
        rep.verdict = Verdict::converges;
        rep.limit = s;
        rep.exact = true;
      } else if (box) {
        // Finite support past the largest window and no bound on the tail.
        rep.verdict = Verdict::inconclusive;
      } else {
        if (!x_table) x_table = x.table(largest, cfg.cell_cap);
        SparseRow row = a.row(m, n, largest);
        Grid<double> terms(largest, 0.0);
        for (const auto& e : row.entries) terms(e.k, e.l) = e.value * (*x_table)(e.k, e.l);
        Grid<double> partial = inv_delta(table_sequence(std::move(terms))).table(largest, cfg.cell_cap);
        rep = rule_limit(partial, rule, sched, cfg);
      }
      if (rep.converges()) out.values(m, n) = rep.limit;
      out.rows.push_back({{m, n}, std::move(rep)});
    }
  return out;
}

FourDimMatrix e_to_f(const FourDimMatrix& e) {
  RowFamily f;
  f.name = "e_to_f";
  f.mat_sources = {e};
  f.entry = [e](Index m, Index n, Index k, Index l) {
    double s = 0.0;
    for (Index i = m - 1; i <= m; ++i)
      for (Index j = n - 1; j <= n; ++j) {
        double sign = ((m + n - i - j) & 1) != 0 ? -1.0 : 1.0;
        s += sign * e.entry(i, j, k, l);
      }
    return s;
  };
  f.row = [e](Index m, Index n, const Window& bound) {
    std::vector<RowEntry> acc;
    std::optional<Box> box = Box::empty_box();
    for (Index i = std::max<Index>(m - 1, 0); i <= m && box; ++i)
      for (Index j = std::max<Index>(n - 1, 0); j <= n && box; ++j) {
        std::optional<Box> b = e.support(i, j);
        box = b ? std::optional<Box>(box->unite(*b)) : std::nullopt;
      }
    if (box) {
      // Dense accumulation over the clipped union box; cancellations are free.
      Box c = box->clip(bound);
      if (c.empty()) return acc;
      const Index cols = c.l_hi - c.l_lo + 1;
      std::vector<double> dense(static_cast<std::size_t>((c.k_hi - c.k_lo + 1) * cols), 0.0);
      for (Index i = m - 1; i <= m; ++i)
        for (Index j = n - 1; j <= n; ++j) {
          if (i < 0 || j < 0) continue;
          double sign = ((m + n - i - j) & 1) != 0 ? -1.0 : 1.0;
          for (const auto& r : e.row(i, j, bound).entries)
            dense[static_cast<std::size_t>((r.k - c.k_lo) * cols + (r.l - c.l_lo))] += sign * r.value;
        }
      for (Index k = c.k_lo; k <= c.k_hi; ++k)
        for (Index l = c.l_lo; l <= c.l_hi; ++l)
          if (double v = dense[static_cast<std::size_t>((k - c.k_lo) * cols + (l - c.l_lo))]; v != 0.0)
            acc.push_back({k, l, v});
      return acc;
    }
    // Source rows come sorted, so merging the runs keeps the result sorted.
    auto before = [](const RowEntry& a, const RowEntry& b) { return std::tie(a.k, a.l) < std::tie(b.k, b.l); };
    for (Index i = m - 1; i <= m; ++i)
      for (Index j = n - 1; j <= n; ++j) {
        if (i < 0 || j < 0) continue;
        double sign = ((m + n - i - j) & 1) != 0 ? -1.0 : 1.0;
        auto mid = static_cast<std::ptrdiff_t>(acc.size());
        for (const auto& r : e.row(i, j, bound).entries) acc.push_back({r.k, r.l, sign * r.value});
        std::inplace_merge(acc.begin(), acc.begin() + mid, acc.end(), before);
      }
    return acc;
  };
  f.support = [e](Index m, Index n) -> std::optional<Box> {
    Box box = Box::empty_box();
    for (Index i = std::max<Index>(m - 1, 0); i <= m; ++i)
      for (Index j = std::max<Index>(n - 1, 0); j <= n; ++j) {
        std::optional<Box> b = e.support(i, j);
        if (!b) return std::nullopt;
        box = box.unite(*b);
      }
    return box;
  };
  return FourDimMatrix(std::move(f));
}

}  // namespace dseq
