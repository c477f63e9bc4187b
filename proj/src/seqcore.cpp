#include "dseq/seqcore.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "dseq/arith.hpp"
#include "dseq/op_support.hpp"

namespace dseq {

Window::Window(Index m_max, Index n_max) : m_max_(m_max), n_max_(n_max) {
  if (m_max < 0 || n_max < 0) throw InvalidArgument("window bounds must be nonnegative");
}

std::uint64_t Window::cells() const {
  return static_cast<std::uint64_t>(rows()) * static_cast<std::uint64_t>(cols());
}

Window square_window(Index side) {
  if (side < 1) throw InvalidArgument("window side must be at least 1");
  return Window(side - 1, side - 1);
}

void check_cell_cap(const Window& w, std::uint64_t cell_cap) {
  if (w.cells() > cell_cap)
    throw WindowTooLarge("window " + std::to_string(w.rows()) + "x" + std::to_string(w.cols()) +
                         " exceeds the cell cap of " + std::to_string(cell_cap));
}

WindowSchedule::WindowSchedule(std::vector<Window> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.size() < 3) throw InvalidArgument("a window schedule needs at least 3 entries");
  for (std::size_t i = 1; i < sizes_.size(); ++i)
    if (!sizes_[i].strictly_contains(sizes_[i - 1]))
      throw InvalidArgument("window schedule entries must grow strictly in both coordinates");
}

WindowSchedule WindowSchedule::squares(std::span<const Index> sides) {
  std::vector<Window> w;
  w.reserve(sides.size());
  for (Index s : sides) w.push_back(square_window(s));
  return WindowSchedule(std::move(w));
}

WindowSchedule WindowSchedule::dyadic(int t_lo, int t_hi) {
  std::vector<Index> sides;
  for (int t = t_lo; t <= t_hi; ++t) sides.push_back(Index{1} << t);
  return squares(sides);
}

WindowSchedule WindowSchedule::prefix(std::size_t count) const {
  if (count > sizes_.size()) throw InvalidArgument("schedule prefix longer than the schedule");
  return WindowSchedule(std::vector<Window>(sizes_.begin(), sizes_.begin() + static_cast<std::ptrdiff_t>(count)));
}

double param_value(const Params& params, std::string_view key) {
  for (const auto& [k, v] : params)
    if (k == key) return v;
  throw InvalidArgument("missing parameter '" + std::string(key) + "'");
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double separable_factor(const ClosedForm& f, Index i) {
  if (f.shape == Shape::geometric) return std::pow(f.rho, static_cast<double>(i));
  return std::pow(static_cast<double>(i + 1), -f.s);
}

template <typename T>
T closed_form_value(const ClosedForm& f, Index m, Index n) {
  using arith::mul;
  constexpr bool exact = std::is_same_v<T, std::int64_t>;
  switch (f.shape) {
    case Shape::boos:
      return m == 0 ? static_cast<T>(n) : T{0};
    case Shape::product:
      return mul(static_cast<T>(m), static_cast<T>(n));
    case Shape::product_shift:
      return mul(static_cast<T>(m + 1), static_cast<T>(n + 1));
    case Shape::column0_indicator:
      return n == 0 ? T{1} : T{0};
    case Shape::constant:
      if constexpr (exact)
        return arith::to_exact(f.c);
      else
        return f.c;
    case Shape::unit:
      return m == f.i0 && n == f.j0 ? T{1} : T{0};
    case Shape::row_index:
      return static_cast<T>(m);
    case Shape::col_index:
      return static_cast<T>(n);
    case Shape::alternating:
      return ((m + n) & 1) != 0 ? T{-1} : T{1};
    case Shape::row0_alternating:
      return m != 0 ? T{0} : ((n & 1) != 0 ? T{-1} : T{1});
    case Shape::geometric:
    case Shape::power_decay:
      break;
  }
  if constexpr (exact) {
    throw InvalidArgument("catalog entry '" + f.name + "' has no exact path");
  } else {
    return separable_factor(f, m) * separable_factor(f, n);
  }
}

/// Shapes whose value is a product of one factor per index.
bool separable(const ClosedForm& f) { return f.shape == Shape::geometric || f.shape == Shape::power_decay; }

template <typename T>
T table_value(const TableBody& t, Index m, Index n) {
  double v = t.values.window().contains(m, n) ? t.values(m, n) : t.fill;
  if constexpr (std::is_same_v<T, std::int64_t>)
    return arith::to_exact(v);
  else
    return v;
}

template <typename T>
T value_of(const DoubleSequence& x, Index m, Index n) {
  if (m < 0 || n < 0) return T{0};
  return std::visit(
      [&](const auto& body) -> T {
        using B = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<B, ClosedForm>) {
          return closed_form_value<T>(body, m, n);
        } else if constexpr (std::is_same_v<B, TableBody>) {
          return table_value<T>(body, m, n);
        } else {
          std::span<const DoubleSequence> ch(body.children);
          if constexpr (std::is_same_v<T, double>)
            return body.op->at(ch, m, n);
          else
            return body.op->at_exact(ch, m, n);
        }
      },
      x.body());
}

template <typename T>
Grid<T> tabulate(const DoubleSequence& x, const Window& w, std::uint64_t cell_cap) {
  check_cell_cap(w, cell_cap);
  if (const auto* comb = std::get_if<Combinator>(&x.body())) {
    std::span<const DoubleSequence> ch(comb->children);
    if constexpr (std::is_same_v<T, double>)
      return comb->op->table(ch, w, cell_cap);
    else
      return comb->op->table_exact(ch, w, cell_cap);
  }
  Grid<T> out(w);
  if constexpr (std::is_same_v<T, double>) {
    const auto* f = std::get_if<ClosedForm>(&x.body());
    if (f && separable(*f)) {
      std::vector<double> col(static_cast<std::size_t>(w.cols()));
      for (Index n = 0; n <= w.n_max(); ++n) col[static_cast<std::size_t>(n)] = separable_factor(*f, n);
      for (Index m = 0; m <= w.m_max(); ++m) {
        const double r = separable_factor(*f, m);
        auto row = out.row(m);
        for (Index n = 0; n <= w.n_max(); ++n) row[static_cast<std::size_t>(n)] = r * col[static_cast<std::size_t>(n)];
      }
      return out;
    }
  }
  for (Index m = 0; m <= w.m_max(); ++m)
    for (Index n = 0; n <= w.n_max(); ++n) out(m, n) = value_of<T>(x, m, n);
  return out;
}

void require_exact(const DoubleSequence& x) {
  if (!x.exact()) throw InvalidArgument("the integer path needs an exact-integer sequence");
}

}  // namespace

DoubleSequence::DoubleSequence(Body body, ValueKind kind)
    : body_(std::make_shared<const Body>(std::move(body))), kind_(kind) {}

double DoubleSequence::at(Index m, Index n) const { return value_of<double>(*this, m, n); }

std::int64_t DoubleSequence::at_exact(Index m, Index n) const {
  require_exact(*this);
  return value_of<std::int64_t>(*this, m, n);
}

Grid<double> DoubleSequence::table(const Window& w, std::uint64_t cell_cap) const {
  return tabulate<double>(*this, w, cell_cap);
}

Grid<std::int64_t> DoubleSequence::table_exact(const Window& w, std::uint64_t cell_cap) const {
  require_exact(*this);
  return tabulate<std::int64_t>(*this, w, cell_cap);
}

ValueKind SequenceOp::result_kind(std::span<const DoubleSequence> children) const {
  ValueKind k = ValueKind::exact_integer;
  for (const auto& c : children) k = combine(k, c.kind());
  return k;
}

DoubleSequence make_combinator(std::shared_ptr<const SequenceOp> op, std::vector<DoubleSequence> children) {
  if (!op) throw InvalidArgument("combinator without an operator");
  if (children.size() != op->arity())
    throw InvalidArgument("combinator '" + std::string(op->name()) + "' expects " +
                          std::to_string(op->arity()) + " operand(s)");
  ValueKind kind = op->result_kind(children);
  return DoubleSequence(Combinator{std::move(op), std::move(children)}, kind);
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

struct ShapeInfo {
  Shape shape;
  std::vector<std::string> keys;
};

const std::map<std::string, ShapeInfo, std::less<>>& shape_table() {
  static const std::map<std::string, ShapeInfo, std::less<>> table = {
      {"boos", {Shape::boos, {}}},
      {"product", {Shape::product, {}}},
      {"product_shift", {Shape::product_shift, {}}},
      {"column0_indicator", {Shape::column0_indicator, {}}},
      {"constant", {Shape::constant, {"c"}}},
      {"geometric", {Shape::geometric, {"rho"}}},
      {"unit", {Shape::unit, {"i0", "j0"}}},
      {"row_index", {Shape::row_index, {}}},
      {"col_index", {Shape::col_index, {}}},
      {"alternating", {Shape::alternating, {}}},
      {"row0_alternating", {Shape::row0_alternating, {}}},
      {"power_decay", {Shape::power_decay, {"s"}}},
  };
  return table;
}

Index index_param(const Params& p, std::string_view key) {
  double v = param_value(p, key);
  if (!arith::is_integral(v) || v < 0)
    throw InvalidArgument("parameter '" + std::string(key) + "' must be a nonnegative integer");
  return static_cast<Index>(v);
}

ClosedForm decode(std::string_view name, const Params& params) {
  auto it = shape_table().find(name);
  if (it == shape_table().end()) throw UnknownCatalogEntry("unknown catalog entry '" + std::string(name) + "'");
  const ShapeInfo& info = it->second;
  for (const auto& [k, v] : params) {
    if (std::find(info.keys.begin(), info.keys.end(), k) == info.keys.end())
      throw InvalidArgument("catalog entry '" + std::string(name) + "' takes no parameter '" + k + "'");
    if (!std::isfinite(v)) throw InvalidArgument("parameter '" + k + "' must be finite");
  }

  ClosedForm f;
  f.shape = info.shape;
  f.name = std::string(name);
  // Canonical parameter order follows the table, not the caller.
  for (const auto& key : info.keys) f.params.emplace_back(key, param_value(params, key));

  switch (f.shape) {
    case Shape::constant:
      f.c = param_value(params, "c");
      break;
    case Shape::geometric:
      f.rho = param_value(params, "rho");
      if (!(std::fabs(f.rho) < 1.0)) throw InvalidArgument("geometric needs |rho| < 1");
      break;
    case Shape::unit:
      f.i0 = index_param(params, "i0");
      f.j0 = index_param(params, "j0");
      break;
    case Shape::power_decay:
      f.s = param_value(params, "s");
      if (!(f.s > 0.0)) throw InvalidArgument("power_decay needs s > 0");
      break;
    default:
      break;
  }
  return f;
}

ValueKind closed_form_kind(const ClosedForm& f) {
  switch (f.shape) {
    case Shape::geometric:
    case Shape::power_decay:
      return ValueKind::floating;
    case Shape::constant:
      return arith::is_integral(f.c) ? ValueKind::exact_integer : ValueKind::floating;
    default:
      return ValueKind::exact_integer;
  }
}

}  // namespace

DoubleSequence catalog(std::string_view name, const Params& params) {
  ClosedForm f = decode(name, params);
  ValueKind kind = closed_form_kind(f);
  return DoubleSequence(std::move(f), kind);
}

DoubleSequence table_sequence(Grid<double> values, double fill) {
  if (!std::isfinite(fill)) throw InvalidArgument("table default must be finite");
  bool integral = arith::is_integral(fill);
  for (double v : values.data()) {
    if (!std::isfinite(v)) throw InvalidArgument("table values must be finite");
    integral = integral && arith::is_integral(v);
  }
  ValueKind kind = integral ? ValueKind::exact_integer : ValueKind::floating;
  return DoubleSequence(TableBody{std::move(values), fill}, kind);
}

DoubleSequence table_sequence(const std::vector<std::vector<double>>& rows, double fill) {
  if (rows.empty() || rows.front().empty()) throw InvalidArgument("table must be nonempty");
  Grid<double> g(Window(static_cast<Index>(rows.size()) - 1, static_cast<Index>(rows.front().size()) - 1));
  for (std::size_t m = 0; m < rows.size(); ++m) {
    if (rows[m].size() != rows.front().size()) throw InvalidArgument("table must be rectangular");
    for (std::size_t n = 0; n < rows[m].size(); ++n)
      g(static_cast<Index>(m), static_cast<Index>(n)) = rows[m][n];
  }
  return table_sequence(std::move(g), fill);
}

DoubleSequence table_sequence(const Grid<std::int64_t>& values, std::int64_t fill) {
  constexpr std::int64_t kLimit = std::int64_t{1} << 53;
  Grid<double> g(values.window());
  for (Index m = 0; m < values.rows(); ++m)
    for (Index n = 0; n < values.cols(); ++n) {
      std::int64_t v = values(m, n);
      if (v > kLimit || v < -kLimit) throw ValueOverflow("table value exceeds the exactly representable range");
      g(m, n) = static_cast<double>(v);
    }
  return table_sequence(std::move(g), static_cast<double>(fill));
}

CatalogTruth catalog_truth(std::string_view name, const Params& params) {
  ClosedForm f = decode(name, params);
  const MembershipTruth all{true, true, true, true, true, LqTruth::always()};
  // Sequences whose difference transform is finitely supported.
  const MembershipTruth finite_delta = all;

  switch (f.shape) {
    case Shape::boos:
      // Row 0 is n, so x is p-null but unbounded; the transform is +1 on
      // row 0 and -1 on row 1 beyond column 0.
      return {{false, true, true, false, false, LqTruth::never()},
              {true, true, true, true, true, LqTruth::never()}};
    case Shape::product:
    case Shape::product_shift:
      // The transform is 1 off the boundary (product) or everywhere.
      return {{false, false, false, false, false, LqTruth::never()},
              {true, true, false, true, true, LqTruth::never()}};
    case Shape::column0_indicator:
      return {{true, true, true, true, true, LqTruth::never()}, finite_delta};
    case Shape::constant:
      if (f.c == 0.0) return {all, all};
      return {{true, true, false, true, true, LqTruth::never()}, finite_delta};
    case Shape::geometric:
    case Shape::unit:
      return {all, all};
    case Shape::row_index:
    case Shape::col_index:
      // The transform is the indicator of column 0 (resp. row 0) minus the origin.
      return {{false, false, false, false, false, LqTruth::never()},
              {true, true, true, true, true, LqTruth::never()}};
    case Shape::alternating:
      return {{true, false, false, false, false, LqTruth::never()},
              {true, false, false, false, false, LqTruth::never()}};
    case Shape::row0_alternating:
      return {{true, true, true, true, false, LqTruth::never()},
              {true, true, true, true, false, LqTruth::never()}};
    case Shape::power_decay:
      // sum ((m+1)(n+1))^(-sq) is finite iff sq > 1; the transform decays
      // like (mn)^(-s-1), which is q-summable for every q >= 1.
      return {{true, true, true, true, true, LqTruth::above(1.0 / f.s)}, all};
  }
  return {};
}

std::vector<CatalogEntry> standard_catalog() {
  struct Spec {
    std::string label;
    std::string name;
    Params params;
  };
  const std::vector<Spec> specs = {
      {"boos", "boos", {}},
      {"product", "product", {}},
      {"product_shift", "product_shift", {}},
      {"column0_indicator", "column0_indicator", {}},
      {"constant(0)", "constant", {{"c", 0.0}}},
      {"constant(1)", "constant", {{"c", 1.0}}},
      {"constant(-3)", "constant", {{"c", -3.0}}},
      {"geometric(0.5)", "geometric", {{"rho", 0.5}}},
      {"geometric(-0.25)", "geometric", {{"rho", -0.25}}},
      {"unit(0,0)", "unit", {{"i0", 0.0}, {"j0", 0.0}}},
      {"unit(2,3)", "unit", {{"i0", 2.0}, {"j0", 3.0}}},
      {"row_index", "row_index", {}},
      {"col_index", "col_index", {}},
      {"alternating", "alternating", {}},
      {"row0_alternating", "row0_alternating", {}},
      {"power_decay(1)", "power_decay", {{"s", 1.0}}},
      {"power_decay(2)", "power_decay", {{"s", 2.0}}},
      {"power_decay(3)", "power_decay", {{"s", 3.0}}},
  };
  std::vector<CatalogEntry> out;
  out.reserve(specs.size());
  for (const auto& s : specs) out.push_back({s.label, catalog(s.name, s.params), catalog_truth(s.name, s.params)});
  return out;
}

// ---------------------------------------------------------------------------
// Pointwise combinators

namespace {

using detail::PointwiseOp;

class AddOp final : public PointwiseOp<AddOp, 2> {
 public:
  std::string_view name() const override { return "add"; }
  template <typename T>
  T apply(Index, Index, const std::array<T, 2>& v) const {
    return arith::add(v[0], v[1]);
  }
};

class MulOp final : public PointwiseOp<MulOp, 2> {
 public:
  std::string_view name() const override { return "mul"; }
  template <typename T>
  T apply(Index, Index, const std::array<T, 2>& v) const {
    return arith::mul(v[0], v[1]);
  }
};

class ScaleOp final : public PointwiseOp<ScaleOp, 1> {
 public:
  explicit ScaleOp(double c) : c_(c) {
    if (!std::isfinite(c)) throw InvalidArgument("scale factor must be finite");
  }
  std::string_view name() const override { return "scale"; }
  Params params() const override { return {{"c", c_}}; }
  ValueKind result_kind(std::span<const DoubleSequence> ch) const override {
    return arith::is_integral(c_) ? ch[0].kind() : ValueKind::floating;
  }
  template <typename T>
  T apply(Index, Index, const std::array<T, 1>& v) const {
    if constexpr (std::is_same_v<T, double>)
      return c_ * v[0];
    else
      return arith::mul(arith::to_exact(c_), v[0]);
  }

 private:
  double c_;
};

class AbsPowOp final : public PointwiseOp<AbsPowOp, 1> {
 public:
  explicit AbsPowOp(double q) : q_(q) {
    if (!std::isfinite(q) || q <= 0.0) throw InvalidExponent("exponent must be positive and finite");
  }
  std::string_view name() const override { return "abs_pow"; }
  Params params() const override { return {{"q", q_}}; }
  ValueKind result_kind(std::span<const DoubleSequence> ch) const override {
    return arith::is_integral(q_) ? ch[0].kind() : ValueKind::floating;
  }
  template <typename T>
  T apply(Index, Index, const std::array<T, 1>& v) const {
    T a = arith::abs(v[0]);
    if constexpr (std::is_same_v<T, double>) {
      if (q_ == 1.0) return a;
      if (q_ == 2.0) return a * a;
      return std::pow(a, q_);
    } else {
      T r = 1;
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(q_); ++i) r = arith::mul(r, a);
      return r;
    }
  }

 private:
  double q_;
};

class IndexWeightOp final : public PointwiseOp<IndexWeightOp, 1> {
 public:
  IndexWeightOp(bool rows, bool cols) : rows_(rows), cols_(cols) {}
  std::string_view name() const override { return "index_weight"; }
  Params params() const override { return {{"rows", rows_ ? 1.0 : 0.0}, {"cols", cols_ ? 1.0 : 0.0}}; }
  template <typename T>
  T apply(Index m, Index n, const std::array<T, 1>& v) const {
    T r = v[0];
    if (rows_) r = arith::mul(r, static_cast<T>(m + 1));
    if (cols_) r = arith::mul(r, static_cast<T>(n + 1));
    return r;
  }

 private:
  bool rows_;
  bool cols_;
};

class MaskOp final : public PointwiseOp<MaskOp, 1> {
 public:
  MaskOp(Index i_from, Index j_from) : i_from_(i_from), j_from_(j_from) {
    if (i_from < 0 || j_from < 0) throw InvalidArgument("mask bounds must be nonnegative");
  }
  std::string_view name() const override { return "mask_from"; }
  Params params() const override {
    return {{"i_from", static_cast<double>(i_from_)}, {"j_from", static_cast<double>(j_from_)}};
  }
  template <typename T>
  T apply(Index m, Index n, const std::array<T, 1>& v) const {
    return m >= i_from_ && n >= j_from_ ? v[0] : T{0};
  }

 private:
  Index i_from_;
  Index j_from_;
};

bool flag_param(const Params& p, std::string_view key) {
  double v = param_value(p, key);
  if (v != 0.0 && v != 1.0) throw InvalidArgument("parameter '" + std::string(key) + "' must be 0 or 1");
  return v == 1.0;
}

}  // namespace

DoubleSequence add(const DoubleSequence& x, const DoubleSequence& y) {
  return make_combinator(std::make_shared<AddOp>(), {x, y});
}

DoubleSequence scale(const DoubleSequence& x, double c) {
  return make_combinator(std::make_shared<ScaleOp>(c), {x});
}

DoubleSequence mul(const DoubleSequence& x, const DoubleSequence& y) {
  return make_combinator(std::make_shared<MulOp>(), {x, y});
}

DoubleSequence abs_pow(const DoubleSequence& x, double q) {
  return make_combinator(std::make_shared<AbsPowOp>(q), {x});
}

DoubleSequence index_weight(const DoubleSequence& x, bool rows, bool cols) {
  return make_combinator(std::make_shared<IndexWeightOp>(rows, cols), {x});
}

DoubleSequence mask_from(const DoubleSequence& x, Index i_from, Index j_from) {
  return make_combinator(std::make_shared<MaskOp>(i_from, j_from), {x});
}

std::shared_ptr<const SequenceOp> pointwise_op(std::string_view name, const Params& params) {
  if (name == "add") return std::make_shared<AddOp>();
  if (name == "mul") return std::make_shared<MulOp>();
  if (name == "scale") return std::make_shared<ScaleOp>(param_value(params, "c"));
  if (name == "abs_pow") return std::make_shared<AbsPowOp>(param_value(params, "q"));
  if (name == "index_weight")
    return std::make_shared<IndexWeightOp>(flag_param(params, "rows"), flag_param(params, "cols"));
  if (name == "mask_from") {
    double i = param_value(params, "i_from");
    double j = param_value(params, "j_from");
    if (!arith::is_integral(i) || !arith::is_integral(j)) throw InvalidArgument("mask bounds must be integers");
    return std::make_shared<MaskOp>(static_cast<Index>(i), static_cast<Index>(j));
  }
  return nullptr;
}

}  // namespace dseq
