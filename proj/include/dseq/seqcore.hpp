#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dseq/errors.hpp"

namespace dseq {

using Index = std::int64_t;

inline constexpr std::uint64_t kDefaultCellCap = std::uint64_t{1} << 26;

struct Index2 {
  Index m = 0;
  Index n = 0;

  friend bool operator==(const Index2&, const Index2&) = default;
};

/// The index rectangle [0..m_max] x [0..n_max].
class Window {
 public:
  constexpr Window() = default;
  Window(Index m_max, Index n_max);

  Index m_max() const { return m_max_; }
  Index n_max() const { return n_max_; }
  Index rows() const { return m_max_ + 1; }
  Index cols() const { return n_max_ + 1; }
  std::uint64_t cells() const;

  bool contains(Index m, Index n) const {
    return m >= 0 && n >= 0 && m <= m_max_ && n <= n_max_;
  }
  /// Larger than `other` in both coordinates.
  bool strictly_contains(const Window& other) const {
    return m_max_ > other.m_max_ && n_max_ > other.n_max_;
  }

  friend bool operator==(const Window&, const Window&) = default;

 private:
  Index m_max_ = 0;
  Index n_max_ = 0;
};

/// Square window with `side` indices per axis.
Window square_window(Index side);

/// Throws WindowTooLarge when `w` holds more than `cell_cap` cells.
void check_cell_cap(const Window& w, std::uint64_t cell_cap);

/// Finite surrogate for letting both indices tend to infinity: nested windows,
/// each strictly larger than its predecessor.
class WindowSchedule {
 public:
  explicit WindowSchedule(std::vector<Window> sizes);

  static WindowSchedule squares(std::span<const Index> sides);
  /// Squares of side 2^t for t in [t_lo, t_hi].
  static WindowSchedule dyadic(int t_lo, int t_hi);

  const std::vector<Window>& windows() const { return sizes_; }
  const Window& largest() const { return sizes_.back(); }
  const Window& operator[](std::size_t i) const { return sizes_[i]; }
  std::size_t size() const { return sizes_.size(); }

  /// The first `count` entries (count >= 3).
  WindowSchedule prefix(std::size_t count) const;

 private:
  std::vector<Window> sizes_;
};

/// Dense row-major array over a Window.
template <typename T>
class Grid {
 public:
  Grid() : Grid(Window{}) {}
  explicit Grid(const Window& w, T fill = T{})
      : window_(w), data_(static_cast<std::size_t>(w.cells()), fill) {}

  const Window& window() const { return window_; }
  Index rows() const { return window_.rows(); }
  Index cols() const { return window_.cols(); }

  T& operator()(Index m, Index n) { return data_[offset(m, n)]; }
  const T& operator()(Index m, Index n) const { return data_[offset(m, n)]; }

  std::span<T> row(Index m) { return {data_.data() + offset(m, 0), static_cast<std::size_t>(cols())}; }
  std::span<const T> row(Index m) const {
    return {data_.data() + offset(m, 0), static_cast<std::size_t>(cols())};
  }

  const std::vector<T>& data() const { return data_; }

  /// Copy of the sub-rectangle [0..w.m_max] x [0..w.n_max].
  Grid sub(const Window& w) const {
    Grid out(w);
    for (Index m = 0; m <= w.m_max(); ++m)
      for (Index n = 0; n <= w.n_max(); ++n) out(m, n) = (*this)(m, n);
    return out;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t offset(Index m, Index n) const {
    return static_cast<std::size_t>(m) * static_cast<std::size_t>(cols()) + static_cast<std::size_t>(n);
  }

  Window window_;
  std::vector<T> data_;
};

/// Which numeric path a sequence evaluates on.
enum class ValueKind { exact_integer, floating };

inline ValueKind combine(ValueKind a, ValueKind b) {
  return a == ValueKind::exact_integer && b == ValueKind::exact_integer ? ValueKind::exact_integer
                                                                        : ValueKind::floating;
}

/// Ordered named parameters; order is kept for deterministic serialization.
using Params = std::vector<std::pair<std::string, double>>;

class DoubleSequence;
class SequenceOp;

enum class Shape {
  boos,
  product,
  product_shift,
  column0_indicator,
  constant,
  geometric,
  unit,
  row_index,
  col_index,
  alternating,
  row0_alternating,
  power_decay,
};

struct ClosedForm {
  Shape shape = Shape::constant;
  std::string name;
  Params params;
  // Decoded parameters; only the ones relevant to `shape` are meaningful.
  double c = 0.0;
  double rho = 0.0;
  double s = 0.0;
  Index i0 = 0;
  Index j0 = 0;
};

struct TableBody {
  Grid<double> values;
  double fill = 0.0;
};

struct Combinator {
  std::shared_ptr<const SequenceOp> op;
  std::vector<DoubleSequence> children;
};

/// Immutable real-valued map (m, n) -> x_mn with zero extension at negative
/// indices. Copies share the underlying body.
class DoubleSequence {
 public:
  using Body = std::variant<ClosedForm, TableBody, Combinator>;

  DoubleSequence(Body body, ValueKind kind);

  ValueKind kind() const { return kind_; }
  bool exact() const { return kind_ == ValueKind::exact_integer; }
  const Body& body() const { return *body_; }

  /// Floating-path value; 0 at any negative coordinate.
  double at(Index m, Index n) const;
  double at(Index2 i) const { return at(i.m, i.n); }
  /// Integer-path value. Throws ValueOverflow on overflow and InvalidArgument
  /// for floating-kind sequences.
  std::int64_t at_exact(Index m, Index n) const;

  /// Values over `w` on the floating path.
  Grid<double> table(const Window& w, std::uint64_t cell_cap = kDefaultCellCap) const;
  /// Values over `w` on the integer path.
  Grid<std::int64_t> table_exact(const Window& w, std::uint64_t cell_cap = kDefaultCellCap) const;

 private:
  std::shared_ptr<const Body> body_;
  ValueKind kind_;
};

/// Operator of a combinator sequence. Implementations hold only parameters.
class SequenceOp {
 public:
  virtual ~SequenceOp() = default;

  virtual std::string_view name() const = 0;
  virtual Params params() const { return {}; }
  virtual std::size_t arity() const = 0;
  virtual ValueKind result_kind(std::span<const DoubleSequence> children) const;

  virtual double at(std::span<const DoubleSequence> children, Index m, Index n) const = 0;
  virtual std::int64_t at_exact(std::span<const DoubleSequence> children, Index m, Index n) const = 0;
  virtual Grid<double> table(std::span<const DoubleSequence> children, const Window& w,
                             std::uint64_t cell_cap) const = 0;
  virtual Grid<std::int64_t> table_exact(std::span<const DoubleSequence> children, const Window& w,
                                         std::uint64_t cell_cap) const = 0;
};

/// Builds a combinator node, validating arity.
DoubleSequence make_combinator(std::shared_ptr<const SequenceOp> op, std::vector<DoubleSequence> children);

// ---------------------------------------------------------------------------
// Catalog

/// Closed-form catalog entry. Known names: boos, product, product_shift,
/// column0_indicator, constant(c), geometric(rho), unit(i0, j0), row_index,
/// col_index, alternating, row0_alternating, power_decay(s).
DoubleSequence catalog(std::string_view name, const Params& params = {});

/// Finite table with `fill` outside the stored rectangle.
DoubleSequence table_sequence(Grid<double> values, double fill = 0.0);
DoubleSequence table_sequence(const std::vector<std::vector<double>>& rows, double fill = 0.0);
DoubleSequence table_sequence(const Grid<std::int64_t>& values, std::int64_t fill = 0);

/// Membership in L_q holds for q in [q_min, inf) or (q_min, inf).
struct LqTruth {
  double q_min = std::numeric_limits<double>::infinity();
  bool strict = false;

  static LqTruth always() { return {1.0, false}; }
  static LqTruth never() { return {}; }
  static LqTruth above(double q) { return {q, true}; }

  bool holds(double q) const { return strict ? q > q_min : q >= q_min; }
};

struct MembershipTruth {
  bool mu = false;
  bool cp = false;
  bool c0p = false;
  bool cbp = false;
  bool cr = false;
  LqTruth lq;
};

/// Analytic ground truth for a catalog entry: `plain` describes x itself and
/// `delta` describes its difference transform.
struct CatalogTruth {
  MembershipTruth plain;
  MembershipTruth delta;
};

struct CatalogEntry {
  std::string label;
  DoubleSequence sequence;
  CatalogTruth truth;
};

/// Ground truth for a closed-form catalog sequence.
CatalogTruth catalog_truth(std::string_view name, const Params& params = {});

/// Instantiated catalog used by sweeps and acceptance checks.
std::vector<CatalogEntry> standard_catalog();

// ---------------------------------------------------------------------------
// Pointwise combinators

DoubleSequence add(const DoubleSequence& x, const DoubleSequence& y);
DoubleSequence scale(const DoubleSequence& x, double c);
DoubleSequence mul(const DoubleSequence& x, const DoubleSequence& y);
/// |x|^q; q = 1 gives |x|.
DoubleSequence abs_pow(const DoubleSequence& x, double q);
/// x_mn * (m+1)^[rows] * (n+1)^[cols].
DoubleSequence index_weight(const DoubleSequence& x, bool rows, bool cols);
/// x_mn where m >= i_from and n >= j_from, 0 elsewhere.
DoubleSequence mask_from(const DoubleSequence& x, Index i_from, Index j_from);

/// Rebuilds a pointwise combinator from its serialized name and parameters;
/// returns nullptr for names that are not pointwise ops.
std::shared_ptr<const SequenceOp> pointwise_op(std::string_view name, const Params& params);

/// window_table with the configured cell cap.
inline Grid<double> window_table(const DoubleSequence& x, const Window& w,
                                 std::uint64_t cell_cap = kDefaultCellCap) {
  return x.table(w, cell_cap);
}

double param_value(const Params& params, std::string_view key);

}  // namespace dseq
