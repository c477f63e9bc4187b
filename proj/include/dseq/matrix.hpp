#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dseq/seqcore.hpp"

namespace dseq {

/// Closed index box [k_lo..k_hi] x [l_lo..l_hi] over the column indices of a
/// matrix row. Empty when a bound is inverted.
struct Box {
  Index k_lo = 0;
  Index k_hi = -1;
  Index l_lo = 0;
  Index l_hi = -1;

  static Box empty_box() { return {}; }
  bool empty() const { return k_lo > k_hi || l_lo > l_hi; }
  bool within(const Window& w) const {
    return empty() || (k_lo >= 0 && l_lo >= 0 && k_hi <= w.m_max() && l_hi <= w.n_max());
  }
  bool contains(Index k, Index l) const { return k >= k_lo && k <= k_hi && l >= l_lo && l <= l_hi; }
  Box unite(const Box& o) const;
  Box clip(const Window& w) const;

  friend bool operator==(const Box&, const Box&) = default;
};

struct RowEntry {
  Index k = 0;
  Index l = 0;
  double value = 0.0;

  friend bool operator==(const RowEntry&, const RowEntry&) = default;
};

/// Nonzero entries of one matrix row, ordered by (k, l). `exact` is false when
/// the row was cut at an enumeration bound and may continue past it.
struct SparseRow {
  std::vector<RowEntry> entries;
  bool exact = true;

  double sum() const;
  double abs_sum() const;
};

struct MatrixEntry {
  Index m = 0;
  Index n = 0;
  Index k = 0;
  Index l = 0;
  double value = 0.0;
};

/// Finitely supported matrix given by its nonzero entries.
struct MatrixEntries {
  std::map<std::pair<Index, Index>, std::vector<RowEntry>> rows;
};

enum class BuiltinKind {
  delta,
  sigma,
  identity,
  zero,
  sigma_band,
  geometric_row,
  column_at_row_index,
};

struct BuiltinMatrix {
  BuiltinKind kind = BuiltinKind::identity;
  std::string name;
  Params params;
  Index width = 0;
  double rho = 0.0;
};

class FourDimMatrix;

/// Matrix given by a rule (m, n) -> sparse row. `sources` and `params` carry
/// what is needed to serialize the family.
struct RowFamily {
  std::string name;
  Params params;
  std::vector<DoubleSequence> seq_sources;
  std::vector<FourDimMatrix> mat_sources;
  std::function<double(Index, Index, Index, Index)> entry;
  /// Row entries inside the bound window.
  std::function<std::vector<RowEntry>(Index, Index, const Window&)> row;
  /// Bounding box of a row's support; nullopt when unbounded or undeclared.
  std::function<std::optional<Box>(Index, Index)> support;
};

/// Immutable map (m, n, k, l) -> a_mnkl. Every row has enumerable support
/// inside any window.
class FourDimMatrix {
 public:
  using Body = std::variant<MatrixEntries, BuiltinMatrix, RowFamily>;

  explicit FourDimMatrix(Body body);

  const Body& body() const { return *body_; }

  /// a_mnkl; 0 when any index is negative.
  double entry(Index m, Index n, Index k, Index l) const;
  /// Nonzero entries of row (m, n) inside `bound`.
  SparseRow row(Index m, Index n, const Window& bound) const;
  /// Declared support box of row (m, n); nullopt when unbounded.
  std::optional<Box> support(Index m, Index n) const;

 private:
  std::shared_ptr<const Body> body_;
};

/// Builtins: delta, sigma, identity, zero, sigma_band(width),
/// geometric_row(rho), column_at_row_index.
FourDimMatrix builtin_matrix(std::string_view name, const Params& params = {});

/// Throws InvalidArgument when an index quadruple repeats.
FourDimMatrix entries_matrix(const std::vector<MatrixEntry>& entries);

inline double mat_entry(const FourDimMatrix& a, Index m, Index n, Index k, Index l) {
  return a.entry(m, n, k, l);
}

/// Sorts by (k, l), merges duplicates and drops zeros.
std::vector<RowEntry> normalize_row(std::vector<RowEntry> entries);

}  // namespace dseq
