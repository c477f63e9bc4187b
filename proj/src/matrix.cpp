#include "dseq/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "dseq/arith.hpp"

namespace dseq {

Box Box::unite(const Box& o) const {
  if (empty()) return o;
  if (o.empty()) return *this;
  return {std::min(k_lo, o.k_lo), std::max(k_hi, o.k_hi), std::min(l_lo, o.l_lo), std::max(l_hi, o.l_hi)};
}

Box Box::clip(const Window& w) const {
  Box b{std::max<Index>(k_lo, 0), std::min(k_hi, w.m_max()), std::max<Index>(l_lo, 0), std::min(l_hi, w.n_max())};
  return b.empty() ? empty_box() : b;
}

double SparseRow::sum() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.value;
  return s;
}

double SparseRow::abs_sum() const {
  double s = 0.0;
  for (const auto& e : entries) s += std::fabs(e.value);
  return s;
}

std::vector<RowEntry> normalize_row(std::vector<RowEntry> entries) {
  auto before = [](const RowEntry& a, const RowEntry& b) { return std::tie(a.k, a.l) < std::tie(b.k, b.l); };
  if (!std::is_sorted(entries.begin(), entries.end(), before)) std::sort(entries.begin(), entries.end(), before);
  std::vector<RowEntry> out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    if (!out.empty() && out.back().k == e.k && out.back().l == e.l)
      out.back().value += e.value;
    else
      out.push_back(e);
  }
  std::erase_if(out, [](const RowEntry& e) { return e.value == 0.0; });
  return out;
}

namespace {

std::optional<Box> builtin_support(const BuiltinMatrix& b, Index m, Index n) {
  switch (b.kind) {
    case BuiltinKind::delta:
      return Box{std::max<Index>(m - 1, 0), m, std::max<Index>(n - 1, 0), n};
    case BuiltinKind::sigma:
      return Box{0, m, 0, n};
    case BuiltinKind::identity:
      return Box{m, m, n, n};
    case BuiltinKind::zero:
      return Box::empty_box();
    case BuiltinKind::sigma_band:
      return Box{std::max<Index>(m - b.width, 0), m, std::max<Index>(n - b.width, 0), n};
    case BuiltinKind::geometric_row:
      return std::nullopt;
    case BuiltinKind::column_at_row_index:
      return Box{0, 0, m, m};
  }
  return std::nullopt;
}

double builtin_entry(const BuiltinMatrix& b, Index m, Index n, Index k, Index l) {
  switch (b.kind) {
    case BuiltinKind::delta:
      if (k < m - 1 || k > m || l < n - 1 || l > n) return 0.0;
      return ((m + n - k - l) & 1) != 0 ? -1.0 : 1.0;
    case BuiltinKind::sigma:
      return k <= m && l <= n ? 1.0 : 0.0;
    case BuiltinKind::identity:
      return k == m && l == n ? 1.0 : 0.0;
    case BuiltinKind::zero:
      return 0.0;
    case BuiltinKind::sigma_band:
      return k <= m && l <= n && k >= m - b.width && l >= n - b.width ? 1.0 : 0.0;
    case BuiltinKind::geometric_row:
      return std::pow(b.rho, static_cast<double>(k + l));
    case BuiltinKind::column_at_row_index:
      return k == 0 && l == m ? 1.0 : 0.0;
  }
  return 0.0;
}

std::optional<Box> entries_support(const MatrixEntries& e, Index m, Index n) {
  auto it = e.rows.find({m, n});
  Box box = Box::empty_box();
  if (it == e.rows.end()) return box;
  for (const auto& r : it->second) box = box.unite(Box{r.k, r.k, r.l, r.l});
  return box;
}

}  // namespace

FourDimMatrix::FourDimMatrix(Body body) : body_(std::make_shared<const Body>(std::move(body))) {}

double FourDimMatrix::entry(Index m, Index n, Index k, Index l) const {
  if (m < 0 || n < 0 || k < 0 || l < 0) return 0.0;
  return std::visit(
      [&](const auto& b) -> double {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, MatrixEntries>) {
          auto it = b.rows.find({m, n});
          if (it == b.rows.end()) return 0.0;
          for (const auto& r : it->second)
            if (r.k == k && r.l == l) return r.value;
          return 0.0;
        } else if constexpr (std::is_same_v<B, BuiltinMatrix>) {
          return builtin_entry(b, m, n, k, l);
        } else {
          return b.entry(m, n, k, l);
        }
      },
      *body_);
}

std::optional<Box> FourDimMatrix::support(Index m, Index n) const {
  if (m < 0 || n < 0) return Box::empty_box();
  return std::visit(
      [&](const auto& b) -> std::optional<Box> {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, MatrixEntries>)
          return entries_support(b, m, n);
        else if constexpr (std::is_same_v<B, BuiltinMatrix>)
          return builtin_support(b, m, n);
        else
          return b.support(m, n);
      },
      *body_);
}

SparseRow FourDimMatrix::row(Index m, Index n, const Window& bound) const {
  SparseRow out;
  if (m < 0 || n < 0) return out;
  std::optional<Box> box = support(m, n);
  out.exact = box.has_value() && box->within(bound);

  if (const auto* e = std::get_if<MatrixEntries>(&*body_)) {
    auto it = e->rows.find({m, n});
    if (it != e->rows.end())
      for (const auto& r : it->second)
        if (bound.contains(r.k, r.l)) out.entries.push_back(r);
    return out;
  }
  if (const auto* f = std::get_if<RowFamily>(&*body_)) {
    out.entries = normalize_row(f->row(m, n, bound));
    return out;
  }
  const auto& b = std::get<BuiltinMatrix>(*body_);
  Box scan = box ? box->clip(bound) : Box{0, bound.m_max(), 0, bound.n_max()};
  if (!scan.empty())
    out.entries.reserve(static_cast<std::size_t>((scan.k_hi - scan.k_lo + 1) * (scan.l_hi - scan.l_lo + 1)));
  if (b.kind == BuiltinKind::geometric_row && !scan.empty()) {
    std::vector<double> pw(static_cast<std::size_t>(scan.k_hi + scan.l_hi + 1));
    for (std::size_t t = 0; t < pw.size(); ++t) pw[t] = std::pow(b.rho, static_cast<double>(t));
    for (Index k = scan.k_lo; k <= scan.k_hi; ++k)
      for (Index l = scan.l_lo; l <= scan.l_hi; ++l)
        if (double v = pw[static_cast<std::size_t>(k + l)]; v != 0.0) out.entries.push_back({k, l, v});
    return out;
  }
  for (Index k = scan.k_lo; k <= scan.k_hi; ++k)
    for (Index l = scan.l_lo; l <= scan.l_hi; ++l) {
      double v = builtin_entry(b, m, n, k, l);
      if (v != 0.0) out.entries.push_back({k, l, v});
    }
  return out;
}

FourDimMatrix builtin_matrix(std::string_view name, const Params& params) {
  static const std::map<std::string, BuiltinKind, std::less<>> kinds = {
      {"delta", BuiltinKind::delta},
      {"sigma", BuiltinKind::sigma},
      {"identity", BuiltinKind::identity},
      {"zero", BuiltinKind::zero},
      {"sigma_band", BuiltinKind::sigma_band},
      {"geometric_row", BuiltinKind::geometric_row},
      {"column_at_row_index", BuiltinKind::column_at_row_index},
  };
  auto it = kinds.find(name);
  if (it == kinds.end()) throw UnknownCatalogEntry("unknown builtin matrix '" + std::string(name) + "'");

  BuiltinMatrix b;
  b.kind = it->second;
  b.name = std::string(name);
  std::vector<std::string> keys;
  if (b.kind == BuiltinKind::sigma_band) keys = {"width"};
  if (b.kind == BuiltinKind::geometric_row) keys = {"rho"};
  for (const auto& [k, v] : params)
    if (std::find(keys.begin(), keys.end(), k) == keys.end())
      throw InvalidArgument("builtin matrix '" + b.name + "' takes no parameter '" + k + "'");
  for (const auto& k : keys) b.params.emplace_back(k, param_value(params, k));

  if (b.kind == BuiltinKind::sigma_band) {
    double w = param_value(params, "width");
    if (!arith::is_integral(w) || w < 0) throw InvalidArgument("sigma_band width must be a nonnegative integer");
    b.width = static_cast<Index>(w);
  }
  if (b.kind == BuiltinKind::geometric_row) {
    b.rho = param_value(params, "rho");
    if (!(std::fabs(b.rho) < 1.0)) throw InvalidArgument("geometric_row needs |rho| < 1");
  }
  return FourDimMatrix(std::move(b));
}

FourDimMatrix entries_matrix(const std::vector<MatrixEntry>& entries) {
  MatrixEntries body;
  std::set<std::tuple<Index, Index, Index, Index>> seen;
  for (const auto& e : entries) {
    if (e.m < 0 || e.n < 0 || e.k < 0 || e.l < 0) throw InvalidArgument("matrix indices must be nonnegative");
    if (!std::isfinite(e.value)) throw InvalidArgument("matrix entries must be finite");
    if (!seen.insert({e.m, e.n, e.k, e.l}).second)
      throw InvalidArgument("duplicate matrix entry at (" + std::to_string(e.m) + "," + std::to_string(e.n) + "," +
                            std::to_string(e.k) + "," + std::to_string(e.l) + ")");
    if (e.value != 0.0) body.rows[{e.m, e.n}].push_back({e.k, e.l, e.value});
  }
  for (auto& [key, row] : body.rows) row = normalize_row(std::move(row));
  return FourDimMatrix(std::move(body));
}

}  // namespace dseq
