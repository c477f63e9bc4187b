#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "dseq/seqcore.hpp"

namespace dseq::detail {

template <typename T>
T value_at(const DoubleSequence& x, Index m, Index n) {
  if constexpr (std::is_same_v<T, double>)
    return x.at(m, n);
  else
    return x.at_exact(m, n);
}

template <typename T>
Grid<T> table_of(const DoubleSequence& x, const Window& w, std::uint64_t cell_cap) {
  if constexpr (std::is_same_v<T, double>)
    return x.table(w, cell_cap);
  else
    return x.table_exact(w, cell_cap);
}

/// Routes both numeric paths of SequenceOp to `Derived::eval<T>` and
/// `Derived::tabulate<T>`.
template <typename Derived>
class OpAdapter : public SequenceOp {
 public:
  double at(std::span<const DoubleSequence> c, Index m, Index n) const override {
    return self().template eval<double>(c, m, n);
  }
  std::int64_t at_exact(std::span<const DoubleSequence> c, Index m, Index n) const override {
    return self().template eval<std::int64_t>(c, m, n);
  }
  Grid<double> table(std::span<const DoubleSequence> c, const Window& w,
                     std::uint64_t cell_cap) const override {
    check_cell_cap(w, cell_cap);
    return self().template tabulate<double>(c, w, cell_cap);
  }
  Grid<std::int64_t> table_exact(std::span<const DoubleSequence> c, const Window& w,
                                 std::uint64_t cell_cap) const override {
    check_cell_cap(w, cell_cap);
    return self().template tabulate<std::int64_t>(c, w, cell_cap);
  }

 private:
  const Derived& self() const { return static_cast<const Derived&>(*this); }
};

/// Cellwise operator over up to two children. `Derived::apply<T>(m, n, values)`
/// maps the children's values at (m, n) to the result.
template <typename Derived, std::size_t Arity>
class PointwiseOp : public OpAdapter<PointwiseOp<Derived, Arity>> {
 public:
  std::size_t arity() const override { return Arity; }

  template <typename T>
  T eval(std::span<const DoubleSequence> c, Index m, Index n) const {
    if (m < 0 || n < 0) return T{0};
    std::array<T, Arity> v{};
    for (std::size_t i = 0; i < Arity; ++i) v[i] = value_at<T>(c[i], m, n);
    return self().template apply<T>(m, n, v);
  }

  template <typename T>
  Grid<T> tabulate(std::span<const DoubleSequence> c, const Window& w, std::uint64_t cell_cap) const {
    std::array<Grid<T>, Arity> tables;
    for (std::size_t i = 0; i < Arity; ++i) tables[i] = table_of<T>(c[i], w, cell_cap);
    Grid<T> out(w);
    std::array<T, Arity> v{};
    for (Index m = 0; m <= w.m_max(); ++m)
      for (Index n = 0; n <= w.n_max(); ++n) {
        for (std::size_t i = 0; i < Arity; ++i) v[i] = tables[i](m, n);
        out(m, n) = self().template apply<T>(m, n, v);
      }
    return out;
  }

 private:
  const Derived& self() const { return static_cast<const Derived&>(*this); }
};

}  // namespace dseq::detail
