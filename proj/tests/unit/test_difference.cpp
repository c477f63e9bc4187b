#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "dseq/difference.hpp"
#include "oracles.hpp"

using namespace dseq;

namespace {

DoubleSequence from_itable(const oracle::ITable& t) { return table_sequence(oracle::to_grid(t)); }

// Direct (Ex)_mn over a finite entry list.
std::map<std::pair<Index, Index>, double> apply_entries(const std::vector<MatrixEntry>& es, const DoubleSequence& x) {
  std::map<std::pair<Index, Index>, double> out;
  for (const auto& e : es) out[{e.m, e.n}] += e.value * x.at(e.k, e.l);
  return out;
}

std::vector<MatrixEntry> random_entries(std::mt19937_64& rng, Index row_hi, Index col_hi, int count) {
  std::uniform_int_distribution<Index> row(0, row_hi), col(0, col_hi);
  std::uniform_int_distribution<int> val(-5, 5);
  std::map<std::tuple<Index, Index, Index, Index>, double> uniq;
  for (int i = 0; i < count; ++i) uniq[{row(rng), row(rng), col(rng), col(rng)}] = val(rng);
  std::vector<MatrixEntry> out;
  for (const auto& [k, v] : uniq) out.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k), v});
  return out;
}

}  // namespace

TEST(Delta, MatchesDirectFormulaOnRandomTables) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto t = oracle::random_int_table(rng, 1 + trial, 3 + trial % 5, -100, 100);
    Window w(static_cast<Index>(t.size()) - 1, static_cast<Index>(t[0].size()) - 1);
    EXPECT_EQ(oracle::from_grid(delta(from_itable(t)).table_exact(w)), oracle::delta(t));
  }
}

TEST(Delta, CatalogExamples) {
  // product: 1 wherever m, n >= 1.
  auto d = delta(catalog("product"));
  EXPECT_EQ(d.at_exact(0, 5), 0);
  EXPECT_EQ(d.at_exact(4, 7), 1);
  // product_shift: 1 everywhere.
  auto ds = delta(catalog("product_shift")).table_exact(Window(9, 9));
  for (auto v : ds.data()) EXPECT_EQ(v, 1);
  // column0_indicator: +1 at (0,0), -1 at (0,1), nothing else.
  auto dc = delta(catalog("column0_indicator")).table_exact(Window(9, 9));
  for (Index m = 0; m <= 9; ++m)
    for (Index n = 0; n <= 9; ++n) {
      std::int64_t want = (m == 0 && n == 0) ? 1 : (m == 0 && n == 1) ? -1 : 0;
      EXPECT_EQ(dc(m, n), want) << m << "," << n;
    }
}

TEST(InvDelta, MatchesQuadraticPrefixSums) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    auto t = oracle::random_int_table(rng, 2 + trial % 7, 1 + trial, -50, 50);
    Window w(static_cast<Index>(t.size()) - 1, static_cast<Index>(t[0].size()) - 1);
    EXPECT_EQ(oracle::from_grid(inv_delta(from_itable(t)).table_exact(w)), oracle::prefix(t));
  }
}

TEST(InvDelta, PointValueAgreesWithTable) {
  auto y = catalog("alternating");
  auto g = inv_delta(y).table_exact(Window(12, 12));
  EXPECT_EQ(inv_delta(y).at_exact(7, 11), g(7, 11));
  EXPECT_EQ(inv_delta(y).at_exact(-1, 3), 0);
}

TEST(RoundTrip, IntegerTablesExact) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> side(1, 64);
  for (int trial = 0; trial < 50; ++trial) {
    auto t = oracle::random_int_table(rng, side(rng), side(rng), -1000000, 1000000);
    auto x = from_itable(t);
    Window w(static_cast<Index>(t.size()) - 1, static_cast<Index>(t[0].size()) - 1);
    EXPECT_EQ(oracle::from_grid(delta(inv_delta(x)).table_exact(w)), t);
    EXPECT_EQ(oracle::from_grid(inv_delta(delta(x)).table_exact(w)), t);
  }
}

TEST(RoundTrip, FloatTablesWithinTolerance) {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<int> side(1, 64);
  for (int trial = 0; trial < 50; ++trial) {
    auto t = oracle::random_table(rng, side(rng), side(rng), -1e3, 1e3);
    auto x = table_sequence(t);
    Window w(static_cast<Index>(t.size()) - 1, static_cast<Index>(t[0].size()) - 1);
    EXPECT_LE(oracle::normwise_rel_error(oracle::from_grid(delta(inv_delta(x)).table(w)), t), 1e-12);
    EXPECT_LE(oracle::normwise_rel_error(oracle::from_grid(inv_delta(delta(x)).table(w)), t), 1e-12);
  }
}

TEST(DifferenceOp, NamesRoundTrip) {
  ASSERT_NE(difference_op("delta"), nullptr);
  ASSERT_NE(difference_op("inv_delta"), nullptr);
  EXPECT_EQ(difference_op("sigma"), nullptr);
  auto x = make_combinator(difference_op("delta"), {catalog("product")});
  EXPECT_EQ(x.at_exact(3, 3), 1);
}

TEST(Apply4d, DeltaMatrixActsLikeDelta) {
  auto x = catalog("boos");
  Window rows(9, 9);
  auto res = apply_4d(builtin_matrix("delta"), x, Rule::p, rows, RunConfig{}.schedule());
  for (Index m = 0; m <= 9; ++m)
    for (Index n = 0; n <= 9; ++n) EXPECT_EQ(res.values(m, n), delta(x).at(m, n));
  for (const auto& r : res.rows) EXPECT_TRUE(r.report.exact);
}

TEST(Apply4d, SigmaMatrixActsLikePrefixSums) {
  auto x = catalog("alternating");
  auto res = apply_4d(builtin_matrix("sigma"), x, Rule::r, Window(6, 6), RunConfig{}.schedule());
  for (Index m = 0; m <= 6; ++m)
    for (Index n = 0; n <= 6; ++n) EXPECT_EQ(res.values(m, n), inv_delta(x).at(m, n));
}

TEST(Apply4d, UnboundedRowsGoThroughCertifier) {
  // Row (m, n) of geometric_row(rho) is rho^(k+l) over all (k, l); against the
  // constant 1 it sums to (1/(1-rho))^2. Rows have unbounded support.
  auto a = builtin_matrix("geometric_row", {{"rho", 0.5}});
  auto res = apply_4d(a, catalog("constant", {{"c", 1}}), Rule::r, Window(1, 1), RunConfig{}.schedule());
  for (const auto& r : res.rows) {
    EXPECT_EQ(r.report.verdict, Verdict::converges);
    EXPECT_NEAR(r.report.limit, 4.0, 1e-9);
  }
  // Against product_shift it still converges, to (1/(1-rho))^4.
  auto weighted = apply_4d(a, catalog("product_shift"), Rule::p, Window(0, 0), RunConfig{}.schedule());
  EXPECT_NEAR(weighted.values(0, 0), 16.0, 1e-9);
}

TEST(EToF, IdentityGivesDelta) {
  auto f = e_to_f(builtin_matrix("identity"));
  auto d = builtin_matrix("delta");
  for (Index m = 0; m <= 6; ++m)
    for (Index n = 0; n <= 6; ++n)
      for (Index k = 0; k <= 7; ++k)
        for (Index l = 0; l <= 7; ++l) ASSERT_EQ(f.entry(m, n, k, l), d.entry(m, n, k, l));
}

TEST(EToF, EntriesFollowFourRowCombination) {
  std::mt19937_64 rng(15);
  auto es = random_entries(rng, 6, 5, 80);
  auto e = entries_matrix(es);
  auto f = e_to_f(e);
  for (Index m = 0; m <= 7; ++m)
    for (Index n = 0; n <= 7; ++n)
      for (Index k = 0; k <= 5; ++k)
        for (Index l = 0; l <= 5; ++l) {
          double want = e.entry(m, n, k, l) - e.entry(m - 1, n, k, l) - e.entry(m, n - 1, k, l) +
                        e.entry(m - 1, n - 1, k, l);
          ASSERT_EQ(f.entry(m, n, k, l), want);
        }
}

TEST(EToF, ConstantRowsTelescopeToCorner) {
  std::vector<MatrixEntry> es;
  for (Index m = 0; m <= 4; ++m)
    for (Index n = 0; n <= 4; ++n) es.push_back({m, n, 1, 2, 3.0});
  auto f = e_to_f(entries_matrix(es));
  for (Index m = 0; m <= 4; ++m)
    for (Index n = 0; n <= 4; ++n) EXPECT_EQ(f.entry(m, n, 1, 2), (m == 0 && n == 0) ? 3.0 : 0.0);
}

TEST(EToF, PairingIdentityOnRandomMatrices) {
  std::mt19937_64 rng(16);
  const std::vector<DoubleSequence> xs = {catalog("product"), catalog("boos"), catalog("alternating"),
                                          catalog("unit", {{"i0", 1}, {"j0", 2}})};
  for (int trial = 0; trial < 10; ++trial) {
    auto es = random_entries(rng, 12, 7, 150);
    const auto& x = xs[trial % xs.size()];
    auto ex = apply_entries(es, x);
    auto ex_at = [&](Index m, Index n) {
      auto it = ex.find({m, n});
      return it == ex.end() ? 0.0 : it->second;
    };
    auto fx = apply_4d(e_to_f(entries_matrix(es)), x, Rule::r, Window(13, 13), RunConfig{}.schedule());
    for (Index m = 0; m <= 13; ++m)
      for (Index n = 0; n <= 13; ++n)
        ASSERT_EQ(fx.values(m, n), ex_at(m, n) - ex_at(m - 1, n) - ex_at(m, n - 1) + ex_at(m - 1, n - 1));
  }
}
