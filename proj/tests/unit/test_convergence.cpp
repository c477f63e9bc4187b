#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dseq/convergence.hpp"
#include "dseq/difference.hpp"
#include "oracles.hpp"

using namespace dseq;

namespace {
const RunConfig kCfg{};
WindowSchedule sched() { return kCfg.schedule(); }
}  // namespace

TEST(Rules, ParseAndPrint) {
  EXPECT_EQ(parse_rule("bp"), Rule::bp);
  EXPECT_EQ(to_string(Rule::r), "r");
  EXPECT_EQ(to_string(Verdict::unbounded), "unbounded");
  EXPECT_THROW(parse_rule("q"), InvalidArgument);
}

TEST(RunConfig, Validation) {
  EXPECT_NO_THROW(kCfg.validate());
  RunConfig c;
  c.tol = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.growth_factor = 1.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.schedule_sides = {8, 8, 16};
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.fringe = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(PLimit, ConstantConvergesToItsValue) {
  for (double c : {0.0, 1.0, -3.5}) {
    auto rep = p_limit(catalog("constant", {{"c", c}}), sched());
    ASSERT_EQ(rep.verdict, Verdict::converges);
    EXPECT_EQ(rep.limit, c);
  }
}

TEST(PLimit, BoosIsPNullButUnbounded) {
  auto x = catalog("boos");
  auto p = p_limit(x, sched());
  ASSERT_EQ(p.verdict, Verdict::converges);
  EXPECT_NEAR(p.limit, 0.0, 1e-9);
  auto b = bounded(x, sched());
  EXPECT_EQ(b.verdict, Verdict::unbounded);
  ASSERT_TRUE(b.witness.has_value());
  // The witness points at a value that actually exceeds the previous sup.
  EXPECT_EQ(x.at(b.witness->at.m, b.witness->at.n), b.witness->observed);
  EXPECT_GT(b.witness->observed, b.witness->previous_sup);
  EXPECT_NE(bp_limit(x, sched()).verdict, Verdict::converges);
  EXPECT_NE(r_limit(x, sched()).verdict, Verdict::converges);
}

TEST(PLimit, ProductIsUnbounded) { EXPECT_EQ(p_limit(catalog("product"), sched()).verdict, Verdict::unbounded); }

TEST(PLimit, AlternatingDoesNotConverge) {
  EXPECT_NE(p_limit(catalog("alternating"), sched()).verdict, Verdict::converges);
}

TEST(RLimit, RowOscillationBlocksRegularConvergence) {
  auto x = catalog("row0_alternating");
  EXPECT_EQ(bp_limit(x, sched()).verdict, Verdict::converges);
  auto r = r_limit(x, sched());
  EXPECT_NE(r.verdict, Verdict::converges);
  ASSERT_FALSE(r.lines.empty());
  EXPECT_NE(r.lines.front().verdict, Verdict::converges);
}

TEST(RLimit, GeometricConverges) {
  auto r = r_limit(catalog("geometric", {{"rho", 0.5}}), sched());
  ASSERT_EQ(r.verdict, Verdict::converges);
  EXPECT_NEAR(r.limit, 0.0, 1e-12);
  EXPECT_EQ(r.lines.size(), 2u * static_cast<std::size_t>(kCfg.fringe));
}

TEST(Hierarchy, RegularImpliesBoundedImpliesPringsheim) {
  for (const auto& e : standard_catalog()) {
    auto p = p_limit(e.sequence, sched());
    auto bp = bp_limit(e.sequence, sched());
    auto r = r_limit(e.sequence, sched());
    if (r.converges()) {
      ASSERT_TRUE(bp.converges()) << e.label;
      EXPECT_NEAR(r.limit, bp.limit, 1e-9) << e.label;
    }
    if (bp.converges()) {
      ASSERT_TRUE(p.converges()) << e.label;
      EXPECT_NEAR(bp.limit, p.limit, 1e-9) << e.label;
    }
  }
}

TEST(Hierarchy, VerdictsAgreeWithCatalogTruth) {
  // A definite verdict never contradicts the analytic truth.
  for (const auto& e : standard_catalog()) {
    auto p = p_limit(e.sequence, sched());
    if (p.verdict != Verdict::inconclusive) EXPECT_EQ(p.converges(), e.truth.plain.cp) << e.label;
    auto r = r_limit(e.sequence, sched());
    if (r.verdict != Verdict::inconclusive) EXPECT_EQ(r.converges(), e.truth.plain.cr) << e.label;
  }
}

TEST(LineLimit, SingleIndexSequences) {
  std::vector<double> conv(200), div(200);
  for (std::size_t i = 0; i < 200; ++i) {
    conv[i] = 2.0 + std::pow(0.5, static_cast<double>(i));
    div[i] = static_cast<double>(i * i);
  }
  std::vector<Index> lengths = {25, 50, 100, 200};
  auto c = line_limit(conv, lengths, kCfg);
  ASSERT_EQ(c.verdict, Verdict::converges);
  EXPECT_NEAR(c.limit, 2.0, 1e-12);
  EXPECT_EQ(line_limit(div, lengths, kCfg).verdict, Verdict::unbounded);
}

TEST(Norms, LqOfColumnIndicatorDifference) {
  // The difference transform has exactly two entries of modulus 1.
  for (double q : {1.0, 2.0, 4.0}) {
    auto rep = lq_norm_delta(catalog("column0_indicator"), q, sched());
    ASSERT_EQ(rep.verdict, Verdict::converges);
    EXPECT_NEAR(rep.limit, std::pow(2.0, 1.0 / q), 1e-9);
  }
}

TEST(Norms, LqAgainstClosedFormZetaProduct) {
  // sum ((m+1)(n+1))^(-6) = zeta(6)^2, so the L_2 norm of power_decay(3) is zeta(6).
  auto rep = lq_norm(catalog("power_decay", {{"s", 3}}), 2.0, sched());
  ASSERT_EQ(rep.verdict, Verdict::converges);
  EXPECT_NEAR(rep.limit, std::pow(std::numbers::pi, 6) / 945.0, 1e-9);
}

TEST(Norms, LqMatchesDirectSumOnFiniteSupport) {
  auto t = oracle::Table{{1, -2, 0}, {0.5, 0, 3}};
  auto rep = lq_norm(table_sequence(t), 3.0, sched());
  ASSERT_EQ(rep.verdict, Verdict::converges);
  EXPECT_NEAR(rep.limit, std::cbrt(oracle::lq_sum(t, 3.0)), 1e-12);
}

TEST(Norms, SupOfDifference) {
  auto rep = sup_norm_delta(catalog("product_shift"), sched());
  ASSERT_EQ(rep.verdict, Verdict::converges);
  EXPECT_EQ(rep.limit, 1.0);
  EXPECT_EQ(sup_norm_delta(catalog("boos"), sched()).limit, 1.0);
}

TEST(Norms, ExponentBelowOneRejected) {
  EXPECT_THROW(lq_norm_delta(catalog("product"), 0.5, sched()), InvalidExponent);
  EXPECT_THROW(lq_norm(catalog("product"), 0.0, sched()), InvalidExponent);
}

TEST(Norms, LqOfNonSummableIsNotConvergent) {
  EXPECT_EQ(lq_norm_delta(catalog("product_shift"), 2.0, sched()).verdict, Verdict::unbounded);
}

TEST(VSum, GeometricSeries) {
  auto rep = v_sum(catalog("geometric", {{"rho", 0.5}}), Rule::r, sched());
  ASSERT_EQ(rep.verdict, Verdict::converges);
  EXPECT_NEAR(rep.limit, 4.0, 1e-12);
}

TEST(MonotoneSum, HarmonicProductDiverges) {
  // Partial sums of 1/((m+1)(n+1)) grow like log^2.
  auto terms = catalog("power_decay", {{"s", 1}});
  auto rep = monotone_sum(inv_delta(terms).table(sched().largest()), sched());
  EXPECT_EQ(rep.verdict, Verdict::unbounded);
  ASSERT_TRUE(rep.witness.has_value());
}

TEST(MonotoneSum, SummableSeriesConverges) {
  auto terms = catalog("power_decay", {{"s", 5}});
  auto rep = monotone_sum(inv_delta(terms).table(sched().largest()), sched());
  ASSERT_EQ(rep.verdict, Verdict::converges);
  const double zeta5 = 1.0369277551433699;
  EXPECT_NEAR(rep.limit, zeta5 * zeta5, 1e-9);
}

TEST(Determinism, ReportsRepeat) {
  auto a = r_limit(catalog("boos"), sched());
  auto b = r_limit(catalog("boos"), sched());
  EXPECT_EQ(a.verdict, b.verdict);
  ASSERT_EQ(a.evidence.size(), b.evidence.size());
  for (std::size_t i = 0; i < a.evidence.size(); ++i) {
    EXPECT_EQ(a.evidence[i].tail_residual, b.evidence[i].tail_residual);
    EXPECT_EQ(a.evidence[i].sup, b.evidence[i].sup);
  }
}

TEST(Schedule, GridMustCoverLargestWindow) {
  Grid<double> small(Window(10, 10));
  EXPECT_THROW(p_limit(small, sched()), InvalidArgument);
}
