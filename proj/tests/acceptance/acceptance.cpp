// Acceptance run: one [PASS]/[FAIL] line per criterion. Exit status is
// nonzero when any gating criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dseq/difference.hpp"
#include "dseq/duality.hpp"
#include "dseq/io.hpp"
#include "dseq/matclass.hpp"
#include "dseq/spaces.hpp"
#include "dseq/zmap.hpp"
#include "oracles.hpp"

using namespace dseq;

namespace {

// Collects the first few failure messages of one criterion.
class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (notes_.size() < 5) notes_.push_back(what);
  }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    std::ostringstream s;
    s << failures_ << " failure(s)";
    for (const auto& n : notes_) s << "; " << n;
    return s.str();
  }
  std::string detail;

 private:
  int failures_ = 0;
  std::vector<std::string> notes_;
};

struct Criterion {
  int id;
  std::string title;
  bool gating;
  double budget_s;  // 0 means no runtime bound
  std::function<void(Check&)> body;
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

std::string evidence_path = "alpha_dual_evidence.json";

Window window_of(const oracle::ITable& t) {
  return Window(static_cast<Index>(t.size()) - 1, static_cast<Index>(t[0].size()) - 1);
}

void round_trips(Check& c) {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> side(1, 64);
  for (int trial = 0; trial < 200; ++trial) {
    auto t = oracle::random_int_table(rng, side(rng), side(rng), -1000000, 1000000);
    auto x = table_sequence(oracle::to_grid(t));
    Window w = window_of(t);
    c.require(oracle::from_grid(delta(inv_delta(x)).table_exact(w)) == t, "int delta(inv_delta) trial " + num(trial));
    c.require(oracle::from_grid(inv_delta(delta(x)).table_exact(w)) == t, "int inv_delta(delta) trial " + num(trial));
  }
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto t = oracle::random_table(rng, side(rng), side(rng), -1e3, 1e3);
    auto x = table_sequence(t);
    Window w(static_cast<Index>(t.size()) - 1, static_cast<Index>(t[0].size()) - 1);
    double e1 = oracle::normwise_rel_error(oracle::from_grid(delta(inv_delta(x)).table(w)), t);
    double e2 = oracle::normwise_rel_error(oracle::from_grid(inv_delta(delta(x)).table(w)), t);
    worst = std::max({worst, e1, e2});
    c.require(e1 <= 1e-12 && e2 <= 1e-12, "float trial " + num(trial) + " error " + num(std::max(e1, e2)));
  }
  c.detail = "400 tables, worst float error " + num(worst);
}

void atlas(Check& c) {
  auto rows = run_atlas();
  int passed = 0;
  for (const auto& r : rows) {
    c.require(r.pass(), r.inclusion_id + " " + r.label + " in " + to_string(r.space) + " observed " +
                            std::string(to_string(r.observed)));
    passed += r.pass();
  }
  c.require(!rows.empty(), "atlas is empty");

  auto expect = [&](const DoubleSequence& x, const std::string& space, Outcome want, const std::string& label) {
    auto got = member(x, parse_space(space)).outcome;
    c.require(got == want, label + " in " + space + ": " + std::string(to_string(got)));
  };
  expect(catalog("product"), "Mu_d", Outcome::member, "product");
  expect(catalog("product"), "Mu", Outcome::non_member, "product");
  for (double q : {1.0, 2.0, 3.5}) {
    auto x = catalog("column0_indicator");
    c.require(member(x, SpaceId::lq(q, true)).outcome == Outcome::member, "column0_indicator Lq_d q=" + num(q));
    c.require(member(x, SpaceId::lq(q)).outcome == Outcome::non_member, "column0_indicator Lq q=" + num(q));
  }
  expect(catalog("product_shift"), "Cp_d", Outcome::member, "product_shift");
  expect(catalog("product_shift"), "Cp", Outcome::non_member, "product_shift");
  auto dl = p_limit(delta(catalog("product_shift")), RunConfig{}.schedule());
  c.require(dl.converges() && std::abs(dl.limit - 1.0) <= 1e-9, "p-limit of delta(product_shift) " + num(dl.limit));
  expect(catalog("boos"), "Cp", Outcome::member, "boos");
  expect(catalog("boos"), "Mu", Outcome::non_member, "boos");
  auto bl = p_limit(catalog("boos"), RunConfig{}.schedule());
  c.require(bl.converges() && std::abs(bl.limit) <= 1e-9, "p-limit of boos " + num(bl.limit));
  c.detail = num(passed) + "/" + num(static_cast<double>(rows.size())) + " atlas rows, delta(product_shift) -> " +
             num(dl.limit) + ", boos -> " + num(bl.limit);
}

void subset_sweep(Check& c) {
  auto rels = standard_implications(1.0);
  for (double q : {2.0, 3.5})
    for (const auto& r : standard_implications(q))
      if (r.from.base == SpaceBase::Lq) rels.push_back(r);
  const auto cat = standard_catalog();
  c.require(cat.size() >= 12, "catalog has only " + num(static_cast<double>(cat.size())) + " entries");
  int checked = 0;
  for (const auto& sides : std::vector<std::vector<Index>>{
           {8, 16, 32}, {8, 16, 32, 64, 128}, {8, 16, 32, 64, 128, 256, 512, 1024}}) {
    RunConfig cfg;
    cfg.schedule_sides = sides;
    for (const auto& e : cat) {
      for (const auto& r : check_implications(e.sequence, rels, cfg)) {
        c.require(!r.violated(), e.label + ": " + r.implication.name + " at " + num(static_cast<double>(sides.back())));
        ++checked;
      }
      auto cbp = member(e.sequence, parse_space("Cbp"), cfg).outcome;
      auto cp = member(e.sequence, parse_space("Cp"), cfg).outcome;
      auto mu = member(e.sequence, parse_space("Mu"), cfg).outcome;
      bool both = cp == Outcome::member && mu == Outcome::member;
      bool either_not = cp == Outcome::non_member || mu == Outcome::non_member;
      c.require(cbp != Outcome::member || both, e.label + ": Cbp member without Cp and Mu");
      c.require(!both || cbp != Outcome::non_member, e.label + ": Cp and Mu member but Cbp non_member");
      c.require(!either_not || cbp != Outcome::member, e.label + ": Cbp member outside Cp or Mu");
    }
  }
  c.detail = num(static_cast<double>(cat.size())) + " sequences, " + num(checked) + " implication checks, 3 schedules";
}

oracle::Table random_support(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> side(1, 8), v(-9, 9);
  oracle::Table t(side(rng), std::vector<double>(side(rng)));
  for (auto& r : t)
    for (auto& x : r) x = v(rng);
  return t;
}

void abel_identity(Check& c) {
  std::mt19937_64 rng(104);
  const Window w(31, 31);
  const auto sched = RunConfig{}.schedule();
  for (int trial = 0; trial < 100; ++trial) {
    auto a = table_sequence(random_support(rng));
    auto y = table_sequence(oracle::to_grid(oracle::random_int_table(rng, 32, 32, -99, 99)));
    auto z = pairing_partial_sums(a, inv_delta(y)).table(w);
    auto bx = apply_4d(b_matrix(a, w), y, Rule::p, w, sched);
    c.require(z == bx.values, "trial " + num(trial));
  }
  c.detail = "100 pairs on 32x32";
}

void transform_identity(Check& c) {
  std::mt19937_64 rng(105);
  const std::vector<DoubleSequence> xs = {catalog("product"),       catalog("boos"),
                                          catalog("alternating"),   catalog("product_shift"),
                                          catalog("row_index"),     catalog("constant", {{"c", -3}}),
                                          catalog("unit", {{"i0", 2}, {"j0", 3}}), catalog("row0_alternating")};
  std::uniform_int_distribution<Index> row(0, 31), col(0, 11);
  std::uniform_int_distribution<int> count(1, 200), val(-5, 5);
  const Window w(31, 31);
  const auto sched = RunConfig{}.schedule();
  for (int trial = 0; trial < 100; ++trial) {
    std::map<std::tuple<Index, Index, Index, Index>, double> uniq;
    for (int i = count(rng); i > 0; --i) uniq[{row(rng), row(rng), col(rng), col(rng)}] = val(rng);
    std::vector<MatrixEntry> es;
    for (const auto& [k, v] : uniq) es.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k), v});
    const auto& x = xs[trial % xs.size()];
    // Direct (Ex) from the entry list, then its mixed difference.
    std::vector<std::vector<double>> ex(32, std::vector<double>(32, 0.0));
    for (const auto& e : es) ex[e.m][e.n] += e.value * x.at(e.k, e.l);
    auto want = oracle::delta(ex);
    auto fx = apply_4d(e_to_f(entries_matrix(es)), x, Rule::r, w, sched);
    c.require(oracle::from_grid(fx.values) == want, "trial " + num(trial));
  }
  auto f = e_to_f(builtin_matrix("identity"));
  auto d = builtin_matrix("delta");
  for (Index m = 0; m <= 31; ++m)
    for (Index n = 0; n <= 31; ++n)
      for (Index k = 0; k <= 33; ++k)
        for (Index l = 0; l <= 33; ++l)
          c.require(f.entry(m, n, k, l) == d.entry(m, n, k, l), "e_to_f(identity) differs from delta");
  c.detail = "100 matrices on 32x32, e_to_f(identity) = delta";
}

void batteries(Check& c) {
  auto no_inconclusive = [&](const BatteryReport& r, const std::string& label) {
    c.require(r.overall == DualVerdict::holds, label + " overall " + std::string(to_string(r.overall)));
    for (const auto& cond : r.conditions)
      c.require(cond.verdict == DualVerdict::holds, label + " " + cond.id + " " + std::string(to_string(cond.verdict)));
  };
  auto zero_limits = [&](const BatteryReport& r, const char* id) {
    const auto* cond = r.find(id);
    c.require(cond != nullptr && !cond->limits.empty(), std::string("missing limits for ") + id);
    if (cond)
      for (const auto& [key, v] : cond->limits) c.require(v == 0.0, std::string(id) + " " + key + " = " + num(v));
  };
  auto value_is = [&](const BatteryReport& r, const char* id, double want) {
    const auto* cond = r.find(id);
    c.require(cond && cond->value && *cond->value == want, std::string(id) + " value mismatch");
  };

  auto d = check_class(builtin_matrix("delta"), parse_class("Cr_to_Cr"));
  no_inconclusive(d, "delta");
  value_is(d, "4.7", 4.0);
  value_is(d, "4.9", 0.0);
  zero_limits(d, "4.8");
  zero_limits(d, "4.10");

  auto id = check_class(builtin_matrix("identity"), parse_class("Cr_to_Cr"));
  no_inconclusive(id, "identity");
  value_is(id, "4.7", 1.0);
  value_is(id, "4.9", 1.0);

  auto dom = check_domain_class(builtin_matrix("delta"));
  no_inconclusive(dom, "domain(delta)");
  value_is(dom, "s1", 1.0);
  c.detail = "delta sup row-sum " + num(d.find("4.7") && d.find("4.7")->value ? *d.find("4.7")->value : NAN) +
             ", domain s1 " + num(dom.find("s1") && dom.find("s1")->value ? *dom.find("s1")->value : NAN);
}

void phi_bijection(Check& c) {
  const auto pos = oracle::shell_enumeration(200);
  for (std::int64_t m = 1; m <= 200; ++m)
    for (std::int64_t n = 1; n <= 200; ++n) c.require(phi(m, n) == pos.at({m, n}), "phi(" + num(m) + "," + num(n) + ")");
  c.require(phi(1, 1) == 1 && phi(1, 2) == 2 && phi(2, 2) == 3 && phi(2, 1) == 4, "listed values");
  for (std::int64_t n = 1; n <= 100000; ++n) c.require(phi(n, 1) == n * n, "phi(n,1) at n=" + num(n));
  c.detail = "40000 pairs against shell walk";
}

void lq_value(Check& c) {
  std::ostringstream d;
  for (double q : {1.0, 2.0, 4.0}) {
    auto rep = lq_norm_delta(catalog("column0_indicator"), q, RunConfig{}.schedule());
    double want = std::pow(2.0, 1.0 / q);
    c.require(rep.converges() && std::abs(rep.limit - want) <= 1e-9, "q=" + num(q) + " got " + num(rep.limit));
    d << "q=" << q << ":" << num(rep.limit) << " ";
  }
  c.detail = d.str();
}

void alpha_dossier(Check& c) {
  auto a = catalog("power_decay", {{"s", 2}});
  auto x = catalog("product_shift");
  auto pairing = alpha_pairing_abs(a, x);
  auto f1 = check_F1(a);
  RunConfig loose;
  loose.tol = 1e-2;
  auto lu = check_Lu_abs(a, loose);
  c.require(pairing.verdict == Verdict::unbounded, "pairing verdict " + std::string(to_string(pairing.verdict)));
  c.require(f1.verdict == DualVerdict::fails, "F1 verdict " + std::string(to_string(f1.verdict)));

  io::OJson ev;
  ev["schema"] = "dseq/1";
  ev["a"] = io::sequence_to_json(a);
  ev["x"] = io::sequence_to_json(x);
  ev["alpha_pairing_abs"] = io::to_json(pairing);
  ev["F1"] = io::to_json(f1);
  ev["Lu_abs_tol_1e-2"] = io::to_json(lu);
  ev["consistent"] = c.ok();
  std::ofstream out(evidence_path);
  out << ev.dump(2) << "\n";
  c.require(static_cast<bool>(out), "cannot write " + evidence_path);
  c.detail = "pairing " + std::string(to_string(pairing.verdict)) + ", F1 " + std::string(to_string(f1.verdict)) +
             ", Lu " + std::string(to_string(lu.verdict)) + ", evidence " + evidence_path;
}

void hierarchy(Check& c) {
  int entries = 0;
  for (const auto& sides : std::vector<std::vector<Index>>{{8, 16, 32, 64, 128}, RunConfig{}.schedule_sides}) {
    RunConfig cfg;
    cfg.schedule_sides = sides;
    const auto sched = cfg.schedule();
    for (const auto& e : standard_catalog()) {
      auto p = p_limit(e.sequence, sched, cfg);
      auto bp = bp_limit(e.sequence, sched, cfg);
      auto r = r_limit(e.sequence, sched, cfg);
      if (r.converges())
        c.require(bp.converges() && std::abs(r.limit - bp.limit) <= 1e-9, e.label + ": r without matching bp");
      if (bp.converges())
        c.require(p.converges() && std::abs(bp.limit - p.limit) <= 1e-9, e.label + ": bp without matching p");
      ++entries;
    }
  }
  c.detail = num(entries) + " sequence/schedule pairs";
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--evidence") evidence_path = argv[i + 1];

  const std::vector<Criterion> criteria = {
      {1, "round-trip identities", true, 5.0, round_trips},
      {2, "witness atlas", true, 10.0, atlas},
      {3, "subset-consistency sweep", true, 0.0, subset_sweep},
      {4, "Abel pairing identity", true, 0.0, abel_identity},
      {5, "transformed-matrix identity", true, 0.0, transform_identity},
      {6, "matrix-class batteries", true, 10.0, batteries},
      {7, "phi bijection", true, 0.0, phi_bijection},
      {8, "Lq norm of column0_indicator difference", true, 0.0, lq_value},
      {9, "alpha-dual dossier (non-gating)", false, 0.0, alpha_dossier},
      {10, "rule hierarchy", true, 0.0, hierarchy},
  };

  int gating_failures = 0;
  for (const auto& cr : criteria) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.budget_s > 0) c.require(secs < cr.budget_s, "runtime " + num(secs) + " s over " + num(cr.budget_s) + " s");
    const bool ok = c.ok();
    if (!ok && cr.gating) ++gating_failures;
    std::printf("[%s] %d %s (%.2f s%s) %s\n", ok ? "PASS" : "FAIL", cr.id, cr.title.c_str(), secs,
                cr.budget_s > 0 ? (" / " + num(cr.budget_s) + " s budget").c_str() : "",
                ok ? c.detail.c_str() : c.summary().c_str());
    std::fflush(stdout);
  }
  return gating_failures == 0 ? 0 : 1;
}
