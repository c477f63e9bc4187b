#include "dseq/spaces.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "dseq/difference.hpp"
#include "dseq/errors.hpp"

namespace dseq {

namespace {

const std::map<std::string, SpaceBase, std::less<>>& base_names() {
  static const std::map<std::string, SpaceBase, std::less<>> names = {
      {"Mu", SpaceBase::Mu},   {"Cp", SpaceBase::Cp},   {"C0p", SpaceBase::C0p},
      {"Cbp", SpaceBase::Cbp}, {"Cr", SpaceBase::Cr},   {"Lq", SpaceBase::Lq},
      {"BS", SpaceBase::BS},   {"CSp", SpaceBase::CSp}, {"CSbp", SpaceBase::CSbp},
      {"CSr", SpaceBase::CSr},
  };
  return names;
}

bool has_delta_variant(SpaceBase b) {
  return b != SpaceBase::BS && b != SpaceBase::CSp && b != SpaceBase::CSbp && b != SpaceBase::CSr;
}

std::string format_q(double q) {
  std::ostringstream os;
  os.precision(12);
  os << q;
  return os.str();
}

Outcome from_verdict(Verdict v) {
  switch (v) {
    case Verdict::converges:
      return Outcome::member;
    case Verdict::unbounded:
      return Outcome::non_member;
    case Verdict::inconclusive:
      break;
  }
  return Outcome::inconclusive;
}

/// A definite non-member part decides the conjunction; otherwise any
/// inconclusive part leaves it open.
Outcome both(Outcome a, Outcome b) {
  if (a == Outcome::non_member || b == Outcome::non_member) return Outcome::non_member;
  if (a == Outcome::member && b == Outcome::member) return Outcome::member;
  return Outcome::inconclusive;
}

}  // namespace

SpaceId parse_space(std::string_view text) {
  std::string_view body = text;
  std::optional<double> q;
  if (auto open = body.find('('); open != std::string_view::npos) {
    if (body.back() != ')') throw InvalidArgument("malformed space id '" + std::string(text) + "'");
    std::string arg(body.substr(open + 1, body.size() - open - 2));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size()) throw InvalidArgument("malformed exponent in space id '" + std::string(text) + "'");
    q = v;
    body = body.substr(0, open);
  }
  bool delta = false;
  if (body.size() > 2 && body.substr(body.size() - 2) == "_d") {
    delta = true;
    body.remove_suffix(2);
  }
  if (body == "Lu") {
    if (q) throw InvalidArgument("Lu takes no exponent");
    return SpaceId::lq(1.0, delta);
  }
  auto it = base_names().find(body);
  if (it == base_names().end()) throw InvalidArgument("unknown space '" + std::string(text) + "'");
  SpaceId id{it->second, delta, 1.0};
  if (delta && !has_delta_variant(id.base)) throw InvalidArgument("space '" + std::string(body) + "' has no _d variant");
  if (id.base == SpaceBase::Lq) {
    if (!q) throw InvalidArgument("Lq needs an exponent, e.g. Lq(2)");
    if (!std::isfinite(*q) || *q < 1.0) throw InvalidExponent("exponent q must satisfy 1 <= q < inf");
    id.q = *q;
  } else if (q) {
    throw InvalidArgument("space '" + std::string(body) + "' takes no exponent");
  }
  return id;
}

std::string to_string(const SpaceId& s) {
  std::string out;
  for (const auto& [name, base] : base_names())
    if (base == s.base) out = name;
  if (s.delta) out += "_d";
  if (s.base == SpaceBase::Lq) out += "(" + format_q(s.q) + ")";
  return out;
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::member:
      return "member";
    case Outcome::non_member:
      return "non_member";
    case Outcome::inconclusive:
      return "inconclusive";
  }
  return "?";
}

MembershipVerdict member(const DoubleSequence& x, const SpaceId& space, const RunConfig& cfg) {
  const WindowSchedule sched = cfg.schedule();
  MembershipVerdict out;
  out.space = space;
  const DoubleSequence y = space.delta ? delta(x) : x;

  auto record = [&](std::string name, ConvergenceReport rep) {
    Outcome o = from_verdict(rep.verdict);
    out.reports.push_back({std::move(name), std::move(rep)});
    return o;
  };
  auto note_limit = [&](const ConvergenceReport& rep) {
    if (rep.converges()) out.limit_is_zero = std::fabs(rep.limit) <= cfg.tol;
  };

  switch (space.base) {
    case SpaceBase::Mu:
      out.outcome = record("bounded", bounded(y, sched, cfg));
      break;
    case SpaceBase::Cp: {
      ConvergenceReport p = p_limit(y, sched, cfg);
      note_limit(p);
      out.outcome = record("p_limit", std::move(p));
      break;
    }
    case SpaceBase::C0p: {
      ConvergenceReport p = p_limit(y, sched, cfg);
      note_limit(p);
      out.outcome = record("p_limit", std::move(p));
      if (out.outcome == Outcome::member && !*out.limit_is_zero) out.outcome = Outcome::non_member;
      break;
    }
    case SpaceBase::Cbp: {
      Grid<double> t = y.table(sched.largest(), cfg.cell_cap);
      ConvergenceReport p = p_limit(t, sched, cfg);
      note_limit(p);
      Outcome a = record("p_limit", std::move(p));
      Outcome b = record("bounded", bounded(t, sched, cfg));
      out.outcome = both(a, b);
      break;
    }
    case SpaceBase::Cr: {
      ConvergenceReport r = r_limit(y, sched, cfg);
      note_limit(r);
      out.outcome = record("r_limit", std::move(r));
      break;
    }
    case SpaceBase::Lq:
      out.outcome = record("lq_sum", lq_norm(y, space.q, sched, cfg));
      break;
    case SpaceBase::BS:
      out.outcome = record("partial_sums_bounded", bounded(inv_delta(y), sched, cfg));
      break;
    case SpaceBase::CSp:
    case SpaceBase::CSbp:
    case SpaceBase::CSr: {
      Rule rule = space.base == SpaceBase::CSp ? Rule::p : space.base == SpaceBase::CSbp ? Rule::bp : Rule::r;
      out.outcome = record("partial_sums_limit", v_sum(y, rule, sched, cfg));
      break;
    }
  }
  return out;
}

std::optional<Outcome> expected_outcome(const CatalogTruth& truth, const SpaceId& space) {
  const MembershipTruth& t = space.delta ? truth.delta : truth.plain;
  auto of = [](bool b) { return b ? Outcome::member : Outcome::non_member; };
  switch (space.base) {
    case SpaceBase::Mu:
      return of(t.mu);
    case SpaceBase::Cp:
      return of(t.cp);
    case SpaceBase::C0p:
      return of(t.c0p);
    case SpaceBase::Cbp:
      return of(t.cbp);
    case SpaceBase::Cr:
      return of(t.cr);
    case SpaceBase::Lq:
      return of(t.lq.holds(space.q));
    default:
      return std::nullopt;
  }
}

namespace {

SpaceId sp(SpaceBase b, bool d = false) { return {b, d, 1.0}; }

using Registry = std::vector<Witness>;

Registry build_registry() {
  const Outcome in = Outcome::member;
  const Outcome out = Outcome::non_member;
  Registry r;

  r.push_back({"Mu_subset_MuDelta_strict",
               "bounded sequences have bounded differences; x_mn = mn shows the inclusion is strict",
               {{"product", catalog("product"), {{sp(SpaceBase::Mu), out}, {sp(SpaceBase::Mu, true), in}}}}});

  {
    Witness w{"Lq_subset_LqDelta_strict",
              "L_q lies in L_q(delta); the column-0 indicator shows strictness for every q",
              {}};
    WitnessCase c{"column0_indicator", catalog("column0_indicator"), {}};
    for (double q : {1.0, 2.0, 3.5}) {
      c.expected.push_back({SpaceId::lq(q), out});
      c.expected.push_back({SpaceId::lq(q, true), in});
    }
    w.cases.push_back(std::move(c));
    r.push_back(std::move(w));
  }

  r.push_back({"Cp_subset_CpDelta_strict",
               "Pringsheim-convergent sequences have p-null differences; (m+1)(n+1) is in C_p(delta) only",
               {{"product_shift", catalog("product_shift"), {{sp(SpaceBase::Cp), out}, {sp(SpaceBase::Cp, true), in}}}}});

  r.push_back({"C0p_subset_C0pDelta_strict",
               "the constant 1 converges to 1 but its difference is a unit impulse",
               {{"constant(1)",
                 catalog("constant", {{"c", 1.0}}),
                 {{sp(SpaceBase::C0p), out}, {sp(SpaceBase::C0p, true), in}, {sp(SpaceBase::Cp), in}}}}});

  r.push_back({"Cbp_subset_CbpDelta_strict",
               "(m+1)(n+1) is unbounded while its difference is the constant 1",
               {{"product_shift",
                 catalog("product_shift"),
                 {{sp(SpaceBase::Cbp), out}, {sp(SpaceBase::Cbp, true), in}}}}});

  r.push_back({"Cr_subset_CrDelta_strict",
               "(m+1)(n+1) has divergent rows while its difference converges regularly",
               {{"product_shift", catalog("product_shift"), {{sp(SpaceBase::Cr), out}, {sp(SpaceBase::Cr, true), in}}}}});

  r.push_back({"Boos_Cp_not_Mu",
               "a Pringsheim-convergent sequence need not be bounded",
               {{"boos", catalog("boos"), {{sp(SpaceBase::Cp), in}, {sp(SpaceBase::Mu), out}, {sp(SpaceBase::Cr), out}}}}});

  r.push_back({"Lu_subset_BS",
               "absolutely summable sequences have bounded partial sums; BS is strictly inside M_u and strictly "
               "contains L_u",
               {{"geometric(0.5)",
                 catalog("geometric", {{"rho", 0.5}}),
                 {{SpaceId::lq(1.0), in}, {sp(SpaceBase::BS), in}, {sp(SpaceBase::Mu), in}}},
                {"constant(1)", catalog("constant", {{"c", 1.0}}), {{sp(SpaceBase::BS), out}, {sp(SpaceBase::Mu), in}}},
                {"alternating", catalog("alternating"), {{sp(SpaceBase::BS), in}, {SpaceId::lq(1.0), out}}}}});

  r.push_back({"BS_subset_MuDelta",
               "bounded partial sums imply a bounded difference; x_mn = mn is in M_u(delta) but not BS",
               {{"geometric(0.5)",
                 catalog("geometric", {{"rho", 0.5}}),
                 {{sp(SpaceBase::BS), in}, {sp(SpaceBase::Mu, true), in}}},
                {"product", catalog("product"), {{sp(SpaceBase::BS), out}, {sp(SpaceBase::Mu, true), in}}}}});

  r.push_back({"CSp_subset_Cp",
               "p-summable series have p-null terms; the constant 1 converges without being summable",
               {{"geometric(0.5)",
                 catalog("geometric", {{"rho", 0.5}}),
                 {{sp(SpaceBase::CSp), in}, {sp(SpaceBase::Cp), in}, {sp(SpaceBase::Cp, true), in}}},
                {"constant(1)", catalog("constant", {{"c", 1.0}}), {{sp(SpaceBase::CSp), out}, {sp(SpaceBase::Cp), in}}}}});

  return r;
}

const Registry& registry() {
  static const Registry r = build_registry();
  return r;
}

}  // namespace

Witness witness(std::string_view inclusion_id) {
  for (const Witness& w : registry())
    if (w.id == inclusion_id) return w;
  throw UnknownInclusion("no registered inclusion '" + std::string(inclusion_id) + "'");
}

std::vector<std::string> inclusion_ids() {
  std::vector<std::string> ids;
  for (const Witness& w : registry()) ids.push_back(w.id);
  return ids;
}

std::vector<AtlasRow> run_atlas(const RunConfig& cfg) {
  std::vector<AtlasRow> rows;
  for (const Witness& w : registry())
    for (const WitnessCase& c : w.cases)
      for (const auto& [space, expected] : c.expected)
        rows.push_back({w.id, c.label, space, expected, member(c.sequence, space, cfg).outcome});
  return rows;
}

std::vector<Implication> standard_implications(double q) {
  return {
      {"Mu=>Mu_d", sp(SpaceBase::Mu), sp(SpaceBase::Mu, true)},
      {"Cp=>Cp_d", sp(SpaceBase::Cp), sp(SpaceBase::Cp, true)},
      {"C0p=>C0p_d", sp(SpaceBase::C0p), sp(SpaceBase::C0p, true)},
      {"Cbp=>Cbp_d", sp(SpaceBase::Cbp), sp(SpaceBase::Cbp, true)},
      {"Cr=>Cr_d", sp(SpaceBase::Cr), sp(SpaceBase::Cr, true)},
      {"Lq=>Lq_d", SpaceId::lq(q), SpaceId::lq(q, true)},
      {"CSp=>Cp", sp(SpaceBase::CSp), sp(SpaceBase::Cp)},
      {"Cbp=>Cp", sp(SpaceBase::Cbp), sp(SpaceBase::Cp)},
      {"Cbp=>Mu", sp(SpaceBase::Cbp), sp(SpaceBase::Mu)},
  };
}

std::vector<ImplicationResult> check_implications(const DoubleSequence& x, const std::vector<Implication>& rels,
                                                  const RunConfig& cfg) {
  std::vector<std::pair<SpaceId, Outcome>> seen;
  auto outcome = [&](const SpaceId& s) {
    for (const auto& [id, o] : seen)
      if (id == s) return o;
    Outcome o = member(x, s, cfg).outcome;
    seen.emplace_back(s, o);
    return o;
  };
  std::vector<ImplicationResult> out;
  for (const Implication& rel : rels) out.push_back({rel, outcome(rel.from), outcome(rel.to)});
  return out;
}

}  // namespace dseq
