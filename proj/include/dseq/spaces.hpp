#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dseq/config.hpp"
#include "dseq/convergence.hpp"
#include "dseq/seqcore.hpp"

namespace dseq {

enum class SpaceBase { Mu, Cp, C0p, Cbp, Cr, Lq, BS, CSp, CSbp, CSr };

/// A sequence space. `delta` selects the difference domain {x : delta(x) in base};
/// it is only meaningful for Mu, Cp, C0p, Cbp, Cr and Lq.
struct SpaceId {
  SpaceBase base = SpaceBase::Mu;
  bool delta = false;
  double q = 1.0;

  static SpaceId lq(double q, bool delta = false) { return {SpaceBase::Lq, delta, q}; }

  friend bool operator==(const SpaceId&, const SpaceId&) = default;
};

/// "Mu", "Cp_d", "Lq(2)", "Lq_d(3.5)", "BS", "CSr", ...; "Lu" is Lq(1).
SpaceId parse_space(std::string_view text);
std::string to_string(const SpaceId& s);

enum class Outcome { member, non_member, inconclusive };
std::string_view to_string(Outcome o);

struct NamedReport {
  std::string name;
  ConvergenceReport report;
};

struct MembershipVerdict {
  SpaceId space;
  Outcome outcome = Outcome::inconclusive;
  std::vector<NamedReport> reports;
  /// For convergence spaces: whether the certified limit is zero within tol.
  std::optional<bool> limit_is_zero;
};

MembershipVerdict member(const DoubleSequence& x, const SpaceId& space, const RunConfig& cfg = {});

/// Ground-truth outcome recorded for a catalog entry, when the catalog covers
/// the space (BS and CS spaces are not annotated).
std::optional<Outcome> expected_outcome(const CatalogTruth& truth, const SpaceId& space);

struct WitnessCase {
  std::string label;
  DoubleSequence sequence;
  std::vector<std::pair<SpaceId, Outcome>> expected;
};

struct Witness {
  std::string id;
  std::string statement;
  std::vector<WitnessCase> cases;
};

/// Registered inclusion witnesses; throws UnknownInclusion for other ids.
Witness witness(std::string_view inclusion_id);
std::vector<std::string> inclusion_ids();

struct AtlasRow {
  std::string inclusion_id;
  std::string label;
  SpaceId space;
  Outcome expected = Outcome::inconclusive;
  Outcome observed = Outcome::inconclusive;
  bool pass() const { return expected == observed; }
};

/// Runs every registered witness case against member().
std::vector<AtlasRow> run_atlas(const RunConfig& cfg = {});

/// "from member implies to member" relations between spaces.
struct Implication {
  std::string name;
  SpaceId from;
  SpaceId to;
};

/// Subset relations with q fixed: Mu in Mu_d, Cp in Cp_d, C0p in C0p_d,
/// Cbp in Cbp_d, Cr in Cr_d, Lq in Lq_d, CSp in Cp.
std::vector<Implication> standard_implications(double q);

struct ImplicationResult {
  Implication implication;
  Outcome from = Outcome::inconclusive;
  Outcome to = Outcome::inconclusive;
  bool violated() const { return from == Outcome::member && to != Outcome::member; }
};

std::vector<ImplicationResult> check_implications(const DoubleSequence& x, const std::vector<Implication>& rels,
                                                  const RunConfig& cfg = {});

}  // namespace dseq
