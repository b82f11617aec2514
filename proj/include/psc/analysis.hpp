#pragma once

#include <optional>
#include <string>
#include <vector>

#include "psc/exactlp.hpp"
#include "psc/lottery.hpp"
#include "psc/preferences.hpp"
#include "psc/schemes.hpp"

namespace psc {

// ---------------------------------------------------------------------------
// Efficiency

/// `dominated` carries positive mass and is Pareto-dominated by `dominator`.
struct ParetoWitness {
  AltIndex dominated;
  AltIndex dominator;
};

/// A lottery every agent weakly SD-prefers, `strict_agent` strictly.
struct DominatingLottery {
  Lottery lottery;
  AgentId strict_agent;
};

struct EfficiencyVerdict {
  bool efficient = true;
  std::optional<ParetoWitness> pareto;
  std::optional<DominatingLottery> dominator;
};

EfficiencyVerdict check_ex_post(const Profile& profile, const Lottery& p);

/// LP over q(x) ≥ 0, Σ q = 1 and, for every agent and every class boundary
/// k of its relation, (mass of the k+1 best classes under q) - s = (same
/// under p) with slack s ≥ 0. The objective maximizes the total slack.
lp::LinearProgram<Rational> sd_efficiency_program(const Profile& profile, const Lottery& p);

/// Efficient iff the slack LP optimum is zero; otherwise the optimal q is
/// returned as the dominator together with an agent that strictly prefers it.
EfficiencyVerdict check_sd_efficiency(const Profile& profile, const Lottery& p);

/// First agent (profile order) with q ≻^sd p, provided q ⪰^sd p for every
/// agent; nullopt if q is not a dominator of p.
std::optional<AgentId> dominator_strict_agent(const Profile& profile, const Lottery& q, const Lottery& p);

/// Exhaustive search over every lottery whose masses share a common
/// denominator d ≤ max_denominator, smallest d first, each grid in
/// lexicographic order. Returns the first SD-dominator of p found.
std::optional<Lottery> find_dominator_by_enumeration(const Profile& profile, const Lottery& p, int max_denominator);

bool verify(const Profile& profile, const Lottery& p, const ParetoWitness& w);
bool verify(const Profile& profile, const Lottery& p, const DominatingLottery& w);

// ---------------------------------------------------------------------------
// Strategyproofness

enum class ManipulationKind {
  /// The deviation outcome strictly SD-dominates the truthful one.
  SdManipulation,
  /// The truthful outcome fails to weakly SD-dominate the deviation
  /// outcome without being strictly dominated (incomparable outcomes).
  StrongSdViolation,
};

std::string_view to_string(ManipulationKind kind);

struct ManipulationWitness {
  AgentId agent;
  Profile truthful_profile;
  PreferenceRelation misreport;
  Lottery truthful_outcome;
  Lottery deviation_outcome;
  ManipulationKind kind;

  Profile deviation_profile() const { return truthful_profile.with_relation(agent, misreport); }
  /// sd_compare(true relation, deviation outcome, truthful outcome).
  SdVerdict verdict() const;
};

struct ManipulationSearch {
  /// Agents to try, in this order; all agents of the profile if absent.
  std::optional<std::vector<AgentId>> agents;
  /// Misreports to try, in this order; all weak orders if absent.
  std::optional<std::vector<PreferenceRelation>> misreports;
  /// Worker threads. Results are identical for every thread count: the
  /// witness is always the first in (agent, misreport) search order.
  unsigned threads = 1;
};

/// First (agent, misreport) with f(R') ≻^sd f(R) under the agent's true relation.
std::optional<ManipulationWitness> find_sd_manipulation(const SocialDecisionScheme& sds, const Profile& profile,
                                                        const ManipulationSearch& search = {});

/// First (agent, misreport) where f(R) does not weakly SD-dominate f(R').
std::optional<ManipulationWitness> check_strong_sd_sp(const SocialDecisionScheme& sds, const Profile& profile,
                                                      const ManipulationSearch& search = {});

/// Re-derives the verdict from the stored lotteries and checks that the two
/// profiles differ only in the manipulating agent's relation. With `sds`,
/// the stored outcomes are also re-evaluated.
bool verify(const ManipulationWitness& w, const SocialDecisionScheme* sds = nullptr);

// ---------------------------------------------------------------------------
// Anonymity and neutrality

struct SymmetryWitness {
  Profile profile;
  AgentPermutation pi;
  AlternativePermutation sigma;
  /// permute_agents(profile, pi) relabeled by sigma.
  Profile transformed;
  Lottery outcome;
  Lottery transformed_outcome;
  /// f(R)(x) != f(R')(σ(x)).
  AltIndex alternative;
};

struct SymmetryVerdict {
  bool holds = true;
  /// True when (π, σ) maps the profile to itself, so the check reduces to
  /// f(R)(x) = f(R)(σ(x)).
  bool self_symmetric = false;
  std::optional<SymmetryWitness> witness;
};

Profile apply_symmetry(const Profile& profile, const AgentPermutation& pi, const AlternativePermutation& sigma);

SymmetryVerdict check_anonymity_neutrality(const SocialDecisionScheme& sds, const Profile& profile,
                                           const AgentPermutation& pi, const AlternativePermutation& sigma);

bool verify(const SymmetryWitness& w, const SocialDecisionScheme* sds = nullptr);

}  // namespace psc
