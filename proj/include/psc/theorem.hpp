#pragma once

// Mechanized replay of the impossibility argument for extensions of random
// dictatorship to weak preferences (n = m = 4, liftable to larger n, m).
//
// A candidate scheme is evaluated on the thirteen proof profiles R1..R13 and
// every step of the derivation is checked in order. The first step whose
// constraint fails is attributed to the property the argument uses at that
// point (anonymity+neutrality, ex post efficiency, SD-efficiency,
// SD-strategyproofness, or agreement with RD), and a witness that the
// analysis checkers re-verify is attached. Because the argument is a proof
// by contradiction, some step always fails.

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "psc/analysis.hpp"
#include "psc/serialize.hpp"

namespace psc::theorem {

struct NamedProofProfile {
  std::string name;  // "R1" .. "R13"
  Profile profile;
};

/// R1..R13 on agents {1,2,3,4} and alternatives {a,b,c,d}, in proof order.
const std::vector<NamedProofProfile>& proof_profiles();
const Profile& proof_profile(std::string_view name);

/// The example profile used to show RSD is not SD-efficient.
const Profile& rsd_inefficiency_example();

enum class Property { AnonymityNeutrality, ExPostEfficiency, SdEfficiency, SdStrategyproofness, RdExtension };
std::string_view to_string(Property p);

// ---------------------------------------------------------------------------
// Lifting

/// Embeds `base` into N agents over `universe` ⊇ base alternatives. Agents of
/// `base` (ids 1..k) keep their relation on the base alternatives and rank
/// the added alternatives below them as singleton classes in universe order;
/// agents k+1..N are indifferent between everything.
Profile lift_profile(const Profile& base, int agent_count, const UniversePtr& universe);

// ---------------------------------------------------------------------------
// RD extension

struct RdExtensionVerdict {
  bool holds;
  Lottery outcome;
  Lottery rd_outcome;
};

/// Requires every agent to have a unique top (throws AgentWithoutUniqueTop).
RdExtensionVerdict check_rd_extension(const SocialDecisionScheme& sds, const Profile& profile);

// ---------------------------------------------------------------------------
// Steps

/// Lazily evaluated p^k = f(R^k) for the replay in progress.
class Evaluations {
 public:
  using Evaluator = std::function<Lottery(const std::string& name)>;
  explicit Evaluations(Evaluator evaluator) : evaluator_(std::move(evaluator)) {}

  const Lottery& operator()(const std::string& profile);
  /// p^k(x) for a named alternative.
  Rational operator()(const std::string& profile, std::string_view alternative);
  /// Records a value obtained outside the evaluator; existing entries win.
  void insert(const std::string& profile, Lottery p);
  const std::map<std::string, Lottery>& cached() const { return cache_; }
  const std::vector<std::string>& order() const { return order_; }

 private:
  Evaluator evaluator_;
  std::map<std::string, Lottery> cache_;
  std::vector<std::string> order_;
};

enum class StepKind {
  /// p(x) = p(σ(x)) from a (π, σ) pair mapping the profile to itself.
  Symmetry,
  /// Zero mass forced by an explicit SD-dominating lottery.
  Dominance,
  /// Zero mass on Pareto-dominated alternatives.
  Pareto,
  /// Inequality forced by a unilateral deviation between two proof profiles.
  Manipulation,
  /// f(R) = rd(R) on a unique-top profile.
  RdExtension,
  /// Follows arithmetically from earlier steps; never attributed.
  Consequence,
};

struct StepAssertion {
  std::string id;
  /// Profile whose lottery the step constrains.
  std::string profile;
  std::string statement;
  StepKind kind;
  /// Property to blame when the step fails; absent for consequences.
  std::optional<Property> attribution;
  /// Only evaluated inside the p3(a) > 1/2 sub-argument.
  bool branch = false;

  // Symmetry steps.
  std::string pi;
  std::string sigma;
  // Pareto steps.
  std::string dominator;
  std::vector<std::string> dominated;
  // Manipulation steps: `agent` with true profile `truthful` reports its
  // relation from `deviation`.
  AgentId agent = 0;
  std::string truthful;
  std::string deviation;

  std::function<bool(Evaluations&)> holds;
  /// Dominance steps: the dominating lottery the argument exhibits.
  std::function<Lottery(Evaluations&)> argued_dominator;
};

/// The derivation in order. The branch steps (R4..R7) follow R3-efficiency.
const std::vector<StepAssertion>& step_assertions();

/// Sub-argument guard: the branch runs iff p3(a) > 1/2.
bool branch_entered(Evaluations& values);

// ---------------------------------------------------------------------------
// Reports

struct ExPostViolation {
  Profile profile;
  Lottery outcome;
  ParetoWitness pareto;
};

struct SdEfficiencyViolation {
  Profile profile;
  Lottery outcome;
  /// Witness of record: the argued lottery if it verifies, else the LP's.
  DominatingLottery dominator;
  /// The dominator exhibited by the argument, when there is one.
  std::optional<DominatingLottery> argued;
  /// The SD-efficiency LP's own dominator.
  std::optional<DominatingLottery> lp;
};

struct RdExtensionViolation {
  /// Profile the scheme was evaluated on (lifted when replaying lifted).
  Profile profile;
  /// The 4-agent proof profile whose RD value the outcome must match.
  Profile base;
  Lottery outcome;
  /// rd(base), embedded into the outcome's universe.
  Lottery rd_outcome;
};

using Witness = std::variant<SymmetryWitness, ExPostViolation, SdEfficiencyViolation, ManipulationWitness,
                             RdExtensionViolation>;

struct ViolationReport {
  Property property;
  std::string step;
  /// Proof profile the failed step constrains.
  std::string profile;
  std::string statement;
  std::string scheme;
  Witness witness;
  /// Proof profile name -> lottery, in evaluation order.
  std::vector<std::pair<std::string, Lottery>> evaluations;
  /// One line per executed step.
  std::vector<std::string> transcript;
  /// Independent re-verification of the witness.
  std::vector<std::string> verification;
};

/// Failure during replay other than a property violation, e.g. the oracle
/// threw or returned a lottery over the wrong universe.
class ReplayError : public std::runtime_error {
 public:
  ReplayError(const std::string& step, const std::string& what)
      : std::runtime_error("step " + step + ": " + what), step_(step) {}
  const std::string& step() const { return step_; }

 private:
  std::string step_;
};

struct ReplayOptions {
  /// Lift every proof profile to this many agents (>= 4).
  std::optional<int> agents;
  /// Lift every proof profile to this universe (a superset of {a,b,c,d}).
  UniversePtr alternatives;
};

/// Replays the derivation against `sds`. Always returns a report; throws
/// ReplayError if the oracle cannot be evaluated.
ViolationReport replay(const SocialDecisionScheme& sds, const ReplayOptions& options = {});

/// Re-checks the report's witness with the analysis checkers. With `sds`,
/// the recorded outcomes are also re-evaluated. Appends one line per check
/// to `log` when given.
bool verify(const ViolationReport& report, const SocialDecisionScheme* sds = nullptr,
            std::vector<std::string>* log = nullptr);

Json to_json(const ViolationReport& report);
std::string format_report(const ViolationReport& report);

}  // namespace psc::theorem
