#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "psc/lottery.hpp"
#include "psc/preferences.hpp"

namespace psc {

/// Opaque mapping from profiles to lotteries. Evaluation must be
/// deterministic; the analysis and replay code treats it as a black box.
struct SocialDecisionScheme {
  std::string name;
  std::function<Lottery(const Profile&)> evaluate;

  Lottery operator()(const Profile& profile) const { return evaluate(profile); }
};

/// RD is undefined on a profile where this agent has no unique top.
class AgentWithoutUniqueTop : public std::domain_error {
 public:
  explicit AgentWithoutUniqueTop(AgentId agent)
      : std::domain_error("agent " + std::to_string(agent) + " has no unique top alternative"), agent_(agent) {}
  AgentId agent() const { return agent_; }

 private:
  AgentId agent_;
};

/// A tabulated scheme was queried on a profile it does not list.
class UndefinedProfile : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Random dictatorship: mass of x is the share of agents whose unique top is x.
Lottery rd(const Profile& profile);

/// Random serial dictatorship on the full weak-preference domain.
Lottery rsd(const Profile& profile);

/// rsd(R, X): recursion over the remaining relations with feasible set X.
/// Identical relations are merged and the recursion is memoized on
/// (remaining multiset, feasible set).
Lottery rsd_restricted(std::span<const PreferenceRelation> remaining, AlternativeSet feasible,
                       const UniversePtr& universe);

SocialDecisionScheme rd_scheme();
SocialDecisionScheme rsd_scheme();
/// Constant scheme returning the uniform lottery over the whole universe.
SocialDecisionScheme uniform_scheme();

/// Registry lookup: "rd", "rsd", "uniform". Throws std::invalid_argument.
SocialDecisionScheme scheme_by_name(std::string_view name);
std::vector<std::string> scheme_names();

/// Tabulated scheme. Each non-comment line reads `<profile file> => <lottery>`
/// with the path relative to the table's directory. Lookup is by exact
/// profile equality; anything else raises UndefinedProfile.
SocialDecisionScheme load_table_scheme(const std::string& path);
SocialDecisionScheme table_scheme(std::string name, std::vector<std::pair<Profile, Lottery>> rows);

}  // namespace psc
