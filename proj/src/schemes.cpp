#include "psc/schemes.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

namespace psc {

Lottery rd(const Profile& profile) {
  if (profile.empty()) throw std::invalid_argument("rd of an empty profile");
  const auto& universe = profile.universe();
  RationalVector mass = RationalVector::Zero(static_cast<Eigen::Index>(universe->size()));
  const Rational share(1, static_cast<long>(profile.size()));
  for (const auto& e : profile.entries()) {
    const auto top = unique_top(e.relation);
    if (!top) throw AgentWithoutUniqueTop(e.agent);
    mass(*top) += share;
  }
  return Lottery(universe, std::move(mass));
}

namespace {

class RsdEvaluator {
 public:
  RsdEvaluator(std::span<const PreferenceRelation> remaining, const UniversePtr& universe) : universe_(universe) {
    std::map<PreferenceRelation, int> counts;
    for (const auto& r : remaining) {
      if (!same_universe(r.universe(), universe)) throw std::invalid_argument("rsd: universe mismatch");
      ++counts[r];
    }
    for (const auto& [rel, c] : counts) {
      relations_.push_back(rel);
      start_.push_back(c);
    }
  }

  RationalVector evaluate(AlternativeSet feasible) {
    auto counts = start_;
    return solve(counts, feasible);
  }

 private:
  using Key = std::pair<std::vector<int>, std::uint64_t>;

  RationalVector solve(std::vector<int>& counts, AlternativeSet feasible) {
    const auto m = static_cast<Eigen::Index>(universe_->size());
    int total = 0;
    for (int c : counts) total += c;
    if (total == 0 || feasible.size() == 1) {
      RationalVector out = RationalVector::Zero(m);
      const Rational share(1, feasible.size());
      for (auto x : feasible.members()) out(x) = share;
      return out;
    }
    Key key{counts, feasible.bits()};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    RationalVector out = RationalVector::Zero(m);
    for (std::size_t j = 0; j < relations_.size(); ++j) {
      if (counts[j] == 0) continue;
      const Rational weight(counts[j], total);
      --counts[j];
      out += weight * solve(counts, max_set(relations_[j], feasible));
      ++counts[j];
    }
    memo_.emplace(std::move(key), out);
    return out;
  }

  UniversePtr universe_;
  std::vector<PreferenceRelation> relations_;
  std::vector<int> start_;
  std::map<Key, RationalVector> memo_;
};

}  // namespace

Lottery rsd_restricted(std::span<const PreferenceRelation> remaining, AlternativeSet feasible,
                       const UniversePtr& universe) {
  if (feasible.empty()) throw std::invalid_argument("rsd over an empty feasible set");
  if (!feasible.subset_of(AlternativeSet::full(universe->size()))) {
    throw std::invalid_argument("rsd feasible set outside the universe");
  }
  RsdEvaluator evaluator(remaining, universe);
  return Lottery(universe, evaluator.evaluate(feasible));
}

Lottery rsd(const Profile& profile) {
  std::vector<PreferenceRelation> relations;
  relations.reserve(profile.size());
  for (const auto& e : profile.entries()) relations.push_back(e.relation);
  return rsd_restricted(relations, AlternativeSet::full(profile.universe()->size()), profile.universe());
}

SocialDecisionScheme rd_scheme() { return {"rd", [](const Profile& p) { return rd(p); }}; }

SocialDecisionScheme rsd_scheme() { return {"rsd", [](const Profile& p) { return rsd(p); }}; }

SocialDecisionScheme uniform_scheme() {
  return {"uniform", [](const Profile& p) {
            return uniform(AlternativeSet::full(p.universe()->size()), p.universe());
          }};
}

SocialDecisionScheme scheme_by_name(std::string_view name) {
  if (name == "rd") return rd_scheme();
  if (name == "rsd") return rsd_scheme();
  if (name == "uniform") return uniform_scheme();
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

std::vector<std::string> scheme_names() { return {"rd", "rsd", "uniform"}; }

SocialDecisionScheme table_scheme(std::string name, std::vector<std::pair<Profile, Lottery>> rows) {
  auto table = std::make_shared<const std::vector<std::pair<Profile, Lottery>>>(std::move(rows));
  return {std::move(name), [table](const Profile& profile) {
            for (const auto& [key, value] : *table) {
              if (key == profile) return value;
            }
            throw UndefinedProfile("table does not define a lottery for profile:\n" + format_profile(profile));
          }};
}

SocialDecisionScheme load_table_scheme(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open table file '" + path + "'");
  const auto base = std::filesystem::path(path).parent_path();
  std::vector<std::pair<Profile, Lottery>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto arrow = line.find("=>");
    if (arrow == std::string::npos) throw ParseError("expected '<profile file> => <lottery>'", line_no);
    auto file = line.substr(0, arrow);
    file.erase(0, file.find_first_not_of(" \t"));
    file.erase(file.find_last_not_of(" \t\r") + 1);
    auto profile = load_profile((base / file).string());
    try {
      auto lottery = parse_lottery(line.substr(arrow + 2), profile.universe());
      rows.emplace_back(std::move(profile), std::move(lottery));
    } catch (const std::invalid_argument& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
  }
  return table_scheme("table:" + std::filesystem::path(path).filename().string(), std::move(rows));
}

}  // namespace psc
