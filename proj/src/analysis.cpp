#include "psc/analysis.hpp"

#include <atomic>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

namespace psc {

// ---------------------------------------------------------------------------
// Efficiency

EfficiencyVerdict check_ex_post(const Profile& profile, const Lottery& p) {
  if (!same_universe(profile.universe(), p.universe())) throw std::invalid_argument("check_ex_post: universe mismatch");
  const auto m = static_cast<AltIndex>(profile.universe()->size());
  for (AltIndex x = 0; x < m; ++x) {
    if (p[x] <= 0) continue;
    for (AltIndex y = 0; y < m; ++y) {
      if (y != x && pareto_dominates(profile, y, x)) return {false, ParetoWitness{x, y}, std::nullopt};
    }
  }
  return {};
}

lp::LinearProgram<Rational> sd_efficiency_program(const Profile& profile, const Lottery& p) {
  if (!same_universe(profile.universe(), p.universe())) {
    throw std::invalid_argument("check_sd_efficiency: universe mismatch");
  }
  const auto& universe = *profile.universe();
  const auto m = static_cast<int>(universe.size());

  lp::LinearProgram<Rational> program;
  for (int x = 0; x < m; ++x) program.add_variable("q_" + universe.name(x));

  // The last class boundary always carries total mass 1 on both sides.
  struct Boundary {
    AgentId agent;
    std::size_t k;
    int slack;
  };
  std::vector<Boundary> boundaries;
  for (const auto& e : profile.entries()) {
    for (std::size_t k = 0; k + 1 < e.relation.class_count(); ++k) {
      const int s = program.add_variable("s_" + std::to_string(e.agent) + "_" + std::to_string(k));
      program.set_objective_coefficient(s, 1);
      boundaries.push_back({e.agent, k, s});
    }
  }

  std::vector<std::pair<int, Rational>> total;
  for (int x = 0; x < m; ++x) total.emplace_back(x, 1);
  program.add_constraint(total, lp::Relation::Equal, 1, "sum");

  for (const auto& b : boundaries) {
    const auto& rel = profile.relation_of(b.agent);
    AlternativeSet upper;
    for (std::size_t k = 0; k <= b.k; ++k) upper = upper | rel.classes()[k];
    std::vector<std::pair<int, Rational>> terms;
    for (auto x : upper.members()) terms.emplace_back(x, 1);
    terms.emplace_back(b.slack, -1);
    program.add_constraint(terms, lp::Relation::Equal, p.mass_of(upper),
                           "agent" + std::to_string(b.agent) + "_class" + std::to_string(b.k));
  }
  return program;
}

std::optional<AgentId> dominator_strict_agent(const Profile& profile, const Lottery& q, const Lottery& p) {
  std::optional<AgentId> strict;
  for (const auto& e : profile.entries()) {
    const auto v = sd_compare(e.relation, q, p);
    if (v == SdVerdict::StrictlyDominates) {
      if (!strict) strict = e.agent;
    } else if (v != SdVerdict::Equivalent) {
      return std::nullopt;
    }
  }
  return strict;
}

EfficiencyVerdict check_sd_efficiency(const Profile& profile, const Lottery& p) {
  const auto program = sd_efficiency_program(profile, p);
  const auto outcome = lp::solve(program);
  // p itself is feasible and the slacks are bounded by one.
  if (!outcome.optimal()) throw std::logic_error("SD-efficiency program is not solvable");
  if (outcome.value == 0) return {};

  const auto m = static_cast<Eigen::Index>(profile.universe()->size());
  Lottery q(profile.universe(), outcome.point.head(m));
  const auto agent = dominator_strict_agent(profile, q, p);
  if (!agent) throw std::logic_error("SD-efficiency program returned a non-dominating lottery");
  return {false, std::nullopt, DominatingLottery{std::move(q), *agent}};
}

std::optional<Lottery> find_dominator_by_enumeration(const Profile& profile, const Lottery& p, int max_denominator) {
  const auto m = static_cast<Eigen::Index>(profile.universe()->size());
  std::optional<Lottery> found;
  std::vector<int> parts(static_cast<std::size_t>(m));
  for (int d = 1; d <= max_denominator && !found; ++d) {
    // Compositions of d into m parts in lexicographic order.
    std::function<void(Eigen::Index, int)> place = [&](Eigen::Index i, int left) {
      if (found) return;
      if (i == m - 1) {
        parts[static_cast<std::size_t>(i)] = left;
        RationalVector mass(m);
        for (Eigen::Index j = 0; j < m; ++j) mass(j) = Rational(parts[static_cast<std::size_t>(j)], d);
        Lottery q(profile.universe(), std::move(mass));
        if (dominator_strict_agent(profile, q, p)) found = std::move(q);
        return;
      }
      for (int k = 0; k <= left; ++k) {
        parts[static_cast<std::size_t>(i)] = k;
        place(i + 1, left - k);
      }
    };
    place(0, d);
  }
  return found;
}

bool verify(const Profile& profile, const Lottery& p, const ParetoWitness& w) {
  return p[w.dominated] > 0 && pareto_dominates(profile, w.dominator, w.dominated);
}

bool verify(const Profile& profile, const Lottery& p, const DominatingLottery& w) {
  if (!dominator_strict_agent(profile, w.lottery, p)) return false;
  return sd_compare(profile.relation_of(w.strict_agent), w.lottery, p) == SdVerdict::StrictlyDominates;
}

// ---------------------------------------------------------------------------
// Strategyproofness

std::string_view to_string(ManipulationKind kind) {
  switch (kind) {
    case ManipulationKind::SdManipulation: return "sd-manipulation";
    case ManipulationKind::StrongSdViolation: return "strong-sd-violation";
  }
  return "?";
}

SdVerdict ManipulationWitness::verdict() const {
  return sd_compare(truthful_profile.relation_of(agent), deviation_outcome, truthful_outcome);
}

namespace {

using DeviationTest = std::function<std::optional<ManipulationKind>(SdVerdict)>;

std::optional<ManipulationWitness> search_deviations(const SocialDecisionScheme& sds, const Profile& profile,
                                                     const ManipulationSearch& search, const DeviationTest& test) {
  const auto agents = search.agents ? *search.agents : profile.agents();
  for (auto a : agents) {
    if (!profile.has_agent(a)) throw std::invalid_argument("no agent " + std::to_string(a) + " in profile");
  }
  const auto misreports = search.misreports ? *search.misreports : enumerate_weak_orders(profile.universe());
  const Lottery truthful = sds(profile);

  const std::size_t total = agents.size() * misreports.size();
  auto attempt = [&](std::size_t idx) -> std::optional<ManipulationWitness> {
    const auto agent = agents[idx / misreports.size()];
    const auto& misreport = misreports[idx % misreports.size()];
    const auto& truth = profile.relation_of(agent);
    if (misreport == truth) return std::nullopt;
    auto deviation = sds(profile.with_relation(agent, misreport));
    const auto kind = test(sd_compare(truth, deviation, truthful));
    if (!kind) return std::nullopt;
    return ManipulationWitness{agent, profile, misreport, truthful, std::move(deviation), *kind};
  };

  if (search.threads <= 1 || total < 2) {
    for (std::size_t idx = 0; idx < total; ++idx) {
      if (auto w = attempt(idx)) return w;
    }
    return std::nullopt;
  }

  // Workers claim indices in increasing order and stop once past the best
  // hit so far, so the reported witness is the serial one.
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  std::mutex mutex;
  std::optional<ManipulationWitness> result;
  std::exception_ptr error;
  {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < search.threads; ++t) {
      workers.emplace_back([&] {
        try {
          while (true) {
            const auto idx = next.fetch_add(1);
            if (idx >= total || idx > best.load()) return;
            auto w = attempt(idx);
            if (!w) continue;
            std::lock_guard lock(mutex);
            if (idx < best.load()) {
              best.store(idx);
              result = std::move(w);
            }
          }
        } catch (...) {
          std::lock_guard lock(mutex);
          if (!error) error = std::current_exception();
          best.store(0);
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
  return result;
}

}  // namespace

std::optional<ManipulationWitness> find_sd_manipulation(const SocialDecisionScheme& sds, const Profile& profile,
                                                        const ManipulationSearch& search) {
  return search_deviations(sds, profile, search, [](SdVerdict v) -> std::optional<ManipulationKind> {
    if (v == SdVerdict::StrictlyDominates) return ManipulationKind::SdManipulation;
    return std::nullopt;
  });
}

std::optional<ManipulationWitness> check_strong_sd_sp(const SocialDecisionScheme& sds, const Profile& profile,
                                                      const ManipulationSearch& search) {
  return search_deviations(sds, profile, search, [](SdVerdict v) -> std::optional<ManipulationKind> {
    if (v == SdVerdict::StrictlyDominates) return ManipulationKind::SdManipulation;
    if (v == SdVerdict::Incomparable) return ManipulationKind::StrongSdViolation;
    return std::nullopt;
  });
}

bool verify(const ManipulationWitness& w, const SocialDecisionScheme* sds) {
  if (!w.truthful_profile.has_agent(w.agent)) return false;
  const auto deviation = w.deviation_profile();
  // R_{-i} = R'_{-i}
  if (!(w.truthful_profile.without(w.agent) == deviation.without(w.agent))) return false;
  if (w.truthful_profile.relation_of(w.agent) == w.misreport) return false;
  if (sds) {
    if (!((*sds)(w.truthful_profile) == w.truthful_outcome)) return false;
    if (!((*sds)(deviation) == w.deviation_outcome)) return false;
  }
  const auto v = w.verdict();
  switch (w.kind) {
    case ManipulationKind::SdManipulation: return v == SdVerdict::StrictlyDominates;
    case ManipulationKind::StrongSdViolation: return v == SdVerdict::Incomparable;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Anonymity and neutrality

Profile apply_symmetry(const Profile& profile, const AgentPermutation& pi, const AlternativePermutation& sigma) {
  return permute_alternatives(permute_agents(profile, pi), sigma);
}

SymmetryVerdict check_anonymity_neutrality(const SocialDecisionScheme& sds, const Profile& profile,
                                           const AgentPermutation& pi, const AlternativePermutation& sigma) {
  auto transformed = apply_symmetry(profile, pi, sigma);
  const bool self_symmetric = transformed == profile;
  auto outcome = sds(profile);
  auto transformed_outcome = self_symmetric ? outcome : sds(transformed);
  const auto m = static_cast<AltIndex>(profile.universe()->size());
  for (AltIndex x = 0; x < m; ++x) {
    if (outcome[x] != transformed_outcome[sigma(x)]) {
      return {false, self_symmetric,
              SymmetryWitness{profile, pi, sigma, std::move(transformed), std::move(outcome),
                              std::move(transformed_outcome), x}};
    }
  }
  return {true, self_symmetric, std::nullopt};
}

bool verify(const SymmetryWitness& w, const SocialDecisionScheme* sds) {
  if (!(apply_symmetry(w.profile, w.pi, w.sigma) == w.transformed)) return false;
  if (sds) {
    if (!((*sds)(w.profile) == w.outcome)) return false;
    if (!((*sds)(w.transformed) == w.transformed_outcome)) return false;
  }
  if (w.transformed == w.profile && !(w.outcome == w.transformed_outcome)) return false;
  return w.outcome[w.alternative] != w.transformed_outcome[w.sigma(w.alternative)];
}

}  // namespace psc
