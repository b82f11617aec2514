#include "psc/theorem.hpp"

#include <sstream>

namespace psc::theorem {

namespace {

const Rational kHalf(1, 2);

const UniversePtr& base_universe() {
  static const UniversePtr u = make_universe({"a", "b", "c", "d"});
  return u;
}

/// Same masses by alternative name over a superset universe.
Lottery embed(const Lottery& p, const UniversePtr& universe) {
  RationalVector mass = RationalVector::Zero(static_cast<Eigen::Index>(universe->size()));
  for (AltIndex x = 0; x < static_cast<AltIndex>(p.universe()->size()); ++x) {
    mass(universe->index_of(p.universe()->name(x))) = p[x];
  }
  return Lottery(universe, std::move(mass));
}

/// Restriction to {a,b,c,d}; callers guarantee the rest carries no mass.
Lottery restrict_to_base(const Lottery& p) {
  RationalVector mass(4);
  for (AltIndex x = 0; x < 4; ++x) mass(x) = p[p.universe()->index_of(base_universe()->name(x))];
  return Lottery(base_universe(), std::move(mass));
}

struct FixtureText {
  const char* name;
  const char* text;
};

// Canonical profile text; the shipped fixtures/R*.prof files are identical.
constexpr FixtureText kFixtures[] = {
    {"R1", "agent 1: a~c > b~d\nagent 2: b~d > a~c\nagent 3: a~d > b > c\nagent 4: b~c > a > d\n"},
    {"R2", "agent 1: a~c > b~d\nagent 2: b~d > a~c\nagent 3: a > d > b~c\nagent 4: b > c > a~d\n"},
    {"R3", "agent 1: a > c > b~d\nagent 2: b~d > a > c\nagent 3: a > d > b~c\nagent 4: b~c > a > d\n"},
    {"R4", "agent 1: a > b~c~d\nagent 2: b~d > a > c\nagent 3: a > d > b~c\nagent 4: b~c > a > d\n"},
    {"R5", "agent 1: a > b~c~d\nagent 2: b~d > a > c\nagent 3: a > b~c~d\nagent 4: b~c > a > d\n"},
    {"R6", "agent 1: a > b~c~d\nagent 2: b > a~c~d\nagent 3: a > b~c~d\nagent 4: b~c > a > d\n"},
    {"R7", "agent 1: a > b~c~d\nagent 2: b > a~c~d\nagent 3: a > b~c~d\nagent 4: b > a~c~d\n"},
    {"R8", "agent 1: a~c > b~d\nagent 2: b~d > a~c\nagent 3: a > d > b~c\nagent 4: b~c > a > d\n"},
    {"R9", "agent 1: a > c > b~d\nagent 2: b~d > a~c\nagent 3: a > d > b~c\nagent 4: b~c > a > d\n"},
    {"R10", "agent 1: a~c > b~d\nagent 2: b > a~c > d\nagent 3: a > d > b~c\nagent 4: b~c > a > d\n"},
    {"R11", "agent 1: c > a > b~d\nagent 2: b > a~c > d\nagent 3: a > d > b~c\nagent 4: b~c > a > d\n"},
    {"R12", "agent 1: c > a~b > d\nagent 2: b > a~c > d\nagent 3: a > d > b~c\nagent 4: b~c > a > d\n"},
    {"R13", "agent 1: c > a~b > d\nagent 2: b > a~c > d\nagent 3: a > d > b~c\nagent 4: b > c > a > d\n"},
};

}  // namespace

const std::vector<NamedProofProfile>& proof_profiles() {
  static const std::vector<NamedProofProfile> profiles = [] {
    std::vector<NamedProofProfile> out;
    for (const auto& f : kFixtures) out.push_back({f.name, parse_profile(f.text, base_universe())});
    return out;
  }();
  return profiles;
}

const Profile& proof_profile(std::string_view name) {
  for (const auto& p : proof_profiles()) {
    if (p.name == name) return p.profile;
  }
  throw std::invalid_argument("no proof profile named '" + std::string(name) + "'");
}

const Profile& rsd_inefficiency_example() {
  static const Profile profile = parse_profile(
      "agent 1: a~c > b > d\nagent 2: b~d > a > c\nagent 3: a > d > b > c\nagent 4: b > c > a > d\n",
      base_universe());
  return profile;
}

std::string_view to_string(Property p) {
  switch (p) {
    case Property::AnonymityNeutrality: return "AnonymityNeutrality";
    case Property::ExPostEfficiency: return "ExPostEfficiency";
    case Property::SdEfficiency: return "SdEfficiency";
    case Property::SdStrategyproofness: return "SdStrategyproofness";
    case Property::RdExtension: return "RdExtension";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Lifting

Profile lift_profile(const Profile& base, int agent_count, const UniversePtr& universe) {
  const auto k = static_cast<int>(base.size());
  if (agent_count < k) throw std::invalid_argument("cannot lift to fewer agents than the base profile has");
  for (int i = 0; i < k; ++i) {
    if (base.entries()[static_cast<std::size_t>(i)].agent != i + 1) {
      throw std::invalid_argument("lifting requires base agents numbered 1..k");
    }
  }
  const auto& names = base.universe()->names();
  std::vector<AltIndex> image;
  AlternativeSet inner;
  for (const auto& n : names) {
    const auto x = universe->find(n);
    if (!x) throw std::invalid_argument("universe is not a superset of the base alternatives (missing '" + n + "')");
    image.push_back(*x);
    inner.insert(*x);
  }
  const auto outer = AlternativeSet::full(universe->size()) - inner;

  std::vector<Profile::Entry> entries;
  for (const auto& e : base.entries()) {
    std::vector<AlternativeSet> classes;
    for (const auto cls : e.relation.classes()) {
      AlternativeSet mapped;
      for (auto x : cls.members()) mapped.insert(image[static_cast<std::size_t>(x)]);
      classes.push_back(mapped);
    }
    for (auto y : outer.members()) classes.push_back(AlternativeSet::singleton(y));
    entries.push_back({e.agent, PreferenceRelation(universe, std::move(classes))});
  }
  for (int i = k + 1; i <= agent_count; ++i) {
    entries.push_back({i, PreferenceRelation::total_indifference(universe)});
  }
  return Profile(universe, std::move(entries));
}

// ---------------------------------------------------------------------------
// RD extension

RdExtensionVerdict check_rd_extension(const SocialDecisionScheme& sds, const Profile& profile) {
  auto expected = rd(profile);
  auto outcome = sds(profile);
  const bool holds = outcome == expected;
  return {holds, std::move(outcome), std::move(expected)};
}

// ---------------------------------------------------------------------------
// Steps

const Lottery& Evaluations::operator()(const std::string& profile) {
  auto it = cache_.find(profile);
  if (it == cache_.end()) {
    it = cache_.emplace(profile, evaluator_(profile)).first;
    order_.push_back(profile);
  }
  return it->second;
}

Rational Evaluations::operator()(const std::string& profile, std::string_view alternative) {
  const auto& p = (*this)(profile);
  return p[p.universe()->index_of(alternative)];
}

void Evaluations::insert(const std::string& profile, Lottery p) {
  if (cache_.emplace(profile, std::move(p)).second) order_.push_back(profile);
}

bool branch_entered(Evaluations& v) { return v("R3", "a") > kHalf; }

namespace {

StepAssertion symmetry_step(std::string id, std::string profile, std::string statement, std::string pi,
                            std::string sigma, bool branch = false) {
  StepAssertion s;
  s.id = std::move(id);
  s.profile = profile;
  s.statement = std::move(statement);
  s.kind = StepKind::Symmetry;
  s.attribution = Property::AnonymityNeutrality;
  s.branch = branch;
  s.pi = std::move(pi);
  s.sigma = sigma;
  s.holds = [profile, sigma](Evaluations& v) {
    const auto& p = v(profile);
    const auto perm = AlternativePermutation::parse(sigma, p.universe());
    for (AltIndex x = 0; x < static_cast<AltIndex>(p.universe()->size()); ++x) {
      if (p[x] != p[perm(x)]) return false;
    }
    return true;
  };
  return s;
}

StepAssertion pareto_step(std::string id, std::string profile, std::string statement, std::string dominator,
                          std::vector<std::string> dominated, bool branch = false) {
  StepAssertion s;
  s.id = std::move(id);
  s.profile = profile;
  s.statement = std::move(statement);
  s.kind = StepKind::Pareto;
  s.attribution = Property::ExPostEfficiency;
  s.branch = branch;
  s.dominator = std::move(dominator);
  s.dominated = dominated;
  s.holds = [profile, dominated](Evaluations& v) {
    for (const auto& x : dominated) {
      if (v(profile, x) != 0) return false;
    }
    return true;
  };
  return s;
}

StepAssertion manipulation_step(std::string id, std::string profile, std::string statement, AgentId agent,
                                std::string truthful, std::string deviation, std::function<bool(Evaluations&)> holds,
                                bool branch = false) {
  StepAssertion s;
  s.id = std::move(id);
  s.profile = std::move(profile);
  s.statement = std::move(statement);
  s.kind = StepKind::Manipulation;
  s.attribution = Property::SdStrategyproofness;
  s.branch = branch;
  s.agent = agent;
  s.truthful = std::move(truthful);
  s.deviation = std::move(deviation);
  s.holds = std::move(holds);
  return s;
}

StepAssertion consequence_step(std::string id, std::string profile, std::string statement,
                               std::function<bool(Evaluations&)> holds) {
  StepAssertion s;
  s.id = std::move(id);
  s.profile = std::move(profile);
  s.statement = std::move(statement);
  s.kind = StepKind::Consequence;
  s.holds = std::move(holds);
  return s;
}

/// Lottery over the evaluated lottery's universe with the given masses.
Lottery lottery_on(const UniversePtr& universe, std::initializer_list<std::pair<const char*, Rational>> masses) {
  RationalVector mass = RationalVector::Zero(static_cast<Eigen::Index>(universe->size()));
  for (const auto& [name, value] : masses) mass(universe->index_of(name)) += value;
  return Lottery(universe, std::move(mass));
}

StepAssertion dominance_step(std::string id, std::string profile, std::string statement,
                             std::function<Lottery(Evaluations&)> argued) {
  StepAssertion s;
  s.id = std::move(id);
  s.profile = profile;
  s.statement = std::move(statement);
  s.kind = StepKind::Dominance;
  s.attribution = Property::SdEfficiency;
  s.holds = [profile](Evaluations& v) { return v(profile, "c") == 0 && v(profile, "d") == 0; };
  s.argued_dominator = std::move(argued);
  return s;
}

std::vector<StepAssertion> build_steps() {
  std::vector<StepAssertion> steps;
  auto add = [&](StepAssertion s) { steps.push_back(std::move(s)); };

  auto half_a_half_b = [](const std::string& profile) {
    return [profile](Evaluations& v) { return lottery_on(v(profile).universe(), {{"a", kHalf}, {"b", kHalf}}); };
  };

  // R1, R2: symmetric profiles forcing 1/2 a + 1/2 b.
  for (const std::string k : {"R1", "R2"}) {
    add(symmetry_step(k + "-symmetry", k, "p(a) = p(b) and p(c) = p(d)", "(1 2)(3 4)", "(a b)(c d)"));
    add(dominance_step(k + "-efficiency", k, "p(c) = p(d) = 0", half_a_half_b(k)));
    add(consequence_step(k + "-value", k, "p = 1/2 a + 1/2 b",
                         [k](Evaluations& v) { return v(k, "a") == kHalf && v(k, "b") == kHalf; }));
  }

  add(symmetry_step("R3-symmetry", "R3", "p3(c) = p3(d)", "(1 3)(2 4)", "(c d)"));
  // With p3(c) = p3(d) = t, shifting c's mass to a and d's mass to b is
  // weakly better for everyone and strictly better for agents 2 and 3.
  add(dominance_step("R3-efficiency", "R3", "p3(c) = p3(d) = 0", [](Evaluations& v) {
    const auto& p = v("R3");
    const auto& u = p.universe();
    RationalVector mass = p.masses();
    const auto a = u->index_of("a"), b = u->index_of("b"), c = u->index_of("c"), d = u->index_of("d");
    mass(a) += mass(c);
    mass(b) += mass(d);
    mass(c) = 0;
    mass(d) = 0;
    return Lottery(u, std::move(mass));
  }));

  // Sub-argument under p3(a) > 1/2; it always ends in a violation.
  add(manipulation_step("R4-sp", "R4", "p4(a) > 1/2", 1, "R4", "R3",
                        [](Evaluations& v) { return v("R4", "a") > kHalf; }, true));
  add(manipulation_step("R5-sp", "R5", "p5(a) > 1/2", 3, "R5", "R4",
                        [](Evaluations& v) { return v("R5", "a") > kHalf; }, true));
  add(pareto_step("R5-pareto", "R5", "p5(c) = p5(d) = 0 (b Pareto-dominates c and d)", "b", {"c", "d"}, true));
  add(pareto_step("R6-pareto", "R6", "p6(c) = p6(d) = 0 (b Pareto-dominates c and d)", "b", {"c", "d"}, true));
  add(manipulation_step("R6-sp", "R6", "p6(a) > 1/2", 2, "R5", "R6",
                        [](Evaluations& v) { return v("R6", "a") > kHalf; }, true));
  add(pareto_step("R7-pareto", "R7", "p7(c) = p7(d) = 0 (a Pareto-dominates c and d)", "a", {"c", "d"}, true));
  add(manipulation_step("R7-sp", "R7", "p7(a) > 1/2", 4, "R6", "R7",
                        [](Evaluations& v) { return v("R7", "a") > kHalf; }, true));
  add(symmetry_step("R7-symmetry", "R7", "p7(a) = p7(b)", "(1 2)(3 4)", "(a b)", true));

  add(consequence_step("R3-bound", "R3", "p3(a) + p3(c) <= 1/2",
                       [](Evaluations& v) { return v("R3", "a") + v("R3", "c") <= kHalf; }));

  add(manipulation_step("R8-upper", "R8", "p8(b) + p8(c) <= 1/2", 3, "R8", "R1",
                        [](Evaluations& v) { return v("R8", "b") + v("R8", "c") <= kHalf; }));
  add(manipulation_step("R8-lower", "R8", "p8(b) + p8(c) >= 1/2", 4, "R8", "R2",
                        [](Evaluations& v) { return v("R8", "b") + v("R8", "c") >= kHalf; }));
  add(manipulation_step("R8-d", "R8", "p8(d) = 0", 4, "R8", "R2", [](Evaluations& v) { return v("R8", "d") == 0; }));
  add(consequence_step("R8-a", "R8", "p8(a) = 1/2", [](Evaluations& v) { return v("R8", "a") == kHalf; }));

  add(manipulation_step("R9-upper", "R9", "p9(a) + p9(c) <= 1/2", 2, "R9", "R3",
                        [](Evaluations& v) { return v("R9", "a") + v("R9", "c") <= kHalf; }));
  add(manipulation_step("R9-a", "R9", "p9(a) >= 1/2", 1, "R9", "R8",
                        [](Evaluations& v) { return v("R9", "a") >= kHalf; }));
  add(consequence_step("R9-value", "R9", "p9(a) = 1/2 and p9(c) = 0",
                       [](Evaluations& v) { return v("R9", "a") == kHalf && v("R9", "c") == 0; }));
  add(manipulation_step("R8-c", "R8", "p8(c) = 0", 1, "R9", "R8", [](Evaluations& v) { return v("R8", "c") == 0; }));
  add(consequence_step("R8-value", "R8", "p8 = 1/2 a + 1/2 b",
                       [](Evaluations& v) { return v("R8", "a") == kHalf && v("R8", "b") == kHalf; }));

  add(pareto_step("R10-pareto", "R10", "p10(d) = 0 (a Pareto-dominates d)", "a", {"d"}));
  add(manipulation_step("R10-upper", "R10", "p10(b) <= 1/2", 2, "R8", "R10",
                        [](Evaluations& v) { return v("R10", "b") <= kHalf; }));
  add(manipulation_step("R10-lower", "R10", "p10(b) >= 1/2", 2, "R10", "R8",
                        [](Evaluations& v) { return v("R10", "b") >= kHalf; }));

  add(pareto_step("R11-pareto", "R11", "p11(d) = 0 (a Pareto-dominates d)", "a", {"d"}));
  add(manipulation_step("R11-lower", "R11", "p11(b) >= 1/2", 1, "R10", "R11",
                        [](Evaluations& v) { return v("R11", "b") >= kHalf; }));

  add(pareto_step("R12-pareto", "R12", "p12(d) = 0 (a Pareto-dominates d)", "a", {"d"}));
  add(symmetry_step("R12-symmetry", "R12", "p12(b) = p12(c)", "(1 2)", "(b c)"));
  add(manipulation_step("R12-c-lower", "R12", "p12(c) >= p11(c)", 1, "R12", "R11",
                        [](Evaluations& v) { return v("R12", "c") >= v("R11", "c"); }));
  add(manipulation_step("R12-c-upper", "R12", "p12(c) <= p11(c)", 1, "R11", "R12",
                        [](Evaluations& v) { return v("R12", "c") <= v("R11", "c"); }));
  add(manipulation_step("R12-a", "R12", "p12(a) <= p11(a)", 1, "R11", "R12",
                        [](Evaluations& v) { return v("R12", "a") <= v("R11", "a"); }));
  add(consequence_step("R12-value", "R12", "p12 = 1/2 b + 1/2 c",
                       [](Evaluations& v) { return v("R12", "b") == kHalf && v("R12", "c") == kHalf; }));

  {
    StepAssertion s;
    s.id = "R13-rd-extension";
    s.profile = "R13";
    s.statement = "p13 = rd(R13) = 1/4 a + 1/2 b + 1/4 c";
    s.kind = StepKind::RdExtension;
    s.attribution = Property::RdExtension;
    s.holds = [](Evaluations& v) {
      const auto& p = v("R13");
      return p == embed(rd(proof_profile("R13")), p.universe());
    };
    add(std::move(s));
  }
  add(manipulation_step("R13-manipulation", "R13", "agent 4 cannot gain by reporting its R12 relation", 4, "R13",
                        "R12", [](Evaluations& v) {
                          const auto& rel = proof_profile("R13").relation_of(4);
                          return sd_compare(rel, restrict_to_base(v("R12")), restrict_to_base(v("R13"))) !=
                                 SdVerdict::StrictlyDominates;
                        }));
  return steps;
}

}  // namespace

const std::vector<StepAssertion>& step_assertions() {
  static const std::vector<StepAssertion> steps = build_steps();
  return steps;
}

// ---------------------------------------------------------------------------
// Replay

namespace {

/// The oracle put mass outside {a,b,c,d} on a lifted profile.
struct OutsideSupport {
  std::string profile;
};

std::string describe(const DominatingLottery& d) {
  return format_lottery(d.lottery) + " (strict for agent " + std::to_string(d.strict_agent) + ")";
}

Witness step_witness(const StepAssertion& step, const std::map<std::string, Profile>& fixtures, Evaluations& values,
                     const SocialDecisionScheme& sds, std::vector<std::string>& transcript) {
  const auto& profile = fixtures.at(step.profile);
  const auto& outcome = values(step.profile);
  switch (step.kind) {
    case StepKind::Symmetry: {
      auto pi = AgentPermutation::parse(step.pi, profile.agents());
      auto sigma = AlternativePermutation::parse(step.sigma, profile.universe());
      auto verdict = check_anonymity_neutrality(sds, profile, pi, sigma);
      if (!verdict.witness) throw std::logic_error("symmetry step failed but the checker found no witness");
      return *verdict.witness;
    }
    case StepKind::Dominance: {
      std::optional<DominatingLottery> argued;
      auto q = step.argued_dominator(values);
      if (auto agent = dominator_strict_agent(profile, q, outcome)) argued = DominatingLottery{q, *agent};
      auto lp = check_sd_efficiency(profile, outcome);
      if (!argued && !lp.dominator) throw std::logic_error("dominance step failed without any dominator");
      transcript.push_back("  argued dominator: " + (argued ? describe(*argued) : "does not dominate"));
      transcript.push_back("  LP dominator: " + (lp.dominator ? describe(*lp.dominator) : "none"));
      return SdEfficiencyViolation{profile, outcome, argued ? *argued : *lp.dominator, argued, lp.dominator};
    }
    case StepKind::Pareto: {
      const auto& u = *profile.universe();
      for (const auto& name : step.dominated) {
        const auto x = u.index_of(name);
        if (outcome[x] > 0) return ExPostViolation{profile, outcome, ParetoWitness{x, u.index_of(step.dominator)}};
      }
      throw std::logic_error("Pareto step failed with no mass on a dominated alternative");
    }
    case StepKind::Manipulation: {
      const auto& deviation = fixtures.at(step.deviation);
      return ManipulationWitness{step.agent,
                                 fixtures.at(step.truthful),
                                 deviation.relation_of(step.agent),
                                 values(step.truthful),
                                 values(step.deviation),
                                 ManipulationKind::SdManipulation};
    }
    case StepKind::RdExtension: {
      const auto& base = proof_profile(step.profile);
      return RdExtensionViolation{profile, base, outcome, embed(rd(base), profile.universe())};
    }
    case StepKind::Consequence:
      break;
  }
  throw std::logic_error("consequence steps carry no witness");
}

}  // namespace

ViolationReport replay(const SocialDecisionScheme& sds, const ReplayOptions& options) {
  const bool lifted = options.agents.has_value() || options.alternatives != nullptr;
  const int agents = options.agents.value_or(4);
  const UniversePtr universe = options.alternatives ? options.alternatives : base_universe();
  if (agents < 4) throw std::invalid_argument("replay needs at least 4 agents");

  std::map<std::string, Profile> fixtures;
  for (const auto& f : proof_profiles()) {
    fixtures.emplace(f.name, lifted ? lift_profile(f.profile, agents, universe) : f.profile);
  }
  AlternativeSet inner;
  for (const auto& n : base_universe()->names()) inner.insert(universe->index_of(n));

  std::string current = "start";
  Evaluations values([&](const std::string& name) {
    const auto& profile = fixtures.at(name);
    std::optional<Lottery> result;
    try {
      result = sds(profile);
    } catch (const std::exception& e) {
      throw ReplayError(current, "evaluating " + name + ": " + e.what());
    }
    if (!same_universe(result->universe(), profile.universe())) {
      throw ReplayError(current, "oracle returned a lottery over a different universe for " + name);
    }
    if (!support(*result).subset_of(inner)) throw OutsideSupport{name};
    return *result;
  });

  std::vector<std::string> transcript;
  auto finish = [&](Property property, std::string step, std::string profile, std::string statement,
                    Witness witness) {
    ViolationReport r{property, std::move(step), std::move(profile), std::move(statement), sds.name,
                      std::move(witness), {}, std::move(transcript), {}};
    for (const auto& name : values.order()) r.evaluations.emplace_back(name, values.cached().at(name));
    if (!verify(r, &sds, &r.verification)) {
      throw std::logic_error("replay produced a witness that does not re-verify at step " + r.step);
    }
    return r;
  };

  try {
    std::optional<bool> branch;
    for (const auto& step : step_assertions()) {
      current = step.id;
      if (step.branch) {
        if (!branch) {
          branch = branch_entered(values);
          transcript.push_back(std::string("branch p3(a) > 1/2: ") + (*branch ? "entered" : "skipped") +
                               " (p3(a) = " + format_rational(values("R3", "a")) + ")");
        }
        if (!*branch) continue;
      }
      const bool ok = step.holds(values);
      transcript.push_back(step.id + ": " + (ok ? "holds" : "FAILS") + "  [" + step.statement + "]");
      if (ok) continue;
      if (!step.attribution) {
        throw std::logic_error("derived step " + step.id + " failed although its premises held");
      }
      auto witness = step_witness(step, fixtures, values, sds, transcript);
      return finish(*step.attribution, step.id, step.profile, step.statement, std::move(witness));
    }
  } catch (const OutsideSupport& o) {
    const auto& profile = fixtures.at(o.profile);
    const auto outcome = sds(profile);
    auto lp = check_sd_efficiency(profile, outcome);
    if (!lp.dominator) throw std::logic_error("lifted profile admits an SD-efficient lottery outside the base");
    const std::string step = o.profile + "-lifted-support";
    const std::string statement = "support of p" + o.profile.substr(1) + " within {a, b, c, d}";
    transcript.push_back(step + ": FAILS  [" + statement + "]");
    values.insert(o.profile, outcome);
    return finish(Property::SdEfficiency, step, o.profile, statement,
                  SdEfficiencyViolation{profile, outcome, *lp.dominator, std::nullopt, lp.dominator});
  }
  throw std::logic_error("derivation completed without a violation");
}

// ---------------------------------------------------------------------------
// Verification and rendering

bool verify(const ViolationReport& report, const SocialDecisionScheme* sds, std::vector<std::string>* log) {
  auto note = [&](const std::string& line, bool ok) {
    if (log) log->push_back(line + ": " + (ok ? "ok" : "FAILED"));
    return ok;
  };
  return std::visit(
      [&](const auto& w) -> bool {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, SymmetryWitness>) {
          const auto& u = *w.profile.universe();
          const auto x = w.alternative;
          bool ok = note("transformed profile recomputed from pi = " + w.pi.to_cycles() +
                             ", sigma = " + w.sigma.to_cycles(),
                         apply_symmetry(w.profile, w.pi, w.sigma) == w.transformed);
          ok &= note("f(R)(" + u.name(x) + ") = " + format_rational(w.outcome[x]) + " but f(R')(" +
                         u.name(w.sigma(x)) + ") = " + format_rational(w.transformed_outcome[w.sigma(x)]),
                     verify(w));
          if (sds) ok &= note("outcomes re-evaluated", verify(w, sds));
          return ok;
        } else if constexpr (std::is_same_v<W, ExPostViolation>) {
          const auto& u = *w.profile.universe();
          bool ok = note(u.name(w.pareto.dominator) + " Pareto-dominates " + u.name(w.pareto.dominated) +
                             ", which has mass " + format_rational(w.outcome[w.pareto.dominated]),
                         verify(w.profile, w.outcome, w.pareto));
          ok &= note("ex post checker rejects the outcome", !check_ex_post(w.profile, w.outcome).efficient);
          if (sds) ok &= note("outcome re-evaluated", (*sds)(w.profile) == w.outcome);
          return ok;
        } else if constexpr (std::is_same_v<W, SdEfficiencyViolation>) {
          bool ok = note("dominator " + describe(w.dominator) + " is weakly SD-preferred by every agent",
                         verify(w.profile, w.outcome, w.dominator));
          if (w.lp) ok &= note("LP dominator " + describe(*w.lp) + " verifies", verify(w.profile, w.outcome, *w.lp));
          ok &= note("SD-efficiency LP rejects the outcome", !check_sd_efficiency(w.profile, w.outcome).efficient);
          if (sds) ok &= note("outcome re-evaluated", (*sds)(w.profile) == w.outcome);
          return ok;
        } else if constexpr (std::is_same_v<W, ManipulationWitness>) {
          bool ok = note("profiles differ only in agent " + std::to_string(w.agent),
                         w.truthful_profile.without(w.agent) == w.deviation_profile().without(w.agent) &&
                             !(w.truthful_profile.relation_of(w.agent) == w.misreport));
          ok &= note("agent " + std::to_string(w.agent) + " compares deviation to truthful outcome: " +
                         std::string(to_string(w.verdict())),
                     verify(w));
          if (sds) ok &= note("outcomes re-evaluated", verify(w, sds));
          return ok;
        } else {
          const auto expected = embed(rd(w.base), w.outcome.universe());
          bool ok = note("rd of the proof profile recomputed as " + format_lottery(expected),
                         expected == w.rd_outcome);
          ok &= note("outcome " + format_lottery(w.outcome) + " differs from it", !(w.outcome == expected));
          if (sds) ok &= note("outcome re-evaluated", (*sds)(w.profile) == w.outcome);
          return ok;
        }
      },
      report.witness);
}

namespace {

Json witness_json(const Witness& witness) {
  return std::visit(
      [](const auto& w) -> Json {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, SymmetryWitness>) {
          Json out{{"kind", "symmetry"}};
          const Json body = to_json(w);
          for (const auto& [k, v] : body.items()) out[k] = v;
          return out;
        } else if constexpr (std::is_same_v<W, ExPostViolation>) {
          const auto& u = *w.profile.universe();
          return Json{{"kind", "pareto-dominated"},
                      {"profile", to_json(w.profile)},
                      {"outcome", to_json(w.outcome)},
                      {"dominated", u.name(w.pareto.dominated)},
                      {"dominator", u.name(w.pareto.dominator)},
                      {"verified", verify(w.profile, w.outcome, w.pareto)}};
        } else if constexpr (std::is_same_v<W, SdEfficiencyViolation>) {
          Json out{{"kind", "sd-dominating-lottery"},
                   {"profile", to_json(w.profile)},
                   {"outcome", to_json(w.outcome)},
                   {"dominator", to_json(w.dominator.lottery)},
                   {"dominator_text", format_lottery(w.dominator.lottery)},
                   {"strict_agent", w.dominator.strict_agent}};
          Json per_agent = Json::array();
          for (const auto& e : w.profile.entries()) {
            per_agent.push_back(
                {{"agent", e.agent}, {"verdict", to_json(sd_compare(e.relation, w.dominator.lottery, w.outcome))}});
          }
          out["sd_compare"] = std::move(per_agent);
          out["argued_dominates"] = w.argued.has_value();
          if (w.lp) out["lp_dominator"] = format_lottery(w.lp->lottery);
          out["verified"] = verify(w.profile, w.outcome, w.dominator);
          return out;
        } else if constexpr (std::is_same_v<W, ManipulationWitness>) {
          Json out{{"kind", "manipulation"}};
          const Json body = to_json(w);
          for (const auto& [k, v] : body.items()) {
            if (k != "kind") out[k] = v;
          }
          return out;
        } else {
          return Json{{"kind", "rd-extension"},
                      {"profile", to_json(w.profile)},
                      {"outcome", to_json(w.outcome)},
                      {"rd_outcome", to_json(w.rd_outcome)},
                      {"verified", !(w.outcome == w.rd_outcome)}};
        }
      },
      witness);
}

}  // namespace

Json to_json(const ViolationReport& report) {
  Json evaluations = Json::array();
  for (const auto& [name, p] : report.evaluations) {
    evaluations.push_back({{"profile", name}, {"lottery", format_lottery(p)}, {"masses", to_json(p)}});
  }
  bool verified = true;
  for (const auto& line : report.verification) verified &= !line.ends_with("FAILED");
  return Json{{"scheme", report.scheme},
              {"violated_property", std::string(to_string(report.property))},
              {"step", report.step},
              {"profile", report.profile},
              {"statement", report.statement},
              {"witness", witness_json(report.witness)},
              {"evaluations", std::move(evaluations)},
              {"transcript", report.transcript},
              {"verification", report.verification},
              {"verified", verified}};
}

std::string format_report(const ViolationReport& report) {
  std::ostringstream out;
  out << "scheme: " << report.scheme << "\n";
  out << "violated property: " << to_string(report.property) << "\n";
  out << "failed step: " << report.step << " on " << report.profile << " (" << report.statement << ")\n";
  out << "\nevaluations:\n";
  for (const auto& [name, p] : report.evaluations) out << "  f(" << name << ") = " << format_lottery(p) << "\n";
  out << "\ntranscript:\n";
  for (const auto& line : report.transcript) out << "  " << line << "\n";
  out << "\nwitness:\n";
  std::visit(
      [&](const auto& w) {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, SymmetryWitness>) {
          const auto& u = *w.profile.universe();
          out << "  pi = " << w.pi.to_cycles() << ", sigma = " << w.sigma.to_cycles() << "\n";
          out << "  f(R)(" << u.name(w.alternative) << ") = " << format_rational(w.outcome[w.alternative])
              << ", f(R')(" << u.name(w.sigma(w.alternative))
              << ") = " << format_rational(w.transformed_outcome[w.sigma(w.alternative)]) << "\n";
        } else if constexpr (std::is_same_v<W, ExPostViolation>) {
          const auto& u = *w.profile.universe();
          out << "  " << u.name(w.pareto.dominator) << " Pareto-dominates " << u.name(w.pareto.dominated)
              << ", which receives " << format_rational(w.outcome[w.pareto.dominated]) << "\n";
        } else if constexpr (std::is_same_v<W, SdEfficiencyViolation>) {
          out << "  outcome " << format_lottery(w.outcome) << " is SD-dominated by " << describe(w.dominator)
              << "\n";
        } else if constexpr (std::is_same_v<W, ManipulationWitness>) {
          out << "  agent " << w.agent << " with true preference "
              << format_relation(w.truthful_profile.relation_of(w.agent)) << " reports "
              << format_relation(w.misreport) << "\n";
          out << "  truthful: " << format_lottery(w.truthful_outcome)
              << ", deviation: " << format_lottery(w.deviation_outcome) << " (" << to_string(w.verdict())
              << ")\n";
        } else {
          out << "  f = " << format_lottery(w.outcome) << " but rd = " << format_lottery(w.rd_outcome) << "\n";
        }
      },
      report.witness);
  out << "\nverification:\n";
  for (const auto& line : report.verification) out << "  " << line << "\n";
  return out.str();
}

}  // namespace psc::theorem
