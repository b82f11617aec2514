#include "psc/serialize.hpp"

#include <limits>

namespace psc {

namespace {

Json integer_json(const Integer& z) {
  if (z >= std::numeric_limits<std::int64_t>::min() && z <= std::numeric_limits<std::int64_t>::max()) {
    return z.convert_to<std::int64_t>();
  }
  return z.str();
}

}  // namespace

Json to_json(const Rational& r) {
  return Json{{"num", integer_json(numerator_of(r))}, {"den", integer_json(denominator_of(r))}};
}

Json to_json(const Lottery& p) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < p.masses().size(); ++i) {
    out.push_back({{"alternative", p.universe()->name(static_cast<AltIndex>(i))},
                   {"num", integer_json(numerator_of(p.masses()(i)))},
                   {"den", integer_json(denominator_of(p.masses()(i)))}});
  }
  return out;
}

Json to_json(const Profile& profile) {
  Json agents = Json::array();
  for (const auto& e : profile.entries()) {
    agents.push_back({{"agent", e.agent}, {"relation", format_relation(e.relation)}});
  }
  return Json{{"alternatives", profile.universe()->names()}, {"agents", std::move(agents)}};
}

Json to_json(SdVerdict v) { return std::string(to_string(v)); }

Json to_json(const Profile& profile, const Lottery& p, const EfficiencyVerdict& v) {
  Json out{{"efficient", v.efficient}, {"lottery", format_lottery(p)}};
  if (v.pareto) {
    const auto& u = *profile.universe();
    out["witness"] = {{"kind", "pareto-dominated"},
                      {"dominated", u.name(v.pareto->dominated)},
                      {"dominator", u.name(v.pareto->dominator)},
                      {"verified", verify(profile, p, *v.pareto)}};
  }
  if (v.dominator) {
    Json per_agent = Json::array();
    for (const auto& e : profile.entries()) {
      per_agent.push_back({{"agent", e.agent}, {"verdict", to_json(sd_compare(e.relation, v.dominator->lottery, p))}});
    }
    out["witness"] = {{"kind", "sd-dominating-lottery"},
                      {"lottery", format_lottery(v.dominator->lottery)},
                      {"masses", to_json(v.dominator->lottery)},
                      {"strict_agent", v.dominator->strict_agent},
                      {"sd_compare", std::move(per_agent)},
                      {"verified", verify(profile, p, *v.dominator)}};
  }
  return out;
}

Json to_json(const ManipulationWitness& w) {
  return Json{{"kind", std::string(to_string(w.kind))},
              {"agent", w.agent},
              {"true_relation", format_relation(w.truthful_profile.relation_of(w.agent))},
              {"misreport", format_relation(w.misreport)},
              {"truthful_profile", to_json(w.truthful_profile)},
              {"truthful_outcome", format_lottery(w.truthful_outcome)},
              {"deviation_outcome", format_lottery(w.deviation_outcome)},
              {"sd_compare", to_json(w.verdict())},
              {"verified", verify(w)}};
}

Json to_json(const SymmetryWitness& w) {
  const auto& u = *w.profile.universe();
  return Json{{"pi", w.pi.to_cycles()},
              {"sigma", w.sigma.to_cycles()},
              {"profile", to_json(w.profile)},
              {"transformed_profile", to_json(w.transformed)},
              {"self_symmetric", w.transformed == w.profile},
              {"outcome", format_lottery(w.outcome)},
              {"transformed_outcome", format_lottery(w.transformed_outcome)},
              {"alternative", u.name(w.alternative)},
              {"image", u.name(w.sigma(w.alternative))},
              {"verified", verify(w)}};
}

}  // namespace psc
