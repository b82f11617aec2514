#include "psc/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "psc/theorem.hpp"

namespace psc::cli {

namespace {

struct Options {
  std::string scheme;
  std::string table;
  std::string profile;
  std::string lottery;
  std::string agents;
  std::string alternatives;
  std::string pi;
  std::string sigma;
  std::string format = "text";
  int max_denominator = 0;
  int num_agents = 0;
  unsigned threads = 1;
  bool count_only = false;
  bool strong = false;
};

/// Problems with the invocation or its inputs; mapped to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

UniversePtr alternatives_of(const Options& o) {
  if (o.alternatives.empty()) return nullptr;
  return parse_universe(o.alternatives);
}

Profile load(const Options& o) {
  if (o.profile.empty()) throw UsageError("--profile is required");
  const auto text = read_file(o.profile);
  if (auto u = alternatives_of(o)) return parse_profile(text, u);
  return parse_profile(text);
}

SocialDecisionScheme scheme_of(const Options& o) {
  if (!o.table.empty() && !o.scheme.empty()) throw UsageError("use either --scheme or --table");
  if (!o.table.empty()) return load_table_scheme(o.table);
  if (o.scheme.empty()) throw UsageError("--scheme or --table is required");
  return scheme_by_name(o.scheme);
}

/// The lottery under test: --lottery if given, else the scheme's outcome.
Lottery lottery_of(const Options& o, const Profile& profile) {
  if (!o.lottery.empty()) return parse_lottery(o.lottery, profile.universe());
  if (o.scheme.empty() && o.table.empty()) throw UsageError("--lottery or --scheme is required");
  return scheme_of(o)(profile);
}

std::vector<AgentId> parse_agents(const std::string& list) {
  std::vector<AgentId> ids;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const int id = std::stoi(item, &used);
      if (used != item.size() || id <= 0) throw std::invalid_argument(item);
      ids.push_back(id);
    } catch (const std::logic_error&) {
      throw UsageError("bad agent id '" + item + "' in --agents");
    }
  }
  return ids;
}

bool structured(const Options& o) { return o.format == "structured"; }

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// Subcommands

int cmd_eval(const Options& o, std::ostream& out) {
  const auto profile = load(o);
  const auto sds = scheme_of(o);
  const auto p = sds(profile);
  if (structured(o)) {
    emit(out, Json{{"scheme", sds.name}, {"lottery", format_lottery(p)}, {"masses", to_json(p)}});
  } else {
    out << format_lottery(p) << "\n";
  }
  return kPass;
}

int cmd_check_expost(const Options& o, std::ostream& out) {
  const auto profile = load(o);
  const auto p = lottery_of(o, profile);
  const auto v = check_ex_post(profile, p);
  if (structured(o)) {
    emit(out, to_json(profile, p, v));
  } else if (v.efficient) {
    out << "ex post efficient: " << format_lottery(p) << "\n";
  } else {
    const auto& u = *profile.universe();
    out << "not ex post efficient: " << u.name(v.pareto->dominator) << " Pareto-dominates "
        << u.name(v.pareto->dominated) << ", which has mass " << format_rational(p[v.pareto->dominated]) << "\n";
  }
  return v.efficient ? kPass : kViolation;
}

int cmd_check_sdeff(const Options& o, std::ostream& out) {
  const auto profile = load(o);
  const auto p = lottery_of(o, profile);
  const auto v = check_sd_efficiency(profile, p);
  std::optional<Lottery> brute;
  if (o.max_denominator > 0) brute = find_dominator_by_enumeration(profile, p, o.max_denominator);

  if (structured(o)) {
    Json j = to_json(profile, p, v);
    if (o.max_denominator > 0) {
      j["brute_force"] = {{"max_denominator", o.max_denominator},
                          {"dominator", brute ? Json(format_lottery(*brute)) : Json(nullptr)}};
    }
    emit(out, j);
  } else {
    if (v.efficient) {
      out << "SD-efficient: " << format_lottery(p) << "\n";
    } else {
      out << "not SD-efficient: " << format_lottery(p) << "\n";
      out << "dominated by " << format_lottery(v.dominator->lottery) << " (strict for agent "
          << v.dominator->strict_agent << ")\n";
      for (const auto& e : profile.entries()) {
        out << "  agent " << e.agent << ": " << to_string(sd_compare(e.relation, v.dominator->lottery, p)) << "\n";
      }
    }
    if (o.max_denominator > 0) {
      out << "brute force (denominator <= " << o.max_denominator
          << "): " << (brute ? "dominated by " + format_lottery(*brute) : std::string("no dominator")) << "\n";
    }
  }
  return v.efficient ? kPass : kViolation;
}

void print_manipulation(std::ostream& out, const ManipulationWitness& w) {
  out << to_string(w.kind) << ": agent " << w.agent << " with true preference "
      << format_relation(w.truthful_profile.relation_of(w.agent)) << " reports " << format_relation(w.misreport)
      << "\n";
  out << "  truthful outcome:  " << format_lottery(w.truthful_outcome) << "\n";
  out << "  deviation outcome: " << format_lottery(w.deviation_outcome) << "\n";
  out << "  sd_compare(deviation, truthful) = " << to_string(w.verdict()) << "\n";
  out << "profile:\n" << format_profile(w.truthful_profile);
}

/// All profiles with agents 1..n over `universe`, in lexicographic order of
/// the agents' relations.
template <class F>
bool for_each_profile(const UniversePtr& universe, int n, F&& visit) {
  const auto orders = enumerate_weak_orders(universe);
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    std::vector<Profile::Entry> entries;
    for (int i = 0; i < n; ++i) entries.push_back({i + 1, orders[idx[static_cast<std::size_t>(i)]]});
    if (!visit(Profile(universe, std::move(entries)))) return false;
    int k = n - 1;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == orders.size()) idx[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) return true;
  }
}

int cmd_check_sp(const Options& o, std::ostream& out) {
  const auto sds = scheme_of(o);
  ManipulationSearch search;
  if (!o.agents.empty()) search.agents = parse_agents(o.agents);
  search.threads = o.threads;
  auto check = [&](const Profile& profile) {
    return o.strong ? check_strong_sd_sp(sds, profile, search) : find_sd_manipulation(sds, profile, search);
  };

  std::optional<ManipulationWitness> witness;
  std::size_t profiles = 0;
  if (!o.profile.empty()) {
    witness = check(load(o));
    profiles = 1;
  } else {
    const auto universe = alternatives_of(o);
    if (!universe || o.num_agents <= 0) {
      throw UsageError("check-sp needs --profile, or --alternatives and --num-agents for exhaustive search");
    }
    for_each_profile(universe, o.num_agents, [&](const Profile& profile) {
      ++profiles;
      witness = check(profile);
      return !witness.has_value();
    });
  }

  const std::string property = o.strong ? "strong SD-strategyproofness" : "SD-strategyproofness";
  if (structured(o)) {
    Json j{{"scheme", sds.name}, {"property", property}, {"profiles_checked", profiles},
           {"holds", !witness.has_value()}};
    if (witness) j["witness"] = to_json(*witness);
    emit(out, j);
  } else if (witness) {
    out << property << " violated (after " << profiles << " profile" << (profiles == 1 ? "" : "s") << ")\n";
    print_manipulation(out, *witness);
  } else {
    out << property << " holds on " << profiles << " profile" << (profiles == 1 ? "" : "s") << "\n";
  }
  return witness ? kViolation : kPass;
}

int cmd_symmetry(const Options& o, std::ostream& out) {
  const auto profile = load(o);
  const auto sds = scheme_of(o);
  const auto agents = profile.agents();
  const auto pi = o.pi.empty() ? AgentPermutation::identity(agents) : AgentPermutation::parse(o.pi, agents);
  const auto sigma = o.sigma.empty() ? AlternativePermutation::identity(profile.universe())
                                     : AlternativePermutation::parse(o.sigma, profile.universe());
  const auto v = check_anonymity_neutrality(sds, profile, pi, sigma);
  if (structured(o)) {
    Json j{{"scheme", sds.name}, {"holds", v.holds}, {"self_symmetric", v.self_symmetric}};
    if (v.witness) j["witness"] = to_json(*v.witness);
    emit(out, j);
  } else if (v.holds) {
    out << "anonymity and neutrality hold for pi = " << pi.to_cycles() << ", sigma = " << sigma.to_cycles()
        << (v.self_symmetric ? " (profile is a fixed point)" : "") << "\n";
  } else {
    const auto& w = *v.witness;
    const auto& u = *profile.universe();
    out << "anonymity/neutrality violated for pi = " << pi.to_cycles() << ", sigma = " << sigma.to_cycles() << "\n";
    out << "  f(R) = " << format_lottery(w.outcome) << "\n";
    out << "  f(R') = " << format_lottery(w.transformed_outcome) << "\n";
    out << "  f(R)(" << u.name(w.alternative) << ") = " << format_rational(w.outcome[w.alternative])
        << " but f(R')(" << u.name(w.sigma(w.alternative))
        << ") = " << format_rational(w.transformed_outcome[w.sigma(w.alternative)]) << "\n";
    out << "transformed profile:\n" << format_profile(w.transformed);
  }
  return v.holds ? kPass : kViolation;
}

int cmd_replay(const Options& o, std::ostream& out) {
  const auto sds = scheme_of(o);
  theorem::ReplayOptions options;
  if (o.num_agents > 0) options.agents = o.num_agents;
  options.alternatives = alternatives_of(o);
  const auto report = theorem::replay(sds, options);
  if (structured(o)) {
    emit(out, theorem::to_json(report));
  } else {
    out << theorem::format_report(report);
  }
  return kViolation;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  const auto universe = alternatives_of(o);
  if (!universe) throw UsageError("--alternatives is required");
  const auto orders = enumerate_weak_orders(universe);
  if (structured(o)) {
    Json j{{"alternatives", universe->names()}, {"count", orders.size()}};
    if (!o.count_only) {
      Json list = Json::array();
      for (const auto& r : orders) list.push_back(format_relation(r));
      j["relations"] = std::move(list);
    }
    emit(out, j);
  } else if (o.count_only) {
    out << orders.size() << "\n";
  } else {
    for (const auto& r : orders) out << format_relation(r) << "\n";
  }
  return kPass;
}

int cmd_lift(const Options& o, std::ostream& out) {
  if (o.profile.empty()) throw UsageError("--profile is required");
  const auto base = parse_profile(read_file(o.profile));
  const auto universe = alternatives_of(o) ? alternatives_of(o) : base.universe();
  const int n = o.num_agents > 0 ? o.num_agents : static_cast<int>(base.size());
  const auto lifted = theorem::lift_profile(base, n, universe);
  if (structured(o)) {
    emit(out, to_json(lifted));
  } else {
    out << format_profile(lifted);
  }
  return kPass;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probabilistic social choice toolkit: exact RD/RSD, SD-efficiency and strategyproofness checks, "
               "and the impossibility-proof replay.",
               "psc"};
  app.require_subcommand(1, 1);
  Options o;

  auto scheme_flags = [&](CLI::App* sub) {
    sub->add_option("--scheme", o.scheme, "Scheme name (rd, rsd, uniform)");
    sub->add_option("--table", o.table, "Tabulated scheme file");
  };
  auto format_flag = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "structured"}));
  };
  auto profile_flags = [&](CLI::App* sub) {
    sub->add_option("--profile", o.profile, "Profile file");
    sub->add_option("--alternatives", o.alternatives, "Alternative universe, e.g. a,b,c,d");
  };

  auto* eval = app.add_subcommand("eval", "Evaluate a scheme on a profile");
  scheme_flags(eval);
  profile_flags(eval);
  format_flag(eval);

  auto* expost = app.add_subcommand("check-expost", "Check ex post efficiency of a lottery");
  auto* sdeff = app.add_subcommand("check-sdeff", "Check SD-efficiency of a lottery");
  for (auto* sub : {expost, sdeff}) {
    scheme_flags(sub);
    profile_flags(sub);
    format_flag(sub);
    sub->add_option("--lottery", o.lottery, "Lottery, e.g. \"1/2*a + 1/2*b\"");
  }
  sdeff->add_option("--max-denominator", o.max_denominator, "Also search dominators with this denominator bound")
      ->check(CLI::Range(1, 64));

  auto* sp = app.add_subcommand("check-sp", "Search for SD-manipulations");
  scheme_flags(sp);
  profile_flags(sp);
  format_flag(sp);
  sp->add_option("--agents", o.agents, "Comma-separated agents allowed to deviate");
  sp->add_option("--num-agents", o.num_agents, "Exhaustive mode: number of agents")->check(CLI::PositiveNumber);
  sp->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  sp->add_flag("--strong", o.strong, "Also treat incomparable deviations as violations");

  auto* sym = app.add_subcommand("symmetry", "Check anonymity and neutrality under (pi, sigma)");
  scheme_flags(sym);
  profile_flags(sym);
  format_flag(sym);
  sym->add_option("--pi", o.pi, "Agent permutation in cycle notation, e.g. \"(1 2)(3 4)\"");
  sym->add_option("--sigma", o.sigma, "Alternative permutation in cycle notation, e.g. \"(a b)\"");

  auto* replay = app.add_subcommand("replay", "Replay the impossibility proof against a scheme");
  scheme_flags(replay);
  format_flag(replay);
  replay->add_option("--num-agents", o.num_agents, "Lift the proof profiles to this many agents")
      ->check(CLI::Range(4, 64));
  replay->add_option("--alternatives", o.alternatives, "Lift the proof profiles to this universe");

  auto* enumerate = app.add_subcommand("enumerate", "List all weak orders");
  enumerate->add_option("--alternatives", o.alternatives, "Alternatives, e.g. a,b,c")->required();
  enumerate->add_flag("--count-only", o.count_only, "Print only the count");
  format_flag(enumerate);

  auto* lift = app.add_subcommand("lift", "Embed a profile into more agents and alternatives");
  profile_flags(lift);
  format_flag(lift);
  lift->add_option("--num-agents", o.num_agents, "Agent count")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsageError;
  }

  try {
    if (*eval) return cmd_eval(o, out);
    if (*expost) return cmd_check_expost(o, out);
    if (*sdeff) return cmd_check_sdeff(o, out);
    if (*sp) return cmd_check_sp(o, out);
    if (*sym) return cmd_symmetry(o, out);
    if (*replay) return cmd_replay(o, out);
    if (*enumerate) return cmd_enumerate(o, out);
    if (*lift) return cmd_lift(o, out);
  } catch (const theorem::ReplayError& e) {
    err << "replay error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"psc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace psc::cli
