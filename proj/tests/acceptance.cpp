// Acceptance run: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "psc/theorem.hpp"

using namespace psc;

namespace {

std::string fixture(const std::string& name) { return std::string(PSC_FIXTURE_DIR) + "/" + name; }

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome ac1() {
  auto p = load_profile(fixture("sec3_example.prof"));
  auto got = rsd(p);
  auto want = parse_lottery("5/12*a + 5/12*b + 1/12*c + 1/12*d", p.universe());
  return {got == want, "rsd = " + format_lottery(got)};
}

Outcome ac2() {
  auto got = rd(theorem::proof_profile("R13"));
  auto want = parse_lottery("1/4*a + 1/2*b + 1/4*c", got.universe());
  return {got == want, "rd(R13) = " + format_lottery(got)};
}

Outcome ac3() {
  auto p = load_profile(fixture("sec3_example.prof"));
  auto u = p.universe();
  auto uni = parse_lottery("1/4*a + 1/4*b + 1/4*c + 1/4*d", u);
  auto v = check_sd_efficiency(p, uni);
  auto half = parse_lottery("1/2*a + 1/2*b", u);
  bool all_strict = true;
  for (const auto& e : p.entries()) all_strict &= sd_compare(e.relation, half, uni) == SdVerdict::StrictlyDominates;
  const bool own = v.dominator && verify(p, uni, *v.dominator) &&
                   oracle::dominates(oracle::ranks_of(p), oracle::masses_of(v.dominator->lottery),
                                     oracle::masses_of(uni));
  return {!v.efficient && all_strict && own,
          "inefficient=" + std::string(v.efficient ? "no" : "yes") + ", 1/2a+1/2b strict for all=" +
              (all_strict ? "yes" : "no") + ", checker witness " +
              (v.dominator ? format_lottery(v.dominator->lottery) : std::string("none")) +
              (own ? " re-verifies" : " FAILS")};
}

Outcome ac4() {
  std::vector<SocialDecisionScheme> schemes{rsd_scheme(), uniform_scheme(), load_table_scheme(fixture("mock_table.txt"))};
  std::ostringstream detail;
  bool ok = true;
  for (const auto& sds : schemes) {
    try {
      auto report = theorem::replay(sds);
      const bool verified = theorem::verify(report, &sds);
      ok &= verified;
      detail << sds.name << ": " << theorem::to_string(report.property) << " at " << report.step
             << (verified ? "" : " (witness FAILS)") << "; ";
    } catch (const std::exception& e) {
      ok = false;
      detail << sds.name << ": " << e.what() << "; ";
    }
  }
  return {ok, detail.str()};
}

Outcome ac5() {
  auto u = oracle::letters(3);
  const auto orders = enumerate_weak_orders(u);
  const auto sds = rsd_scheme();
  std::size_t profiles = 0, witnesses = 0;
  for (const auto& r1 : orders) {
    for (const auto& r2 : orders) {
      Profile p(u, {{1, r1}, {2, r2}});
      ++profiles;
      if (check_strong_sd_sp(sds, p)) ++witnesses;
    }
  }
  return {profiles == 169 && witnesses == 0,
          std::to_string(profiles) + " profiles x 2 agents x " + std::to_string(orders.size()) + " reports, " +
              std::to_string(witnesses) + " witnesses"};
}

Outcome ac6() {
  auto u = oracle::letters(3);
  std::vector<PreferenceRelation> strict;
  for (const auto& r : enumerate_weak_orders(u)) {
    if (is_strict(r)) strict.push_back(r);
  }
  std::size_t checked = 0, mismatches = 0;
  for (const auto& a : strict) {
    for (const auto& b : strict) {
      for (const auto& c : strict) {
        Profile p(u, {{1, a}, {2, b}, {3, c}});
        ++checked;
        if (!(rsd(p) == rd(p))) ++mismatches;
      }
    }
  }
  return {checked == 216 && mismatches == 0,
          std::to_string(checked) + " strict profiles, " + std::to_string(mismatches) + " mismatches"};
}

Outcome ac7() {
  std::mt19937 rng(2024);
  const auto sds = rsd_scheme();
  int failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int m = std::uniform_int_distribution<int>(2, 4)(rng);
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    auto u = oracle::letters(m);
    auto p = oracle::random_profile(rng, u, n);
    std::vector<AltIndex> image(static_cast<std::size_t>(m));
    std::iota(image.begin(), image.end(), 0);
    std::shuffle(image.begin(), image.end(), rng);
    auto agents = p.agents();
    auto shuffled = agents;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::map<AgentId, AgentId> mapping;
    for (std::size_t i = 0; i < agents.size(); ++i) mapping[agents[i]] = shuffled[i];
    if (!check_anonymity_neutrality(sds, p, AgentPermutation(mapping), AlternativePermutation(u, image)).holds) {
      ++failures;
    }
  }
  return {failures == 0, "200 random (profile, pi, sigma), " + std::to_string(failures) + " failures"};
}

Outcome ac8() {
  std::ostringstream detail;
  bool ok = true;
  const long long expected[] = {3, 13, 75, 541};
  for (int m = 2; m <= 5; ++m) {
    const auto got = static_cast<long long>(enumerate_weak_orders(oracle::letters(m)).size());
    ok &= got == oracle::fubini(m) && got == expected[m - 2];
    detail << "m=" << m << ": " << got << " ";
  }
  return {ok, detail.str()};
}

Outcome ac9() {
  // Lotteries with denominators dividing 12, mixed with RSD outcomes, so the
  // grid of the brute-force oracle contains their dominators.
  std::mt19937 rng(909);
  auto u = oracle::letters(4);
  int disagreements = 0, inefficient = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 4)(rng);
    auto p = oracle::random_profile(rng, u, n);
    const int dens[] = {1, 2, 3, 4, 6};
    auto q = trial % 5 == 0 ? rsd(p) : oracle::random_lottery(rng, u, dens[trial % 5]);
    const bool lp = check_sd_efficiency(p, q).efficient;
    const bool brute = !oracle::has_grid_dominator(oracle::ranks_of(p), oracle::masses_of(q), 12);
    if (lp != brute) ++disagreements;
    if (!lp) ++inefficient;
  }
  return {disagreements == 0, "100 pairs, " + std::to_string(inefficient) + " inefficient, " +
                                  std::to_string(disagreements) + " disagreements"};
}

Outcome ac10() {
  std::mt19937 rng(10);
  auto big = oracle::letters(5);
  int sampled = 0, failures = 0;
  for (const auto& f : theorem::proof_profiles()) {
    auto p = theorem::lift_profile(f.profile, 6, big);
    for (int k = 0; k < 25; ++k) {
      auto q = oracle::random_lottery(rng, big, 1 + k % 6);
      if (q[4] == 0) continue;
      ++sampled;
      if (check_sd_efficiency(p, q).efficient) ++failures;
    }
  }
  return {sampled > 0 && failures == 0,
          std::to_string(sampled) + " lotteries with mass on e, " + std::to_string(failures) + " judged efficient"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 rsd on the inefficiency example", ac1},
      {"AC2 rd on R13", ac2},
      {"AC3 uniform lottery SD-dominated by 1/2 a + 1/2 b", ac3},
      {"AC4 replay convicts rsd, uniform and mock", ac4},
      {"AC5 RSD strongly SD-strategyproof, n=2 m=3", ac5},
      {"AC6 RSD = RD on strict profiles, n=3 m=3", ac6},
      {"AC7 RSD anonymous and neutral", ac7},
      {"AC8 weak order counts", ac8},
      {"AC9 LP verdict matches brute force", ac9},
      {"AC10 lifted profiles reject mass outside a,b,c,d", ac10},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " [" << ms << " ms] " << o.detail << "\n";
    failed += o.pass ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
