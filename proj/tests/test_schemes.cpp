#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "psc/schemes.hpp"

using namespace psc;

namespace {

std::string fixture(const std::string& name) { return std::string(PSC_FIXTURE_DIR) + "/" + name; }

void check_rsd_against_oracle(const Profile& p) {
  const auto expected = oracle::rsd(oracle::ranks_of(p), static_cast<int>(p.universe()->size()));
  CHECK(oracle::masses_of(rsd(p)) == expected);
}

}  // namespace

TEST_CASE("rd on unique-top profiles") {
  auto p = parse_profile("agent 1: a > b > c\nagent 2: b > a~c\nagent 3: a > c > b\n");
  CHECK(format_lottery(rd(p)) == "2/3*a + 1/3*b");
  auto weak = parse_profile("agent 1: a~b > c\nagent 2: b > a~c\n");
  CHECK_THROWS_AS(rd(weak), AgentWithoutUniqueTop);
  try {
    rd(weak);
  } catch (const AgentWithoutUniqueTop& e) {
    CHECK(e.agent() == 1);
  }
}

TEST_CASE("rsd on the inefficiency example") {
  auto p = load_profile(fixture("sec3_example.prof"));
  CHECK(format_lottery(rsd(p)) == "5/12*a + 5/12*b + 1/12*c + 1/12*d");
  check_rsd_against_oracle(p);
}

TEST_CASE("rsd small cases") {
  auto all_indifferent = parse_profile("agent 1: a~b~c\nagent 2: a~b~c\n");
  CHECK(format_lottery(rsd(all_indifferent)) == "1/3*a + 1/3*b + 1/3*c");
  auto single = parse_profile("agent 1: a~b > c\n");
  CHECK(format_lottery(rsd(single)) == "1/2*a + 1/2*b");
  auto tie_break = parse_profile("agent 1: a~b > c\nagent 2: b~c > a\n");
  CHECK(format_lottery(rsd(tie_break)) == "1*b");
}

TEST_CASE("rsd matches the n! enumeration oracle on random profiles") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 150; ++trial) {
    const int m = 2 + trial % 4;
    const int n = 1 + trial % 5;
    check_rsd_against_oracle(oracle::random_profile(rng, oracle::letters(m), n));
  }
}

TEST_CASE("rsd with many identical relations uses the multiset memo") {
  std::mt19937 rng(8);
  auto u = oracle::letters(4);
  auto a = oracle::random_relation(rng, u);
  auto b = oracle::random_relation(rng, u);
  std::vector<Profile::Entry> entries;
  for (int i = 1; i <= 7; ++i) entries.push_back({i, i % 2 ? a : b});
  check_rsd_against_oracle(Profile(u, entries));
}

TEST_CASE("rsd equals rd on strict profiles") {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    auto u = oracle::letters(4);
    std::vector<Profile::Entry> entries;
    for (int i = 1; i <= 4; ++i) {
      std::vector<AltIndex> order{0, 1, 2, 3};
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<AlternativeSet> classes;
      for (auto x : order) classes.push_back(AlternativeSet::singleton(x));
      entries.push_back({i, PreferenceRelation(u, classes)});
    }
    Profile p(u, entries);
    CHECK(rsd(p) == rd(p));
    CHECK(oracle::masses_of(rd(p)) == oracle::rd(oracle::ranks_of(p), 4));
  }
}

TEST_CASE("rsd_restricted narrows the feasible set") {
  auto p = parse_profile("agent 1: a > b > c > d\nagent 2: b~c > a > d\n");
  auto u = p.universe();
  std::vector<PreferenceRelation> rels{p.relation_of(2)};
  auto q = rsd_restricted(rels, parse_set(*u, "a,c,d"), u);
  CHECK(format_lottery(q) == "1*c");
  CHECK(format_lottery(rsd_restricted({}, parse_set(*u, "b,d"), u)) == "1/2*b + 1/2*d");
}

TEST_CASE("registry") {
  CHECK(scheme_by_name("rsd").name == "rsd");
  CHECK(scheme_by_name("rd").name == "rd");
  auto uni = scheme_by_name("uniform");
  auto p = parse_profile("agent 1: a > b\n");
  CHECK(format_lottery(uni(p)) == "1/2*a + 1/2*b");
  CHECK_THROWS_AS(scheme_by_name("borda"), std::invalid_argument);
  CHECK(scheme_names().size() == 3);
}

TEST_CASE("tabulated schemes") {
  auto table = load_table_scheme(fixture("mock_table.txt"));
  auto r13 = load_profile(fixture("R13.prof"));
  CHECK(format_lottery(table(r13)) == "1/4*a + 1/2*b + 1/4*c");
  CHECK_THROWS_AS(table(load_profile(fixture("R4.prof"))), UndefinedProfile);

  const auto dir = std::filesystem::temp_directory_path() / "psc_table_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "p.prof") << "agent 1: a > b\n";
  std::ofstream(dir / "bad.txt") << "p.prof => 1/2*a + 1/3*b\n";
  CHECK_THROWS(load_table_scheme((dir / "bad.txt").string()));
  std::ofstream(dir / "missing.txt") << "nothere.prof => a\n";
  CHECK_THROWS(load_table_scheme((dir / "missing.txt").string()));
  std::ofstream(dir / "syntax.txt") << "p.prof -> a\n";
  CHECK_THROWS(load_table_scheme((dir / "syntax.txt").string()));
  std::filesystem::remove_all(dir);
}
