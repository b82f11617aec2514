#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "psc/lottery.hpp"

using namespace psc;

TEST_CASE("rational text") {
  CHECK(parse_rational("5/12") == Rational(5, 12));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK(parse_rational("4/8") == Rational(1, 2));
  CHECK(format_rational(Rational(6, 3)) == "2");
  CHECK(format_rational(Rational(-1, 4)) == "-1/4");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
}

TEST_CASE("lottery validation") {
  auto u = parse_universe("a,b,c");
  RationalVector v(3);
  v << Rational(1, 2), Rational(1, 2), Rational(0);
  CHECK_NOTHROW(Lottery(u, v));
  v(2) = Rational(1, 10);
  CHECK_THROWS_AS(Lottery(u, v), InvalidLottery);
  v << Rational(3, 2), Rational(-1, 2), Rational(0);
  CHECK_THROWS_AS(Lottery(u, v), InvalidLottery);
  CHECK_THROWS_AS(Lottery(u, RationalVector::Zero(2)), InvalidLottery);
}

TEST_CASE("lottery text") {
  auto u = parse_universe("a,b,c,d");
  auto p = parse_lottery("5/12*a + 5/12*b + 1/12*c + 1/12*d", u);
  CHECK(p[0] == Rational(5, 12));
  CHECK(format_lottery(p) == "5/12*a + 5/12*b + 1/12*c + 1/12*d");
  CHECK(format_lottery(parse_lottery("b", u)) == "1*b");
  CHECK(parse_lottery("1/4*a + 1/4*a + 1/2*c", u) == parse_lottery("1/2*a + 1/2*c", u));
  CHECK(format_lottery(parse_lottery(format_lottery(p), u)) == format_lottery(p));
  CHECK_THROWS(parse_lottery("1/2*a + 1/3*b", u));
  CHECK_THROWS(parse_lottery("1/2*a + 1/2*z", u));
  CHECK_THROWS(parse_lottery("1/2*a +", u));
}

TEST_CASE("uniform, support, contour masses") {
  auto u = parse_universe("a,b,c,d");
  auto p = uniform(parse_set(*u, "a,c,d"), u);
  CHECK(p[2] == Rational(1, 3));
  CHECK(support(p) == parse_set(*u, "a,c,d"));
  auto r = parse_relation("b~c > a > d", u);
  CHECK(upper_contour_mass(r, p, 2) == Rational(1, 3));
  CHECK(upper_contour_mass(r, p, 0) == Rational(2, 3));
  auto prefix = class_prefix_masses(r, p.masses());
  REQUIRE(prefix.size() == 3);
  CHECK(prefix(0) == Rational(1, 3));
  CHECK(prefix(2) == 1);
}

TEST_CASE("sd_compare on hand examples") {
  auto u = parse_universe("a,b,c,d");
  auto r = parse_relation("b > c > a > d", u);
  auto p12 = parse_lottery("1/2*b + 1/2*c", u);
  auto p13 = parse_lottery("1/4*a + 1/2*b + 1/4*c", u);
  CHECK(sd_compare(r, p12, p13) == SdVerdict::StrictlyDominates);
  CHECK(sd_compare(r, p13, p12) == SdVerdict::StrictlyDominatedBy);
  CHECK(sd_compare(r, p12, p12) == SdVerdict::Equivalent);
  auto ind = parse_relation("b~c > a~d", u);
  CHECK(sd_compare(ind, parse_lottery("b", u), parse_lottery("c", u)) == SdVerdict::Equivalent);
  auto r2 = parse_relation("a > b > c > d", u);
  CHECK(sd_compare(r2, parse_lottery("1/2*a + 1/2*d", u), parse_lottery("b", u)) == SdVerdict::Incomparable);
  // Universes are compared by their names.
  CHECK(sd_compare(r2, parse_lottery("a", parse_universe("a,b,c,d")), parse_lottery("a", u)) == SdVerdict::Equivalent);
  CHECK_THROWS(sd_compare(r2, parse_lottery("a", parse_universe("a,b,c,e")), parse_lottery("a", u)));
}

TEST_CASE("sd_compare agrees with the definition and is antisymmetric") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = 2 + trial % 4;
    auto u = oracle::letters(m);
    auto r = oracle::random_relation(rng, u);
    auto p = oracle::random_lottery(rng, u, 1 + trial % 6);
    auto q = oracle::random_lottery(rng, u, 1 + trial % 5);
    auto rank = oracle::ranks_of(Profile(u, {{1, r}}))[0];
    const bool pq = oracle::sd_weak(rank, oracle::masses_of(p), oracle::masses_of(q));
    const bool qp = oracle::sd_weak(rank, oracle::masses_of(q), oracle::masses_of(p));
    const auto v = sd_compare(r, p, q);
    CHECK(v == (pq && qp   ? SdVerdict::Equivalent
                : pq       ? SdVerdict::StrictlyDominates
                : qp       ? SdVerdict::StrictlyDominatedBy
                           : SdVerdict::Incomparable));
    CHECK(sd_compare(r, q, p) == mirror(v));
  }
}

TEST_CASE("SD dominance implies expected-utility dominance for consistent utilities") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> step(1, 5);
  for (int trial = 0; trial < 300; ++trial) {
    auto u = oracle::letters(4);
    auto r = oracle::random_relation(rng, u);
    auto p = oracle::random_lottery(rng, u, 6);
    auto q = oracle::random_lottery(rng, u, 4);
    // Random utility consistent with r: strictly decreasing across classes.
    std::vector<Rational> util(4);
    Rational level = 100;
    for (auto cls : r.classes()) {
      for (auto x : cls.members()) util[static_cast<std::size_t>(x)] = level;
      level -= step(rng);
    }
    Rational eu_p = 0, eu_q = 0;
    for (AltIndex x = 0; x < 4; ++x) {
      eu_p += util[static_cast<std::size_t>(x)] * p[x];
      eu_q += util[static_cast<std::size_t>(x)] * q[x];
    }
    if (sd_weakly_dominates(r, p, q)) CHECK(eu_p >= eu_q);
    if (sd_compare(r, p, q) == SdVerdict::Equivalent) CHECK(eu_p == eu_q);
  }
}
