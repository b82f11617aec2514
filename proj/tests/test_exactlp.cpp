#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "psc/exactlp.hpp"

using psc::Rational;
using psc::RationalVector;
namespace lp = psc::lp;

namespace {

RationalVector vec(std::initializer_list<Rational> xs) {
  RationalVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

/// Dual of max c·x, Ax <= b, x >= 0: min b·y, Aᵀy >= c, y >= 0.
lp::LinearProgram<Rational> dual_of(const psc::RationalMatrix& a, const RationalVector& b, const RationalVector& c) {
  lp::LinearProgram<Rational> d;
  for (Eigen::Index i = 0; i < a.rows(); ++i) d.add_variable("y" + std::to_string(i));
  d.set_objective(-b);
  for (Eigen::Index j = 0; j < a.cols(); ++j) d.add_constraint(RationalVector(a.col(j)), lp::Relation::GreaterEqual, c(j));
  return d;
}

lp::LinearProgram<Rational> primal_of(const psc::RationalMatrix& a, const RationalVector& b, const RationalVector& c) {
  lp::LinearProgram<Rational> p;
  for (Eigen::Index j = 0; j < a.cols(); ++j) p.add_variable("x" + std::to_string(j));
  p.set_objective(c);
  for (Eigen::Index i = 0; i < a.rows(); ++i) p.add_constraint(RationalVector(a.row(i).transpose()), lp::Relation::LessEqual, b(i));
  return p;
}

}  // namespace

TEST_CASE("textbook maximum with a fractional vertex") {
  // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6, x <= 3.
  lp::LinearProgram<Rational> p({"x", "y"});
  p.set_objective(vec({3, 2}));
  p.add_constraint(vec({1, 1}), lp::Relation::LessEqual, 4);
  p.add_constraint(vec({1, 3}), lp::Relation::LessEqual, 6);
  p.add_constraint(vec({1, 0}), lp::Relation::LessEqual, 3);
  auto out = lp::solve(p);
  REQUIRE(out.optimal());
  CHECK(out.value == 11);
  CHECK(out.point == vec({3, 1}));
  CHECK(lp::satisfies(p, out.point));

  lp::LinearProgram<Rational> q({"x", "y"});
  q.set_objective(vec({1, 1}));
  q.add_constraint(vec({3, 1}), lp::Relation::LessEqual, 2);
  q.add_constraint(vec({1, 3}), lp::Relation::LessEqual, 2);
  auto frac = lp::solve(q);
  REQUIRE(frac.optimal());
  CHECK(frac.value == 1);
  CHECK(frac.point == vec({Rational(1, 2), Rational(1, 2)}));
}

TEST_CASE("equalities, >= rows, negative right-hand sides") {
  lp::LinearProgram<Rational> p({"x", "y", "z"});
  p.set_objective(vec({-1, -1, -1}));
  p.add_constraint(vec({1, 1, 1}), lp::Relation::Equal, 1);
  p.add_constraint(vec({1, -1, 0}), lp::Relation::GreaterEqual, Rational(1, 3));
  p.add_constraint(vec({0, -1, -1}), lp::Relation::LessEqual, Rational(-1, 4));
  auto out = lp::solve(p);
  REQUIRE(out.optimal());
  CHECK(out.value == -1);
  CHECK(lp::satisfies(p, out.point));
}

TEST_CASE("infeasible and unbounded") {
  lp::LinearProgram<Rational> infeasible({"x"});
  infeasible.add_constraint(vec({1}), lp::Relation::GreaterEqual, 2);
  infeasible.add_constraint(vec({1}), lp::Relation::LessEqual, 1);
  CHECK(lp::solve(infeasible).status == lp::Status::Infeasible);

  lp::LinearProgram<Rational> unbounded({"x", "y"});
  unbounded.set_objective(vec({1, 0}));
  unbounded.add_constraint(vec({1, -1}), lp::Relation::LessEqual, 1);
  CHECK(lp::solve(unbounded).status == lp::Status::Unbounded);
}

TEST_CASE("free variables") {
  lp::LinearProgram<Rational> p;
  const int x = p.add_variable("x", false);
  p.set_objective_coefficient(x, -1);
  p.add_constraint(std::vector<std::pair<int, Rational>>{{x, Rational(1)}}, lp::Relation::GreaterEqual, -5);
  auto out = lp::solve(p);
  REQUIRE(out.optimal());
  CHECK(out.point(0) == -5);
  CHECK(out.value == 5);
}

TEST_CASE("redundant equality rows are dropped") {
  lp::LinearProgram<Rational> p({"x", "y"});
  p.set_objective(vec({1, 2}));
  p.add_constraint(vec({1, 1}), lp::Relation::Equal, 1);
  p.add_constraint(vec({2, 2}), lp::Relation::Equal, 2);
  auto out = lp::solve(p);
  REQUIRE(out.optimal());
  CHECK(out.value == 2);
}

TEST_CASE("degenerate problem terminates under Bland's rule") {
  // Beale's cycling example (maximization form).
  lp::LinearProgram<Rational> p({"x1", "x2", "x3", "x4"});
  p.set_objective(vec({Rational(3, 4), -150, Rational(1, 50), -6}));
  p.add_constraint(vec({Rational(1, 4), -60, Rational(-1, 25), 9}), lp::Relation::LessEqual, 0);
  p.add_constraint(vec({Rational(1, 2), -90, Rational(-1, 50), 3}), lp::Relation::LessEqual, 0);
  p.add_constraint(vec({0, 0, 1, 0}), lp::Relation::LessEqual, 1);
  auto out = lp::solve(p);
  REQUIRE(out.optimal());
  CHECK(out.value == Rational(1, 20));
}

TEST_CASE("dimension checks") {
  lp::LinearProgram<Rational> p({"x", "y"});
  CHECK_THROWS_AS(p.add_constraint(vec({1}), lp::Relation::LessEqual, 1), lp::DimensionMismatch);
  p.add_constraint(vec({1, 1}), lp::Relation::LessEqual, 1);
  CHECK_THROWS_AS(p.add_variable("z"), std::logic_error);
  CHECK(lp::dump(p).find("maximize") != std::string::npos);
}

TEST_CASE("strong duality and row-order invariance on random feasible programs") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> coef(-3, 5);
  std::uniform_int_distribution<int> rhs(1, 8);
  for (int trial = 0; trial < 80; ++trial) {
    const int rows = 2 + trial % 4, cols = 2 + trial % 3;
    psc::RationalMatrix a(rows, cols);
    RationalVector b(rows), c(cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) a(i, j) = coef(rng);
      b(i) = rhs(rng);
    }
    // A bounding row keeps the primal bounded.
    a.row(0).setOnes();
    for (int j = 0; j < cols; ++j) c(j) = coef(rng);

    auto primal = lp::solve(primal_of(a, b, c));
    REQUIRE(primal.optimal());
    CHECK(lp::satisfies(primal_of(a, b, c), primal.point));
    auto dual = lp::solve(dual_of(a, b, c));
    REQUIRE(dual.optimal());
    CHECK(primal.value == -dual.value);

    // Any dual-feasible y bounds the primal from above (weak duality).
    CHECK(c.dot(primal.point) <= b.dot(dual.point));

    std::vector<int> perm(static_cast<std::size_t>(rows));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    psc::RationalMatrix a2(rows, cols);
    RationalVector b2(rows);
    for (int i = 0; i < rows; ++i) {
      a2.row(i) = a.row(perm[static_cast<std::size_t>(i)]);
      b2(i) = b(perm[static_cast<std::size_t>(i)]);
    }
    CHECK(lp::solve(primal_of(a2, b2, c)).value == primal.value);
  }
}

TEST_CASE("same code runs over another exact scalar type") {
  using Q = boost::multiprecision::mpq_rational;
  lp::LinearProgram<Q> p({"x", "y"});
  psc::DenseVector<Q> obj(2), row(2);
  obj << 1, 1;
  row << 3, 1;
  p.set_objective(obj);
  p.add_constraint(row, lp::Relation::LessEqual, 2);
  row << 1, 3;
  p.add_constraint(row, lp::Relation::LessEqual, 2);
  auto out = lp::solve(p);
  REQUIRE(out.optimal());
  CHECK(out.value == 1);
}
