#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ekr/lp.hpp"

using namespace ekr::lp;

// Reference optima computed independently with scipy.optimize.linprog.

TEST_CASE("two-variable maximisation") {
  const Problem p{{-1, -1}, {{1, 2}, {3, 1}}, {Relation::LessEqual, Relation::LessEqual}, {4, 6}};
  const Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.objective == doctest::Approx(-2.8));
  CHECK(s.x[0] == doctest::Approx(1.6));
  CHECK(s.x[1] == doctest::Approx(1.2));
}

TEST_CASE("equality and greater-equal rows") {
  const Problem p{{2, 3, 1},
                  {{1, 1, 1}, {1, -1, 0}, {0, 1, 1}},
                  {Relation::Equal, Relation::GreaterEqual, Relation::GreaterEqual},
                  {10, 2, 3}};
  const Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.objective == doctest::Approx(12));
  CHECK(s.x[0] == doctest::Approx(2));
  CHECK(s.x[2] == doctest::Approx(8));
}

TEST_CASE("degenerate program that cycles under naive pricing") {
  const Problem p{{-0.75, 20, -0.5, 6},
                  {{0.25, -8, -1, 9}, {0.5, -12, -0.5, 3}, {0, 0, 1, 0}},
                  {Relation::LessEqual, Relation::LessEqual, Relation::LessEqual},
                  {0, 0, 1}};
  const Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.objective == doctest::Approx(-1.25));
}

TEST_CASE("degenerate greater-equal zero rows") {
  // min t  s.t. t - x >= 0, t - y >= 0, x + y = 2
  const Problem p{{1, 0, 0},
                  {{1, -1, 0}, {1, 0, -1}, {0, 1, 1}},
                  {Relation::GreaterEqual, Relation::GreaterEqual, Relation::Equal},
                  {0, 0, 2}};
  const Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.objective == doctest::Approx(1));
}

TEST_CASE("random dense program") {
  const Problem p{{-5, -2, 0, -1, -1},
                  {{4, 2, 0, -3, -2},
                   {-5, -5, -5, -4, 3},
                   {2, 5, 0, 1, 5},
                   {3, 1, 0, 1, 5},
                   {-2, 3, 2, -5, -1},
                   {4, 1, -5, 3, 3}},
                  std::vector<Relation>(6, Relation::LessEqual),
                  {8, 2, 1, 8, 1, 5}};
  const Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.objective == doctest::Approx(-2.5));
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    double lhs = 0;
    for (std::size_t j = 0; j < p.c.size(); ++j)
      lhs += p.a[i][j] * s.x[j];
    CHECK(lhs <= p.b[i] + 1e-9);
  }
}

TEST_CASE("infeasible and unbounded") {
  const Problem inf{{1}, {{1}, {1}}, {Relation::LessEqual, Relation::GreaterEqual}, {1, 2}};
  CHECK(solve(inf).status == Status::Infeasible);
  const Problem unb{{-1, 0}, {{1, -1}}, {Relation::LessEqual}, {1}};
  CHECK(solve(unb).status == Status::Unbounded);
}
