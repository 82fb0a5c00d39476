#include <gtest/gtest.h>

#include <random>

#include "mamlab/scalar/lp.hpp"
#include "mamlab/scalar/parse.hpp"
#include "support.hpp"

using namespace mamlab;

TEST(LP, ContradictoryBounds) {
  SymbolTable t;
  SignOracle o(t);
  LPProblem p;
  p.variables = 1;
  p.add_at_least(to_scalars({1}), Scalar(1));
  p.add_at_least(to_scalars({-1}), Scalar(0));
  const auto r = lp_feasible(p, o);
  ASSERT_FALSE(is_feasible(r));
  const auto& y = std::get<Infeasible>(r).farkas;
  EXPECT_TRUE(verify_farkas(p, y, o));
  // y1*x - y2*x = 0 forces y1 = y2; the combination reads 0 >= y1
  EXPECT_EQ(y[0], y[1]);
}

TEST(LP, SimplexSegment) {
  SymbolTable t;
  SignOracle o(t);
  LPProblem p;
  p.variables = 2;
  p.add_equal(to_scalars({1, 1}), Scalar(1));
  p.add_at_least(to_scalars({1, 0}), Scalar(0));
  p.add_at_least(to_scalars({0, 1}), Scalar(0));
  const auto r = lp_feasible(p, o);
  ASSERT_TRUE(is_feasible(r));
  const auto& x = std::get<Feasible>(r).point;
  EXPECT_TRUE(verify_point(p, x, o));
  EXPECT_TRUE(x[0] == Scalar(0) || x[0] == Scalar(1));
}

TEST(LP, SymbolicCoefficients) {
  SymbolTable t;
  t.add_sqrt("s", 2, 128);
  SignOracle o(t);
  const Scalar s = Scalar::symbol(0);
  LPProblem p;
  p.variables = 1;
  p.add_at_least({s}, Scalar(mpq_class(7, 5)));   // x >= 7/(5 sqrt 2) ~ 0.9899
  p.add_at_least({Scalar(-1)}, Scalar(-1));        // x <= 1
  EXPECT_TRUE(is_feasible(lp_feasible(p, o)));
  LPProblem q;
  q.variables = 1;
  q.add_at_least({s}, Scalar(mpq_class(3, 2)));   // x >= 1.0607
  q.add_at_least({Scalar(-1)}, Scalar(-1));
  const auto r = lp_feasible(q, o);
  ASSERT_FALSE(is_feasible(r));
  EXPECT_TRUE(verify_farkas(q, std::get<Infeasible>(r).farkas, o));
}

TEST(LP, DegenerateCyclingCandidate) {
  // Beale-style degenerate system; Bland's rule must terminate
  SymbolTable t;
  SignOracle o(t);
  LPProblem p;
  p.variables = 4;
  p.add_at_least(to_scalars({mpq_class(-1, 4), 8, 1, -9}), Scalar(0));
  p.add_at_least(to_scalars({mpq_class(-1, 2), 12, mpq_class(1, 2), -3}), Scalar(0));
  p.add_at_least(to_scalars({0, 0, -1, 0}), Scalar(-1));
  for (int i = 0; i < 4; ++i) {
    QVector e(4, 0);
    e[i] = 1;
    p.add_at_least(to_scalars(e), Scalar(0));
  }
  p.add_at_least(to_scalars({1, 1, 1, 1}), Scalar(1));
  const auto r = lp_feasible(p, o);
  EXPECT_EQ(is_feasible(r), true);
}

TEST(LP, AgreesWithBasicSolutionOracle) {
  SymbolTable t;
  SignOracle o(t);
  std::mt19937_64 rng(99);
  int feasible = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto lp = oracle::random_lp(rng);
    const auto problem = oracle::to_problem(lp);
    const auto r = lp_feasible(problem, o);
    ASSERT_EQ(is_feasible(r), oracle::brute_force_feasible(lp)) << "instance " << trial;
    if (is_feasible(r)) {
      ++feasible;
      EXPECT_TRUE(verify_point(problem, std::get<Feasible>(r).point, o));
    } else {
      EXPECT_TRUE(verify_farkas(problem, std::get<Infeasible>(r).farkas, o));
    }
  }
  // both verdicts must be exercised
  EXPECT_GT(feasible, 50);
  EXPECT_LT(feasible, 450);
}
