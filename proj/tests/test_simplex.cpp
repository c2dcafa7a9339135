#include <gtest/gtest.h>

#include <random>

#include "ueqc/simplex.hpp"

using namespace ueqc;

namespace {

// max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3: optimum 11 at (3, 1)
LinearProgram textbook() {
  LinearProgram lp;
  const int x = lp.add_variable(VarKind::NonNeg, 3);
  const int y = lp.add_variable(VarKind::NonNeg, 2);
  lp.add_row({{x, 1}, {y, 1}}, Sense::LE, 4);
  lp.add_row({{x, 1}, {y, 3}}, Sense::LE, 6);
  lp.add_row({{x, 1}}, Sense::LE, 3);
  return lp;
}

}  // namespace

TEST(Simplex, TextbookOptimum) {
  for (auto route : {LpOptions::Route::Primal, LpOptions::Route::Dual}) {
    LpOptions o;
    o.route = route;
    const auto sol = solve_lp(textbook(), o);
    EXPECT_EQ(sol.objective, 11);
    EXPECT_EQ(sol.primal[0], 3);
    EXPECT_EQ(sol.primal[1], 1);
    EXPECT_TRUE(verify_certificate(textbook(), sol));
  }
}

TEST(Simplex, FreeVariablesAndEqualities) {
  // max z, z free, z = a - b, a + b = 2, a - 2b >= -1, a, b >= 0
  LinearProgram lp;
  const int z = lp.add_variable(VarKind::Free, 1);
  const int a = lp.add_variable(VarKind::NonNeg);
  const int b = lp.add_variable(VarKind::NonNeg);
  lp.add_row({{z, 1}, {a, -1}, {b, 1}}, Sense::EQ, 0);
  lp.add_row({{a, 1}, {b, 1}}, Sense::EQ, 2);
  lp.add_row({{a, 1}, {b, -2}}, Sense::GE, -1);
  lp.add_row({{a, 1}}, Sense::LE, Rational(3, 2));
  const auto sol = solve_lp(lp);
  EXPECT_EQ(sol.objective, 1);  // a = 3/2, b = 1/2
}

TEST(Simplex, InfeasibleAndUnbounded) {
  LinearProgram inf;
  const int x = inf.add_variable(VarKind::NonNeg, 1);
  inf.add_row({{x, 1}}, Sense::LE, 1);
  inf.add_row({{x, 1}}, Sense::GE, 2);
  EXPECT_THROW(solve_lp(inf, {LpOptions::Route::Primal}), Infeasible);

  LinearProgram unb;
  const int y = unb.add_variable(VarKind::NonNeg, 1);
  const int w = unb.add_variable(VarKind::NonNeg);
  unb.add_row({{y, 1}, {w, -1}}, Sense::LE, 1);
  EXPECT_THROW(solve_lp(unb, {LpOptions::Route::Primal}), Unbounded);
}

TEST(Simplex, TamperedCertificateRejected) {
  auto sol = solve_lp(textbook());
  sol.dual[0] += Rational(1, 5);
  EXPECT_FALSE(verify_certificate(textbook(), sol));
  auto sol2 = solve_lp(textbook());
  sol2.objective = 12;
  EXPECT_FALSE(verify_certificate(textbook(), sol2));
}

TEST(Simplex, DegenerateProgramTerminates) {
  // Beale's cycling example for the largest-coefficient rule
  LinearProgram lp;
  const int x1 = lp.add_variable(VarKind::NonNeg, Rational(3, 4));
  const int x2 = lp.add_variable(VarKind::NonNeg, -150);
  const int x3 = lp.add_variable(VarKind::NonNeg, Rational(1, 50));
  const int x4 = lp.add_variable(VarKind::NonNeg, -6);
  lp.add_row({{x1, Rational(1, 4)}, {x2, -60}, {x3, Rational(-1, 25)}, {x4, 9}}, Sense::LE, 0);
  lp.add_row({{x1, Rational(1, 2)}, {x2, -90}, {x3, Rational(-1, 50)}, {x4, 3}}, Sense::LE, 0);
  lp.add_row({{x3, 1}}, Sense::LE, 1);
  EXPECT_EQ(solve_lp(lp, {LpOptions::Route::Primal}).objective, Rational(1, 20));
  EXPECT_EQ(solve_lp(lp, {LpOptions::Route::Dual}).objective, Rational(1, 20));
}

TEST(Simplex, PrimalAndDualRoutesAgreeOnRandomPrograms) {
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<int> coef(-5, 5), rhs(0, 9), sense(0, 2);
  int solved = 0;
  for (int trial = 0; trial < 200; ++trial) {
    LinearProgram lp;
    const int nv = 2 + trial % 4;
    for (int j = 0; j < nv; ++j) {
      lp.add_variable(j % 3 == 0 ? VarKind::Free : VarKind::NonNeg, coef(rng));
    }
    for (int i = 0; i < 2 + trial % 5; ++i) {
      std::vector<std::pair<int, Rational>> row;
      for (int j = 0; j < nv; ++j) row.emplace_back(j, coef(rng));
      const Sense s = sense(rng) == 0 ? Sense::GE : Sense::LE;
      lp.add_row(std::move(row), s, s == Sense::GE ? -rhs(rng) : rhs(rng));
    }
    // a box keeps every program bounded and feasible at 0
    for (int j = 0; j < nv; ++j) {
      lp.add_row({{j, 1}}, Sense::LE, 10);
      lp.add_row({{j, 1}}, Sense::GE, -10);
    }
    const auto p = solve_lp(lp, {LpOptions::Route::Primal});
    const auto d = solve_lp(lp, {LpOptions::Route::Dual});
    EXPECT_EQ(p.objective, d.objective) << "trial " << trial;
    EXPECT_TRUE(d.solved_dual);
    ++solved;
  }
  EXPECT_EQ(solved, 200);
}
