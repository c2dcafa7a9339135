#include <gtest/gtest.h>

#include <cmath>

#include "ueqc/bias.hpp"

using namespace ueqc;

namespace {

std::shared_ptr<const BooleanFunction> fn(const std::string& spec) {
  return std::make_shared<const BooleanFunction>(make_function(spec));
}

}  // namespace

TEST(Bias, OrOfTwoVertex) {
  const auto r = max_bias(fn("OR:2"), 1, Norm::L1, BiasPath::General);
  EXPECT_EQ(r.beta, Rational(1, 3));
  ASSERT_TRUE(r.witness.has_value());
  const FourierPolynomial want(2, {{0, Rational(1, 3)}, {1, Rational(-1, 3)}, {2, Rational(-1, 3)}});
  EXPECT_EQ(r.witness->poly, want);
}

TEST(Bias, ConstantHasDegreeZero) {
  EXPECT_EQ(sign_degree(BooleanFunction::constant(3, true)), 0);
  EXPECT_EQ(max_bias(BooleanFunction::constant(3, false), 0, Norm::L1).beta, 1);
}

TEST(Bias, TwoBitSignDegreeByInspection) {
  // on two bits only XOR and XNOR lack a linear threshold representation
  for (std::uint64_t t = 0; t < 16; ++t) {
    const auto f = nth_function(2, t);
    const int want = (t == 0 || t == 15) ? 0 : (t == 6 || t == 9) ? 2 : 1;
    EXPECT_EQ(sign_degree(f, BiasPath::General), want) << "table " << t;
  }
}

TEST(Bias, ParityNeedsFullDegree) {
  for (int n = 1; n <= 5; ++n) {
    const auto f = fn("PARITY:" + std::to_string(n));
    EXPECT_EQ(sign_degree(f, BiasPath::General), n);
    EXPECT_EQ(max_bias(f, n - 1, Norm::Sup, BiasPath::General).beta, 0);
    EXPECT_EQ(max_bias(f, n, Norm::L1, BiasPath::General).beta, 1);
  }
}

TEST(Bias, FastPathMatchesGeneralProgram) {
  // every degree through n = 6; at n = 7, 8 the general program takes
  // minutes at high degree, so those cases stop early
  const std::vector<std::pair<const char*, int>> cases{
      {"MAJ:5", 5}, {"OR:4", 4}, {"TH:6:2", 6}, {"PARITY:4", 4}, {"AND:3", 3},
      {"TT:96:3", 3}, {"TH:6:4", 6}, {"MAJ:7", 3}, {"TH:8:5", 2}, {"MAJ:8", 2}};
  for (const auto& [spec, max_d] : cases) {
    const auto f = fn(spec);
    for (int d = 0; d <= max_d; ++d) {
      for (Norm norm : {Norm::L1, Norm::Sup}) {
        const auto fast = max_bias(f, d, norm, BiasPath::Symmetric);
        const auto slow = max_bias(f, d, norm, BiasPath::General);
        EXPECT_TRUE(fast.symmetric_fastpath);
        EXPECT_EQ(fast.beta, slow.beta) << spec << " d=" << d;
      }
    }
  }
}

TEST(Bias, FastPathRejectsAsymmetric) {
  EXPECT_THROW(max_bias(fn("OMB:3"), 1, Norm::L1, BiasPath::Symmetric), Unsupported);
}

TEST(Bias, WitnessesAreCertified) {
  for (std::uint64_t t = 0; t < 256; t += 17) {
    const auto f = std::make_shared<const BooleanFunction>(nth_function(3, t));
    for (int d = 0; d <= 3; ++d) {
      for (Norm norm : {Norm::L1, Norm::Sup}) {
        const BiasProgram prog{f, d, norm, false};
        const auto r = max_bias(f, d, norm, BiasPath::General);
        EXPECT_TRUE(verify_bias_result(prog, r));
        if (r.beta > 0) {
          ASSERT_TRUE(r.witness.has_value());
          EXPECT_LE(r.witness->poly.degree(), d);
          EXPECT_EQ(*bias_of(r.witness->poly, *f), r.beta);
        }
      }
    }
  }
}

TEST(Bias, SupOverL1IsBoundedBySqrtN) {
  // Cauchy-Schwarz: ||p||_1 <= sqrt(N) ||p||_2 = sqrt(N) E[p^2]^(1/2) <= sqrt(N) ||p||_inf
  for (std::uint64_t t = 1; t < 255; t += 7) {
    const auto f = std::make_shared<const BooleanFunction>(nth_function(3, t));
    for (int d = 1; d <= 3; ++d) {
      const Rational l1 = max_bias(f, d, Norm::L1).beta;
      const Rational sup = max_bias(f, d, Norm::Sup).beta;
      EXPECT_GE(l1, 0);
      EXPECT_LE(l1, sup);
      EXPECT_GE(l1 * l1 * Rational(low_degree_count(3, d)), sup * sup);
    }
  }
}

TEST(WeakCost, ComparesExactly) {
  const WeakCost a{1, Rational(1, 3)}, b{2, Rational(2, 3)}, c{1, Rational(1, 2)};
  EXPECT_TRUE(c < a);
  EXPECT_FALSE(a < b || b < a);  // 2 * 3 == 4 * 3/2
  EXPECT_NEAR(a.value(), 1 + std::log2(3.0), 1e-12);
}

TEST(Report, AndOfTwo) {
  const auto rep = complexity_report(make_function("AND:2"));
  EXPECT_EQ(rep.sdeg, 1);
  EXPECT_EQ(rep.uc, 1);
  EXPECT_EQ(rep.uq, 1);
  EXPECT_EQ(rep.wuc_hi.queries, 1);
  EXPECT_EQ(rep.wuc_hi.beta, Rational(1, 3));
  EXPECT_LE(rep.wuc_lo, rep.wuc_hi);
  EXPECT_LE(rep.wuq_lo, rep.wuq_hi);
  EXPECT_LE(rep.wuq_hi, rep.wuc_hi);
}

TEST(Report, ParityBracketsMeet) {
  const auto rep = complexity_report(make_function("PARITY:4"));
  EXPECT_EQ(rep.uc, 4);
  EXPECT_EQ(rep.uq, 2);
  EXPECT_EQ(rep.wuc_lo.value(), 4);
  EXPECT_EQ(rep.wuc_hi.value(), 4);
  EXPECT_EQ(rep.wuq_lo.value(), 2);
  EXPECT_EQ(rep.wuq_hi.value(), 2);
}

TEST(Report, DegreeCapIsASizeLimit) {
  ReportOptions opts;
  opts.max_degree = 2;
  EXPECT_THROW(complexity_report(fn("PARITY:4"), opts), SizeLimit);
}

TEST(Report, GeneralProgramHasASizeLimit) {
  EXPECT_THROW(max_bias(make_function("TH:13:3"), 1, Norm::L1, BiasPath::General), SizeLimit);
}
