#include <gtest/gtest.h>

#include <cmath>

#include "ueqc/bias.hpp"
#include "ueqc/qsim.hpp"

using namespace ueqc;

namespace {

constexpr double kTol = 1e-9;

// product of two local operators, used to check unitarity
LocalOp times(const LocalOp& a, const LocalOp& b) {
  LocalOp out = LocalOp::identity(a.dim);
  for (std::size_t r = 0; r < a.dim; ++r) {
    for (std::size_t c = 0; c < a.dim; ++c) {
      Amplitude s = 0.0;
      for (std::size_t k = 0; k < a.dim; ++k) s += a.at(r, k) * b.at(k, c);
      out.at(r, c) = s;
    }
  }
  return out;
}

void expect_unitary(const LocalOp& u) {
  const LocalOp p = times(u.adjoint(), u);
  for (std::size_t r = 0; r < u.dim; ++r) {
    for (std::size_t c = 0; c < u.dim; ++c) {
      EXPECT_NEAR(std::abs(p.at(r, c) - Amplitude(r == c ? 1.0 : 0.0)), 0.0, 1e-12);
    }
  }
}

}  // namespace

TEST(Gates, AreUnitary) {
  expect_unitary(hadamard());
  expect_unitary(pauli_x());
  expect_unitary(swap_levels(5, 1, 3));
  expect_unitary(prepare_real({0.6, 0.0, -0.8}));
  expect_unitary(prepare_real({1.0, 0.0}));
}

TEST(Gates, PrepareRealMapsZeroToTarget) {
  const std::vector<double> psi{0.5, -0.5, 0.5, 0.5};
  const LocalOp u = prepare_real(psi);
  for (std::size_t r = 0; r < psi.size(); ++r) EXPECT_NEAR(u.at(r, 0).real(), psi[r], 1e-12);
}

TEST(State, ControlledApplyAndLimits) {
  StateVector s({2, 2});
  s.apply(0, hadamard());
  const LocalOp x = pauli_x();
  s.apply(1, [&](const std::vector<std::size_t>& d) { return d[0] == 1 ? &x : nullptr; });
  EXPECT_NEAR(s.probability(1, 1), 0.5, 1e-12);
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
  EXPECT_THROW(StateVector(std::vector<std::size_t>(25, 2)), SizeLimit);
}

TEST(Parity, ExactForEverySubsetUpToFour) {
  for (int n = 1; n <= 4; ++n) {
    for (Mask S = 1; S < (Mask{1} << n); ++S) {
      for (Mask x = 0; x < (Mask{1} << n); ++x) {
        const int want = weight(S & x) % 2;
        for (auto mode : {OracleMode::Concrete, OracleMode::Ideal}) {
          const auto run = parity_query_algorithm(S, OracleSpec::from_mask(x, n), mode);
          EXPECT_NEAR(output_probability(run, want), 1.0, kTol);
          EXPECT_EQ(run.queries_used, (weight(S) + 1) / 2);
          EXPECT_LE(run.max_norm_error, 1e-12);
        }
      }
    }
  }
}

TEST(Parity, TraceCountsQueries) {
  const auto run = parity_query_algorithm(full_mask(3), OracleSpec::from_string("101"),
                                          OracleMode::Concrete);
  ASSERT_FALSE(run.trace.empty());
  EXPECT_EQ(run.trace.back().queries, 2);
  EXPECT_EQ(trace_to_json(run).size(), run.trace.size());
}

TEST(SignRepSampler, AcceptanceIsHalfOnePlusP) {
  for (const char* spec : {"OR:2", "MAJ:3", "OMB:3", "PARITY:3", "TT:4:2"}) {
    const auto f = std::make_shared<const BooleanFunction>(make_function(spec));
    const int d = sign_degree(f);
    const auto r = max_bias(f, d, Norm::L1);
    ASSERT_TRUE(r.witness.has_value());
    for (Mask x = 0; x < (Mask{1} << f->n()); ++x) {
      const auto run = sign_rep_sampler(*r.witness, OracleSpec::from_mask(x, f->n()));
      const double want = Rational((1 + r.witness->poly.evaluate(x)) / 2).get_d();
      EXPECT_NEAR(run.acceptance_probability, want, kTol) << spec;
      EXPECT_EQ(run.queries_used, (d + 1) / 2) << spec;
    }
  }
}

TEST(BernsteinVazirani, RecoversHiddenString) {
  // F^r(a) = a.r over addresses 00, 01, 10, 11 for r = 11
  const auto res = bernstein_vazirani(OracleSpec::from_string("0110"), 2);
  EXPECT_EQ(res.r, parse_bits("11"));
  EXPECT_NEAR(res.success_probability, 1.0, kTol);
  EXPECT_EQ(res.run.queries_used, 1);
  for (int m = 1; m <= 4; ++m) {
    for (std::uint64_t ri = 0; ri < (std::uint64_t{1} << m); ++ri) {
      const Mask r = from_lex_index(ri, m);
      std::string f;
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << m); ++a) {
        f += inner_product_mod2(from_lex_index(a, m), r) ? '1' : '0';
      }
      const auto got = bernstein_vazirani(OracleSpec::from_string(f), m);
      EXPECT_EQ(got.r, r);
      EXPECT_NEAR(got.success_probability, 1.0, kTol);
    }
  }
}

TEST(BernsteinVazirani, PromiseViolationDetected) {
  EXPECT_THROW(bernstein_vazirani(OracleSpec::from_string("0111"), 2), PromiseViolation);
  EXPECT_NO_THROW(bernstein_vazirani(OracleSpec::from_string("0111"), 2, false));
}

TEST(FourierSampling, ExhaustiveForTwoAddressBits) {
  for (std::uint64_t ri = 0; ri < 4; ++ri) {
    for (std::uint64_t gi = 0; gi < 16; ++gi) {
      std::vector<std::uint8_t> g(4);
      for (int i = 0; i < 4; ++i) g[i] = (gi >> i) & 1;
      const auto inst = make_fs_instance(2, from_lex_index(ri, 2), g);
      const auto res = fs_algorithm(inst);
      EXPECT_EQ(res.output, inst.answer());
      EXPECT_EQ(res.r, inst.r);
      EXPECT_NEAR(output_probability(res.run, inst.answer()), 1.0, kTol);
      EXPECT_EQ(res.run.queries_used, 2);
    }
  }
}

TEST(DegreeCheck, ParityAcceptanceHasDegreeAtMostTwiceQueries) {
  const int n = 4;
  for (Mask S = 1; S < 16; ++S) {
    const auto p = acceptance_degree_check(
        [&](Mask x) {
          return output_probability(
              parity_query_algorithm(S, OracleSpec::from_mask(x, n), OracleMode::Concrete), 1);
        },
        n);
    // P[output 1] = (1 - chi_S) / 2
    const FourierPolynomial want(n, {{0, Rational(1, 2)}, {S, Rational(-1, 2)}});
    EXPECT_EQ(p, want);
    EXPECT_LE(p.degree(), 2 * ((weight(S) + 1) / 2));
  }
}
