#include <gtest/gtest.h>

#include <cmath>

#include "ueqc/bias.hpp"
#include "ueqc/crand.hpp"

using namespace ueqc;

namespace {

Rational success_at(const BiasProfile& p, const std::string& key) {
  for (const auto& [x, s] : p.per_input) {
    if (x == key) return s;
  }
  throw std::runtime_error("no entry " + key);
}

}  // namespace

TEST(Omb, TwoBitValues) {
  const auto p = exact_profile(omb_algorithm(2), make_function("OMB:2"));
  EXPECT_EQ(success_at(p, "00"), Rational(7, 12));
  EXPECT_EQ(success_at(p, "11"), Rational(2, 3));
  EXPECT_GT(p.min_bias, 0);
}

TEST(Omb, PositiveBiasUpToSixteen) {
  for (int n = 1; n <= 16; ++n) {
    const auto p = exact_profile(omb_algorithm(n), make_function("OMB:" + std::to_string(n)));
    EXPECT_GT(p.min_bias, 0) << "n=" << n;
    // the all-zero input only sees the coin
    EXPECT_EQ(p.min_bias, omb_epsilon(n)) << "n=" << n;
  }
}

TEST(Or, ClosedForm) {
  const auto p = exact_profile(or_algorithm(2), make_function("OR:2"));
  EXPECT_EQ(success_at(p, "00"), Rational(2, 3));
  EXPECT_EQ(success_at(p, "10"), Rational(2, 3));
  EXPECT_EQ(success_at(p, "11"), 1);
  for (int n = 1; n <= 10; ++n) {
    const auto alg = or_algorithm(n);
    for (Mask x = 0; x < (Mask{1} << n); ++x) {
      const Rational w = make_rational(weight(x), n);
      const Rational on_zero = make_rational(n - 1, 2 * n - 1);
      EXPECT_EQ(alg.accept_probability(x), w + (1 - w) * on_zero);
    }
  }
}

TEST(Threshold, ParametersAndBias) {
  EXPECT_EQ(threshold_q(4, 1), Rational(1, 5));
  EXPECT_EQ(threshold_bias(4, 1), Rational(1, 10));
  const auto p = exact_profile(threshold_algorithm(4, 1), make_function("TH:4:1"));
  EXPECT_EQ(p.min_bias, Rational(1, 10));
}

TEST(Threshold, EveryKUpToTen) {
  for (int n = 1; n <= 10; ++n) {
    for (int k = 0; k < n; ++k) {
      const auto f = make_function("TH:" + std::to_string(n) + ":" + std::to_string(k));
      const auto alg = threshold_algorithm(n, k);
      const auto p = exact_profile(alg, f);
      EXPECT_GT(p.min_bias, 0) << n << ":" << k;
      EXPECT_EQ(p.min_bias, weight_profile(alg, f).min_bias) << n << ":" << k;
      EXPECT_EQ(alg.budget(), 1);
    }
  }
}

TEST(Threshold, WeightProfileScales) {
  const auto p = weight_profile(threshold_algorithm(64, 20), make_function("TH:64:20"));
  EXPECT_EQ(p.per_input.size(), 65u);
  EXPECT_GT(p.min_bias, 0);
}

TEST(ParitySampling, AcceptanceIsHalfOnePlusP) {
  for (std::uint64_t t = 1; t < 255; t += 11) {
    const auto f = std::make_shared<const BooleanFunction>(nth_function(3, t));
    const int d = sign_degree(f);
    const auto r = max_bias(f, d, Norm::L1);
    ASSERT_TRUE(r.witness.has_value());
    const auto alg = parity_sampling_algorithm(*r.witness, d);
    for (Mask x = 0; x < 8; ++x) {
      EXPECT_EQ(alg.accept_probability(x), (1 + r.witness->poly.evaluate(x)) / 2);
    }
    EXPECT_EQ(exact_profile(alg, *f).min_bias, r.beta / 2);
  }
}

TEST(ParitySampling, RejectsWrongNorm) {
  const FourierPolynomial p(2, {{0, Rational(1)}, {1, Rational(-1)}, {2, Rational(-1)}});
  auto f = std::make_shared<const BooleanFunction>(make_function("OR:2"));
  EXPECT_THROW(parity_sampling_algorithm(SignRepresentation{p, f, Norm::L1, 1}, 1), NormMismatch);
  EXPECT_THROW(parity_sampling_algorithm(SignRepresentation{p, f, Norm::Sup, 1}, 1), NormMismatch);
}

TEST(Algorithm, ProbabilitiesMustSumToOne) {
  Branch b;
  b.prob = Rational(1, 2);
  b.accept = {Rational(1)};
  EXPECT_THROW(RandomizedAlgorithm("bad", 2, 0, {b}), SpecError);
}

TEST(MonteCarlo, SeededAndNearExact) {
  const auto alg = or_algorithm(3);
  const Mask x = parse_bits("010");
  const double exact = alg.accept_probability(x).get_d();
  const double a = monte_carlo_acceptance(alg, x, 20000, 5);
  EXPECT_EQ(a, monte_carlo_acceptance(alg, x, 20000, 5));
  // 5 standard deviations of a 20000-sample mean
  EXPECT_NEAR(a, exact, 5 * std::sqrt(0.25 / 20000));
}
