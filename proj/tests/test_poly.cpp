#include <gtest/gtest.h>

#include <random>

#include "ueqc/poly.hpp"

using namespace ueqc;

namespace {

// direct O(4^n) transform used as the oracle for the fast one
FourierPolynomial brute_transform(int n, const std::vector<Rational>& v) {
  FourierPolynomial p(n);
  const Mask N = Mask{1} << n;
  for (Mask S = 0; S < N; ++S) {
    Rational s = 0;
    for (Mask x = 0; x < N; ++x) s += v[x] * character(S, x);
    p.set(S, s / Rational(Integer(N)));
  }
  return p;
}

std::vector<Rational> random_values(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  std::vector<Rational> v(std::size_t{1} << n);
  for (auto& r : v) r = make_rational(num(rng), den(rng));
  return v;
}

}  // namespace

TEST(Transform, MatchesDirectSum) {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 6; ++n) {
    const auto v = random_values(n, rng);
    EXPECT_EQ(from_values(n, v), brute_transform(n, v)) << "n=" << n;
  }
}

TEST(Transform, RoundTripAndParseval) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 7; ++n) {
    const auto v = random_values(n, rng);
    const auto p = from_values(n, v);
    Rational energy_x = 0, energy_s = 0;
    for (Mask x = 0; x < v.size(); ++x) {
      EXPECT_EQ(p.evaluate(x), v[x]);
      energy_x += v[x] * v[x];
    }
    for (const auto& [S, c] : p.terms()) energy_s += c * c;
    EXPECT_EQ(energy_x / Rational(Integer(v.size())), energy_s);
  }
}

TEST(Transform, ParityIsOneCharacter) {
  const auto p = sign_polynomial(make_function("PARITY:4"));
  ASSERT_EQ(p.terms().size(), 1u);
  EXPECT_EQ(p.coeff(full_mask(4)), -1);  // 2 PARITY - 1 = -chi_[n]
  EXPECT_EQ(p.degree(), 4);
}

TEST(Transform, AndOfTwo) {
  // 2 AND(x1,x2) - 1 = (chi_12 - 1 - chi_1 - chi_2) / 2
  const auto p = sign_polynomial(make_function("AND:2"));
  EXPECT_EQ(p.coeff(0), Rational(-1, 2));
  EXPECT_EQ(p.coeff(unit(1)), Rational(-1, 2));
  EXPECT_EQ(p.coeff(unit(2)), Rational(-1, 2));
  EXPECT_EQ(p.coeff(3), Rational(1, 2));
}

TEST(SignRep, BiasAndNormalization) {
  const auto orf = make_function("OR:2");
  const FourierPolynomial p(2, {{0, Rational(1)}, {1, Rational(-1)}, {2, Rational(-1)}});
  ASSERT_TRUE(bias_of(p, orf).has_value());
  EXPECT_EQ(*bias_of(p, orf), 1);
  const auto rep = normalize_l1(p, orf);
  EXPECT_EQ(rep.poly.l1_norm(), 1);
  EXPECT_EQ(rep.bias, Rational(1, 3));
  EXPECT_FALSE(bias_of(p.scaled(-1), orf).has_value());
  EXPECT_THROW(normalize_l1(p.scaled(-1), orf), NotASignRepresentation);
}

TEST(Krawtchouk, MatchesCharacterSums) {
  for (int n = 1; n <= 8; ++n) {
    for (int j = 0; j <= n; ++j) {
      for (int k = 0; k <= n; ++k) {
        const Mask x = full_mask(k);  // any input of weight k
        long s = 0;
        for (Mask S = 0; S < (Mask{1} << n); ++S) {
          if (weight(S) == j) s += character(S, x);
        }
        EXPECT_EQ(krawtchouk(n, j, k), s) << n << " " << j << " " << k;
        // C(n,k) K_j(k) = C(n,j) K_k(j)
        EXPECT_EQ(binomial(n, k) * krawtchouk(n, j, k), binomial(n, j) * krawtchouk(n, k, j));
      }
    }
  }
}

TEST(Symmetrize, DegreeDoesNotGrow) {
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 6; ++n) {
    auto v = random_values(n, rng);
    auto p = from_values(n, v);
    // truncate to degree 2 then symmetrize
    FourierPolynomial low(n);
    for (const auto& [S, c] : p.terms()) {
      if (weight(S) <= 2) low.set(S, c);
    }
    const auto q = symmetrize(low);
    EXPECT_LE(q.degree(), 2);
    const auto avg = weight_averages(low);
    for (int k = 0; k <= n; ++k) EXPECT_EQ(q(Rational(k)), avg[k]);
  }
}

TEST(Json, PolynomialRoundTrip) {
  const FourierPolynomial p(3, {{0, Rational(1, 3)}, {5, Rational(-2, 7)}});
  EXPECT_EQ(polynomial_from_json(to_json(p)), p);
}

TEST(Transform, OrOfTwoTopCoefficientIsNegative) {
  // 2 OR - 1 at 00, 10, 01, 11 is -1, 1, 1, 1; the {1,2} sum is -1 - 1 - 1 + 1
  const auto p = sign_polynomial(make_function("OR:2"));
  EXPECT_EQ(p.coeff(0), Rational(1, 2));
  EXPECT_EQ(p.coeff(1), Rational(-1, 2));
  EXPECT_EQ(p.coeff(2), Rational(-1, 2));
  EXPECT_EQ(p.coeff(3), Rational(-1, 2));
}

TEST(SignRep, ParityNeedsTheNegatedCharacter) {
  // chi_[n] = 1 - 2 PARITY, so +chi represents the complement
  for (int n : {2, 3}) {
    const auto f = make_function("PARITY:" + std::to_string(n));
    const FourierPolynomial plus(n, {{full_mask(n), Rational(1)}});
    EXPECT_FALSE(bias_of(plus, f).has_value());
    EXPECT_THROW(normalize_l1(plus, f), NotASignRepresentation);
    const auto minus = plus.scaled(-1);
    EXPECT_EQ(*bias_of(minus, f), 1);
    EXPECT_EQ(normalize_l1(minus, f).poly, minus);
  }
  EXPECT_FALSE(bias_of(FourierPolynomial(2), make_function("OR:2")).has_value());
}
