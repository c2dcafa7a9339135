#include <gtest/gtest.h>

#include <cmath>

#include "ueqc/bounds.hpp"

using namespace ueqc;

namespace {

// Brute force over every labeling and every leaf assignment.
Rational yao_oracle(int m, int q, const std::vector<std::uint8_t>& g) {
  const int count = 1 << m;
  const int internal = (1 << q) - 1;
  const int leaves = 1 << q;
  long best = 0;
  std::vector<int> labels(internal, 1);
  while (true) {
    for (int assign = 0; assign < (1 << leaves); ++assign) {
      long hits = 0;
      for (int ri = 0; ri < count; ++ri) {
        const Mask r = from_lex_index(ri, m);
        int v = 0, leaf = 0;
        for (int level = 0; level < q; ++level) {
          const Mask addr = from_lex_index(labels[v] - 1, m);
          const int b = inner_product_mod2(addr, r);
          leaf = 2 * leaf + b;
          v = 2 * v + 1 + b;
        }
        hits += ((assign >> leaf) & 1) == g[ri];
      }
      best = std::max(best, hits);
    }
    int k = 0;
    while (k < internal && labels[k] == count) labels[k++] = 1;
    if (k == internal) break;
    ++labels[k];
  }
  return make_rational(best, count) - Rational(1, 2);
}

double wuq_objective(int n, double b) { return std::sqrt(n * b / (4 * b + 2)) + std::log2(1 / b); }

}  // namespace

TEST(Bounds, EhlichZellerRivlinCheney) {
  EXPECT_DOUBLE_EQ(ez_rc_degree_bound(1, 0, 1, 8), 2.0);
  EXPECT_THROW(ez_rc_degree_bound(0, 0, 1, 8), SpecError);
  EXPECT_THROW(ez_rc_degree_bound(1, 1, 0, 8), SpecError);
}

TEST(Bounds, Chernoff) {
  EXPECT_NEAR(chernoff_bound(8, 4), 2 / std::exp(1.0), 1e-15);
  EXPECT_THROW(chernoff_bound(0, 1), SpecError);
}

TEST(Bounds, SymmetricWuqMatchesGridSearch) {
  for (int n : {2, 10, 100, 1000, 65536}) {
    double grid = 1e300;
    for (int i = 0; i <= 200000; ++i) {
      const double b = std::exp(std::log(1e-15) + (std::log(0.5) - std::log(1e-15)) * i / 200000.0);
      grid = std::min(grid, wuq_objective(n, b));
    }
    const auto got = symmetric_wuq_lower(n);
    EXPECT_NEAR(got.value, grid, 1e-6 * std::max(1.0, grid)) << n;
    EXPECT_NEAR(got.value, wuq_objective(n, got.beta), 1e-9);
  }
}

TEST(Bounds, SymmetricWuqGrowsLikeHalfLog) {
  for (int e : {4, 8, 12, 16}) {
    const int n = 1 << e;
    EXPECT_GE(symmetric_wuq_lower(n).value, e / 2.0 - 3) << "n=2^" << e;
  }
}

TEST(Yao, ExplorerMatchesBruteForce) {
  for (int m = 1; m <= 2; ++m) {
    const int count = 1 << m;
    for (int gi = 0; gi < (1 << count); ++gi) {
      std::vector<std::uint8_t> g(count);
      for (int i = 0; i < count; ++i) g[i] = (gi >> i) & 1;
      Rational prev = -1;
      for (int q = 0; q <= 2; ++q) {
        const Rational got = yao_fs_max_bias(m, q, g);
        EXPECT_EQ(got, yao_oracle(m, q, g)) << "m=" << m << " q=" << q << " g=" << gi;
        EXPECT_GE(got, prev);
        prev = got;
      }
    }
  }
}

TEST(Yao, OneQueryDeterminesOneBit) {
  // m = 1: F^r at address 1 is r itself
  EXPECT_EQ(yao_fs_max_bias(1, 1, {0, 1}), Rational(1, 2));
  EXPECT_EQ(yao_fs_max_bias(1, 0, {0, 1}), 0);
  EXPECT_THROW(yao_fs_max_bias(3, 1, std::vector<std::uint8_t>(8)), SizeLimit);
}

TEST(Yao, QueriesSplitEvenly) {
  for (int m = 1; m <= 3; ++m) {
    for (int q = 0; q <= 3; ++q) EXPECT_TRUE(fs_queries_split_evenly(m, q));
  }
}

TEST(DecisionTree, HeapOrderWalk) {
  const DeterministicTree t{2, {1, 2, 3}, {0, 1, 1, 0}};
  const std::vector<int> x{0, 1, 1, 0};  // positions 1..3 at x[1..3]
  // x_1 = 1 goes right to node 2, labeled 3; x_3 = 0 ends at leaf 10
  EXPECT_EQ(t.leaf_of([&](int p) { return x[p]; }), 2u);
  EXPECT_EQ(t.evaluate([&](int p) { return x[p]; }), 1);
  const std::vector<int> y{0, 0, 1, 1};  // x_1 = 0, then node 1 reads x_2 = 1
  EXPECT_EQ(t.leaf_of([&](int p) { return y[p]; }), 1u);
}
