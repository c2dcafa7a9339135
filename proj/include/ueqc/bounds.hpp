#pragma once

// Analytic lower bounds and a brute-force Yao explorer for Fourier Sampling.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "ueqc/boolfn.hpp"
#include "ueqc/errors.hpp"
#include "ueqc/rational.hpp"

namespace ueqc {

/// d >= sqrt(c n / (c + b2 - b1)) for a degree-d polynomial bounded in
/// [b1, b2] on 0..n whose derivative reaches c somewhere in [0, n].
inline double ez_rc_degree_bound(double c, double b1, double b2, int n) {
  if (!(c > 0)) throw SpecError("derivative bound c must be positive");
  if (b2 < b1) throw SpecError("need b1 <= b2");
  if (n < 0) throw SpecError("n must be nonnegative");
  return std::sqrt(c * n / (c + b2 - b1));
}

struct WuqLowerBound {
  double value = 0;
  double beta = 0;  // minimizer
};

/// min over beta in (0, 1/2] of sqrt(n beta / (4 beta + 2)) + log2(1/beta),
/// by golden-section search on ln(beta).
inline WuqLowerBound symmetric_wuq_lower(int n) {
  if (n < 2) throw SpecError("symmetric WUQ bound needs n >= 2");
  const double nn = n;
  auto g = [nn](double t) {
    const double b = std::exp(t);
    return std::sqrt(nn * b / (4 * b + 2)) - t / std::log(2.0);
  };
  double lo = std::log(1e-15), hi = std::log(0.5);
  const double phi = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = g(x1), f2 = g(x2);
  while (hi - lo > 1e-9) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = g(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = g(x2);
    }
  }
  const double t = (lo + hi) / 2;
  WuqLowerBound best{g(t), std::exp(t)};
  const double edge = g(std::log(0.5));
  if (edge < best.value) best = {edge, 0.5};
  return best;
}

/// Two-sided tail 2 exp(-a^2 / (2N)) for a sum of N independent +-1 terms.
inline double chernoff_bound(int N, double a) {
  if (N < 1) throw SpecError("Chernoff bound needs N >= 1");
  if (a < 0) throw SpecError("Chernoff bound needs a >= 0");
  return 2 * std::exp(-a * a / (2.0 * N));
}

/// Complete depth-q decision tree.  labels holds the 2^q - 1 internal
/// positions in heap order (children of node v are 2v+1 on 0 and 2v+2 on 1);
/// leaves are indexed by the answers read along the path.
struct DeterministicTree {
  int q = 0;
  std::vector<int> labels;
  std::vector<std::uint8_t> leaves;

  std::size_t leaf_of(const std::function<int(int)>& read) const {
    std::size_t v = 0;
    std::size_t leaf = 0;
    for (int level = 0; level < q; ++level) {
      const int b = read(labels[v]);
      leaf = (leaf << 1) | static_cast<std::size_t>(b);
      v = 2 * v + 1 + static_cast<std::size_t>(b);
    }
    return leaf;
  }

  std::uint8_t evaluate(const std::function<int(int)>& read) const {
    return leaves[leaf_of(read)];
  }
};

inline constexpr int kMaxYaoM = 2;
inline constexpr int kMaxYaoQ = 2;

namespace detail {

/// Calls fn for every labeling of the internal nodes by positions 1..npos.
inline void for_each_labeling(int q, int npos, const std::function<void(const std::vector<int>&)>& fn) {
  const std::size_t internal = (std::size_t{1} << q) - 1;
  std::vector<int> labels(internal, 1);
  while (true) {
    fn(labels);
    std::size_t k = 0;
    while (k < internal && labels[k] == npos) labels[k++] = 1;
    if (k == internal) return;
    ++labels[k];
  }
}

}  // namespace detail

/// Max over depth-q trees reading F^r (g known) of P_r[correct] - 1/2, with
/// r uniform over {0,1}^m.  Leaves follow the majority of g_r among the
/// strings r reaching them, which is optimal for a fixed labeling.
inline Rational yao_fs_max_bias(int m, int q, const std::vector<std::uint8_t>& g) {
  if (m < 1 || m > kMaxYaoM || q < 0 || q > kMaxYaoQ) {
    throw SizeLimit("Yao explorer needs 1 <= m <= 2 and 0 <= q <= 2");
  }
  const std::size_t count = std::size_t{1} << m;
  if (g.size() != count) throw SpecError("g must have 2^m bits");
  const int npos = static_cast<int>(count);
  std::size_t best = 0;
  detail::for_each_labeling(q, npos, [&](const std::vector<int>& labels) {
    DeterministicTree t{q, labels, {}};
    std::vector<std::size_t> ones(std::size_t{1} << q, 0), zeros(std::size_t{1} << q, 0);
    for (std::size_t ri = 0; ri < count; ++ri) {
      const Mask r = from_lex_index(ri, m);
      // position p holds F^r at address lex(p-1)
      const std::size_t leaf = t.leaf_of([&](int p) {
        return inner_product_mod2(from_lex_index(static_cast<std::uint64_t>(p - 1), m), r);
      });
      (g[ri] ? ones : zeros)[leaf] += 1;
    }
    std::size_t hits = 0;
    for (std::size_t l = 0; l < ones.size(); ++l) hits += std::max(ones[l], zeros[l]);
    best = std::max(best, hits);
  });
  Rational out(Integer(static_cast<unsigned long>(best)), Integer(static_cast<unsigned long>(count)));
  out.canonicalize();
  return out - Rational(1, 2);
}

/// Checks that each further query splits the set of r consistent with the
/// answers so far exactly in half or not at all, over all query sequences
/// of length <= q.
inline bool fs_queries_split_evenly(int m, int q) {
  if (m < 1 || m > kMaxYaoM + 1 || q < 0 || q > kMaxYaoQ + 1) {
    throw SizeLimit("split check needs m <= 3 and q <= 3");
  }
  const std::size_t count = std::size_t{1} << m;
  std::function<bool(const std::vector<Mask>&, int)> rec = [&](const std::vector<Mask>& alive,
                                                                int left) {
    if (left == 0 || alive.size() <= 1) return true;
    for (std::size_t ai = 0; ai < count; ++ai) {
      const Mask a = from_lex_index(ai, m);
      std::vector<Mask> part[2];
      for (Mask r : alive) part[inner_product_mod2(a, r)].push_back(r);
      if (!part[0].empty() && !part[1].empty() && part[0].size() != part[1].size()) return false;
      for (auto& half : part) {
        if (!half.empty() && half.size() < alive.size() && !rec(half, left - 1)) return false;
      }
    }
    return true;
  };
  std::vector<Mask> all;
  for (std::size_t ri = 0; ri < count; ++ri) all.push_back(from_lex_index(ri, m));
  return rec(all, q);
}

}  // namespace ueqc
