#pragma once

// Classical randomized query algorithms with exact success analysis.
// An algorithm is a finite distribution over branches; each branch queries
// a fixed set of positions and then accepts with a probability that depends
// only on the bits it saw.

#include <array>
#include <cstdint>
#include <optional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ueqc/boolfn.hpp"
#include "ueqc/errors.hpp"
#include "ueqc/poly.hpp"
#include "ueqc/rational.hpp"

namespace ueqc {

struct Branch {
  enum class Rule { Table, Parity };

  Rational prob;
  std::vector<int> queries;  // 1-based positions, all distinct
  Rule rule = Rule::Table;
  // Table rule: accept probability indexed by the seen bits (bit t of the
  // index is the value at queries[t]).  Parity rule: accept iff the xor of
  // the seen bits differs from flip.
  std::vector<Rational> accept;
  bool flip = false;

  Rational accept_given(Mask x) const {
    if (rule == Rule::Parity) {
      bool v = flip;
      for (int i : queries) v ^= bit(x, i);
      return v ? Rational(1) : Rational(0);
    }
    std::size_t seen = 0;
    for (std::size_t t = 0; t < queries.size(); ++t) {
      if (bit(x, queries[t])) seen |= std::size_t{1} << t;
    }
    return accept[seen];
  }
};

class RandomizedAlgorithm {
 public:
  RandomizedAlgorithm(std::string name, int n, int budget, std::vector<Branch> branches)
      : name_(std::move(name)), n_(n), budget_(budget), branches_(std::move(branches)) {
    validate();
  }

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  int budget() const { return budget_; }
  const std::vector<Branch>& branches() const { return branches_; }

  Rational accept_probability(Mask x) const {
    Rational s = 0;
    for (const auto& b : branches_) {
      Rational a = b.accept_given(x);
      if (a != 0) s += b.prob * a;
    }
    return s;
  }

  /// True when the acceptance probability depends on |x| only: every
  /// position carries the same aggregated one-query behaviour and no branch
  /// queries more than one position.
  bool is_symmetric() const {
    std::vector<std::array<Rational, 3>> per(static_cast<std::size_t>(n_) + 1);
    for (const auto& b : branches_) {
      if (b.queries.size() > 1) return false;
      if (b.queries.empty()) continue;
      auto& a = per[static_cast<std::size_t>(b.queries[0])];
      a[0] += b.prob;
      a[1] += b.prob * b.accept_given(0);
      a[2] += b.prob * b.accept_given(unit(b.queries[0]));
    }
    for (int i = 2; i <= n_; ++i) {
      if (per[static_cast<std::size_t>(i)] != per[1]) return false;
    }
    return true;
  }

  /// Acceptance probability on inputs of Hamming weight k, valid only for
  /// symmetric algorithms.
  Rational accept_at_weight(int k) const {
    Rational s = 0;
    const Rational frac = make_rational(k, n_);
    for (const auto& b : branches_) {
      if (b.queries.empty()) {
        s += b.prob * b.accept_given(0);
      } else {
        const Rational one = b.accept_given(unit(b.queries[0]));
        const Rational zero = b.accept_given(0);
        s += b.prob * (frac * one + (1 - frac) * zero);
      }
    }
    return s;
  }

 private:
  void validate() const {
    if (n_ < 1 || n_ > kMaxMaskBits) throw SpecError("algorithm arity must be 1..64");
    Rational total = 0;
    for (const auto& b : branches_) {
      if (b.prob < 0 || b.prob > 1) throw SpecError("branch probability outside [0,1]");
      if (static_cast<int>(b.queries.size()) > budget_) {
        throw SpecError("branch exceeds the query budget");
      }
      Mask seen = 0;
      for (int i : b.queries) {
        if (i < 1 || i > n_) throw SpecError("query position out of range");
        if (seen & unit(i)) throw SpecError("repeated query position");
        seen |= unit(i);
      }
      if (b.rule == Branch::Rule::Table) {
        if (b.accept.size() != (std::size_t{1} << b.queries.size())) {
          throw SpecError("post-processing table has wrong size");
        }
        for (const auto& a : b.accept) {
          if (a < 0 || a > 1) throw SpecError("accept probability outside [0,1]");
        }
      }
      total += b.prob;
    }
    if (total != 1) throw SpecError("branch probabilities sum to " + to_string(total));
  }

  std::string name_;
  int n_;
  int budget_;
  std::vector<Branch> branches_;
};

// ---------------------------------------------------------------------------
// Built-in algorithms

namespace detail {

inline Branch query_one(Rational prob, int i, Rational on_zero, Rational on_one) {
  Branch b;
  b.prob = std::move(prob);
  b.queries = {i};
  b.accept = {std::move(on_zero), std::move(on_one)};
  return b;
}

inline Branch constant_branch(Rational prob, Rational accept) {
  Branch b;
  b.prob = std::move(prob);
  b.accept = {std::move(accept)};
  return b;
}

}  // namespace detail

/// eps = 1/(2(2^{n+1}-2)) used by the coin on reading a zero.
inline Rational omb_epsilon(int n) {
  return Rational(Integer(1), 2 * (pow2(static_cast<unsigned long>(n) + 1) - 2));
}

/// Query x_i with probability 2^i/(2^{n+1}-2).  A one at i means the answer
/// is i mod 2; a zero gives a coin slightly biased towards 0 (a fair coin
/// would leave 0^n at exactly 1/2).
inline RandomizedAlgorithm omb_algorithm(int n) {
  if (n < 1 || n > kMaxMaskBits) throw SpecError("OMB algorithm needs 1 <= n <= 64");
  const Integer denom = pow2(static_cast<unsigned long>(n) + 1) - 2;
  const Rational coin = Rational(1, 2) - omb_epsilon(n);
  std::vector<Branch> branches;
  for (int i = 1; i <= n; ++i) {
    Rational p(pow2(static_cast<unsigned long>(i)), denom);
    p.canonicalize();
    branches.push_back(detail::query_one(p, i, coin, Rational(i % 2)));
  }
  return RandomizedAlgorithm("omb:" + std::to_string(n), n, 1, std::move(branches));
}

/// Pick a position uniformly; a one means accept, a zero accepts with
/// probability (n-1)/(2n-1).
inline RandomizedAlgorithm or_algorithm(int n) {
  if (n < 1 || n > kMaxMaskBits) throw SpecError("OR algorithm needs 1 <= n <= 64");
  const Rational on_zero = make_rational(n - 1, 2 * n - 1);
  std::vector<Branch> branches;
  for (int i = 1; i <= n; ++i) {
    branches.push_back(detail::query_one(make_rational(1, n), i, on_zero, Rational(1)));
  }
  return RandomizedAlgorithm("or:" + std::to_string(n), n, 1, std::move(branches));
}

/// q = (1/2 - r)/(1 - r) with r = (k + 1/2)/n.
inline Rational threshold_q(int n, int k) {
  const Rational r = make_rational(2 * k + 1, 2 * n);
  return (Rational(1, 2) - r) / (1 - r);
}

/// The guaranteed bias (1 - q)/(2n) of threshold_algorithm(n, k) after the
/// automatic flip.
inline Rational threshold_bias(int n, int k) {
  if (2 * k + 1 > n) k = n - 1 - k;
  return (1 - threshold_q(n, k)) / (2 * n);
}

/// TH:n:k accepts when |x| > k.  For 2k+1 <= n: output 1 with probability
/// q, else output a uniformly random bit of x.  Larger k run the same
/// algorithm for k' = n-1-k on the complemented input and negate.
inline RandomizedAlgorithm threshold_algorithm(int n, int k) {
  if (n < 1 || n > kMaxMaskBits) throw SpecError("threshold algorithm needs 1 <= n <= 64");
  if (k < 0 || k > n - 1) throw SpecError("threshold k must satisfy 0 <= k <= n-1");
  const bool flipped = 2 * k + 1 > n;
  const int kk = flipped ? n - 1 - k : k;
  const Rational q = threshold_q(n, kk);
  std::vector<Branch> branches;
  if (q != 0) branches.push_back(detail::constant_branch(q, Rational(flipped ? 0 : 1)));
  const Rational each = (1 - q) / n;
  // complement then negate leaves "accept iff x_i = 1" unchanged
  for (int i = 1; i <= n; ++i) {
    branches.push_back(detail::query_one(each, i, Rational(0), Rational(1)));
  }
  return RandomizedAlgorithm("threshold:" + std::to_string(n) + ":" + std::to_string(k), n,
                             1, std::move(branches));
}

/// Samples S with probability |p_hat(S)| and outputs x_S xor delta(p_hat(S)),
/// read as accept iff (-1)^{x_S} has the sign of p_hat(S).  Leftover l1 mass
/// goes to a fair coin, so accept(x) = (1 + p(x))/2.
inline RandomizedAlgorithm parity_sampling_algorithm(const SignRepresentation& rep, int d) {
  if (rep.norm != Norm::L1) throw NormMismatch("parity sampling needs an L1 representation");
  const FourierPolynomial& p = rep.poly;
  const Rational l1 = p.l1_norm();
  if (l1 > 1) throw NormMismatch("coefficient mass exceeds 1: " + to_string(l1));
  if (p.degree() > d) throw SpecError("representation degree exceeds the query budget");
  const int n = p.n();
  std::vector<Branch> branches;
  for (const auto& [S, c] : p.terms()) {
    Branch b;
    b.prob = abs(c);
    for (int i = 1; i <= n; ++i) {
      if (bit(S, i)) b.queries.push_back(i);
    }
    b.rule = Branch::Rule::Parity;
    // accept iff (-1)^{x_S} * sign(c) = +1, i.e. x_S != [c > 0]
    b.flip = c > 0;
    branches.push_back(std::move(b));
  }
  if (l1 < 1) branches.push_back(detail::constant_branch(1 - l1, Rational(1, 2)));
  std::string name = "parity-sampling";
  if (rep.target) name += ":" + rep.target->spec();
  return RandomizedAlgorithm(name, n, d, std::move(branches));
}

// ---------------------------------------------------------------------------
// Exact success profiles

struct BiasProfile {
  std::string algorithm;
  int n = 0;
  std::vector<std::pair<std::string, Rational>> per_input;  // bits -> success
  Rational min_bias;

  bool valid() const { return min_bias > 0; }
};

inline constexpr int kMaxProfileBits = 16;

/// Success probability per domain point by enumerating the algorithm's
/// branches exactly.
inline BiasProfile exact_profile(const RandomizedAlgorithm& alg, const BooleanFunction& f) {
  if (alg.n() != f.n()) throw SpecError("algorithm and function arity differ");
  if (f.n() > kMaxProfileBits && !(f.storage() == BooleanFunction::Storage::Points &&
                                   f.domain_size() <= (std::uint64_t{1} << kMaxProfileBits))) {
    throw SizeLimit("exact profile needs n <= 16");
  }
  BiasProfile out;
  out.algorithm = alg.name();
  out.n = f.n();
  std::optional<Rational> worst;
  f.for_each([&](Mask x, std::uint8_t v) {
    Rational acc = alg.accept_probability(x);
    Rational success = v ? acc : 1 - acc;
    Rational b = success - Rational(1, 2);
    if (!worst || b < *worst) worst = b;
    out.per_input.emplace_back(bits_to_string(x, f.n()), std::move(success));
  });
  out.min_bias = worst ? *worst : Rational(0);
  return out;
}

/// Same profile keyed by Hamming weight ("w=<k>") for a symmetric algorithm
/// against a symmetric function; scales to n = 64.
inline BiasProfile weight_profile(const RandomizedAlgorithm& alg, const BooleanFunction& f) {
  if (alg.n() != f.n()) throw SpecError("algorithm and function arity differ");
  if (!alg.is_symmetric()) throw Unsupported("weight profile needs a symmetric algorithm");
  auto levels = f.weight_profile();
  if (!levels) throw Unsupported("weight profile needs a symmetric total function");
  BiasProfile out;
  out.algorithm = alg.name();
  out.n = f.n();
  std::optional<Rational> worst;
  for (int k = 0; k <= f.n(); ++k) {
    Rational acc = alg.accept_at_weight(k);
    Rational success = (*levels)[static_cast<std::size_t>(k)] ? acc : 1 - acc;
    Rational b = success - Rational(1, 2);
    if (!worst || b < *worst) worst = b;
    out.per_input.emplace_back("w=" + std::to_string(k), std::move(success));
  }
  out.min_bias = *worst;
  return out;
}

inline nlohmann::json to_json(const BiasProfile& p) {
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [x, s] : p.per_input) per[x] = to_string(s);
  return {{"algorithm", p.algorithm},
          {"n", p.n},
          {"per_input", per},
          {"min_bias", to_string(p.min_bias)}};
}

/// Demonstration only: empirical acceptance frequency from seeded runs.
inline double monte_carlo_acceptance(const RandomizedAlgorithm& alg, Mask x, int trials,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> cumulative;
  double acc = 0;
  for (const auto& b : alg.branches()) {
    acc += b.prob.get_d();
    cumulative.push_back(acc);
  }
  std::uniform_real_distribution<double> unif(0.0, acc);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    const double u = unif(rng);
    std::size_t k = 0;
    while (k + 1 < cumulative.size() && u >= cumulative[k]) ++k;
    if (coin(rng) < alg.branches()[k].accept_given(x).get_d()) ++hits;
  }
  return trials > 0 ? static_cast<double>(hits) / trials : 0.0;
}

}  // namespace ueqc
