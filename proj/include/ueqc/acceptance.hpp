#pragma once

// The ten end-to-end acceptance checks, shared by `ueqc verify` and the
// acceptance test binary.  Every tolerance is pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ueqc/bias.hpp"
#include "ueqc/boolfn.hpp"
#include "ueqc/bounds.hpp"
#include "ueqc/crand.hpp"
#include "ueqc/poly.hpp"
#include "ueqc/qsim.hpp"

namespace ueqc::acceptance {

inline constexpr double kSimTolerance = 1e-9;     // simulated vs exact acceptance
inline constexpr double kExactAmplitude = 1e-12;  // wrong-answer amplitude
inline constexpr int kThresholdCHi = 2;           // wuc_hi(MAJ) <= log2 n + C_hi
inline constexpr int kThresholdCLo = 0;           // wuq_lo(MAJ) >= log2 n / 2 - C_lo
inline constexpr std::uint64_t kRandomSeed = 20261015;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

namespace detail {

/// Counts checks and keeps the first few failure messages.
class Checker {
 public:
  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (messages_.size() < 3) messages_.push_back(what());
  }
  void note(std::string s) { notes_.push_back(std::move(s)); }
  bool ok() const { return failures_ == 0; }

  std::string summary() const {
    std::ostringstream out;
    out << checks_ << " checks";
    if (failures_) out << ", " << failures_ << " failed";
    for (const auto& n : notes_) out << "; " << n;
    for (const auto& m : messages_) out << "; " << m;
    return out.str();
  }

 private:
  long checks_ = 0;
  long failures_ = 0;
  std::vector<std::string> messages_;
  std::vector<std::string> notes_;
};

inline std::shared_ptr<const BooleanFunction> shared(BooleanFunction f) {
  return std::make_shared<const BooleanFunction>(std::move(f));
}

inline int half_up(int k) { return (k + 1) / 2; }

inline double exact_accept(const FourierPolynomial& p, Mask x) {
  return Rational((1 + p.evaluate(x)) / 2).get_d();
}

inline bool same_cost(const WeakCost& a, int queries) {
  const WeakCost b{queries, 1};
  return !(a < b) && !(b < a);
}

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace detail

// 1. sdeg = uc = 2 uq - (sdeg mod 2) on all 256 functions of 3 bits, with the
// quantum sampler realising (1 + p)/2 at the predicted query count.
inline CriterionResult criterion_sign_degree() {
  detail::Checker ck;
  for (std::uint64_t t = 0; t < 256; ++t) {
    auto f = detail::shared(nth_function(3, t));
    const auto rep = complexity_report(f, {BiasPath::General, std::nullopt});
    const int s = rep.sdeg;
    ck.expect(rep.uc == s && rep.uq == detail::half_up(s),
              [&] { return f->spec() + ": uq/uc mismatch"; });
    if (s > 0) {
      for (Norm norm : {Norm::Sup, Norm::L1}) {
        const BiasResult below = max_bias(f, s - 1, norm, BiasPath::General);
        const BiasProgram prog{f, s - 1, norm, false};
        ck.expect(below.beta == 0 && verify_bias_result(prog, below),
                  [&] { return f->spec() + ": degree sdeg-1 not certified zero"; });
      }
    }
    const BiasResult w = max_bias(f, s, Norm::L1, BiasPath::General);
    ck.expect(w.witness.has_value(), [&] { return f->spec() + ": no L1 witness"; });
    if (!w.witness) continue;
    const auto sampler = parity_sampling_algorithm(*w.witness, s);
    ck.expect(exact_profile(sampler, *f).min_bias > 0,
              [&] { return f->spec() + ": classical sampler has no bias"; });
    for (Mask x = 0; x < 8; ++x) {
      const QueryRun run = sign_rep_sampler(*w.witness, OracleSpec::from_mask(x, 3));
      const double want = detail::exact_accept(w.witness->poly, x);
      const double success = (*f)(x) ? run.acceptance_probability : 1 - run.acceptance_probability;
      ck.expect(std::abs(run.acceptance_probability - want) <= kSimTolerance && success > 0.5 &&
                    run.queries_used == detail::half_up(s),
                [&] { return f->spec() + " x=" + bits_to_string(x, 3) + ": simulation off"; });
    }
  }
  return {1, "sign degree sets both unbounded costs (n=3, all 256 functions)", ck.ok(),
          ck.summary()};
}

// 2. PARITY:n needs degree n; PARITY:4 brackets collapse to 2 and 4.
inline CriterionResult criterion_parity() {
  detail::Checker ck;
  for (int n = 1; n <= 8; ++n) {
    auto f = detail::shared(make_function("PARITY:" + std::to_string(n)));
    ck.expect(sign_degree(f) == n, [&] { return "sdeg(PARITY:" + std::to_string(n) + ") != n"; });
    if (n <= 6) {
      ck.expect(sign_degree(f, BiasPath::General) == n,
                [&] { return "general LP disagrees at n=" + std::to_string(n); });
    }
  }
  const auto rep = complexity_report(make_function("PARITY:4"), {BiasPath::General, std::nullopt});
  ck.expect(detail::same_cost(rep.wuq_lo, 2) && detail::same_cost(rep.wuq_hi, 2),
            [] { return std::string("PARITY:4 wuq bracket is not exactly 2"); });
  ck.expect(detail::same_cost(rep.wuc_lo, 4) && detail::same_cost(rep.wuc_hi, 4),
            [] { return std::string("PARITY:4 wuc bracket is not exactly 4"); });
  return {2, "parity has full sign degree; PARITY:4 brackets are exact", ck.ok(), ck.summary()};
}

// 3. beta_L1(d)^2 * N(d) >= beta_SUP(d)^2, exact.
inline CriterionResult criterion_l1_vs_sup() {
  detail::Checker ck;
  auto check = [&](const std::shared_ptr<const BooleanFunction>& f) {
    const int n = f->n();
    for (int d = 0; d <= n; ++d) {
      const Rational l1 = max_bias(f, d, Norm::L1, BiasPath::General).beta;
      const Rational sup = max_bias(f, d, Norm::Sup, BiasPath::General).beta;
      const Rational N(low_degree_count(n, d));
      ck.expect(l1 * l1 * N >= sup * sup, [&] {
        return f->spec() + " d=" + std::to_string(d) + ": " + to_string(l1) + " < " +
               to_string(sup) + "/sqrt(" + to_string(N) + ")";
      });
    }
  };
  for (std::uint64_t t = 0; t < 256; ++t) check(detail::shared(nth_function(3, t)));
  std::mt19937_64 rng(kRandomSeed);
  std::uniform_int_distribution<std::uint64_t> pick(0, 0xFFFF);
  for (int i = 0; i < 100; ++i) check(detail::shared(nth_function(4, pick(rng))));
  return {3, "l1 optimum is at least the sup optimum over sqrt N", ck.ok(), ck.summary()};
}

// 4. Parity, BV and FS circuits succeed with certainty at their query counts.
inline CriterionResult criterion_exactness() {
  detail::Checker ck;
  auto check_parity = [&](Mask S, int n, Mask x) {
    const QueryRun run = parity_query_algorithm(S, OracleSpec::from_mask(x, n));
    const int want = weight(S & x) & 1;
    const double wrong = output_probability(run, static_cast<std::size_t>(1 - want));
    ck.expect(std::sqrt(wrong) < kExactAmplitude &&
                  run.queries_used == detail::half_up(weight(S)),
              [&] { return "parity S=" + bits_to_string(S, n) + " x=" + bits_to_string(x, n); });
  };
  for (int n = 1; n <= 12; ++n) {
    for (Mask x = 0; x < (Mask{1} << n); ++x) check_parity(full_mask(n), n, x);
  }
  for (int n = 1; n <= 5; ++n) {
    for (Mask S = 1; S < (Mask{1} << n); ++S) {
      for (Mask x = 0; x < (Mask{1} << n); ++x) {
        check_parity(S, n, x);
        if (n <= 3) {
          const auto ideal = parity_query_algorithm(S, OracleSpec::from_mask(x, n), OracleMode::Ideal);
          const auto real = parity_query_algorithm(S, OracleSpec::from_mask(x, n));
          ck.expect(std::abs(ideal.acceptance_probability - real.acceptance_probability) < 1e-12 &&
                        ideal.queries_used == real.queries_used,
                    [] { return std::string("ideal and concrete parity modes differ"); });
        }
      }
    }
  }
  for (int m = 1; m <= 4; ++m) {
    const std::size_t count = std::size_t{1} << m;
    for (std::size_t ri = 0; ri < count; ++ri) {
      const Mask r = from_lex_index(ri, m);
      OracleSpec o;
      o.bits.push_back(0);
      for (std::size_t a = 0; a < count; ++a) {
        o.bits.push_back(static_cast<std::uint8_t>(inner_product_mod2(from_lex_index(a, m), r)));
      }
      const BVResult res = bernstein_vazirani(o, m);
      ck.expect(res.r == r && res.run.queries_used == 1 && 1 - res.success_probability < 1e-12,
                [&] { return "BV m=" + std::to_string(m) + " r=" + bits_to_string(r, m); });
    }
  }
  double worst_cost = 0;
  for (int m = 1; m <= 3; ++m) {
    const std::size_t count = std::size_t{1} << m;
    for (std::size_t ri = 0; ri < count; ++ri) {
      for (std::uint64_t gi = 0; gi < (std::uint64_t{1} << count); ++gi) {
        std::vector<std::uint8_t> g(count);
        for (std::size_t s = 0; s < count; ++s) g[s] = (gi >> s) & 1U;
        const FSInstance inst = make_fs_instance(m, from_lex_index(ri, m), g);
        const FSResult res = fs_algorithm(inst);
        const double acc = res.run.acceptance_probability;
        const double bias = (inst.answer() ? acc : 1 - acc) - 0.5;
        const double cost = res.run.queries_used + std::log2(1 / (2 * bias));
        worst_cost = std::max(worst_cost, cost);
        ck.expect(res.output == inst.answer() && res.run.queries_used == 2 &&
                      std::abs(bias - 0.5) < 1e-12,
                  [&] { return "FS m=" + std::to_string(m) + " failed"; });
      }
    }
  }
  ck.expect(std::abs(worst_cost - 2) < kSimTolerance,
            [&] { return "FS weakly unbounded cost " + detail::fmt(worst_cost); });
  ck.note("FS weakly unbounded cost " + detail::fmt(worst_cost));
  return {4, "parity, Bernstein-Vazirani and Fourier Sampling circuits are exact", ck.ok(),
          ck.summary()};
}

// 5. One-query classical algorithms: exact profiles.
inline CriterionResult criterion_classical() {
  detail::Checker ck;
  for (int n = 1; n <= 32; ++n) {
    const auto alg = or_algorithm(n);
    const auto f = make_function("OR:" + std::to_string(n));
    const BiasProfile prof = n <= 16 ? exact_profile(alg, f) : weight_profile(alg, f);
    ck.expect(prof.min_bias == make_rational(1, 4 * n - 2),
              [&] { return "OR n=" + std::to_string(n) + " bias " + to_string(prof.min_bias); });
    for (int k = 0; 2 * k + 2 <= n; ++k) {
      const auto th = threshold_algorithm(n, k);
      const auto g = make_function("TH:" + std::to_string(n) + ":" + std::to_string(k));
      const BiasProfile p = weight_profile(th, g);
      const Rational want = (1 - threshold_q(n, k)) / (2 * n);
      ck.expect(p.min_bias == want && want > 0 && want >= make_rational(1, 4 * n),
                [&] { return "TH n=" + std::to_string(n) + " k=" + std::to_string(k); });
      if (n <= 10) {
        ck.expect(exact_profile(th, g).min_bias == want,
                  [&] { return "TH enumeration disagrees at n=" + std::to_string(n); });
      }
    }
  }
  for (int n = 1; n <= 16; ++n) {
    const BiasProfile p = exact_profile(omb_algorithm(n), make_function("OMB:" + std::to_string(n)));
    ck.expect(p.min_bias > 0, [&] { return "OMB n=" + std::to_string(n) + " not unbounded"; });
  }
  return {5, "one-query classical algorithms for OR, threshold and OMB", ck.ok(), ck.summary()};
}

// 6. Threshold functions: UC = UQ = 1 and a Theta(log n) bracket for MAJ.
inline CriterionResult criterion_threshold() {
  detail::Checker ck;
  for (int n : {8, 16, 32, 64}) {
    for (int k = 0; k < n; ++k) {
      auto f = detail::shared(make_function("TH:" + std::to_string(n) + ":" + std::to_string(k)));
      const int s = sign_degree(f);
      ck.expect(s == 1 && detail::half_up(s) == 1, [&] { return f->spec() + ": uc != 1"; });
    }
    const auto rep = complexity_report(make_function("MAJ:" + std::to_string(n)));
    const double lg = std::log2(static_cast<double>(n));
    ck.expect(rep.uc == 1 && rep.uq == 1, [&] { return "MAJ uc/uq"; });
    ck.expect(rep.wuc_hi.value() <= lg + kThresholdCHi,
              [&] { return "wuc_hi(MAJ:" + std::to_string(n) + ") = " + detail::fmt(rep.wuc_hi.value()); });
    ck.expect(rep.wuq_lo.value() >= lg / 2 - kThresholdCLo,
              [&] { return "wuq_lo(MAJ:" + std::to_string(n) + ") = " + detail::fmt(rep.wuq_lo.value()); });
    ck.note("n=" + std::to_string(n) + " wuc_hi-log2n=" + detail::fmt(rep.wuc_hi.value() - lg) +
            " wuq_lo-log2n/2=" + detail::fmt(rep.wuq_lo.value() - lg / 2));
  }
  return {6, "threshold functions cost one query; MAJ bracket is Theta(log n)", ck.ok(),
          ck.summary()};
}

// 7. Acceptance probabilities have degree at most twice the queries.
inline CriterionResult criterion_degree() {
  detail::Checker ck;
  auto check = [&](const std::function<double(Mask)>& acc, int n, int queries,
                   const std::string& what) {
    const FourierPolynomial p = acceptance_degree_check(acc, n);
    ck.expect(p.degree() <= 2 * queries, [&] { return what + ": degree " + std::to_string(p.degree()); });
    return p;
  };
  for (int n = 1; n <= 4; ++n) {
    for (Mask S = 1; S < (Mask{1} << n); ++S) {
      const int q = parity_query_algorithm(S, OracleSpec::from_mask(0, n)).queries_used;
      const auto p = check([&](Mask x) {
        return parity_query_algorithm(S, OracleSpec::from_mask(x, n)).acceptance_probability;
      }, n, q, "parity");
      const FourierPolynomial want(n, {{0, Rational(1, 2)}, {S, Rational(-1, 2)}});
      ck.expect(p == want, [] { return std::string("parity acceptance is not x_S"); });
    }
  }
  // quantum sampler on witnesses, including the zero polynomial
  std::vector<std::shared_ptr<const BooleanFunction>> targets;
  for (std::uint64_t t = 0; t < 16; ++t) targets.push_back(detail::shared(nth_function(2, t)));
  for (const char* s : {"OR:3", "MAJ:3", "PARITY:3", "OMB:3", "OR:4", "MAJ:4", "OMB:4", "TH:4:2"}) {
    targets.push_back(detail::shared(make_function(s)));
  }
  for (const auto& f : targets) {
    const int n = f->n();
    const BiasResult w = max_bias(f, sign_degree(f), Norm::L1);
    const int q = detail::half_up(w.witness->poly.degree());
    const auto p = check([&](Mask x) {
      return sign_rep_sampler(*w.witness, OracleSpec::from_mask(x, n)).acceptance_probability;
    }, n, q, f->spec());
    FourierPolynomial want = w.witness->poly.scaled(Rational(1, 2));
    want.add(0, Rational(1, 2));
    ck.expect(p == want, [&] { return f->spec() + ": acceptance is not (1+p)/2"; });
  }
  {
    const SignRepresentation zero{FourierPolynomial(3), nullptr, Norm::L1, Rational(0)};
    check([&](Mask x) {
      return sign_rep_sampler(zero, OracleSpec::from_mask(x, 3)).acceptance_probability;
    }, 3, 0, "zero polynomial");
  }
  // BV address probabilities and the FS output, promise dropped
  for (int m = 1; m <= 2; ++m) {
    const int n = 1 << m;
    for (int a = 0; a < n; ++a) {
      check([&](Mask x) {
        return bernstein_vazirani(OracleSpec::from_mask(x, n), m, false)
            .address_distribution[static_cast<std::size_t>(a)];
      }, n, 1, "BV");
    }
  }
  check([](Mask x) { return fs_algorithm(x, 1, false).run.acceptance_probability; }, 4, 2, "FS");
  // classical algorithms: exact degree at most the query count
  for (int n = 1; n <= 4; ++n) {
    std::vector<RandomizedAlgorithm> algs{or_algorithm(n), omb_algorithm(n)};
    for (int k = 0; k < n; ++k) algs.push_back(threshold_algorithm(n, k));
    for (const auto& alg : algs) {
      std::vector<Rational> v(std::size_t{1} << n);
      for (Mask x = 0; x < v.size(); ++x) v[x] = alg.accept_probability(x);
      const int deg = from_values(n, v).degree();
      ck.expect(deg <= alg.budget(), [&] { return alg.name() + ": degree above budget"; });
    }
  }
  return {7, "acceptance degree is at most twice the query count", ck.ok(), ck.summary()};
}

// 8. Average sensitivity of MAJ grows like sqrt n, its cost like log n.
inline CriterionResult criterion_sensitivity() {
  detail::Checker ck;
  const auto maj4 = make_function("MAJ:4");
  long flips = 0;
  for (Mask x = 0; x < 16; ++x) {
    for (int i = 1; i <= 4; ++i) flips += maj4(x) != maj4(x ^ unit(i));
  }
  const Rational brute = make_rational(flips, 16);
  ck.expect(brute == Rational(3, 2) && average_sensitivity(maj4) == brute,
            [&] { return "as(MAJ:4) = " + to_string(brute); });
  for (int n = 2; n <= 20; n += 2) {
    const double as = average_sensitivity(make_function("MAJ:" + std::to_string(n))).get_d();
    ck.expect(as >= std::sqrt(n) / (2 * std::sqrt(std::numbers::pi)),
              [&] { return "as(MAJ:" + std::to_string(n) + ") below sqrt(n)/(2 sqrt(pi))"; });
  }
  std::map<int, double> ratio;
  for (int n : {16, 64}) {
    const auto f = make_function("MAJ:" + std::to_string(n));
    const double as = average_sensitivity(f).get_d();
    const double cost = complexity_report(f).wuc_hi.value();
    const double lg = std::log2(static_cast<double>(n));
    ck.expect(cost <= lg + kThresholdCHi && as >= std::sqrt(n) / (2 * std::sqrt(std::numbers::pi)),
              [&] { return "separation fails at n=" + std::to_string(n); });
    ratio[n] = as / cost;
    ck.note("n=" + std::to_string(n) + " as=" + detail::fmt(as) + " wuc_hi=" + detail::fmt(cost));
  }
  ck.expect(ratio[64] > ratio[16], [] { return std::string("as/wuc_hi does not grow"); });
  return {8, "average sensitivity outgrows the weakly unbounded cost of MAJ", ck.ok(),
          ck.summary()};
}

// 9. Yao explorer toy values.
inline CriterionResult criterion_yao() {
  detail::Checker ck;
  const std::vector<std::uint8_t> g01{0, 1};
  const Rational q0 = yao_fs_max_bias(1, 0, g01);
  const Rational q1 = yao_fs_max_bias(1, 1, g01);
  ck.expect(q0 == 0, [&] { return "q=0 gives " + to_string(q0); });
  ck.expect(q1 == Rational(1, 2), [&] { return "q=1 gives " + to_string(q1); });
  return {9, "Yao explorer on Fourier Sampling, m=1", ck.ok(), ck.summary()};
}

// 10. Classical parity sampling and the quantum sampler agree per input.
inline CriterionResult criterion_cross_model() {
  detail::Checker ck;
  long witnesses = 0;
  for (int n = 1; n <= 3; ++n) {
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << (1 << n)); ++t) {
      auto f = detail::shared(nth_function(n, t));
      const int s = sign_degree(f, BiasPath::General);
      for (int d = s; d <= n; ++d) {
        for (Norm norm : {Norm::L1, Norm::Sup}) {
          const BiasResult r = max_bias(f, d, norm, BiasPath::General);
          if (!r.witness) continue;
          const SignRepresentation rep =
              norm == Norm::L1 ? *r.witness : normalize_l1(r.witness->poly, f);
          ++witnesses;
          const auto classical = parity_sampling_algorithm(rep, d);
          const BiasProfile prof = exact_profile(classical, *f);
          std::size_t i = 0;
          f->for_each([&](Mask x, std::uint8_t v) {
            const Rational exact = (1 + rep.poly.evaluate(x)) / 2;
            const Rational want = v ? exact : 1 - exact;
            const QueryRun run = sign_rep_sampler(rep, OracleSpec::from_mask(x, n));
            const double qs = v ? run.acceptance_probability : 1 - run.acceptance_probability;
            ck.expect(prof.per_input[i].second == want &&
                          std::abs(qs - want.get_d()) <= kSimTolerance &&
                          run.queries_used == detail::half_up(rep.poly.degree()) &&
                          run.queries_used <= detail::half_up(d) && classical.budget() == d,
                      [&] { return f->spec() + " d=" + std::to_string(d) + " x=" + bits_to_string(x, n); });
            ++i;
          });
        }
      }
    }
  }
  ck.note(std::to_string(witnesses) + " witnesses");
  return {10, "classical sampler and quantum algorithm share success probabilities", ck.ok(),
          ck.summary()};
}

// ---------------------------------------------------------------------------

inline const std::vector<std::function<CriterionResult()>>& criteria() {
  static const std::vector<std::function<CriterionResult()>> all{
      criterion_sign_degree, criterion_parity,   criterion_l1_vs_sup, criterion_exactness,
      criterion_classical,   criterion_threshold, criterion_degree,   criterion_sensitivity,
      criterion_yao,         criterion_cross_model};
  return all;
}

/// Runs one criterion; exceptions count as failures.
inline CriterionResult run_criterion(int id) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult res;
  try {
    res = criteria().at(static_cast<std::size_t>(id - 1))();
  } catch (const std::exception& e) {
    res = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what()};
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

inline const std::map<std::string, std::vector<int>>& suites() {
  static const std::map<std::string, std::vector<int>> s{
      {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}},
      {"sign-degree", {1}},
      {"parity", {2}},
      {"l1-sup", {3}},
      {"exactness", {4}},
      {"classical", {5}},
      {"threshold", {6}},
      {"degree", {7}},
      {"sensitivity", {8}},
      {"yao", {9}},
      {"cross-model", {10}},
      // names used by the documented CLI examples
      {"theorem3", {1, 10}},
      {"lemma1", {7}},
      {"lemma2", {4}},
      {"lemma3", {3}},
      {"lemma4", {4}},
  };
  return s;
}

inline nlohmann::json to_json(const CriterionResult& r) {
  return {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}};
}

}  // namespace ueqc::acceptance
