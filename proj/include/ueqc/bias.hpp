#pragma once

// Bias programs: the largest bias beta of a degree-<=d polynomial that
// sign-represents f under an l1-coefficient or sup-norm normalization, and
// the unbounded / weakly unbounded complexity brackets derived from them.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ueqc/boolfn.hpp"
#include "ueqc/errors.hpp"
#include "ueqc/poly.hpp"
#include "ueqc/rational.hpp"
#include "ueqc/simplex.hpp"

namespace ueqc {

inline constexpr int kMaxGeneralBits = 12;
inline constexpr int kMaxMaterializedBits = 16;

enum class BiasPath { Auto, General, Symmetric };

struct BiasProgram {
  std::shared_ptr<const BooleanFunction> target;
  int degree = 0;
  Norm norm = Norm::Sup;
  bool symmetric_fastpath = false;
};

struct BiasResult {
  Rational beta;
  int degree = 0;
  Norm norm = Norm::Sup;
  bool symmetric_fastpath = false;
  /// Present when beta > 0 and the polynomial is small enough to expand.
  std::optional<SignRepresentation> witness;
  /// Values of the optimal polynomial per Hamming weight (fast path only).
  std::vector<Rational> weight_values;
  std::vector<Rational> primal;            // LP variables at the optimum
  std::vector<Rational> dual_certificate;  // one multiplier per LP row
};

/// All subsets of [n] with at most d elements, in increasing mask order.
inline std::vector<Mask> low_degree_sets(int n, int d) {
  std::vector<Mask> out;
  if (n > kMaxTableBits) throw SizeLimit("too many variables to list subsets");
  for (Mask S = 0; S < (Mask{1} << n); ++S) {
    if (weight(S) <= d) out.push_back(S);
  }
  return out;
}

/// N = sum_{i <= d} C(n, i).
inline Integer low_degree_count(int n, int d) {
  Integer s = 0;
  for (int i = 0; i <= std::min(d, n); ++i) {
    s += binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(i));
  }
  return s;
}

namespace detail {

inline bool wants_symmetric(const BooleanFunction& f, BiasPath path) {
  if (path == BiasPath::General) return false;
  const bool symmetric = f.is_total() && f.is_symmetric();
  if (path == BiasPath::Symmetric && !symmetric) {
    throw Unsupported("symmetric fast path needs a symmetric total function");
  }
  return symmetric;
}

// Newton-basis value C(k, j) for the sup-norm fast path and the level
// character sums K_j(k) / C(n, j) for the l1 fast path.
inline Rational level_basis(int n, int j, int k, Norm norm) {
  if (norm == Norm::Sup) {
    return Rational(binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(j)));
  }
  Rational r(krawtchouk(n, j, k),
             binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(j)));
  r.canonicalize();
  return r;
}

}  // namespace detail

/// Builds the LP. Variable layout:
///   general L1:   u_S, v_S >= 0 per S in S_d (coefficient u_S - v_S), then beta
///   general SUP:  p_S free per S in S_d, then beta
///   symmetric L1: u_j, v_j >= 0 per level j (level weight u_j - v_j), then beta
///   symmetric SUP: a_j free (Newton coefficient Delta^j q(0)), then beta
/// Rows: s_x p(x) - beta >= 0 on the domain, then the norm rows.
inline LinearProgram build_bias_lp(const BiasProgram& prog) {
  const BooleanFunction& f = *prog.target;
  const int n = f.n();
  const int d = std::clamp(prog.degree, 0, n);
  LinearProgram lp;
  if (prog.symmetric_fastpath) {
    const auto profile = f.weight_profile();
    if (!profile || !f.is_total()) {
      throw Unsupported("symmetric fast path needs a symmetric total function");
    }
    std::vector<std::vector<int>> cols(static_cast<std::size_t>(d) + 1);
    for (int j = 0; j <= d; ++j) {
      if (prog.norm == Norm::L1) {
        cols[j] = {lp.add_variable(VarKind::NonNeg), lp.add_variable(VarKind::NonNeg)};
      } else {
        cols[j] = {lp.add_variable(VarKind::Free)};
      }
    }
    const int beta = lp.add_variable(VarKind::NonNeg, 1);
    for (int k = 0; k <= n; ++k) {
      const int s = (*profile)[static_cast<std::size_t>(k)] ? 1 : -1;
      std::vector<std::pair<int, Rational>> row;
      for (int j = 0; j <= d; ++j) {
        const Rational b = detail::level_basis(n, j, k, prog.norm) * s;
        if (b == 0) continue;
        row.emplace_back(cols[j][0], b);
        if (prog.norm == Norm::L1) row.emplace_back(cols[j][1], -b);
      }
      auto value_row = row;
      row.emplace_back(beta, -1);
      lp.add_row(std::move(row), Sense::GE, 0);
      if (prog.norm == Norm::Sup) lp.add_row(std::move(value_row), Sense::LE, 1);
    }
    if (prog.norm == Norm::L1) {
      std::vector<std::pair<int, Rational>> norm_row;
      for (int j = 0; j <= d; ++j) {
        norm_row.emplace_back(cols[j][0], 1);
        norm_row.emplace_back(cols[j][1], 1);
      }
      lp.add_row(std::move(norm_row), Sense::LE, 1);
    }
    return lp;
  }

  if (n > kMaxGeneralBits) {
    throw SizeLimit("general bias program supports n <= 12, got n = " + std::to_string(n));
  }
  const auto sets = low_degree_sets(n, d);
  std::vector<int> plus(sets.size()), minus(sets.size(), -1);
  for (std::size_t t = 0; t < sets.size(); ++t) {
    if (prog.norm == Norm::L1) {
      plus[t] = lp.add_variable(VarKind::NonNeg);
      minus[t] = lp.add_variable(VarKind::NonNeg);
    } else {
      plus[t] = lp.add_variable(VarKind::Free);
    }
  }
  const int beta = lp.add_variable(VarKind::NonNeg, 1);
  f.for_each([&](Mask x, std::uint8_t v) {
    const int s = v ? 1 : -1;
    std::vector<std::pair<int, Rational>> row;
    row.reserve(2 * sets.size() + 1);
    for (std::size_t t = 0; t < sets.size(); ++t) {
      const int c = s * character(sets[t], x);
      row.emplace_back(plus[t], c);
      if (minus[t] >= 0) row.emplace_back(minus[t], -c);
    }
    auto value_row = row;
    row.emplace_back(beta, -1);
    lp.add_row(std::move(row), Sense::GE, 0);
    if (prog.norm == Norm::Sup) lp.add_row(std::move(value_row), Sense::LE, 1);
  });
  if (prog.norm == Norm::L1) {
    std::vector<std::pair<int, Rational>> norm_row;
    for (std::size_t t = 0; t < sets.size(); ++t) {
      norm_row.emplace_back(plus[t], 1);
      norm_row.emplace_back(minus[t], 1);
    }
    lp.add_row(std::move(norm_row), Sense::LE, 1);
  }
  return lp;
}

/// Expands a symmetric polynomial given by its values q(0..n) into the
/// Fourier basis: p_hat(S) = 2^-n / C(n,|S|) * sum_k C(n,k) q(k) K_|S|(k).
inline FourierPolynomial expand_symmetric(int n, const std::vector<Rational>& q, int max_degree) {
  if (n > kMaxMaterializedBits) throw SizeLimit("polynomial too large to expand");
  std::vector<Rational> level(static_cast<std::size_t>(max_degree) + 1);
  const Integer two_n = pow2(static_cast<unsigned long>(n));
  for (int j = 0; j <= max_degree; ++j) {
    Rational s = 0;
    for (int k = 0; k <= n; ++k) {
      s += q[static_cast<std::size_t>(k)] *
           Rational(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k)) *
                    krawtchouk(n, j, k));
    }
    Rational denom(two_n * binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(j)));
    level[j] = s / denom;
  }
  FourierPolynomial p(n);
  for (Mask S = 0; S < (Mask{1} << n); ++S) {
    const int j = weight(S);
    if (j <= max_degree) p.set(S, level[static_cast<std::size_t>(j)]);
  }
  return p;
}

/// Rebuilds the LP primal point that corresponds to a result, for
/// re-verification of cached or deserialized results.
inline bool verify_bias_result(const BiasProgram& prog, const BiasResult& res) {
  const LinearProgram lp = build_bias_lp(prog);
  LpSolution sol;
  sol.primal = res.primal;
  sol.dual = res.dual_certificate;
  sol.objective = res.beta;
  if (!verify_certificate(lp, sol)) return false;
  if (res.witness) {
    const auto b = bias_of(res.witness->poly, *prog.target);
    if (!b || *b != res.beta || res.witness->bias != res.beta) return false;
    if (res.witness->poly.degree() > prog.degree) return false;
    if (res.norm == Norm::L1 && res.witness->poly.l1_norm() > 1) return false;
    if (res.norm == Norm::Sup && sup_norm_on_domain(res.witness->poly, *prog.target) > 1) {
      return false;
    }
  }
  return true;
}

/// Turns a certified optimum of build_bias_lp(prog) into a result with its
/// witness polynomial.  Also used when reloading cached solutions.
inline BiasResult assemble_bias_result(const BiasProgram& prog, const LpSolution& sol) {
  const auto& f = prog.target;
  const int n = f->n();
  const int d = prog.degree;
  const Norm norm = prog.norm;

  BiasResult res;
  res.beta = sol.objective;
  res.degree = d;
  res.norm = norm;
  res.symmetric_fastpath = prog.symmetric_fastpath;
  res.primal = sol.primal;
  res.dual_certificate = sol.dual;

  if (prog.symmetric_fastpath) {
    const int per_level = norm == Norm::L1 ? 2 : 1;
    std::vector<Rational> coeff(static_cast<std::size_t>(d) + 1);
    for (int j = 0; j <= d; ++j) {
      coeff[j] = sol.primal[static_cast<std::size_t>(per_level * j)];
      if (norm == Norm::L1) coeff[j] -= sol.primal[static_cast<std::size_t>(2 * j + 1)];
    }
    res.weight_values.assign(static_cast<std::size_t>(n) + 1, Rational(0));
    for (int k = 0; k <= n; ++k) {
      for (int j = 0; j <= d; ++j) {
        if (coeff[j] != 0) res.weight_values[k] += coeff[j] * detail::level_basis(n, j, k, norm);
      }
    }
    // the bias is checked level by level; the Fourier witness is only
    // expanded where evaluating it on every input stays cheap
    const auto profile = f->weight_profile();
    std::optional<Rational> least;
    for (int k = 0; k <= n; ++k) {
      const Rational& v = res.weight_values[static_cast<std::size_t>(k)];
      const Rational signed_v = (*profile)[static_cast<std::size_t>(k)] ? v : Rational(-v);
      if (!least || signed_v < *least) least = signed_v;
    }
    if (*least != res.beta) {
      throw CertificationFailure("level values disagree with the LP optimum");
    }
    if (res.beta > 0 && n <= kMaxGeneralBits) {
      FourierPolynomial p = expand_symmetric(n, res.weight_values, d);
      res.witness = SignRepresentation{std::move(p), f, norm, res.beta};
    }
  } else if (res.beta > 0) {
    const auto sets = low_degree_sets(n, d);
    FourierPolynomial p(n);
    for (std::size_t t = 0; t < sets.size(); ++t) {
      if (norm == Norm::L1) {
        p.set(sets[t], sol.primal[2 * t] - sol.primal[2 * t + 1]);
      } else {
        p.set(sets[t], sol.primal[t]);
      }
    }
    res.witness = SignRepresentation{std::move(p), f, norm, res.beta};
  }
  if (res.witness && !prog.symmetric_fastpath) {
    const auto b = bias_of(res.witness->poly, *f);
    if (!b || *b != res.beta) {
      throw CertificationFailure("witness bias differs from the LP optimum");
    }
  }
  return res;
}

/// Exact maximum bias over degree-<=d sign representations of f.
inline BiasResult max_bias(std::shared_ptr<const BooleanFunction> f, int d, Norm norm,
                           BiasPath path = BiasPath::Auto) {
  if (d < 0) throw SpecError("degree must be nonnegative");
  const int n = f->n();
  d = std::min(d, n);
  BiasProgram prog{f, d, norm, detail::wants_symmetric(*f, path)};
  return assemble_bias_result(prog, solve_lp(build_bias_lp(prog)));
}

inline BiasResult max_bias(const BooleanFunction& f, int d, Norm norm,
                           BiasPath path = BiasPath::Auto) {
  return max_bias(std::make_shared<const BooleanFunction>(f), d, norm, path);
}

/// Least d with a degree-d sign representation (sup-norm bias > 0).
inline int sign_degree(std::shared_ptr<const BooleanFunction> f, BiasPath path = BiasPath::Auto) {
  for (int d = 0; d <= f->n(); ++d) {
    if (max_bias(f, d, Norm::Sup, path).beta > 0) return d;
  }
  throw CertificationFailure("no sign representation up to degree n");
}

inline int sign_degree(const BooleanFunction& f, BiasPath path = BiasPath::Auto) {
  return sign_degree(std::make_shared<const BooleanFunction>(f), path);
}

// ---------------------------------------------------------------------------
// Weakly unbounded costs and the complexity report

/// queries + log2(1 / beta), kept symbolically as (queries, beta).
struct WeakCost {
  int queries = 0;
  Rational beta = 1;

  double value() const { return queries + (beta == 1 ? 0.0 : -log2_of(beta)); }

  /// Compares 2^q / beta exactly.
  friend bool operator<(const WeakCost& a, const WeakCost& b) {
    const Rational lhs = Rational(pow2(static_cast<unsigned long>(a.queries))) * b.beta;
    const Rational rhs = Rational(pow2(static_cast<unsigned long>(b.queries))) * a.beta;
    return lhs < rhs;
  }
  friend bool operator<=(const WeakCost& a, const WeakCost& b) { return !(b < a); }
};

struct DegreeRow {
  int d = 0;
  Rational beta_l1;
  Rational beta_sup;
};

struct ComplexityReport {
  std::string function;
  int n = 0;
  int sdeg = 0;
  int uc = 0;
  int uq = 0;
  std::vector<DegreeRow> per_degree;
  WeakCost wuq_lo, wuq_hi, wuc_lo, wuc_hi;
  bool partial = false;
  bool symmetric_fastpath = false;
};

struct ReportOptions {
  BiasPath path = BiasPath::Auto;
  std::optional<int> max_degree;
};

/// Source of beta*(d) values; the CLI plugs a cache in here.
using BiasOracle = std::function<BiasResult(int d, Norm norm)>;

inline ComplexityReport complexity_report(std::shared_ptr<const BooleanFunction> f,
                                          const ReportOptions& opts = {},
                                          BiasOracle oracle = nullptr) {
  const int n = f->n();
  const int cap = std::min(n, opts.max_degree.value_or(n));
  if (!oracle) {
    oracle = [&](int d, Norm norm) { return max_bias(f, d, norm, opts.path); };
  }
  std::map<int, Rational> l1, sup;
  bool fast = false;
  auto beta = [&](int d, Norm norm) -> const Rational& {
    d = std::min(d, n);
    auto& memo = norm == Norm::L1 ? l1 : sup;
    auto it = memo.find(d);
    if (it == memo.end()) {
      if (d > cap) throw SizeLimit("degree sweep exceeds --max-degree");
      BiasResult r = oracle(d, norm);
      fast = fast || r.symmetric_fastpath;
      it = memo.emplace(d, r.beta).first;
    }
    return it->second;
  };

  ComplexityReport rep;
  rep.function = f->spec();
  rep.n = n;
  rep.partial = !f->is_total();
  int sdeg = 0;
  while (beta(sdeg, Norm::Sup) == 0) ++sdeg;
  rep.sdeg = sdeg;
  rep.uc = sdeg;
  rep.uq = (sdeg + 1) / 2;

  // cost >= query count, so each sweep stops once the query count alone
  // reaches the best cost found.
  auto sweep = [&](Norm norm, int max_t, auto queries_for, auto degree_for) {
    std::optional<WeakCost> best;
    for (int t = 0; t <= max_t; ++t) {
      const int q = queries_for(t);
      if (best && !(WeakCost{q, 1} < *best)) break;
      const int d = std::min(degree_for(t), n);
      if (d > cap) break;
      const Rational& b = beta(d, norm);
      if (b == 0) continue;
      const WeakCost c{q, b};
      if (!best || c < *best) best = c;
    }
    if (!best) throw CertificationFailure("no positive bias within the degree cap");
    return *best;
  };
  auto identity = [](int t) { return t; };
  auto half_up = [](int t) { return (t + 1) / 2; };
  auto twice = [](int t) { return 2 * t; };

  rep.wuc_hi = sweep(Norm::L1, n, identity, identity);
  rep.wuq_hi = sweep(Norm::L1, n, half_up, identity);
  rep.wuc_lo = sweep(Norm::Sup, n, identity, identity);
  rep.wuq_lo = sweep(Norm::Sup, (n + 1) / 2, identity, twice);

  int max_d = 0;
  for (const auto& [d, b] : l1) max_d = std::max(max_d, d);
  for (const auto& [d, b] : sup) max_d = std::max(max_d, d);
  for (int d = 0; d <= max_d; ++d) {
    rep.per_degree.push_back(DegreeRow{d, beta(d, Norm::L1), beta(d, Norm::Sup)});
  }
  rep.symmetric_fastpath = fast;
  return rep;
}

inline ComplexityReport complexity_report(const BooleanFunction& f,
                                          const ReportOptions& opts = {}) {
  return complexity_report(std::make_shared<const BooleanFunction>(f), opts);
}

/// Doubles rounded to six significant digits for display.
inline double display_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return std::strtod(buf, nullptr);
}

inline nlohmann::json to_json(const ComplexityReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.per_degree) {
    rows.push_back({{"d", row.d},
                    {"beta_l1", to_string(row.beta_l1)},
                    {"beta_sup", to_string(row.beta_sup)}});
  }
  return {{"function", r.function},
          {"n", r.n},
          {"sdeg", r.sdeg},
          {"uc", r.uc},
          {"uq", r.uq},
          {"per_degree", rows},
          {"wuq_lo", display_double(r.wuq_lo.value())},
          {"wuq_hi", display_double(r.wuq_hi.value())},
          {"wuc_lo", display_double(r.wuc_lo.value())},
          {"wuc_hi", display_double(r.wuc_hi.value())}};
}

}  // namespace ueqc
