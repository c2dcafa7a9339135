#pragma once

// Dense state-vector simulation of query algorithms.  The oracle is the bit
// flip |i>|b> -> |i>|b xor x_i> on an index register that has one extra
// dummy slot 0 with x_0 = 0; phase queries come from kickback on |->.
// Every oracle application is counted once, superposed or not.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ueqc/boolfn.hpp"
#include "ueqc/errors.hpp"
#include "ueqc/poly.hpp"
#include "ueqc/rational.hpp"

namespace ueqc {

using Amplitude = std::complex<double>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr std::size_t kMaxAmplitudes = std::size_t{1} << 24;

/// Square matrix acting on one register.
struct LocalOp {
  std::size_t dim = 0;
  std::vector<Amplitude> m;  // row-major

  static LocalOp identity(std::size_t d) {
    LocalOp op{d, std::vector<Amplitude>(d * d, 0.0)};
    for (std::size_t i = 0; i < d; ++i) op.at(i, i) = 1.0;
    return op;
  }
  Amplitude& at(std::size_t r, std::size_t c) { return m[r * dim + c]; }
  const Amplitude& at(std::size_t r, std::size_t c) const { return m[r * dim + c]; }

  LocalOp adjoint() const {
    LocalOp out{dim, std::vector<Amplitude>(dim * dim)};
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) out.at(c, r) = std::conj(at(r, c));
    }
    return out;
  }
};

inline LocalOp pauli_x() {
  LocalOp op{2, {0.0, 1.0, 1.0, 0.0}};
  return op;
}

inline LocalOp hadamard() {
  const double h = 1.0 / std::sqrt(2.0);
  return LocalOp{2, {h, h, h, -h}};
}

/// Permutation swapping basis states a and b of a d-level register.
inline LocalOp swap_levels(std::size_t d, std::size_t a, std::size_t b) {
  LocalOp op = LocalOp::identity(d);
  if (a == b) return op;
  op.at(a, a) = 0.0;
  op.at(b, b) = 0.0;
  op.at(a, b) = 1.0;
  op.at(b, a) = 1.0;
  return op;
}

/// Householder reflection sending |0> to the real unit vector psi.
inline LocalOp prepare_real(const std::vector<double>& psi) {
  const std::size_t d = psi.size();
  LocalOp op = LocalOp::identity(d);
  std::vector<double> v(psi.size());
  double norm2 = 0;
  for (std::size_t i = 0; i < d; ++i) {
    v[i] = (i == 0 ? 1.0 : 0.0) - psi[i];
    norm2 += v[i] * v[i];
  }
  if (norm2 < 1e-30) return op;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) op.at(r, c) -= 2.0 * v[r] * v[c] / norm2;
  }
  return op;
}

class StateVector {
 public:
  explicit StateVector(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    std::size_t total = 1;
    for (std::size_t d : dims_) {
      if (d == 0) throw SpecError("register dimension must be positive");
      if (total > kMaxAmplitudes / d) throw SizeLimit("state vector exceeds 2^24 amplitudes");
      total *= d;
    }
    strides_.assign(dims_.size(), 1);
    for (std::size_t r = dims_.size(); r-- > 1;) strides_[r - 1] = strides_[r] * dims_[r];
    amps_.assign(total, 0.0);
    amps_[0] = 1.0;
  }

  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  std::size_t size() const { return amps_.size(); }

  std::size_t digit(std::size_t index, std::size_t reg) const {
    return (index / strides_[reg]) % dims_[reg];
  }

  /// Applies pick(digits) to register reg on every fiber; pick sees the
  /// digits of all registers (the target digit reads 0) and may return
  /// nullptr for identity.  This is how controlled gates are written.
  void apply(std::size_t reg,
             const std::function<const LocalOp*(const std::vector<std::size_t>&)>& pick) {
    const std::size_t d = dims_[reg];
    const std::size_t stride = strides_[reg];
    std::vector<std::size_t> digits(dims_.size());
    std::vector<Amplitude> in(d), out(d);
    for (std::size_t base = 0; base < amps_.size(); ++base) {
      if (digit(base, reg) != 0) continue;
      for (std::size_t r = 0; r < dims_.size(); ++r) digits[r] = digit(base, r);
      const LocalOp* op = pick(digits);
      if (op == nullptr) continue;
      if (op->dim != d) throw SpecError("operator dimension mismatch");
      bool any = false;
      for (std::size_t i = 0; i < d; ++i) {
        in[i] = amps_[base + i * stride];
        any = any || in[i] != 0.0;
      }
      if (!any) continue;
      for (std::size_t r = 0; r < d; ++r) {
        Amplitude s = 0.0;
        for (std::size_t c = 0; c < d; ++c) s += op->at(r, c) * in[c];
        out[r] = s;
      }
      for (std::size_t i = 0; i < d; ++i) amps_[base + i * stride] = out[i];
    }
  }

  void apply(std::size_t reg, const LocalOp& op) {
    apply(reg, [&](const std::vector<std::size_t>&) { return &op; });
  }

  double norm_squared() const {
    double s = 0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  /// Probability that register reg reads value.
  double probability(std::size_t reg, std::size_t value) const {
    double s = 0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if (digit(i, reg) == value) s += std::norm(amps_[i]);
    }
    return s;
  }

  std::vector<double> distribution(std::size_t reg) const {
    std::vector<double> out(dims_[reg], 0.0);
    for (std::size_t i = 0; i < amps_.size(); ++i) out[digit(i, reg)] += std::norm(amps_[i]);
    return out;
  }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::vector<Amplitude> amps_;
};

/// Hidden input x_1..x_n plus the dummy slot 0 (always 0).
struct OracleSpec {
  std::vector<std::uint8_t> bits;  // bits[0] is the dummy

  static OracleSpec from_mask(Mask x, int n) {
    OracleSpec o;
    o.bits.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) o.bits[static_cast<std::size_t>(i)] = bit(x, i);
    return o;
  }
  static OracleSpec from_string(std::string_view s) {
    OracleSpec o;
    o.bits.push_back(0);
    for (char c : s) {
      if (c != '0' && c != '1') throw SpecError("bad bit character");
      o.bits.push_back(c == '1');
    }
    return o;
  }
  int n() const { return static_cast<int>(bits.size()) - 1; }
  std::size_t index_dim() const { return bits.size(); }
};

struct TraceStep {
  std::string label;
  double norm = 1;
  int queries = 0;
};

struct QueryRun {
  std::vector<Amplitude> final_state;
  std::vector<std::size_t> dims;
  double acceptance_probability = 0;
  int queries_used = 0;
  double max_norm_error = 0;
  std::vector<TraceStep> trace;
};

inline nlohmann::json trace_to_json(const QueryRun& run) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : run.trace) {
    out.push_back({{"step", s.label}, {"norm", s.norm}, {"queries", s.queries}});
  }
  return out;
}

/// P(register reg = value) read from a finished run.
inline double register_probability(const QueryRun& run, std::size_t reg, std::size_t value) {
  std::size_t stride = 1;
  for (std::size_t r = run.dims.size(); r-- > reg + 1;) stride *= run.dims[r];
  double s = 0;
  for (std::size_t i = 0; i < run.final_state.size(); ++i) {
    if ((i / stride) % run.dims[reg] == value) s += std::norm(run.final_state[i]);
  }
  return s;
}

/// Probability that the last register (the output bit) reads value.
inline double output_probability(const QueryRun& run, std::size_t value) {
  return register_probability(run, run.dims.size() - 1, value);
}

enum class OracleMode { Concrete, Ideal };

namespace detail {

/// Wraps a state with the oracle, the query counter and the norm trace.
class Circuit {
 public:
  Circuit(std::vector<std::size_t> dims, OracleSpec oracle)
      : state_(std::move(dims)), oracle_(std::move(oracle)) {}

  StateVector& state() { return state_; }
  const OracleSpec& oracle() const { return oracle_; }

  void gate(const std::string& label, std::size_t reg, const LocalOp& op) {
    state_.apply(reg, op);
    record(label);
  }
  void gate(const std::string& label, std::size_t reg,
            const std::function<const LocalOp*(const std::vector<std::size_t>&)>& pick) {
    state_.apply(reg, pick);
    record(label);
  }

  /// One application of the bit-flip oracle on (idx, target).
  void query(std::size_t idx, std::size_t target) {
    if (state_.dims()[idx] != oracle_.index_dim()) throw SpecError("index register mismatch");
    ++queries_;
    const LocalOp x = pauli_x();
    state_.apply(target, [&](const std::vector<std::size_t>& dg) {
      return oracle_.bits[dg[idx]] ? &x : nullptr;
    });
    record("query");
  }

  /// Charges queries consumed inside an oracle-built unitary.
  void charge(int k, const std::string& label) {
    queries_ += k;
    record(label);
  }

  QueryRun finish(std::size_t out_reg) {
    QueryRun run;
    run.acceptance_probability = state_.probability(out_reg, 1);
    run.queries_used = queries_;
    run.final_state = state_.amplitudes();
    run.dims = state_.dims();
    run.max_norm_error = max_err_;
    run.trace = std::move(trace_);
    return run;
  }

 private:
  void record(const std::string& label) {
    const double nrm = state_.norm_squared();
    max_err_ = std::max(max_err_, std::abs(nrm - 1.0));
    if (max_err_ > kNormTolerance) {
      throw CertificationFailure("state norm drifted after " + label);
    }
    trace_.push_back({label, nrm, queries_});
  }

  StateVector state_;
  OracleSpec oracle_;
  int queries_ = 0;
  double max_err_ = 0;
  std::vector<TraceStep> trace_;
};

/// W with W|0> = (|a> + |c>)/sqrt2 on the index register.  a = 0 is a
/// Hadamard on {0, c}; otherwise |a> -> (|a> - |c>)/sqrt2 and |c> -> |0>.
/// After W, a phase query and W^dagger the index sits at 0 or at the
/// returned "hit" level depending on x_a xor x_c.
struct DeutschPair {
  LocalOp w;
  LocalOp w_dag;
  std::size_t hit;
};

inline DeutschPair deutsch_pair(std::size_t dim, std::size_t a, std::size_t c) {
  const double h = 1.0 / std::sqrt(2.0);
  LocalOp w = LocalOp::identity(dim);
  if (a == 0) {
    w.at(0, 0) = h;
    w.at(c, 0) = h;
    w.at(0, c) = h;
    w.at(c, c) = -h;
  } else {
    w.at(0, 0) = 0.0;
    w.at(a, a) = 0.0;
    w.at(c, c) = 0.0;
    w.at(a, 0) = h;  // column 0
    w.at(c, 0) = h;
    w.at(a, a) = h;  // column a
    w.at(c, a) = -h;
    w.at(0, c) = 1.0;  // column c
  }
  DeutschPair p{w, w.adjoint(), a == 0 ? c : a};
  return p;
}

/// Pairs (s1,s2), (s3,s4), ...; an odd leftover is paired with the dummy.
inline std::vector<std::pair<std::size_t, std::size_t>> pair_up(Mask S, int n) {
  std::vector<std::size_t> el;
  for (int i = 1; i <= n; ++i) {
    if (bit(S, i)) el.push_back(static_cast<std::size_t>(i));
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t t = 0; t + 1 < el.size(); t += 2) out.emplace_back(el[t], el[t + 1]);
  if (el.size() % 2 == 1) out.emplace_back(0, el.back());
  return out;
}

inline int half_up(int k) { return (k + 1) / 2; }

/// Registers of the branch-parallel parity circuit.
struct ParityLayout {
  std::size_t branch = 0, idx = 1, target = 2, work0 = 3, out = 0;
  int rounds = 0;
};

/// Coherently computes x_{S_b} into out for every branch b, with exactly
/// `rounds` queries in total.  Branches with no set (nullopt) idle.
inline void parity_rounds(Circuit& circ, const ParityLayout& L,
                          const std::vector<std::optional<Mask>>& sets, int n,
                          OracleMode mode) {
  const std::size_t dim = circ.oracle().index_dim();
  if (mode == OracleMode::Ideal) {
    const LocalOp x = pauli_x();
    std::vector<std::uint8_t> par(sets.size(), 0);
    for (std::size_t b = 0; b < sets.size(); ++b) {
      if (!sets[b]) continue;
      for (int i = 1; i <= n; ++i) {
        if (bit(*sets[b], i)) par[b] ^= circ.oracle().bits[static_cast<std::size_t>(i)];
      }
    }
    circ.charge(L.rounds, "oracle-built parity unitary");
    circ.gate("xor parity into output", L.out, [&](const std::vector<std::size_t>& dg) {
      return par[dg[L.branch]] ? &x : nullptr;
    });
    return;
  }

  // |->  on the query target
  circ.gate("target X", L.target, pauli_x());
  circ.gate("target H", L.target, hadamard());

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs(sets.size());
  for (std::size_t b = 0; b < sets.size(); ++b) {
    if (sets[b]) pairs[b] = pair_up(*sets[b], n);
  }
  const LocalOp x = pauli_x();
  for (int t = 0; t < L.rounds; ++t) {
    const std::size_t work = L.work0 + static_cast<std::size_t>(t);
    std::vector<std::optional<DeutschPair>> dp(sets.size());
    std::vector<LocalOp> swaps(sets.size());
    for (std::size_t b = 0; b < sets.size(); ++b) {
      if (static_cast<std::size_t>(t) < pairs[b].size()) {
        const auto [a, c] = pairs[b][static_cast<std::size_t>(t)];
        dp[b] = deutsch_pair(dim, a, c);
        swaps[b] = swap_levels(dim, 0, dp[b]->hit);
      }
    }
    circ.gate("W", L.idx, [&](const std::vector<std::size_t>& dg) {
      const auto& p = dp[dg[L.branch]];
      return p ? &p->w : nullptr;
    });
    circ.query(L.idx, L.target);
    circ.gate("W dagger", L.idx, [&](const std::vector<std::size_t>& dg) {
      const auto& p = dp[dg[L.branch]];
      return p ? &p->w_dag : nullptr;
    });
    circ.gate("record pair parity", work, [&](const std::vector<std::size_t>& dg) {
      const auto& p = dp[dg[L.branch]];
      return p && dg[L.idx] == p->hit ? &x : nullptr;
    });
    circ.gate("reset index", L.idx, [&](const std::vector<std::size_t>& dg) {
      const auto& p = dp[dg[L.branch]];
      return p && dg[work] == 1 ? &swaps[dg[L.branch]] : nullptr;
    });
  }
  for (int t = 0; t < L.rounds; ++t) {
    const std::size_t work = L.work0 + static_cast<std::size_t>(t);
    circ.gate("xor work into output", L.out, [&](const std::vector<std::size_t>& dg) {
      return dg[work] == 1 ? &x : nullptr;
    });
  }
}

}  // namespace detail

/// Computes x_S with ceil(|S|/2) queries; acceptance = P(output 1) = x_S.
inline QueryRun parity_query_algorithm(Mask S, const OracleSpec& oracle,
                                       OracleMode mode = OracleMode::Concrete) {
  const int n = oracle.n();
  if (S == 0) throw SpecError("parity set must be nonempty");
  if (n < 64 && (S & ~full_mask(n)) != 0) throw SpecError("parity set outside [n]");
  detail::ParityLayout L;
  L.rounds = detail::half_up(weight(S));
  std::vector<std::size_t> dims{1, oracle.index_dim(), 2};
  for (int t = 0; t < L.rounds; ++t) dims.push_back(2);
  dims.push_back(2);
  L.out = dims.size() - 1;
  detail::Circuit circ(std::move(dims), oracle);
  detail::parity_rounds(circ, L, {S}, n, mode);
  return circ.finish(L.out);
}

/// Acceptance (1 + p(x))/2 with ceil(deg p / 2) queries.  Prepares
/// sum_S sqrt|p_hat(S)| |S>|[p_hat(S) > 0]> plus a sqrt(1 - l1) branch whose
/// output is a fair coin, xors x_S into the output, and measures it.  A
/// branch accepts iff (-1)^{x_S} agrees with the sign of p_hat(S).
inline QueryRun sign_rep_sampler(const SignRepresentation& rep, const OracleSpec& oracle,
                                   OracleMode mode = OracleMode::Concrete) {
  if (rep.norm != Norm::L1) throw NormMismatch("quantum sampler needs an L1 representation");
  const FourierPolynomial& p = rep.poly;
  if (p.n() != oracle.n()) throw SpecError("representation and oracle arity differ");
  const Rational l1 = p.l1_norm();
  if (l1 > 1) throw NormMismatch("coefficient mass exceeds 1: " + to_string(l1));

  std::vector<Mask> sets;
  std::vector<double> psi;
  std::vector<std::uint8_t> positive;
  for (const auto& [S, c] : p.terms()) {
    sets.push_back(S);
    psi.push_back(std::sqrt(abs(c).get_d()));
    positive.push_back(c > 0);
  }
  const std::size_t deficit = sets.size();
  psi.push_back(std::sqrt(std::max(0.0, Rational(1 - l1).get_d())));
  double nrm = 0;
  for (double a : psi) nrm += a * a;
  for (double& a : psi) a /= std::sqrt(nrm);  // absorbs double rounding only

  detail::ParityLayout L;
  L.rounds = detail::half_up(p.degree());
  std::vector<std::size_t> dims{psi.size(), oracle.index_dim(), 2};
  for (int t = 0; t < L.rounds; ++t) dims.push_back(2);
  dims.push_back(2);
  L.out = dims.size() - 1;
  detail::Circuit circ(std::move(dims), oracle);

  circ.gate("prepare branches", L.branch, prepare_real(psi));
  const LocalOp x = pauli_x();
  const LocalOp h = hadamard();
  circ.gate("sign bits", L.out, [&](const std::vector<std::size_t>& dg) -> const LocalOp* {
    const std::size_t b = dg[L.branch];
    if (b == deficit) return &h;
    return positive[b] ? &x : nullptr;
  });

  std::vector<std::optional<Mask>> per_branch;
  for (Mask S : sets) {
    // the constant character needs no queries
    per_branch.push_back(S == 0 ? std::nullopt : std::optional<Mask>(S));
  }
  per_branch.push_back(std::nullopt);
  detail::parity_rounds(circ, L, per_branch, p.n(), mode);
  return circ.finish(L.out);
}

/// Recovers r from the F-part oracle F^r_a = <a, r> (2^m positions, address a
/// at position lex(a) + 1) with one query.
struct BVResult {
  Mask r = 0;
  double success_probability = 0;
  std::vector<double> address_distribution;  // by lex index of the address
  QueryRun run;
};

namespace detail {

/// Walsh-Hadamard on the 2^m address levels starting at offset, identity on
/// the rest of the index register.
inline LocalOp address_hadamard(std::size_t dim, int m, std::size_t offset) {
  LocalOp op = LocalOp::identity(dim);
  const std::size_t count = std::size_t{1} << m;
  const double s = 1.0 / std::sqrt(static_cast<double>(count));
  for (std::size_t i = 0; i < count; ++i) {
    const Mask a = from_lex_index(i, m);
    for (std::size_t j = 0; j < count; ++j) {
      const Mask b = from_lex_index(j, m);
      op.at(offset + i, offset + j) = character(a, b) * s;
    }
  }
  return op;
}

inline int checked_m(int m, int max_m) {
  if (m < 1 || m > max_m) throw SizeLimit("address width m out of range");
  return m;
}

}  // namespace detail

inline BVResult bernstein_vazirani(const OracleSpec& oracle, int m, bool check_promise = true) {
  detail::checked_m(m, 10);
  const std::size_t count = std::size_t{1} << m;
  if (oracle.bits.size() != count + 1) throw SpecError("F-part oracle needs 2^m bits");
  const std::size_t idx = 0, target = 1;
  detail::Circuit circ({oracle.index_dim(), 2}, oracle);
  const std::size_t dim = oracle.index_dim();
  circ.gate("index to address 0", idx, swap_levels(dim, 0, 1));
  circ.gate("target X", target, pauli_x());
  circ.gate("target H", target, hadamard());
  const LocalOp hm = detail::address_hadamard(dim, m, 1);
  circ.gate("H^m", idx, hm);
  circ.query(idx, target);
  circ.gate("H^m", idx, hm);
  BVResult res;
  const auto dist = circ.state().distribution(idx);
  std::size_t best = 1;
  for (std::size_t i = 1; i <= count; ++i) {
    if (dist[i] > dist[best]) best = i;
  }
  res.r = from_lex_index(best - 1, m);
  res.success_probability = dist[best];
  res.address_distribution.assign(dist.begin() + 1, dist.end());
  res.run = circ.finish(idx);
  res.run.acceptance_probability = res.success_probability;
  if (!check_promise) return res;
  for (std::size_t i = 0; i < count; ++i) {
    const Mask a = from_lex_index(i, m);
    if (oracle.bits[i + 1] != inner_product_mod2(a, res.r)) {
      throw PromiseViolation("oracle is not linear; recovered r is inconsistent");
    }
  }
  return res;
}

struct FSResult {
  int output = 0;
  Mask r = 0;
  QueryRun run;
};

/// Two queries: recover r on the F-part, then read g_r into the output.
inline FSResult fs_algorithm(Mask encoded_input, int m, bool check_promise = true) {
  detail::checked_m(m, 5);
  const std::size_t count = std::size_t{1} << m;
  const int n = static_cast<int>(2 * count);
  if (check_promise && !fs_recover_r(encoded_input, m)) {
    throw PromiseViolation("F-part is not a linear function");
  }
  const OracleSpec oracle = OracleSpec::from_mask(encoded_input, n);
  const std::size_t idx = 0, t1 = 1, t2 = 2;
  detail::Circuit circ({oracle.index_dim(), 2, 2}, oracle);
  const std::size_t dim = oracle.index_dim();
  circ.gate("index to address 0", idx, swap_levels(dim, 0, 1));
  circ.gate("target X", t1, pauli_x());
  circ.gate("target H", t1, hadamard());
  const LocalOp hm = detail::address_hadamard(dim, m, 1);
  circ.gate("H^m", idx, hm);
  circ.query(idx, t1);
  circ.gate("H^m", idx, hm);
  // move each address from the F block to the g block
  LocalOp shift = LocalOp::identity(dim);
  for (std::size_t i = 1; i <= count; ++i) {
    shift.at(i, i) = 0.0;
    shift.at(i + count, i + count) = 0.0;
    shift.at(i + count, i) = 1.0;
    shift.at(i, i + count) = 1.0;
  }
  circ.gate("F block to g block", idx, shift);
  circ.query(idx, t2);
  FSResult res;
  const auto dist = circ.state().distribution(idx);
  std::size_t best = count + 1;
  for (std::size_t i = count + 1; i <= 2 * count; ++i) {
    if (dist[i] > dist[best]) best = i;
  }
  res.r = from_lex_index(best - count - 1, m);
  res.run = circ.finish(t2);
  res.output = res.run.acceptance_probability > 0.5 ? 1 : 0;
  return res;
}

inline FSResult fs_algorithm(const FSInstance& inst) {
  return fs_algorithm(inst.encoded_input, inst.m);
}

/// Runs an algorithm on all 2^n inputs and interpolates the acceptance
/// probabilities into a multilinear polynomial (coefficients snapped to
/// nearby rationals).
inline FourierPolynomial acceptance_degree_check(const std::function<double(Mask)>& accept,
                                                 int n) {
  if (n < 0 || n > 12) throw SizeLimit("degree check needs n <= 12");
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> v(size);
  for (Mask x = 0; x < size; ++x) v[x] = accept(x);
  for (std::size_t h = 1; h < size; h <<= 1) {
    for (std::size_t i = 0; i < size; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = v[j], b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
  FourierPolynomial p(n);
  for (Mask S = 0; S < size; ++S) {
    const double c = v[S] / static_cast<double>(size);
    if (std::abs(c) > 1e-9) p.set(S, approximate_rational(c));
  }
  return p;
}

}  // namespace ueqc
