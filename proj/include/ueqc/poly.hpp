#pragma once

// Exact multilinear polynomials in the Fourier character basis
//   p(x) = sum_S p_hat(S) * (-1)^{x_S},   x_S = xor of x_i over i in S,
// with subsets S of [n] encoded as masks.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ueqc/boolfn.hpp"
#include "ueqc/errors.hpp"
#include "ueqc/rational.hpp"

namespace ueqc {

inline int character(Mask S, Mask x) { return (weight(S & x) & 1) ? -1 : 1; }

class FourierPolynomial {
 public:
  using Terms = std::map<Mask, Rational>;

  FourierPolynomial() = default;
  explicit FourierPolynomial(int n) : n_(n) {
    if (n < 0 || n > kMaxMaskBits) throw SizeLimit("polynomial arity 0..64");
  }
  FourierPolynomial(int n, std::initializer_list<std::pair<const Mask, Rational>> terms)
      : FourierPolynomial(n) {
    for (const auto& [S, c] : terms) set(S, c);
  }

  int n() const { return n_; }
  const Terms& terms() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  Rational coeff(Mask S) const {
    auto it = coeffs_.find(S);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  void set(Mask S, const Rational& c) {
    if (n_ < 64 && (S & ~full_mask(n_)) != 0) {
      throw SpecError("subset outside [n]");
    }
    if (c == 0) {
      coeffs_.erase(S);
    } else {
      coeffs_[S] = c;
    }
  }

  void add(Mask S, const Rational& c) { set(S, coeff(S) + c); }

  int degree() const {
    int d = 0;
    for (const auto& [S, c] : coeffs_) d = std::max(d, weight(S));
    return d;
  }

  Rational l1_norm() const {
    Rational s = 0;
    for (const auto& [S, c] : coeffs_) s += abs(c);
    return s;
  }

  Rational evaluate(Mask x) const {
    Rational s = 0;
    for (const auto& [S, c] : coeffs_) {
      if (character(S, x) > 0) {
        s += c;
      } else {
        s -= c;
      }
    }
    return s;
  }

  FourierPolynomial scaled(const Rational& factor) const {
    FourierPolynomial out(n_);
    if (factor == 0) return out;
    for (const auto& [S, c] : coeffs_) out.coeffs_[S] = c * factor;
    return out;
  }

  friend bool operator==(const FourierPolynomial& a, const FourierPolynomial& b) {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }

 private:
  int n_ = 0;
  Terms coeffs_;
};

inline Rational evaluate(const FourierPolynomial& p, Mask x) {
  return p.evaluate(x);
}

/// Coefficients from the values on all 2^n inputs (values indexed by mask),
/// via an exact fast Walsh-Hadamard transform.
inline FourierPolynomial from_values(int n, std::vector<Rational> values) {
  if (n < 0 || n > kMaxTableBits) throw SizeLimit("transform needs n <= 24");
  if (values.size() != (std::size_t{1} << n)) {
    throw SpecError("values missing for some inputs");
  }
  for (std::size_t h = 1; h < values.size(); h <<= 1) {
    for (std::size_t i = 0; i < values.size(); i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        Rational a = values[j];
        Rational b = values[j + h];
        values[j] = a + b;
        values[j + h] = a - b;
      }
    }
  }
  const Rational scale(Integer(1), pow2(static_cast<unsigned long>(n)));
  FourierPolynomial p(n);
  for (std::size_t S = 0; S < values.size(); ++S) p.set(S, values[S] * scale);
  return p;
}

/// Coefficients p_hat(S) = 2^-n sum_x v(x) (-1)^{x_S} of a value map
/// defined on every input of a total function.
inline FourierPolynomial from_truth_table(const BooleanFunction& f,
                                          const std::map<Mask, Rational>& values) {
  if (!f.is_total()) throw Unsupported("transform needs a total function");
  std::vector<Rational> by_mask(std::size_t{1} << f.n());
  for (Mask x = 0; x < by_mask.size(); ++x) {
    auto it = values.find(x);
    if (it == values.end()) {
      throw SpecError("missing value for input " + bits_to_string(x, f.n()));
    }
    by_mask[x] = it->second;
  }
  return from_values(f.n(), std::move(by_mask));
}

/// The +-1 encoding 2f - 1 of a total function as a polynomial.
inline FourierPolynomial sign_polynomial(const BooleanFunction& f) {
  std::map<Mask, Rational> values;
  f.for_each([&](Mask x, std::uint8_t v) { values[x] = v ? 1 : -1; });
  return from_truth_table(f, values);
}

enum class Norm { L1, Sup };

inline const char* to_string(Norm norm) { return norm == Norm::L1 ? "L1" : "SUP"; }

/// A polynomial together with the function it sign-represents and its
/// certified bias: (2 f(x) - 1) p(x) >= bias on the whole domain.
struct SignRepresentation {
  FourierPolynomial poly;
  std::shared_ptr<const BooleanFunction> target;
  Norm norm = Norm::L1;
  Rational bias;
};

/// min over the domain of (2 f(x) - 1) p(x); may be <= 0.
inline Rational signed_margin(const FourierPolynomial& p,
                              const BooleanFunction& f) {
  std::optional<Rational> best;
  f.for_each([&](Mask x, std::uint8_t v) {
    Rational m = p.evaluate(x);
    if (!v) m = -m;
    if (!best || m < *best) best = m;
  });
  return *best;
}

/// Bias of p as a sign representation of f, or nullopt when p fails to
/// sign-represent f somewhere on the domain.
inline std::optional<Rational> bias_of(const FourierPolynomial& p,
                                       const BooleanFunction& f) {
  if (p.n() != f.n()) throw SpecError("arity mismatch");
  Rational m = signed_margin(p, f);
  if (m <= 0) return std::nullopt;
  return m;
}

inline Rational sup_norm_on_domain(const FourierPolynomial& p,
                                   const BooleanFunction& f) {
  Rational s = 0;
  f.for_each([&](Mask x, std::uint8_t) { s = std::max(s, abs(p.evaluate(x))); });
  return s;
}

/// Rescales p to unit l1 coefficient mass.
inline SignRepresentation normalize_l1(const FourierPolynomial& p,
                                       std::shared_ptr<const BooleanFunction> f) {
  if (!bias_of(p, *f)) {
    throw NotASignRepresentation("polynomial does not sign-represent " +
                                 f->spec());
  }
  const Rational l1 = p.l1_norm();
  FourierPolynomial q = p.scaled(Rational(1) / l1);
  Rational beta = *bias_of(q, *f);
  return SignRepresentation{std::move(q), std::move(f), Norm::L1, beta};
}

inline SignRepresentation normalize_l1(const FourierPolynomial& p,
                                       const BooleanFunction& f) {
  return normalize_l1(p, std::make_shared<const BooleanFunction>(f));
}

// ---------------------------------------------------------------------------
// Univariate polynomials and symmetrization

/// Exact univariate polynomial sum_i c_i t^i.
class UnivariatePolynomial {
 public:
  UnivariatePolynomial() = default;
  explicit UnivariatePolynomial(std::vector<Rational> coeffs)
      : coeffs_(std::move(coeffs)) {
    trim();
  }

  /// The unique polynomial of degree <= size-1 through (k, values[k]),
  /// via Newton forward differences.
  static UnivariatePolynomial interpolate(std::vector<Rational> values) {
    const std::size_t count = values.size();
    std::vector<Rational> diffs;
    diffs.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
      diffs.push_back(values[0]);
      for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        values[i] = values[i + 1] - values[i];
      }
      values.pop_back();
    }
    // Accumulate sum_j diffs[j] * C(t, j) in the monomial basis.
    std::vector<Rational> out(count, Rational(0));
    std::vector<Rational> falling{Rational(1)};  // t(t-1)...(t-j+1) / j!
    for (std::size_t j = 0; j < count; ++j) {
      for (std::size_t i = 0; i < falling.size(); ++i) out[i] += diffs[j] * falling[i];
      std::vector<Rational> next(falling.size() + 1, Rational(0));
      for (std::size_t i = 0; i < falling.size(); ++i) {
        next[i + 1] += falling[i];
        next[i] -= falling[i] * static_cast<long>(j);
      }
      for (auto& c : next) c /= static_cast<long>(j + 1);
      falling = std::move(next);
    }
    return UnivariatePolynomial(std::move(out));
  }

  const std::vector<Rational>& coefficients() const { return coeffs_; }

  int degree() const {
    return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1;
  }

  Rational operator()(const Rational& t) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Rational> coeffs_;
};

/// Krawtchouk value K_j(k) = sum over |S| = j of (-1)^{x_S} for a fixed |x| = k.
/// Satisfies C(n,k) K_j(k) = C(n,j) K_k(j).
inline Integer krawtchouk(int n, int j, int k) {
  Integer s = 0;
  for (int i = 0; i <= j; ++i) {
    Integer term = binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(i)) *
                   binomial(static_cast<unsigned long>(n - k), static_cast<unsigned long>(j - i));
    if (i & 1) {
      s -= term;
    } else {
      s += term;
    }
  }
  return s;
}

/// Averages of p over each Hamming sphere |x| = k, k = 0..n.
inline std::vector<Rational> weight_averages(const FourierPolynomial& p) {
  const int n = p.n();
  std::vector<Rational> q(static_cast<std::size_t>(n) + 1, Rational(0));
  for (const auto& [S, c] : p.terms()) {
    const int j = weight(S);
    const Integer level = binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(j));
    for (int k = 0; k <= n; ++k) {
      Rational avg(krawtchouk(n, j, k), level);
      avg.canonicalize();
      q[static_cast<std::size_t>(k)] += c * avg;
    }
  }
  return q;
}

/// q(k) = (sum over |y| = k of p(y)) / C(n, k), as a univariate polynomial.
inline UnivariatePolynomial symmetrize(const FourierPolynomial& p) {
  return UnivariatePolynomial::interpolate(weight_averages(p));
}

// ---------------------------------------------------------------------------
// JSON: {"n": int, "coeffs": {"<mask-as-decimal>": "num/den", ...}}

inline nlohmann::json to_json(const FourierPolynomial& p) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& [S, c] : p.terms()) coeffs[std::to_string(S)] = to_string(c);
  return {{"n", p.n()}, {"coeffs", coeffs}};
}

inline FourierPolynomial polynomial_from_json(const nlohmann::json& j) {
  try {
    FourierPolynomial p(j.at("n").get<int>());
    for (const auto& [key, value] : j.at("coeffs").items()) {
      std::size_t pos = 0;
      const unsigned long long S = std::stoull(key, &pos);
      if (pos != key.size()) throw SpecError("bad mask key '" + key + "'");
      p.set(S, parse_rational(value.get<std::string>()));
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("malformed polynomial JSON: ") + e.what());
  } catch (const std::logic_error& e) {
    throw SpecError(std::string("malformed polynomial JSON: ") + e.what());
  }
}

}  // namespace ueqc
