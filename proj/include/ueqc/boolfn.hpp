#pragma once

// Boolean functions on n bits: total truth tables, symmetric functions
// stored by Hamming-weight level, and partial (promise) functions stored as
// explicit domain sets.
//
// Bit strings are indexed 1-based as x_1..x_n. In a Mask, x_i lives at bit
// (i - 1). Serialized strings are written left to right as x_1..x_n, and the
// lexicographic index of x treats x_1 as the most significant bit.

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ueqc/errors.hpp"
#include "ueqc/rational.hpp"

namespace ueqc {

using Mask = std::uint64_t;

inline constexpr int kMaxTableBits = 24;
inline constexpr int kMaxSymmetricBits = 4096;
inline constexpr int kMaxMaskBits = 64;

inline int weight(Mask x) { return std::popcount(x); }

inline bool bit(Mask x, int i) { return ((x >> (i - 1)) & 1U) != 0; }

inline Mask unit(int i) { return Mask{1} << (i - 1); }

inline Mask full_mask(int n) {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

inline std::string bits_to_string(Mask x, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 1; i <= n; ++i) {
    if (bit(x, i)) s[static_cast<std::size_t>(i - 1)] = '1';
  }
  return s;
}

inline Mask parse_bits(std::string_view s) {
  if (s.empty() || s.size() > kMaxMaskBits) {
    throw SpecError("bit string must have 1..64 characters: '" +
                    std::string(s) + "'");
  }
  Mask x = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') {
      x |= unit(static_cast<int>(i) + 1);
    } else if (s[i] != '0') {
      throw SpecError("bit string may only contain 0/1: '" + std::string(s) +
                      "'");
    }
  }
  return x;
}

/// Lexicographic position of x among all n-bit strings (x_1 most significant).
inline std::uint64_t lex_index(Mask x, int n) {
  std::uint64_t idx = 0;
  for (int i = 1; i <= n; ++i) idx = (idx << 1) | (bit(x, i) ? 1U : 0U);
  return idx;
}

inline Mask from_lex_index(std::uint64_t idx, int n) {
  Mask x = 0;
  for (int i = n; i >= 1; --i) {
    if (idx & 1U) x |= unit(i);
    idx >>= 1;
  }
  return x;
}

enum class Family {
  Custom,
  Parity,
  Or,
  And,
  Threshold,
  Majority,
  OddMaxBit,
  FourierSampling,
  TruthTable,
};

struct FamilyTag {
  Family kind = Family::Custom;
  int k = 0;  // threshold parameter (TH, MAJ)
  int m = 0;  // FS address width
};

class BooleanFunction {
 public:
  enum class Storage { Table, Weights, Points };

  static BooleanFunction from_table(int n, std::vector<std::uint8_t> table,
                                    std::string spec = {},
                                    FamilyTag tag = {}) {
    if (n < 1 || n > kMaxTableBits) {
      throw SizeLimit("truth tables support 1 <= n <= 24, got " +
                      std::to_string(n));
    }
    if (table.size() != (std::size_t{1} << n)) {
      throw SpecError("truth table length mismatch");
    }
    for (auto& v : table) v = v ? 1 : 0;
    BooleanFunction f(n, Storage::Table, std::move(spec), tag);
    f.table_ = std::move(table);
    return f;
  }

  /// Symmetric total function: by_weight[k] is the value on |x| = k.
  static BooleanFunction from_weights(int n, std::vector<std::uint8_t> by_weight,
                                      std::string spec = {},
                                      FamilyTag tag = {}) {
    if (n < 1 || n > kMaxSymmetricBits) {
      throw SizeLimit("symmetric functions support 1 <= n <= 4096");
    }
    if (by_weight.size() != static_cast<std::size_t>(n) + 1) {
      throw SpecError("weight profile must have n+1 entries");
    }
    for (auto& v : by_weight) v = v ? 1 : 0;
    BooleanFunction f(n, Storage::Weights, std::move(spec), tag);
    f.table_ = std::move(by_weight);
    return f;
  }

  static BooleanFunction from_points(
      int n, std::vector<std::pair<Mask, std::uint8_t>> points,
      std::string spec = {}, FamilyTag tag = {}) {
    if (n < 1 || n > kMaxMaskBits) {
      throw SizeLimit("partial functions support 1 <= n <= 64");
    }
    if (points.empty()) throw SpecError("domain must be nonempty");
    std::sort(points.begin(), points.end());
    for (std::size_t i = 0; i < points.size(); ++i) {
      if ((points[i].first & ~full_mask(n)) != 0) {
        throw SpecError("domain point has bits beyond n");
      }
      points[i].second = points[i].second ? 1 : 0;
      if (i > 0 && points[i].first == points[i - 1].first) {
        if (points[i].second != points[i - 1].second) {
          throw SpecError("conflicting values for input " +
                          bits_to_string(points[i].first, n));
        }
      }
    }
    points.erase(std::unique(points.begin(), points.end()), points.end());
    BooleanFunction f(n, Storage::Points, std::move(spec), tag);
    f.points_ = std::move(points);
    return f;
  }

  static BooleanFunction constant(int n, bool value) {
    return from_weights(n, std::vector<std::uint8_t>(n + 1, value ? 1 : 0),
                        value ? "CONST1:" + std::to_string(n)
                              : "CONST0:" + std::to_string(n));
  }

  int n() const { return n_; }
  Storage storage() const { return storage_; }
  const std::string& spec() const { return spec_; }
  const FamilyTag& family() const { return tag_; }

  bool is_total() const {
    if (storage_ != Storage::Points) return true;
    return n_ < 64 && points_.size() == (std::size_t{1} << n_);
  }

  /// True when the domain can be enumerated point by point.
  bool enumerable() const {
    return storage_ == Storage::Points || n_ <= kMaxTableBits;
  }

  std::uint64_t domain_size() const {
    if (storage_ == Storage::Points) return points_.size();
    if (n_ > kMaxTableBits) throw SizeLimit("domain too large to count");
    return std::uint64_t{1} << n_;
  }

  bool contains(Mask x) const {
    if (n_ < 64 && (x & ~full_mask(n_)) != 0) return false;
    if (storage_ != Storage::Points) return true;
    return find_point(x) != nullptr;
  }

  /// f(x); throws PromiseViolation outside the domain.
  std::uint8_t operator()(Mask x) const {
    if (n_ < 64 && (x & ~full_mask(n_)) != 0) {
      throw PromiseViolation("input has bits beyond n");
    }
    switch (storage_) {
      case Storage::Table:
        return table_[lex_index(x, n_)];
      case Storage::Weights:
        return table_[static_cast<std::size_t>(weight(x))];
      case Storage::Points:
        break;
    }
    const auto* p = find_point(x);
    if (p == nullptr) {
      throw PromiseViolation("input " + bits_to_string(x, n_) +
                             " lies outside the promise domain");
    }
    return p->second;
  }

  /// Evaluates on a serialized bit string of any length n (symmetric
  /// functions accept n > 64).
  std::uint8_t eval_string(std::string_view s) const {
    if (s.size() != static_cast<std::size_t>(n_)) {
      throw SpecError("input length does not match n");
    }
    if (storage_ == Storage::Weights) {
      std::size_t w = 0;
      for (char c : s) {
        if (c == '1') {
          ++w;
        } else if (c != '0') {
          throw SpecError("bit string may only contain 0/1");
        }
      }
      return table_[w];
    }
    return (*this)(parse_bits(s));
  }

  /// Visits (x, f(x)) over the whole domain in increasing mask order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    if (storage_ == Storage::Points) {
      for (const auto& [x, v] : points_) fn(x, v);
      return;
    }
    if (n_ > kMaxTableBits) {
      throw SizeLimit("cannot enumerate the domain of a function with n = " +
                      std::to_string(n_));
    }
    const Mask end = Mask{1} << n_;
    for (Mask x = 0; x < end; ++x) fn(x, (*this)(x));
  }

  std::vector<Mask> domain() const {
    std::vector<Mask> out;
    for_each([&](Mask x, std::uint8_t) { out.push_back(x); });
    return out;
  }

  /// Value per Hamming weight when f is total and symmetric.
  std::optional<std::vector<std::uint8_t>> weight_profile() const {
    if (storage_ == Storage::Weights) return table_;
    if (!is_total() || n_ > kMaxTableBits) return std::nullopt;
    std::vector<int> seen(static_cast<std::size_t>(n_) + 1, -1);
    bool symmetric = true;
    for_each([&](Mask x, std::uint8_t v) {
      auto& s = seen[static_cast<std::size_t>(weight(x))];
      if (s == -1) {
        s = v;
      } else if (s != v) {
        symmetric = false;
      }
    });
    if (!symmetric) return std::nullopt;
    std::vector<std::uint8_t> out(seen.begin(), seen.end());
    return out;
  }

  bool is_symmetric() const { return weight_profile().has_value(); }

  bool is_constant() const {
    std::optional<std::uint8_t> first;
    bool constant = true;
    if (storage_ == Storage::Weights) {
      return std::all_of(table_.begin(), table_.end(),
                         [&](auto v) { return v == table_.front(); });
    }
    for_each([&](Mask, std::uint8_t v) {
      if (!first) first = v;
      if (*first != v) constant = false;
    });
    return constant;
  }

 private:
  BooleanFunction(int n, Storage storage, std::string spec, FamilyTag tag)
      : n_(n), storage_(storage), spec_(std::move(spec)), tag_(tag) {}

  const std::pair<Mask, std::uint8_t>* find_point(Mask x) const {
    auto it = std::lower_bound(
        points_.begin(), points_.end(), x,
        [](const auto& p, Mask key) { return p.first < key; });
    if (it == points_.end() || it->first != x) return nullptr;
    return &*it;
  }

  int n_ = 0;
  Storage storage_ = Storage::Table;
  std::string spec_;
  FamilyTag tag_;
  std::vector<std::uint8_t> table_;
  std::vector<std::pair<Mask, std::uint8_t>> points_;
};

inline std::uint8_t eval(const BooleanFunction& f, Mask x) { return f(x); }

// ---------------------------------------------------------------------------
// Fourier Sampling instances

/// Input to FS: the F-part is the linear function F^r over m-bit addresses,
/// the g-part is an arbitrary 2^m-bit string; FS(F^r, g) = g_r.
struct FSInstance {
  int m = 0;
  Mask r = 0;                     // m-bit string r_1..r_m
  std::vector<std::uint8_t> g;    // g[lex_index(s)] for s in {0,1}^m
  Mask encoded_input = 0;         // F-part then g-part, 2 * 2^m bits

  int input_bits() const { return 2 << m; }
  std::uint8_t answer() const { return g[lex_index(r, m)]; }
};

inline int inner_product_mod2(Mask x, Mask r) { return weight(x & r) & 1; }

inline FSInstance make_fs_instance(int m, Mask r, std::vector<std::uint8_t> g) {
  if (m < 1 || m > 5) throw SizeLimit("FS supports 1 <= m <= 5");
  const std::size_t len = std::size_t{1} << m;
  if (g.size() != len) throw SpecError("g must have 2^m bits");
  if ((r & ~full_mask(m)) != 0) throw SpecError("r has bits beyond m");
  FSInstance inst{m, r, std::move(g), 0};
  for (std::uint64_t idx = 0; idx < len; ++idx) {
    const Mask addr = from_lex_index(idx, m);
    if (inner_product_mod2(addr, r)) {
      inst.encoded_input |= unit(static_cast<int>(idx) + 1);
    }
    if (inst.g[idx]) {
      inst.encoded_input |= unit(static_cast<int>(len + idx) + 1);
    }
  }
  return inst;
}

/// Recovers r from the F-part of an encoded FS input if the linearity
/// promise holds (r_i = F at address e_i, then every address is checked).
inline std::optional<Mask> fs_recover_r(Mask encoded, int m) {
  const std::size_t len = std::size_t{1} << m;
  auto f_bit = [&](Mask addr) {
    return bit(encoded, static_cast<int>(lex_index(addr, m)) + 1);
  };
  Mask r = 0;
  for (int i = 1; i <= m; ++i) {
    if (f_bit(unit(i))) r |= unit(i);
  }
  for (std::uint64_t idx = 0; idx < len; ++idx) {
    const Mask addr = from_lex_index(idx, m);
    if (f_bit(addr) != static_cast<bool>(inner_product_mod2(addr, r))) {
      return std::nullopt;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Function-spec DSL

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline long parse_int(const std::string& s, const char* what) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw SpecError(std::string("malformed ") + what + ": '" + s + "'");
  }
  return v;
}

inline int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

/// Hex string read as a big-endian integer; bit i of the integer is entry i.
inline std::vector<std::uint8_t> hex_to_bits(const std::string& hex,
                                             std::size_t nbits) {
  const std::size_t digits = std::max<std::size_t>(1, (nbits + 3) / 4);
  if (hex.size() != digits) {
    throw SpecError("truth-table length mismatch: expected " +
                    std::to_string(digits) + " hex digits, got " +
                    std::to_string(hex.size()));
  }
  std::vector<std::uint8_t> bits(nbits, 0);
  for (std::size_t j = 0; j < digits; ++j) {
    const int d = hex_digit(hex[digits - 1 - j]);
    if (d < 0) throw SpecError("invalid hex digit in '" + hex + "'");
    for (std::size_t b = 0; b < 4; ++b) {
      if (((d >> b) & 1) == 0) continue;
      const std::size_t idx = 4 * j + b;
      if (idx >= nbits) throw SpecError("truth-table length mismatch");
      bits[idx] = 1;
    }
  }
  return bits;
}

inline std::string bits_to_hex(const std::vector<std::uint8_t>& bits) {
  const std::size_t digits = std::max<std::size_t>(1, (bits.size() + 3) / 4);
  std::string out(digits, '0');
  for (std::size_t j = 0; j < digits; ++j) {
    int d = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t idx = 4 * j + b;
      if (idx < bits.size() && bits[idx]) d |= 1 << b;
    }
    out[digits - 1 - j] = "0123456789abcdef"[d];
  }
  return out;
}

inline int checked_n(long n, long max_n) {
  if (n < 1) throw SpecError("n must be positive");
  if (n > max_n) {
    throw SizeLimit("n = " + std::to_string(n) + " exceeds the limit " +
                    std::to_string(max_n));
  }
  return static_cast<int>(n);
}

inline BooleanFunction threshold(int n, int k, std::string spec,
                                 FamilyTag tag) {
  std::vector<std::uint8_t> w(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) w[static_cast<std::size_t>(j)] = j > k;
  return BooleanFunction::from_weights(n, std::move(w), std::move(spec), tag);
}

}  // namespace detail

/// Truth-table spec "TT:<hex>:<n>" for a total function with n <= 24.
inline std::string truth_table_spec(const BooleanFunction& f) {
  if (!f.is_total() || f.n() > kMaxTableBits) {
    throw Unsupported("truth-table spec needs a total function with n <= 24");
  }
  std::vector<std::uint8_t> bits(std::size_t{1} << f.n());
  f.for_each([&](Mask x, std::uint8_t v) { bits[lex_index(x, f.n())] = v; });
  return "TT:" + detail::bits_to_hex(bits) + ":" + std::to_string(f.n());
}

/// The t-th total function on n <= 5 bits: entry i of the truth table (in
/// lexicographic input order) is bit i of t.  Spec is the TT form.
inline BooleanFunction nth_function(int n, std::uint64_t t) {
  if (n < 1 || n > 5) throw SizeLimit("function enumeration needs 1 <= n <= 5");
  const std::size_t size = std::size_t{1} << n;
  if (size < 64 && t >= (std::uint64_t{1} << size)) throw SpecError("function index out of range");
  std::vector<std::uint8_t> table(size);
  for (std::size_t i = 0; i < size; ++i) table[i] = (t >> i) & 1U;
  auto f = BooleanFunction::from_table(n, table, {}, {Family::TruthTable, 0, 0});
  return BooleanFunction::from_table(n, std::move(table), truth_table_spec(f),
                                     {Family::TruthTable, 0, 0});
}

inline BooleanFunction make_fs_function(int m, std::vector<std::uint8_t> g,
                                        std::string spec = {}) {
  if (m < 1 || m > 5) throw SizeLimit("FS supports 1 <= m <= 5");
  std::vector<std::pair<Mask, std::uint8_t>> points;
  for (Mask r = 0; r < (Mask{1} << m); ++r) {
    auto inst = make_fs_instance(m, r, g);
    points.emplace_back(inst.encoded_input, inst.answer());
  }
  if (spec.empty()) spec = "FS:" + std::to_string(m) + ":" + detail::bits_to_hex(g);
  return BooleanFunction::from_points(2 << m, std::move(points), std::move(spec),
                                      FamilyTag{Family::FourierSampling, 0, m});
}

/// Parses the function-spec DSL:
///   PARITY:n | OR:n | AND:n | MAJ:n | TH:n:k | OMB:n | TT:<hex>:<n>
///   | FS:m:<g-hex> | FILE:<path>
/// MAJ:n is TH:n:(ceil(n/2) - 1), i.e. f(x) = 1 iff |x| >= n/2.
inline BooleanFunction make_function(std::string_view spec) {
  const std::string text(spec);
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw SpecError("malformed spec '" + text + "'");
  }
  const std::string head = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);

  if (head == "FILE") {
    std::ifstream in(rest);
    if (!in) throw SpecError("cannot open function file '" + rest + "'");
    std::vector<std::pair<Mask, std::uint8_t>> points;
    int n = -1;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      std::string bits, value, extra;
      if (!(ls >> bits)) continue;
      if (!(ls >> value) || (ls >> extra) || (value != "0" && value != "1")) {
        throw SpecError("line " + std::to_string(lineno) +
                        ": expected '<bitstring> <0|1>'");
      }
      if (n == -1) n = static_cast<int>(bits.size());
      if (static_cast<int>(bits.size()) != n) {
        throw SpecError("line " + std::to_string(lineno) +
                        ": inconsistent bit-string length");
      }
      points.emplace_back(parse_bits(bits), value == "1");
    }
    if (points.empty()) throw SpecError("function file defines no points");
    return BooleanFunction::from_points(n, std::move(points), text);
  }

  const auto parts = detail::split(rest, ':');
  auto expect_parts = [&](std::size_t count) {
    if (parts.size() != count) throw SpecError("malformed spec '" + text + "'");
  };

  if (head == "PARITY" || head == "OR" || head == "AND" || head == "MAJ") {
    expect_parts(1);
    const int n = detail::checked_n(detail::parse_int(parts[0], "n"),
                                    kMaxSymmetricBits);
    if (head == "PARITY") {
      std::vector<std::uint8_t> w(static_cast<std::size_t>(n) + 1);
      for (int j = 0; j <= n; ++j) w[static_cast<std::size_t>(j)] = j & 1;
      return BooleanFunction::from_weights(n, std::move(w), text,
                                           {Family::Parity});
    }
    if (head == "OR") return detail::threshold(n, 0, text, {Family::Or, 0});
    if (head == "AND") {
      return detail::threshold(n, n - 1, text, {Family::And, n - 1});
    }
    const int k = (n + 1) / 2 - 1;
    return detail::threshold(n, k, text, {Family::Majority, k});
  }
  if (head == "TH") {
    expect_parts(2);
    const int n = detail::checked_n(detail::parse_int(parts[0], "n"),
                                    kMaxSymmetricBits);
    const long k = detail::parse_int(parts[1], "k");
    if (k < 0 || k > n - 1) {
      throw SpecError("TH:n:k needs 0 <= k <= n-1");
    }
    return detail::threshold(n, static_cast<int>(k), text,
                             {Family::Threshold, static_cast<int>(k)});
  }
  if (head == "OMB") {
    expect_parts(1);
    const int n =
        detail::checked_n(detail::parse_int(parts[0], "n"), kMaxTableBits);
    std::vector<std::uint8_t> table(std::size_t{1} << n);
    for (Mask x = 0; x < (Mask{1} << n); ++x) {
      const int top = x == 0 ? 0 : 64 - std::countl_zero(x);
      table[lex_index(x, n)] = top & 1;
    }
    return BooleanFunction::from_table(n, std::move(table), text,
                                       {Family::OddMaxBit});
  }
  if (head == "TT") {
    expect_parts(2);
    const int n =
        detail::checked_n(detail::parse_int(parts[1], "n"), kMaxTableBits);
    auto table = detail::hex_to_bits(parts[0], std::size_t{1} << n);
    return BooleanFunction::from_table(n, std::move(table), text,
                                       {Family::TruthTable});
  }
  if (head == "FS") {
    expect_parts(2);
    const long m = detail::parse_int(parts[0], "m");
    if (m < 1) throw SpecError("FS needs m >= 1");
    if (m > 5) throw SizeLimit("FS supports m <= 5");
    auto g = detail::hex_to_bits(parts[1], std::size_t{1} << m);
    return make_fs_function(static_cast<int>(m), std::move(g), text);
  }
  throw SpecError("unknown function family '" + head + "'");
}

/// Total influence: (sum over x and i of |f(x) - f(x xor e_i)|) / 2^n.
inline Rational average_sensitivity(const BooleanFunction& f) {
  if (!f.is_total()) {
    throw Unsupported("average sensitivity needs a total function");
  }
  const int n = f.n();
  if (f.storage() == BooleanFunction::Storage::Weights) {
    const auto w = *f.weight_profile();
    Integer edges = 0;
    for (int k = 0; k < n; ++k) {
      // Each edge between levels k and k+1 is counted from both endpoints.
      if (w[static_cast<std::size_t>(k)] != w[static_cast<std::size_t>(k) + 1]) {
        edges += binomial(static_cast<unsigned long>(n),
                          static_cast<unsigned long>(k)) *
                 (n - k);
      }
    }
    Rational out(Integer(2 * edges), pow2(static_cast<unsigned long>(n)));
    out.canonicalize();
    return out;
  }
  Integer total = 0;
  f.for_each([&](Mask x, std::uint8_t v) {
    for (int i = 1; i <= n; ++i) {
      if (f(x ^ unit(i)) != v) total += 1;
    }
  });
  Rational out(total, pow2(static_cast<unsigned long>(n)));
  out.canonicalize();
  return out;
}

}  // namespace ueqc
