#pragma once

// On-disk cache of bias LP optima.  One JSON file; entries keyed by
// (function spec, degree, norm, path) hold the primal point and dual
// multipliers, and every hit is re-certified against a rebuilt LP before
// use.  A hit that fails certification is dropped and recomputed.
// Lookups and stores are serialized; LP solves run outside the lock.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ueqc/bias.hpp"
#include "ueqc/errors.hpp"

namespace ueqc {

inline constexpr const char* kToolkitVersion = "ueqc 1.0.0";

class BiasCache {
 public:
  explicit BiasCache(std::filesystem::path file) : file_(std::move(file)) { load(); }

  /// --cache wins over UEQC_CACHE; nullopt when neither is set.
  static std::optional<std::filesystem::path> resolve_path(const std::string& flag) {
    if (!flag.empty()) return std::filesystem::path(flag);
    if (const char* env = std::getenv("UEQC_CACHE"); env != nullptr && *env != '\0') {
      return std::filesystem::path(env);
    }
    return std::nullopt;
  }

  static std::string key(const BiasProgram& prog) {
    return prog.target->spec() + "|" + std::to_string(prog.degree) + "|" + to_string(prog.norm) +
           "|" + (prog.symmetric_fastpath ? "sym" : "gen");
  }

  std::optional<BiasResult> lookup(const BiasProgram& prog) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(key(prog));
    if (it == entries_.end()) return std::nullopt;
    try {
      LpSolution sol;
      sol.objective = parse_rational(it->at("beta").get<std::string>());
      for (const auto& v : it->at("primal")) sol.primal.push_back(parse_rational(v.get<std::string>()));
      for (const auto& v : it->at("dual")) sol.dual.push_back(parse_rational(v.get<std::string>()));
      const LinearProgram lp = build_bias_lp(prog);
      if (!verify_certificate(lp, sol)) throw CertificationFailure("stale entry");
      ++hits_;
      return assemble_bias_result(prog, sol);
    } catch (const std::exception&) {
      entries_.erase(it);
      dirty_ = true;
      return std::nullopt;
    }
  }

  void store(const BiasProgram& prog, const BiasResult& res) {
    std::lock_guard<std::mutex> lock(mu_);
    nlohmann::json primal = nlohmann::json::array(), dual = nlohmann::json::array();
    for (const auto& v : res.primal) primal.push_back(to_string(v));
    for (const auto& v : res.dual_certificate) dual.push_back(to_string(v));
    entries_[key(prog)] = {{"beta", to_string(res.beta)}, {"primal", primal}, {"dual", dual}};
    dirty_ = true;
  }

  /// Cached max_bias.
  BiasResult max_bias(std::shared_ptr<const BooleanFunction> f, int d, Norm norm,
                      BiasPath path = BiasPath::Auto) {
    if (d < 0) throw SpecError("degree must be nonnegative");
    BiasProgram prog{f, std::min(d, f->n()), norm, detail::wants_symmetric(*f, path)};
    if (auto hit = lookup(prog)) return *hit;
    BiasResult res = assemble_bias_result(prog, solve_lp(build_bias_lp(prog)));
    store(prog, res);
    return res;
  }

  BiasOracle oracle(std::shared_ptr<const BooleanFunction> f, BiasPath path = BiasPath::Auto) {
    return [this, f, path](int d, Norm norm) { return max_bias(f, d, norm, path); };
  }

  /// Writes to a temporary sibling, then renames over the target.
  void save() {
    std::lock_guard<std::mutex> lock(mu_);
    if (!dirty_) return;
    nlohmann::json doc = {{"version", kToolkitVersion}, {"entries", entries_}};
    auto tmp = file_;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) throw Error("cannot write cache file " + tmp.string());
      out << doc.dump(1) << "\n";
      if (!out) throw Error("cannot write cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, file_);
    dirty_ = false;
  }

  std::size_t size() const { return entries_.size(); }
  std::size_t hits() const { return hits_; }

 private:
  void load() {
    entries_ = nlohmann::json::object();
    std::ifstream in(file_);
    if (!in) return;
    try {
      nlohmann::json doc = nlohmann::json::parse(in);
      // entries from another version are ignored, not trusted
      if (doc.value("version", "") == kToolkitVersion && doc.contains("entries") &&
          doc["entries"].is_object()) {
        entries_ = doc["entries"];
      }
    } catch (const nlohmann::json::exception&) {
      dirty_ = true;
    }
  }

  std::filesystem::path file_;
  nlohmann::json entries_;
  bool dirty_ = false;
  std::size_t hits_ = 0;
  std::mutex mu_;
};

}  // namespace ueqc
