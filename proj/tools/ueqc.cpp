// ueqc: command-line front end.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 size limit,
// 4 internal certification failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <algorithm>
#include <atomic>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ueqc/acceptance.hpp"
#include "ueqc/bias.hpp"
#include "ueqc/boolfn.hpp"
#include "ueqc/bounds.hpp"
#include "ueqc/cache.hpp"
#include "ueqc/crand.hpp"
#include "ueqc/poly.hpp"
#include "ueqc/qsim.hpp"

namespace {

using namespace ueqc;
using nlohmann::json;
using ordered = nlohmann::ordered_json;

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kSize = 3, kCertification = 4 };

struct Globals {
  std::string cache;
  std::uint64_t seed = 1;
  bool json = false;
  bool symmetric = false;
  int max_degree = -1;
};

std::string six(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

BiasPath path_of(const Globals& g) { return g.symmetric ? BiasPath::Symmetric : BiasPath::Auto; }

ReportOptions report_options(const Globals& g) {
  ReportOptions o;
  o.path = path_of(g);
  if (g.max_degree >= 0) o.max_degree = g.max_degree;
  return o;
}

std::unique_ptr<BiasCache> open_cache(const Globals& g) {
  auto p = BiasCache::resolve_path(g.cache);
  if (!p) return nullptr;
  return std::make_unique<BiasCache>(*p);
}

std::shared_ptr<const BooleanFunction> load(const std::string& spec) {
  return std::make_shared<const BooleanFunction>(make_function(spec));
}

void partial_note(const BooleanFunction& f) {
  if (!f.is_total()) {
    std::cerr << "note: " << f.spec()
              << " is a promise function; the SUP constraint holds on the promise domain only,"
                 " so lower brackets are relaxations\n";
  }
}

ComplexityReport report_for(const std::shared_ptr<const BooleanFunction>& f, const Globals& g,
                            BiasCache* cache) {
  return cache ? complexity_report(f, report_options(g), cache->oracle(f, path_of(g)))
               : complexity_report(f, report_options(g));
}

// ---------------------------------------------------------------------------

int cmd_report(const Globals& g, const std::string& spec) {
  auto f = load(spec);
  partial_note(*f);
  auto cache = open_cache(g);
  const ComplexityReport rep = report_for(f, g, cache.get());
  if (cache) cache->save();
  std::cout << to_json(rep).dump(2) << "\n";
  return kOk;
}

int cmd_bias(const Globals& g, const std::string& spec, int degree, const std::string& norm_name) {
  Norm norm;
  if (norm_name == "L1" || norm_name == "l1") {
    norm = Norm::L1;
  } else if (norm_name == "SUP" || norm_name == "sup") {
    norm = Norm::Sup;
  } else {
    throw SpecError("norm must be L1 or SUP");
  }
  auto f = load(spec);
  partial_note(*f);
  auto cache = open_cache(g);
  const BiasResult r = cache ? cache->max_bias(f, degree, norm, path_of(g))
                             : max_bias(f, degree, norm, path_of(g));
  if (cache) cache->save();
  const BiasProgram prog{f, r.degree, norm, r.symmetric_fastpath};
  if (!verify_bias_result(prog, r)) throw CertificationFailure("bias certificate rejected");
  if (g.json) {
    ordered out = {{"function", f->spec()},
                {"degree", r.degree},
                {"norm", to_string(norm)},
                {"beta", to_string(r.beta)},
                {"beta_value", display_double(r.beta.get_d())},
                {"symmetric_fastpath", r.symmetric_fastpath},
                {"certified", true}};
    if (r.witness) out["witness"] = to_json(r.witness->poly);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "function: " << f->spec() << "\n"
              << "degree: " << r.degree << "\n"
              << "norm: " << to_string(norm) << "\n"
              << "beta: " << six(r.beta.get_d()) << " (" << to_string(r.beta) << ")\n"
              << "certificate: verified\n";
    if (r.witness) {
      std::cout << "witness:";
      for (const auto& [S, c] : r.witness->poly.terms()) {
        std::cout << " {" << bits_to_string(S, f->n()) << ": " << to_string(c) << "}";
      }
      std::cout << "\n";
    }
  }
  return kOk;
}

int cmd_sensitivity(const Globals& g, const std::string& spec) {
  auto f = load(spec);
  const Rational as = average_sensitivity(*f);
  const double reference = std::sqrt(f->n()) / (2 * std::sqrt(std::numbers::pi));
  if (g.json) {
    std::cout << json{{"function", f->spec()},
                      {"n", f->n()},
                      {"avg_sensitivity", to_string(as)},
                      {"avg_sensitivity_value", display_double(as.get_d())},
                      {"sqrt_n_over_2_sqrt_pi", display_double(reference)}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "function: " << f->spec() << "\n"
              << "avg_sensitivity: " << six(as.get_d()) << " (" << to_string(as) << ")\n"
              << "sqrt(n)/(2 sqrt(pi)): " << six(reference) << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimArgs {
  std::string algorithm;
  std::string spec;
  std::string x;
  std::string set;
  std::string g;
  std::string r;
  int m = 0;
  int n = 0;
  int k = -1;
  int degree = -1;
  int trials = 0;
  bool ideal = false;
  bool trace = false;
};

void emit(const Globals& g, const ordered& out) {
  if (g.json) {
    std::cout << out.dump(2) << "\n";
    return;
  }
  for (const auto& [key, value] : out.items()) {
    if (key == "trace") continue;
    std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
  if (out.contains("trace")) std::cout << "trace: " << out["trace"].dump() << "\n";
}

std::string prob_text(double v) { return six(v); }

int sim_quantum(const Globals& g, const SimArgs& a) {
  const OracleMode mode = a.ideal ? OracleMode::Ideal : OracleMode::Concrete;
  ordered out;
  if (a.algorithm == "parity") {
    if (a.set.empty() || a.x.empty()) throw SpecError("parity needs --set and --x");
    const OracleSpec oracle = OracleSpec::from_string(a.x);
    Mask S = 0;
    for (const auto& item : ueqc::detail::split(a.set, ',')) {
      const long i = ueqc::detail::parse_int(item, "set element");
      if (i < 1 || i > oracle.n()) throw SpecError("set element out of range");
      S |= unit(static_cast<int>(i));
    }
    const QueryRun run = parity_query_algorithm(S, oracle, mode);
    const int want = weight(S & parse_bits(a.x)) & 1;
    const int output = run.acceptance_probability > 0.5 ? 1 : 0;
    out = {{"algorithm", "parity"},
           {"output", output},
           {"acceptance", prob_text(run.acceptance_probability)},
           {"queries", run.queries_used},
           {"correct", output == want}};
    if (a.trace) out["trace"] = trace_to_json(run);
  } else if (a.algorithm == "theorem3") {
    if (a.spec.empty() || a.x.empty()) throw SpecError("theorem3 needs --spec and --x");
    auto f = load(a.spec);
    const Mask x = parse_bits(a.x);
    if (static_cast<int>(a.x.size()) != f->n()) throw SpecError("--x length differs from n");
    const int d = a.degree >= 0 ? a.degree : sign_degree(f, path_of(g));
    const BiasResult w = max_bias(f, d, Norm::L1, path_of(g));
    if (!w.witness) throw SpecError("no sign representation of degree " + std::to_string(d));
    const QueryRun run = sign_rep_sampler(*w.witness, OracleSpec::from_mask(x, f->n()), mode);
    const Rational exact = (1 + w.witness->poly.evaluate(x)) / 2;
    const int fx = (*f)(x);
    const double success = fx ? run.acceptance_probability : 1 - run.acceptance_probability;
    out = {{"algorithm", "theorem3"},
           {"function", f->spec()},
           {"degree", d},
           {"acceptance", prob_text(run.acceptance_probability) + " (" + to_string(exact) + ")"},
           {"queries", run.queries_used},
           {"f(x)", fx},
           {"correct", success > 0.5}};
    if (a.trace) out["trace"] = trace_to_json(run);
  } else if (a.algorithm == "fs") {
    if (a.m < 1 || a.g.empty() || a.r.empty()) throw SpecError("fs needs --m, --g and --r");
    if (static_cast<int>(a.r.size()) != a.m) throw SpecError("--r must have m bits");
    std::vector<std::uint8_t> gbits;
    for (char c : a.g) gbits.push_back(c == '1');
    const FSInstance inst = make_fs_instance(a.m, parse_bits(a.r), gbits);
    const FSResult res = fs_algorithm(inst);
    out = {{"algorithm", "fs"},
           {"output", res.output},
           {"recovered_r", bits_to_string(res.r, a.m)},
           {"acceptance", prob_text(res.run.acceptance_probability)},
           {"queries", res.run.queries_used},
           {"correct", res.output == inst.answer()}};
    if (a.trace) out["trace"] = trace_to_json(res.run);
  } else {  // bv
    if (a.m < 1 || a.r.empty()) throw SpecError("bv needs --m and --r");
    if (static_cast<int>(a.r.size()) != a.m) throw SpecError("--r must have m bits");
    const Mask r = parse_bits(a.r);
    OracleSpec o;
    o.bits.push_back(0);
    for (std::size_t i = 0; i < (std::size_t{1} << a.m); ++i) {
      o.bits.push_back(static_cast<std::uint8_t>(inner_product_mod2(from_lex_index(i, a.m), r)));
    }
    const BVResult res = bernstein_vazirani(o, a.m);
    out = {{"algorithm", "bv"},
           {"recovered_r", bits_to_string(res.r, a.m)},
           {"success", prob_text(res.success_probability)},
           {"queries", res.run.queries_used},
           {"correct", res.r == r}};
    if (a.trace) out["trace"] = trace_to_json(res.run);
  }
  emit(g, out);
  return kOk;
}

int sim_classical(const Globals& g, const SimArgs& a) {
  if (a.x.empty()) throw SpecError(a.algorithm + " needs --x");
  const int n = static_cast<int>(a.x.size());
  if (a.n != 0 && a.n != n) throw SpecError("--n differs from the length of --x");
  std::optional<RandomizedAlgorithm> alg;
  std::string spec;
  if (a.algorithm == "omb") {
    alg = omb_algorithm(n);
    spec = "OMB:" + std::to_string(n);
  } else if (a.algorithm == "or") {
    alg = or_algorithm(n);
    spec = "OR:" + std::to_string(n);
  } else {
    if (a.k < 0) throw SpecError("threshold needs --k");
    alg = threshold_algorithm(n, a.k);
    spec = "TH:" + std::to_string(n) + ":" + std::to_string(a.k);
  }
  const BooleanFunction f = make_function(spec);
  const Mask x = parse_bits(a.x);
  const Rational acc = alg->accept_probability(x);
  const int fx = f(x);
  const Rational success = fx ? acc : 1 - acc;
  ordered out = {{"algorithm", alg->name()},
              {"acceptance", six(acc.get_d()) + " (" + to_string(acc) + ")"},
              {"success", six(success.get_d()) + " (" + to_string(success) + ")"},
              {"queries", alg->budget()},
              {"f(x)", fx},
              {"correct", success > Rational(1, 2)}};
  if (a.trials > 0) {
    out["monte_carlo_acceptance"] = six(monte_carlo_acceptance(*alg, x, a.trials, g.seed));
    out["trials"] = a.trials;
    out["seed"] = g.seed;
  }
  emit(g, out);
  return kOk;
}

// ---------------------------------------------------------------------------
// sweep

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = static_cast<int>(ueqc::detail::parse_int(text, "n"));
    return {v, v};
  }
  const int lo = static_cast<int>(ueqc::detail::parse_int(text.substr(0, dots), "n"));
  const int hi = static_cast<int>(ueqc::detail::parse_int(text.substr(dots + 2), "n"));
  if (lo > hi) throw SpecError("empty range " + text);
  return {lo, hi};
}

std::string family_spec(const std::string& family, int n) {
  const auto colon = family.find(':');
  if (colon != std::string::npos) {
    const std::string head = family.substr(0, colon);
    if (head != "TH") throw SpecError("unknown family '" + family + "'");
    return "TH:" + std::to_string(n) + family.substr(colon);
  }
  return family + ":" + std::to_string(n);
}

struct SweepRow {
  std::string spec;
  int n = 0;
  std::string cells;
  std::string error;
  int code = kOk;
};

SweepRow sweep_row(const Globals& g, BiasCache* cache, const std::string& spec, int n) {
  SweepRow row{spec, n, {}, {}, kOk};
  try {
    auto f = load(spec);
    row.spec = f->spec();
    const ComplexityReport rep = report_for(f, g, cache);
    std::string as;
    try {
      as = six(average_sensitivity(*f).get_d());
    } catch (const Unsupported&) {
      as = "";
    }
    std::ostringstream c;
    c << rep.sdeg << "," << rep.uq << "," << rep.uc << "," << six(rep.wuq_lo.value()) << ","
      << six(rep.wuq_hi.value()) << "," << six(rep.wuc_lo.value()) << ","
      << six(rep.wuc_hi.value()) << "," << as;
    row.cells = c.str();
  } catch (const SizeLimit& e) {
    row.error = std::string("size limit: ") + e.what();
    row.code = kSize;
  } catch (const CertificationFailure& e) {
    row.error = std::string("certification: ") + e.what();
    row.code = kCertification;
  } catch (const Error& e) {
    row.error = e.what();
    row.code = kUsage;
  }
  return row;
}

std::string csv_escape(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n') c = ';';
  }
  return s;
}

int cmd_sweep(const Globals& g, const std::string& family, const std::string& range) {
  std::vector<std::pair<std::string, int>> specs;
  if (family == "TT-ALL") {
    const auto [lo, hi] = parse_range(range);
    for (int n = lo; n <= hi; ++n) {
      if (n < 1 || n > 4) throw SizeLimit("TT-ALL supports 1 <= n <= 4");
      for (std::uint64_t t = 0; t < (std::uint64_t{1} << (1 << n)); ++t) {
        specs.emplace_back(nth_function(n, t).spec(), n);
      }
    }
  } else {
    const auto [lo, hi] = parse_range(range);
    for (int n = lo; n <= hi; ++n) specs.emplace_back(family_spec(family, n), n);
  }
  auto cache = open_cache(g);
  // rows are computed concurrently and printed in input order
  std::vector<SweepRow> rows(specs.size());
  std::atomic<std::size_t> next{0};
  const unsigned workers = std::max(1U, std::min(8U, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < specs.size(); i = next++) {
        rows[i] = sweep_row(g, cache.get(), specs[i].first, specs[i].second);
      }
    });
  }
  for (auto& t : pool) t.join();
  std::cout << "spec,n,sdeg,uq,uc,wuq_lo,wuq_hi,wuc_lo,wuc_hi,avg_sensitivity,error\n";
  int ok = 0;
  int first_code = kOk;
  for (const SweepRow& row : rows) {
    std::cout << row.spec << "," << row.n << ",";
    if (row.code == kOk) {
      ++ok;
      std::cout << row.cells << ",\n";
    } else {
      if (first_code == kOk) first_code = row.code;
      std::cout << ",,,,,,,," << csv_escape(row.error) << "\n";
    }
  }
  if (cache) cache->save();
  return ok > 0 ? kOk : first_code;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const Globals& g, const std::string& suite) {
  const auto& suites = acceptance::suites();
  auto it = suites.find(suite);
  if (it == suites.end()) {
    std::string names;
    for (const auto& [name, ids] : suites) names += " " + name;
    std::cerr << "unknown suite '" << suite << "'; known:" << names << "\n";
    return kUsage;
  }
  bool all = true;
  json results = json::array();
  for (int id : it->second) {
    const auto r = acceptance::run_criterion(id);
    all = all && r.passed;
    results.push_back(acceptance::to_json(r));
    if (!g.json) {
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.id << "  " << r.name << "\n      " << r.detail
                << "\n";
    }
  }
  if (g.json) {
    std::cout << json{{"suite", suite}, {"passed", all}, {"criteria", results}}.dump(2) << "\n";
  }
  return all ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unbounded-error query complexity toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Globals g;
  app.add_option("--cache", g.cache, "cache file (default: $UEQC_CACHE)");
  app.add_option("--seed", g.seed, "seed for Monte Carlo demos");
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_flag("--symmetric", g.symmetric, "force the symmetric fast path");
  app.add_option("--max-degree", g.max_degree, "cap on LP degrees")->check(CLI::NonNegativeNumber);

  std::string spec;
  auto* report = app.add_subcommand("report", "complexity report as JSON");
  report->add_option("spec", spec, "function spec")->required();

  SimArgs sim;
  auto* simulate = app.add_subcommand("simulate", "run one algorithm on one input");
  simulate->add_option("algorithm", sim.algorithm)
      ->required()
      ->check(CLI::IsMember({"parity", "theorem3", "fs", "bv", "omb", "or", "threshold"}));
  simulate->add_option("--spec", sim.spec, "function spec (theorem3)");
  simulate->add_option("--x", sim.x, "input bits, x_1 first");
  simulate->add_option("--set", sim.set, "comma separated 1-based positions");
  simulate->add_option("--m", sim.m, "address width (bv, fs)");
  simulate->add_option("--g", sim.g, "g bits in address order (fs)");
  simulate->add_option("--r", sim.r, "hidden string (bv, fs)");
  simulate->add_option("--n", sim.n, "expected arity, checked against --x");
  simulate->add_option("--k", sim.k, "threshold parameter");
  simulate->add_option("--degree", sim.degree, "witness degree (default: sign degree)");
  simulate->add_option("--trials", sim.trials, "Monte Carlo demo runs (classical only)");
  simulate->add_flag("--ideal", sim.ideal, "use the oracle-built parity unitary");
  simulate->add_flag("--trace", sim.trace, "include per-step norms and query counts");

  std::string family, range;
  auto* sweep = app.add_subcommand("sweep", "CSV over a family and n range");
  sweep->add_option("family", family)->required();
  sweep->add_option("range", range, "n or lo..hi")->required();

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run an acceptance suite");
  verify->add_option("suite", suite)->required();

  auto* sensitivity = app.add_subcommand("sensitivity", "average sensitivity");
  sensitivity->add_option("spec", spec)->required();

  int degree = 0;
  std::string norm = "L1";
  auto* bias = app.add_subcommand("bias", "optimal bias at one degree");
  bias->add_option("spec", spec)->required();
  bias->add_option("--degree", degree)->required();
  bias->add_option("--norm", norm, "L1 or SUP");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*report) return cmd_report(g, spec);
    if (*simulate) {
      const bool quantum = sim.algorithm == "parity" || sim.algorithm == "theorem3" ||
                           sim.algorithm == "fs" || sim.algorithm == "bv";
      return quantum ? sim_quantum(g, sim) : sim_classical(g, sim);
    }
    if (*sweep) return cmd_sweep(g, family, range);
    if (*verify) return cmd_verify(g, suite);
    if (*sensitivity) return cmd_sensitivity(g, spec);
    if (*bias) return cmd_bias(g, spec, degree, norm);
  } catch (const SizeLimit& e) {
    std::cerr << "size limit: " << e.what() << "\n";
    return kSize;
  } catch (const CertificationFailure& e) {
    std::cerr << "certification failure: " << e.what() << "\n";
    return kCertification;
  } catch (const Infeasible& e) {
    std::cerr << "certification failure: " << e.what() << "\n";
    return kCertification;
  } catch (const Unbounded& e) {
    std::cerr << "certification failure: " << e.what() << "\n";
    return kCertification;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kCertification;
  }
  return kUsage;
}
