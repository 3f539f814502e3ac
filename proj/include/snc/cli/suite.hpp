#pragma once

// Randomized verification suite over generated blow-up chains plus an
// optional corpus directory of YAML specs.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <exception>
#include <functional>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "snc/cli/corpus.hpp"
#include "snc/cli/pair_spec.hpp"
#include "snc/cli/report.hpp"
#include "snc/version.hpp"

namespace snc::cli {

inline const std::vector<std::string>& all_families() {
  static const std::vector<std::string> f{"chi_invariance", "cov", "blowup", "bundle", "taubir", "bridge"};
  return f;
}

struct SuiteConfig {
  std::filesystem::path corpus_dir;  // empty: generated cases only
  std::uint64_t seed = 0;
  corpus::Limits limits;
  int cases = 200;
  unsigned threads = 0;  // 0: min(hardware, 8)
  std::set<std::string> families{all_families().begin(), all_families().end()};
  BlowupFn blow = default_blow_up;  // tests swap in a corrupted rule
};

struct SuiteResult {
  Json report;
  bool all_pass = true;
};

namespace detail {

struct CaseLog {
  Json checks = Json::array();
  bool failed = false;
};

inline Json center_json(const SncPair& pair, const CenterDescriptor& c) {
  std::vector<std::string> labels;
  for (const auto& div : pair.divisors()) labels.push_back(div.label);
  return Json{{"r", c.r}, {"contains", subset_json(c.contains, labels)}, {"class", to_json(c.center_class())}};
}

class CaseRunner {
 public:
  CaseRunner(const SuiteConfig& cfg, int index) : cfg_(cfg), index_(index) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(index)};
    rng_.seed(seq);
  }

  CaseLog run() {
    gamma_chain();
    effective_chain();
    bundle();
    return std::move(log_);
  }

 private:
  bool wants(const std::string& family) const { return cfg_.families.contains(family); }

  /// Runs one check; library errors count as failures with the message kept.
  void check(const std::string& family, int step, Json context, const std::function<bool(Json&)>& body) {
    if (!wants(family)) return;
    Json entry{{"case", index_}, {"family", family}, {"step", step}};
    for (auto& [k, v] : context.items()) entry[k] = v;
    bool ok = false;
    try {
      ok = body(entry);
    } catch (const Error& e) {
      entry["error"] = e.what();
    }
    entry["ok"] = ok;
    if (!ok) log_.failed = true;
    log_.checks.push_back(std::move(entry));
  }

  void bridge(const SncPair& pair, int step) {
    check("bridge", step, {}, [&](Json& e) {
      e["chi_d"] = to_json(chi_d(pair));
      if (!has_even_cohomology(pair)) {
        e["skipped"] = "odd cohomology";
        return true;
      }
      const Rat limit = specialization_limit(pair);
      e["limit"] = to_json(limit);
      return limit == chi_d(pair);
    });
  }

  void gamma_chain() {
    SncPair pair = corpus::random_gamma_model(rng_, cfg_.limits);
    check("taubir", 0, {}, [&](Json& e) {
      std::vector<long> mults(static_cast<std::size_t>(pair.n()), 0);
      for (int j = 0; j < pair.divisor_count(); ++j) {
        const int coord = pair.model()->coordinate[static_cast<std::size_t>(j)];
        if (coord > 0) mults[static_cast<std::size_t>(coord - 1)] = pair.mult(j);
      }
      const TauExpr value = tau_bir(pair, tau_projective_normal_form(pair.n(), pair.d(), mults));
      e["n"] = pair.n();
      e["d"] = pair.d();
      e["mults"] = mults;
      e["residual"] = to_json(value);
      return value.is_zero();
    });
    bridge(pair, 0);
    for (int step = 1; step <= cfg_.limits.chain_len; ++step) {
      auto c = corpus::random_center(rng_, pair);
      if (!c) break;
      const Json ctx{{"chain", "gamma_model"}, {"center", center_json(pair, *c)}};
      std::optional<SncPair> next;
      try {
        next = cfg_.blow(pair, *c).new_pair;
      } catch (const Error& err) {
        check("chi_invariance", step, ctx, [&](Json& e) {
          e["error"] = err.what();
          return false;
        });
        return;
      }
      check("chi_invariance", step, ctx, [&](Json& e) {
        const Rat before = chi_d(pair), after = chi_d(*next);
        e["before"] = to_json(before);
        e["after"] = to_json(after);
        return before == after;
      });
      check("blowup", step, ctx, [&](Json& e) {
        const TauCertificate cert = verify_blowup_functional_equation(pair, *c, cfg_.blow);
        e["residual"] = to_json(cert.residual);
        return cert.ok;
      });
      bridge(*next, step);
      pair = std::move(*next);
    }
  }

  void effective_chain() {
    SncPair pair = corpus::random_effective_pair(rng_, cfg_.limits);
    bridge(pair, 0);
    for (int step = 1; step <= cfg_.limits.chain_len; ++step) {
      auto c = corpus::random_center(rng_, pair);
      if (!c) break;
      const Json ctx{{"chain", "effective"}, {"center", center_json(pair, *c)}};
      check("cov", step, ctx, [&](Json& e) {
        const CovCertificate cert = change_of_variables_check(pair, *c, cfg_.blow);
        e["lhs"] = cert.lhs.to_string("t");
        e["residual"] = to_json(cert.lhs - cert.rhs);
        return cert.equal;
      });
      pair = blow_up(pair, *c).new_pair;
      bridge(pair, step);
    }
  }

  void bundle() {
    SncPair base = corpus::random_effective_pair(rng_, cfg_.limits);
    if (auto c = corpus::random_center(rng_, base)) base = blow_up(base, *c).new_pair;
    const int n = static_cast<int>(corpus::uniform(rng_, 1, std::max(1, cfg_.limits.n_max - base.n())));
    std::vector<long> mults;
    for (long k = corpus::uniform(rng_, 0, n); k > 0; --k) mults.push_back(corpus::uniform(rng_, 0, cfg_.limits.m_max));
    const SncPair fiber = gamma_model_pair(n, base.d(), mults);
    check("bundle", 0, {{"base_n", base.n()}, {"fiber_n", n}, {"fiber_mults", mults}}, [&](Json& e) {
      const TauCertificate cert = verify_bundle_functional_equation(base, fiber);
      e["residual"] = to_json(cert.residual);
      return cert.ok;
    });
  }

  const SuiteConfig& cfg_;
  int index_;
  std::mt19937_64 rng_;
  CaseLog log_;
};

inline Json corpus_entry(const std::filesystem::path& file, bool& ok) {
  Json entry{{"file", file.filename().string()}};
  const PairSpec spec = load_pair_spec(file);
  if (const auto* pair = std::get_if<SncPair>(&spec)) {
    entry["kind"] = "pair";
    entry["invariants"] = to_json(invariant_vector(*pair));
    entry["zeta_at_1_over_d"] = to_json(motivic_F_d(*pair));
    if (has_even_cohomology(*pair)) {
      const bool bridge_ok = specialization_limit(*pair) == chi_d(*pair);
      entry["bridge"] = bridge_ok;
      ok = ok && bridge_ok;
    } else {
      entry["bridge"] = "skipped: odd cohomology";
    }
    bool detline_ok = true;
    for (const auto& e : det_line_exponents(*pair)) detline_ok = detline_ok && e.consistent();
    entry["det_line_consistent"] = detline_ok;
    ok = ok && detline_ok;
  } else {
    entry["kind"] = "discrepancy";
    entry["stringy"] = to_json(stringy_invariants(std::get<DiscrepancyData>(spec)));
  }
  return entry;
}

}  // namespace detail

/// Runs the suite. Cases run in a bounded worker pool; each case draws from
/// its own generator seeded by (seed, index), so the report is independent
/// of scheduling.
inline SuiteResult run_verification_suite(const SuiteConfig& cfg) {
  SuiteResult result;
  Json corpus_entries = Json::array();
  if (!cfg.corpus_dir.empty()) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(cfg.corpus_dir))
      if (entry.is_regular_file() && (entry.path().extension() == ".yaml" || entry.path().extension() == ".yml"))
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      bool ok = true;
      corpus_entries.push_back(detail::corpus_entry(file, ok));
      result.all_pass = result.all_pass && ok;
    }
  }

  std::vector<detail::CaseLog> logs(static_cast<std::size_t>(std::max(cfg.cases, 0)));
  unsigned workers = cfg.threads ? cfg.threads : std::min(8U, std::max(1U, std::thread::hardware_concurrency()));
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(logs.size(), 1)));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < logs.size();) {
        try {
          logs[i] = detail::CaseRunner(cfg, static_cast<int>(i)).run();
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  Json checks = Json::array();
  Json summary = Json::object();
  for (const auto& f : all_families())
    if (cfg.families.contains(f)) summary[f] = Json{{"passed", 0}, {"failed", 0}, {"skipped", 0}};
  for (auto& log : logs) {
    result.all_pass = result.all_pass && !log.failed;
    for (auto& entry : log.checks) {
      Json& s = summary[entry["family"].get<std::string>()];
      const char* key = entry.contains("skipped") ? "skipped" : entry["ok"].get<bool>() ? "passed" : "failed";
      s[key] = s[key].get<int>() + 1;
      checks.push_back(std::move(entry));
    }
  }

  Json families = Json::array();
  for (const auto& f : all_families())
    if (cfg.families.contains(f)) families.push_back(f);
  result.report = Json{{"tool", "snc"},
                       {"version", kVersion},
                       {"seed", cfg.seed},
                       {"limits",
                        {{"n_max", cfg.limits.n_max},
                         {"d_max", cfg.limits.d_max},
                         {"m_max", cfg.limits.m_max},
                         {"chain_len", cfg.limits.chain_len}}},
                       {"cases", cfg.cases},
                       {"families", families},
                       {"corpus", corpus_entries},
                       {"summary", summary},
                       {"all_pass", result.all_pass},
                       {"checks", checks}};
  return result;
}

}  // namespace snc::cli
