#pragma once

// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 input error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "snc/cli/pair_spec.hpp"
#include "snc/cli/report.hpp"
#include "snc/cli/suite.hpp"

namespace snc::cli {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitInputError = 2 };

/// An explicit --seed wins, then SNC_SEED, then 0.
inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SNC_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::InvalidArgument, std::string("SNC_SEED is not an unsigned integer: ") + env);
  }
  return 0;
}

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact invariants and birational certificates for SNC pairs", "snc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string file;
  auto add_file = [&](CLI::App* sub) { sub->add_option("file", file, "YAML pair spec")->required(); };

  auto* pair_cmd = app.add_subcommand("pair", "Pair spec utilities");
  pair_cmd->require_subcommand(1);
  auto* validate = pair_cmd->add_subcommand("validate", "Parse and validate a spec, then echo it in explicit form");
  add_file(validate);

  auto* invariants = app.add_subcommand("invariants", "chi_d, chi'_d, chi''_d and the weighted Poincare polynomial");
  add_file(invariants);

  std::string at;
  auto* zeta = app.add_subcommand("zeta", "Motivic zeta function at T = L^(-a)");
  add_file(zeta);
  zeta->add_option("--at", at, "exponent a as p/q (default 1/d)");

  auto* stringy = app.add_subcommand("stringy", "Gorenstein volume and stringy invariants of discrepancy data");
  add_file(stringy);

  std::string center;
  bool blowup_json = false;
  auto* blowup = app.add_subcommand("blowup", "Blow up along a center and emit the new pair spec");
  add_file(blowup);
  blowup->add_option("--center", center, "stratum:A,B or coordinates:i,j")->required();
  blowup->add_flag("--json", blowup_json, "emit JSON instead of YAML");

  auto* detline = app.add_subcommand("detline", "Determinant-line exponents per stratum");
  add_file(detline);

  std::string label = "X";
  auto* tau = app.add_subcommand("tau", "Formal BCOV expressions");
  add_file(tau);
  tau->add_option("--label", label, "label for the opaque atom");

  std::optional<std::uint64_t> seed_flag;
  SuiteConfig cfg;
  std::string corpus_dir, out_path, family;
  auto add_suite_options = [&](CLI::App* sub) {
    sub->add_option("--seed", seed_flag, "random seed (default: $SNC_SEED or 0)");
    sub->add_option("--cases", cfg.cases, "number of generated cases")->check(CLI::NonNegativeNumber);
    sub->add_option("--n-max", cfg.limits.n_max)->check(CLI::Range(1, 8));
    sub->add_option("--d-max", cfg.limits.d_max)->check(CLI::Range(1L, 20L));
    sub->add_option("--m-max", cfg.limits.m_max)->check(CLI::Range(1L, 50L));
    sub->add_option("--chain-len", cfg.limits.chain_len)->check(CLI::Range(0, 10));
    sub->add_option("--threads", cfg.threads, "worker threads (0: auto)");
    sub->add_option("--corpus", corpus_dir, "directory of YAML specs")->check(CLI::ExistingDirectory);
    sub->add_option("--out", out_path, "write the report here instead of stdout");
  };
  auto* verify = app.add_subcommand("verify", "Run one family of certificates");
  verify->add_option("family", family, "cov | blowup | bundle | taubir | all")
      ->required()
      ->check(CLI::IsMember({"cov", "blowup", "bundle", "taubir", "all"}));
  add_suite_options(verify);
  auto* report = app.add_subcommand("report", "Run the full verification suite");
  add_suite_options(report);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  auto print = [&](const Json& j) { out << j.dump(2) << "\n"; };
  try {
    if (validate->parsed()) {
      const PairSpec spec = load_pair_spec(file);
      out << emit_pair_spec(spec);
      return kExitOk;
    }
    if (invariants->parsed()) {
      const SncPair pair = load_pair(file);
      print(Json{{"pair", to_json(pair)}, {"invariants", to_json(invariant_vector(pair))}});
      return kExitOk;
    }
    if (zeta->parsed()) {
      const SncPair pair = load_pair(file);
      const Rat a = at.empty() ? Rat(1, pair.d()) : Rat::parse(at);
      print(Json{{"a", to_json(a)}, {"zeta", to_json(zeta_evaluate(pair, a))}});
      return kExitOk;
    }
    if (stringy->parsed()) {
      PairSpec spec = load_pair_spec(file);
      const auto* disc = std::get_if<DiscrepancyData>(&spec);
      if (!disc) throw Error(ErrorCode::InvalidArgument, "stringy needs a discrepancy spec");
      print(Json{{"volume", to_json(motivic_volume(*disc))}, {"stringy", to_json(stringy_invariants(*disc))}});
      return kExitOk;
    }
    if (blowup->parsed()) {
      const SncPair pair = load_pair(file);
      const CenterDescriptor c = parse_center_arg(pair, center);
      const BlowupRecord rec = blow_up(pair, c);
      if (blowup_json)
        print(Json{{"m_e", rec.m_e}, {"exceptional_index", rec.exceptional_index}, {"pair", to_json(rec.new_pair)}});
      else
        out << emit_pair_spec(rec.new_pair);
      return kExitOk;
    }
    if (detline->parsed()) {
      const SncPair pair = load_pair(file);
      const auto exps = det_line_exponents(pair);
      bool ok = true;
      for (const auto& e : exps) ok = ok && e.consistent();
      print(Json{{"exponents", det_line_json(pair, exps)}, {"consistent", ok}});
      return ok ? kExitOk : kExitVerifyFailed;
    }
    if (tau->parsed()) {
      PairSpec spec = load_pair_spec(file);
      if (const auto* disc = std::get_if<DiscrepancyData>(&spec)) {
        print(Json{{"bcov", to_json(bcov_klt_symbolic(*disc, label))}, {"d_independent", true}});
        return kExitOk;
      }
      const SncPair& pair = std::get<SncPair>(spec);
      const TauExpr norm = normalization_term(pair);
      Json j{{"d", pair.d()}, {"normalization", to_json(norm)},
             {"tau_bir_of_opaque", to_json(tau_bir(pair, TauExpr(TauAtom::opaque(label))))}};
      // tau^bir vanishes on pairs reachable from coordinate models
      if (pair.d_canonical()) j["tau_if_reachable_from_model"] = to_json(-norm);
      print(j);
      return kExitOk;
    }
    if (verify->parsed() || report->parsed()) {
      cfg.seed = resolve_seed(seed_flag);
      cfg.corpus_dir = corpus_dir;
      if (verify->parsed() && family != "all") {
        if (family == "blowup")
          cfg.families = {"chi_invariance", "blowup"};
        else
          cfg.families = {family};
      }
      const SuiteResult result = run_verification_suite(cfg);
      if (out_path.empty()) {
        print(result.report);
      } else {
        std::ofstream f(out_path);
        if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + out_path);
        f << result.report.dump(2) << "\n";
        out << (result.all_pass ? "all checks passed" : "some checks failed") << "\n";
      }
      return result.all_pass ? kExitOk : kExitVerifyFailed;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

inline int run_cli(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(std::move(args), out, err);
}

}  // namespace snc::cli
