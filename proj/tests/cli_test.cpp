#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "snc/cli/app.hpp"
#include "snc/cli/corpus.hpp"
#include "test_support.hpp"

namespace snc::cli {
namespace {

const std::filesystem::path kSource = SNC_SOURCE_DIR;

ErrorCode code_of(const std::function<void()>& fn, std::string* message = nullptr) {
  try {
    fn();
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

SncPair pair_of(const std::string& text) { return std::get<SncPair>(parse_pair_spec(text)); }

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(PairSpec, ExplicitP2) {
  const SncPair p = pair_of(R"(
explicit:
  n: 2
  d: 1
  divisors: [{label: A, mult: 1}, {label: B, mult: 1}, {label: C, mult: 1}]
  strata:
    - {subset: [], betti: [1, 0, 1, 0, 1]}
    - {subset: [A], betti: [1, 0, 1]}
    - {subset: [B], betti: [1, 0, 1]}
    - {subset: [C], betti: [1, 0, 1]}
    - {subset: [A, B], betti: [1]}
    - {subset: [A, C], betti: [1]}
    - {subset: [B, C], betti: [1]}
)");
  EXPECT_EQ(p.strata().size(), 7U);
  EXPECT_EQ(chi_d(p), Rat(3, 4));
  EXPECT_EQ(p.strata(), projective_space_pair(2, 1, {{0, 1}, {1, 1}, {2, 1}}).strata());
}

TEST(PairSpec, ConditionStarIsAValidationError) {
  std::string msg;
  EXPECT_EQ(code_of([&] { pair_of("projective_space: {n: 1, d: 2, divisors: [{coordinate: 0, mult: -2}]}"); }, &msg),
            ErrorCode::ValidationError);
  EXPECT_NE(msg.find("condition (*_d)"), std::string::npos) << msg;
}

TEST(PairSpec, BlowupChainMatchesDirectPipeline) {
  const SncPair from_spec = pair_of(R"(
gamma_model: {n: 2, d: 1, mults: [1, 1]}
blowups:
  - {coordinates: [1, 2]}
  - {stratum: [H1, E3]}
)");
  const SncPair base = gamma_model_pair(2, 1, {1, 1});
  const SncPair once = blow_up(base, coordinate_center(base, {1, 2})).new_pair;
  const SncPair twice = blow_up(once, stratum_center(once, 0b1010)).new_pair;
  EXPECT_EQ(once.divisors()[1].label, "H1");
  EXPECT_EQ(once.divisors()[3].label, "E3");
  EXPECT_EQ(from_spec, twice);
}

TEST(PairSpec, FibrationForm) {
  const SncPair p = pair_of(R"(
fibration:
  base: {projective_space: {n: 1, d: 1, divisors: [{coordinate: 0, mult: 3}, {coordinate: 1, mult: -5}]}}
  fiber: {gamma_model: {n: 1, d: 1, mults: [0]}}
)");
  EXPECT_EQ(p, fibration_pair(projective_space_pair(1, 1, {{0, 3}, {1, -5}}), gamma_model_pair(1, 1, {0})));
}

TEST(PairSpec, ParseErrorsCarryPositions) {
  std::string msg;
  EXPECT_EQ(code_of([&] { parse_pair_spec("projective_space: {n: 2, d: [1"); }, &msg), ErrorCode::ParseError);
  EXPECT_NE(msg.find("line 1"), std::string::npos) << msg;

  EXPECT_EQ(code_of([&] { parse_pair_spec("gamma_model:\n  n: 2\n  d: one\n"); }, &msg), ErrorCode::ParseError);
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("gamma_model.d"), std::string::npos) << msg;

  EXPECT_EQ(code_of([&] { parse_pair_spec("gamma_model: {n: 2, d: 1}\nbogus: 1\n"); }, &msg), ErrorCode::ParseError);
  EXPECT_NE(msg.find("bogus"), std::string::npos) << msg;

  EXPECT_EQ(code_of([&] {
              parse_pair_spec("explicit:\n  n: 1\n  d: 1\n  strata:\n    - {subset: [Z], betti: [1, 0, 1]}\n");
            }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_pair_spec("projective_space: {n: 1, d: 1}\ngamma_model: {n: 1, d: 1}\n"); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { load_pair_spec("/nonexistent/spec.yaml"); }), ErrorCode::ParseError);
}

TEST(PairSpec, ValidationErrorsNameTheInvariant) {
  std::string msg;
  // not Poincare dual
  EXPECT_EQ(code_of([&] { parse_pair_spec("explicit: {n: 1, d: 1, strata: [{subset: [], betti: [1, 0, 2]}]}"); }, &msg),
            ErrorCode::ValidationError);
  EXPECT_NE(msg.find("stratum consistency"), std::string::npos) << msg;
  EXPECT_EQ(code_of([&] {
              parse_pair_spec("gamma_model: {n: 2, d: 1, mults: [1, 1]}\nblowups:\n  - {coordinates: [0, 1]}\n");
            },
                    &msg),
            ErrorCode::ValidationError);
  EXPECT_NE(msg.find("admissible center"), std::string::npos) << msg;
  EXPECT_EQ(code_of([] { parse_pair_spec("discrepancy: {n: 1, divisors: [{label: E, a: -1}], strata: []}"); }),
            ErrorCode::ValidationError);
}

TEST(PairSpec, RoundTripCorpus) {
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(kSource / "corpus")) {
    const PairSpec spec = load_pair_spec(entry.path());
    const std::string text = emit_pair_spec(spec);
    EXPECT_EQ(parse_pair_spec(text), spec) << entry.path();
    EXPECT_EQ(emit_pair_spec(parse_pair_spec(text)), text);
    ++files;
  }
  EXPECT_GE(files, 6);
}

TEST(PairSpec, RoundTripRandomChains) {
  std::mt19937_64 rng(51);
  corpus::Limits lim;
  for (int i = 0; i < 60; ++i) {
    SncPair pair = i % 2 ? corpus::random_gamma_model(rng, lim) : corpus::random_effective_pair(rng, lim);
    for (int step = 0; step < 2; ++step)
      if (auto c = corpus::random_center(rng, pair)) pair = blow_up(pair, *c).new_pair;
    const PairSpec back = parse_pair_spec(emit_pair_spec(pair));
    EXPECT_EQ(std::get<SncPair>(back), pair);
  }
}

TEST(PairSpec, CenterArgument) {
  const SncPair p = gamma_model_pair(2, 1, {1, 1});
  const CenterDescriptor a = parse_center_arg(p, "coordinates:1,2");
  EXPECT_EQ(a.r, 2);
  EXPECT_EQ(a.contains, p.all_divisors() & ~Subset{1});
  const CenterDescriptor b = parse_center_arg(p, "stratum:H1");
  EXPECT_EQ(b.r, 1);
  EXPECT_EQ(code_of([&] { parse_center_arg(p, "stratum:H9"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([&] { parse_center_arg(p, "H1"); }), ErrorCode::ParseError);
}

TEST(Json, ExactEncodings) {
  EXPECT_EQ(to_json(Rat(-3, 4)), "-3/4");
  EXPECT_EQ(to_json(Rat(2)), "2/1");
  const GradedPoly p = GradedPoly::monomial(Rat(5), Rat(-1, 2)) + GradedPoly::monomial(Rat(1, 3), Rat(2));
  EXPECT_EQ(to_json(p).dump(), R"([[[-1,2],"5/1"],[[2,1],"1/3"]])");
}

TEST(Suite, DeterministicAcrossRunsAndThreads) {
  SuiteConfig cfg;
  cfg.seed = 99;
  cfg.cases = 12;
  cfg.corpus_dir = kSource / "corpus";
  cfg.threads = 1;
  const auto a = run_verification_suite(cfg);
  cfg.threads = 4;
  const auto b = run_verification_suite(cfg);
  const auto c = run_verification_suite(cfg);
  EXPECT_TRUE(a.all_pass);
  EXPECT_EQ(a.report.dump(2), b.report.dump(2));
  EXPECT_EQ(b.report.dump(2), c.report.dump(2));
  cfg.seed = 100;
  EXPECT_NE(run_verification_suite(cfg).report.dump(2), a.report.dump(2));
}

TEST(Suite, CorruptedBlowupRuleIsCaught) {
  SuiteConfig cfg;
  cfg.seed = 5;
  cfg.cases = 20;
  // drop the (r - 1) d term from the exceptional multiplicity
  cfg.blow = [](const SncPair& p, const CenterDescriptor& c) {
    BlowupRecord rec = blow_up(p, c);
    auto divisors = rec.new_pair.divisors();
    const long wrong = rec.m_e - static_cast<long>(c.r - 1) * p.d();
    if (wrong == 0 || wrong == -p.d()) return rec;
    divisors[static_cast<std::size_t>(rec.exceptional_index)].mult = wrong;
    rec.new_pair = SncPair(p.n(), p.d(), divisors, rec.new_pair.strata(), p.d_canonical());
    rec.m_e = wrong;
    return rec;
  };
  const auto result = run_verification_suite(cfg);
  EXPECT_FALSE(result.all_pass);
  int failed = 0;
  for (const auto& [family, counts] : result.report["summary"].items()) failed += counts["failed"].get<int>();
  EXPECT_GT(failed, 0);
  EXPECT_GT(result.report["summary"]["cov"]["failed"].get<int>(), 0);
}

TEST(Suite, FamilyFilter) {
  SuiteConfig cfg;
  cfg.cases = 4;
  cfg.families = {"cov"};
  const auto result = run_verification_suite(cfg);
  for (const auto& check : result.report["checks"]) EXPECT_EQ(check["family"], "cov");
  EXPECT_EQ(result.report["summary"].size(), 1U);
}

TEST(Cli, SeedResolution) {
  ::unsetenv("SNC_SEED");
  EXPECT_EQ(resolve_seed(std::nullopt), 0U);
  ::setenv("SNC_SEED", "17", 1);
  EXPECT_EQ(resolve_seed(std::nullopt), 17U);
  EXPECT_EQ(resolve_seed(3), 3U);
  ::setenv("SNC_SEED", "x", 1);
  EXPECT_EQ(code_of([] { resolve_seed(std::nullopt); }), ErrorCode::InvalidArgument);
  ::unsetenv("SNC_SEED");
}

TEST(Cli, ExitCodes) {
  const std::string p2 = (kSource / "corpus" / "p2_hyperplanes.yaml").string();
  EXPECT_EQ(run({"pair", "validate", p2}).code, kExitOk);
  EXPECT_EQ(run({"invariants", p2}).code, kExitOk);
  EXPECT_EQ(run({"zeta", p2, "--at", "1/2"}).code, kExitOk);
  EXPECT_EQ(run({"detline", p2}).code, kExitOk);
  EXPECT_EQ(run({"tau", p2}).code, kExitOk);
  EXPECT_EQ(run({"blowup", p2, "--center", "stratum:H0,H1"}).code, kExitOk);
  EXPECT_EQ(run({"verify", "taubir", "--cases", "3"}).code, kExitOk);

  EXPECT_EQ(run({"invariants", "/nonexistent.yaml"}).code, kExitInputError);
  EXPECT_EQ(run({"frobnicate"}).code, kExitInputError);
  EXPECT_EQ(run({"verify", "everything"}).code, kExitInputError);
  EXPECT_EQ(run({"blowup", p2, "--center", "stratum:Q"}).code, kExitInputError);
  EXPECT_EQ(run({"stringy", p2}).code, kExitInputError);
  EXPECT_EQ(run({"zeta", p2, "--at", "-1"}).code, kExitInputError);
}

TEST(Cli, ValidationErrorReachesStderr) {
  const auto tmp = std::filesystem::temp_directory_path() / "snc_bad_spec.yaml";
  std::ofstream(tmp) << "projective_space:\n  n: 1\n  d: 1\n  divisors:\n    - {coordinate: 0, mult: -1}\n";
  const CliRun r = run({"pair", "validate", tmp.string()});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("ValidationError"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("condition (*_d)"), std::string::npos) << r.err;
  std::filesystem::remove(tmp);
}

TEST(Cli, BlowupOutputParsesBack) {
  const std::string p2 = (kSource / "corpus" / "p2_hyperplanes.yaml").string();
  const CliRun r = run({"blowup", p2, "--center", "coordinates:1,2"});
  ASSERT_EQ(r.code, kExitOk);
  const SncPair base = load_pair(p2);
  EXPECT_EQ(pair_of(r.out), blow_up(base, coordinate_center(base, {1, 2})).new_pair);
}

// Snapshots of current output; regenerate with SNC_UPDATE_GOLDEN=1 after an
// intentional format change.
void compare_golden(const std::string& name, const std::string& actual) {
  const auto path = kSource / "tests" / "golden" / name;
  if (std::getenv("SNC_UPDATE_GOLDEN")) std::ofstream(path) << actual;
  ASSERT_TRUE(std::filesystem::exists(path)) << path;
  EXPECT_EQ(read_file(path), actual) << name;
}

TEST(Cli, GoldenReport) {
  const CliRun r = run({"report", "--seed", "7", "--cases", "6", "--corpus", (kSource / "corpus").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  compare_golden("report_seed7.json", r.out);
}

TEST(Cli, GoldenInvariants) {
  const CliRun r = run({"invariants", (kSource / "corpus" / "p2_hyperplanes.yaml").string()});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("\"chi\": \"3/4\""), std::string::npos);
  compare_golden("invariants_p2_hyperplanes.json", r.out);
}

}  // namespace
}  // namespace snc::cli
