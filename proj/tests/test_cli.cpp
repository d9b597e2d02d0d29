#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "ptcalc/cli.hpp"

using namespace ptcalc;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = PTCALC_SOURCE_DIR;

Json load(const fs::path& p) {
  std::ifstream in(p);
  return Json::parse(in);
}

const Json& report_schema() {
  static const Json s = load(kSource / "schema" / "report.schema.json");
  return s;
}

std::vector<fs::path> fixtures() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(kSource / "fixtures"))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  CliRun r;
  const std::string cmd = std::string(PTCALC_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

RunConfig verify_config() {
  RunConfig c;
  c.command = "verify";
  c.group = "dihedral:5";
  c.subgroup = "tau";
  c.reps = {"W"};
  c.signature = "C1:6";
  return c;
}

}  // namespace

TEST(Config, RoundTripsEveryFixture) {
  const auto files = fixtures();
  ASSERT_GE(files.size(), 50u);
  for (const auto& f : files) {
    const RunConfig c = config_from_json(load(f));
    EXPECT_EQ(config_from_json(config_to_json(c)), c) << f;
  }
}

TEST(Config, FixturesMatchConfigSchema) {
  const Json schema = load(kSource / "schema" / "config.schema.json");
  for (const auto& f : fixtures()) {
    const auto errors = validate_json(load(f), schema);
    EXPECT_TRUE(errors.empty()) << f << ": " << (errors.empty() ? "" : errors.front());
  }
}

TEST(Config, FlagsOverrideFile) {
  RunConfig file = verify_config();
  RunConfig flags;
  flags.signature = "C1:10";
  flags.format = "text";
  const RunConfig m = merge_config(file, flags);
  EXPECT_EQ(m.signature, "C1:10");
  EXPECT_EQ(m.format, "text");
  EXPECT_EQ(m.group, "dihedral:5");
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(config_from_json(Json::array()), InputError);
  EXPECT_THROW(config_from_json(Json{{"command", "verify"}, {"reps", 3}}), InputError);
  EXPECT_THROW(config_from_json(Json{{"command", "verify"}, {"p", "five"}}), InputError);
  RunConfig c = verify_config();
  c.command = "frobnicate";
  EXPECT_THROW(validate_config(c), InputError);
}

TEST(Config, SplitTopLevelRespectsParentheses) {
  EXPECT_EQ(detail::split_top_level("tensor(V(1),V(2)); W", ";,"),
            (std::vector<std::string>{"tensor(V(1),V(2))", "W"}));
  EXPECT_EQ(detail::split_top_level("(1 2);(2 3)", ";"), (std::vector<std::string>{"(1 2)", "(2 3)"}));
}

TEST(Report, VerifyReportValidatesAndIsDeterministic) {
  const Report a = run(verify_config());
  const Report b = run(verify_config());
  EXPECT_EQ(a.exit_code(), 0);
  EXPECT_EQ(a.failed(), 0u);
  const Json ja = to_json(a, false);
  EXPECT_EQ(ja.dump(), to_json(b, false).dump());
  const auto errors = validate_json(to_json(a), report_schema());
  EXPECT_TRUE(errors.empty()) << (errors.empty() ? "" : errors.front());
  EXPECT_EQ(ja["results"]["b"], "5");
  EXPECT_EQ(ja["results"]["genus_X"], "2");
  EXPECT_EQ(ja["summary"]["status"], "pass");
}

TEST(Report, EveryCommandValidates) {
  std::vector<RunConfig> configs;
  configs.push_back(verify_config());
  RunConfig product = verify_config();
  product.command = "product";
  product.group = "dihedral:3";
  product.signature = "C1:4|C1:6";
  configs.push_back(product);
  RunConfig demo;
  demo.command = "dihedral-demo";
  demo.p = 3;
  configs.push_back(demo);
  RunConfig dec;
  dec.command = "decompose";
  dec.group = "dihedral2:3";
  dec.subgroup = "H^2";
  dec.signature = "tau1:4,tau2:6";
  configs.push_back(dec);
  RunConfig bad = verify_config();
  bad.group = "dihedral:9";
  configs.push_back(bad);
  for (const auto& c : configs) {
    const Report r = run(c);
    const auto errors = validate_json(to_json(r), report_schema());
    EXPECT_TRUE(errors.empty()) << c.command << ": " << (errors.empty() ? "" : errors.front());
  }
}

TEST(Report, ExitCodes) {
  RunConfig bad = verify_config();
  bad.group = "dihedral:4";
  const Report r = run(bad);
  EXPECT_EQ(r.exit_code(), 2);
  EXPECT_FALSE(r.error.empty());
  EXPECT_EQ(to_json(r)["summary"]["status"], "input-error");

  // a hypothesis failure is a failed check, not an input error
  RunConfig mixed = verify_config();
  mixed.reps = {"W", "alternating"};
  const Report m = run(mixed);
  EXPECT_TRUE(m.error.empty());
  EXPECT_GT(m.failed(), 0u);
  EXPECT_EQ(m.exit_code(), 1);
}

TEST(Report, EmitMatrix) {
  IntMatrix M = IntMatrix::identity(2, {"a", "bb"});
  M(0, 1) = 12;
  const std::string text = emit_matrix(M, "T");
  EXPECT_EQ(text, "# T (2x2)\na  :  1 12 | 13\nbb :  0  1 | 1\n");
  EXPECT_EQ(emit_matrix(matrix_json("T", M)), text);
}

TEST(Binary, ExitCodesAndOutput) {
  const CliRun ok = run_cli("verify --group dihedral:5 --subgroup tau --reps W --signature C1:6");
  EXPECT_EQ(ok.code, 0);
  const Json j = Json::parse(ok.out);
  EXPECT_EQ(j["results"]["genus_X"], "2");
  EXPECT_TRUE(validate_json(j, report_schema()).empty());

  EXPECT_EQ(run_cli("verify --group dihedral:9 --subgroup tau --reps W --signature C1:6").code, 2);
  EXPECT_EQ(run_cli("verify --group dihedral:5 --subgroup tau --reps 'W;alternating' --signature C1:6").code, 1);
  EXPECT_EQ(run_cli("--no-such-flag").code, 2);
  EXPECT_EQ(run_cli("").code, 2);
  const CliRun text = run_cli("dihedral-demo --p 3 --format text");
  EXPECT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("pass"), std::string::npos);
}

TEST(Binary, ConfigFileWithOverride) {
  const fs::path tmp = fs::temp_directory_path() / "ptcalc_test_config.json";
  {
    std::ofstream out(tmp);
    out << config_to_json(verify_config()).dump();
  }
  const CliRun a = run_cli("--config " + tmp.string());
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(Json::parse(a.out)["results"]["genus_X"], "2");
  const CliRun b = run_cli("--config " + tmp.string() + " --signature C1:10");
  EXPECT_EQ(b.code, 0);
  EXPECT_EQ(Json::parse(b.out)["results"]["genus_X"], "6");
  fs::remove(tmp);
}

TEST(Binary, RegressPassesEveryFixture) {
  const CliRun r = run_cli("regress --fixtures " + (kSource / "fixtures").string());
  EXPECT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["summary"]["failed"], "0");
}
