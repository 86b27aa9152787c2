#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "fraclap/radial_io.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = fraclap::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST(Cli, ClassifyExample) {
  const auto r = run({"classify", "--n", "3", "--alpha", "1", "--beta", "1", "--p", "1", "--q", "1"});
  ASSERT_EQ(r.code, fraclap::cli::kExitOk) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["verdict"], "nonexistence_linear");
  EXPECT_EQ(doc["schema"], 1);
  EXPECT_EQ(doc["converged"], true);
}

TEST(Cli, SignLemmaExample) {
  const auto r = run({"sign-lemma", "--gamma", "2", "--n", "3", "--r", "1", "--R", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_NEAR(doc["value"].get<double>(), 0.0, 1e-8);
  EXPECT_EQ(doc["sign"], "zero");
}

TEST(Cli, NonlocalAverageExample) {
  const auto r = run({"navg", "--alpha", "1", "--const", "1", "--R", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out)["value"].get<double>(), 1.5707963267948966, 1e-8);
}

TEST(Cli, RadialOutputIsBannerThenColumns) {
  const auto r = run({"riesz", "--gamma", "1", "--bump", "1", "2", "--points", "32", "--rmin", "0.1", "--rmax", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, fraclap::kCsvBanner);
  std::getline(in, line);
  EXPECT_EQ(line, "r,value");
  std::size_t rows = 0;
  while (std::getline(in, line)) rows += line.empty() || line.front() == '#' ? 0 : 1;
  EXPECT_EQ(rows, 32u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"bogus"}).code, fraclap::cli::kExitUnknownSubcommand);
  EXPECT_EQ(run({"classify", "--no-such-flag", "1"}).code, fraclap::cli::kExitBadInput);
  EXPECT_EQ(run({"classify", "--p", "-1"}).code, fraclap::cli::kExitBadInput);
  EXPECT_EQ(run({"riesz", "--gamma", "1"}).code, fraclap::cli::kExitBadInput);
  EXPECT_EQ(run({"riesz", "--gamma", "1", "--const", "1", "--bubble", "1"}).code, fraclap::cli::kExitBadInput);
  EXPECT_EQ(run({"sign-lemma", "--gamma", "1", "--r", "1", "--R", "1"}).code, fraclap::cli::kExitBadInput);
  const auto err = run({"classify", "--alpha", "5"});
  EXPECT_EQ(err.code, fraclap::cli::kExitBadInput);
  EXPECT_NE(err.err.find("alpha"), std::string::npos) << err.err;
}

TEST(Cli, NonConvergenceStillWritesOutput) {
  const auto r = run({"navg", "--alpha", "1", "--bubble", "1", "--R", "3", "--tol", "1e-14", "--nodes", "4",
                         "--max-subdivisions", "1"});
  ASSERT_EQ(r.code, fraclap::cli::kExitNoConvergence) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["converged"], false);
  EXPECT_TRUE(doc["value"].is_number());
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"region-map", "--p-range", "0.5", "3", "--q-range", "0.5", "3",
                                      "--p-count", "7", "--q-count", "5"};
  const auto first = run(args);
  const auto second = run(args);
  ASSERT_EQ(first.code, 0) << first.err;
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(std::count(first.out.begin(), first.out.end(), '\n'), 2 + 35);
}

TEST(Cli, OutWritesTheSidecarNextToTheCsv) {
  const auto dir = std::filesystem::temp_directory_path() / "fraclap_cli_test";
  std::filesystem::create_directories(dir);
  const auto csv = dir / "bubble_riesz.csv";
  const auto r = run({"riesz", "--gamma", "1", "--bubble", "2", "--scale", "2", "--out", csv.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto sidecar = fraclap::sidecar_path_for(csv);
  ASSERT_TRUE(std::filesystem::exists(sidecar));
  const auto u = fraclap::radial_from_text(slurp(csv), slurp(sidecar));
  EXPECT_TRUE(u.tail().has_value());
  EXPECT_EQ(json::parse(slurp(sidecar))["schema"], 1);
  std::filesystem::remove_all(dir);
}

TEST(Cli, EveryLibraryOperationIsReachableExactlyOnce) {
  const std::set<std::string> operations{
      "validate",        "make_radial",           "integrate",          "integrate_pv_symmetric",
      "riesz_constant",  "ring_kernel",           "riesz_potential",    "frac_laplacian",
      "green_ball",      "poisson_ball",          "kelvin",             "nonlocal_average",
      "decay_exponents", "fit_decay",             "local_decay_check",  "sign_integral_surface",
      "sign_integral_theta", "build_counterexample", "representation_identity", "classify",
      "bootstrap",       "kelvin_defect",         "picard_iterate",     "region_map"};
  std::map<std::string, int> seen;
  std::set<std::string> names;
  for (const auto& info : fraclap::cli::subcommands()) {
    names.insert(info.name);
    for (const auto& op : info.operations) ++seen[op];
  }
  for (const auto& op : operations) EXPECT_EQ(seen[op], 1) << op;
  for (const auto& [op, count] : seen) EXPECT_TRUE(operations.count(op)) << "unexpected operation " << op;
  for (const char* name : {"frlap", "riesz", "green", "poisson", "navg", "sign-lemma", "counterexample", "represent",
                           "classify", "bootstrap", "region-map", "iterate", "decay-fit"}) {
    EXPECT_TRUE(names.count(name)) << name;
  }
}

TEST(Cli, EverySubcommandRunsWithItsDefaults) {
  const std::map<std::string, std::vector<std::string>> extra{
      {"frlap", {"--bubble", "1", "--points", "64"}},
      {"riesz", {"--bump", "1", "2", "--points", "64"}},
      {"navg", {"--const", "1"}},
      {"sign-lemma", {"--R", "2"}},
      {"iterate", {"--p", "2", "--q", "2", "--bubble", "1", "--scale", "2", "--steps", "1"}},
      {"decay-fit", {"--bubble", "2"}},
      {"kelvin", {"--bubble", "2"}},
  };
  for (const auto& info : fraclap::cli::subcommands()) {
    if (info.name == "counterexample" || info.name == "represent") continue;  // slow; covered elsewhere
    std::vector<std::string> args{info.name};
    if (auto it = extra.find(info.name); it != extra.end()) args.insert(args.end(), it->second.begin(), it->second.end());
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << info.name << ": " << r.err;
    EXPECT_FALSE(r.out.empty()) << info.name;
  }
}

TEST(Cli, VersionAndHelp) {
  const auto v = run({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("0.1"), std::string::npos);
  const auto h = run({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("sign-lemma"), std::string::npos);
}
