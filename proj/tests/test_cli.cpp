#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mroot/cli.hpp"

using namespace mroot;
using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string spec_path(const std::string& name) {
  return (std::filesystem::path(MROOT_SPECS_DIR) / (name + ".json")).string();
}

std::string write_temp(const std::string& stem, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("mroot_cli_" + stem + ".json");
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(CliValidate, AcceptsCatalogExport) {
  const CliRun r = run({"validate", spec_path("euclid2")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["schema"], kSchema);
  EXPECT_EQ(doc["valid"], true);
}

TEST(CliValidate, RejectsUnsortedIndex) {
  const std::string path = write_temp(
      "unsorted",
      R"({"dimension": 2, "degree": 3, "coefficients": [
           {"index": [1, 1, 1], "poly": [{"exp": [0, 0], "coeff": 1}]},
           {"index": [2, 1, 1], "poly": [{"exp": [0, 0], "coeff": 1}]}]})");
  const CliRun r = run({"validate", path});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("[2,1,1]"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("coefficients[1]"), std::string::npos) << r.err;
}

TEST(CliValidate, RejectsDegreeOne) {
  const std::string path = write_temp(
      "degree1", R"({"dimension": 2, "degree": 1, "coefficients": [
           {"index": [1], "poly": [{"exp": [0, 0], "coeff": 1}]}]})");
  EXPECT_EQ(run({"validate", path}).code, kExitInput);
}

TEST(CliValidate, MissingFileAndUnknownSubcommand) {
  EXPECT_EQ(run({"validate", "/nonexistent/spec.json"}).code, kExitInput);
  EXPECT_EQ(run({"frobnicate"}).code, kExitInput);
  EXPECT_EQ(run({}).code, kExitInput);
}

TEST(CliReport, Euclidean) {
  const CliRun r = run({"report", spec_path("euclid2"), "--x=0,0", "--y=3,4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["kind"], "report");
  EXPECT_DOUBLE_EQ(doc["scalars"]["F"].get<double>(), 5.0);
  for (const char* t : {"G", "N", "B", "E", "L", "H", "R", "C"}) {
    EXPECT_EQ(doc["tensors"][t]["norm"].get<double>(), 0.0) << t;
  }
  EXPECT_EQ(doc["flags"]["domain_ok"], true);
  EXPECT_EQ(doc["flags"]["positive_definite"], true);
}

TEST(CliReport, BerwaldMoorOutsideDomain) {
  const CliRun r = run({"report", spec_path("berwald_moor3"), "--y=1,1,-1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["flags"]["domain_ok"], false);
  EXPECT_TRUE(doc["scalars"]["F"].is_null());
  EXPECT_TRUE(doc["tensors"]["g"].is_null());
  EXPECT_DOUBLE_EQ(doc["scalars"]["A"].get<double>(), -1.0);
  EXPECT_TRUE(doc["tensors"]["G"]["components"].is_array());
}

TEST(CliReport, ConformalSpray) {
  const CliRun r = run({"report", spec_path("conformal2"), "--y=1,1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json g = json::parse(r.out)["tensors"]["G"]["components"];
  EXPECT_NEAR(g[0].get<double>(), 0.0, 1e-10);
  EXPECT_NEAR(g[1].get<double>(), 1.0, 1e-10);
}

TEST(CliReport, DegenerateAndBadInput) {
  const std::string deg = write_temp(
      "degenerate", R"({"dimension": 2, "degree": 2, "coefficients": [
           {"index": [1, 1], "poly": [{"exp": [0, 0], "coeff": 1}]}]})");
  EXPECT_EQ(run({"report", deg, "--y=1,1"}).code, kExitDegenerate);
  EXPECT_EQ(run({"report", spec_path("euclid2"), "--y=1,abc"}).code, kExitInput);
  EXPECT_EQ(run({"report", spec_path("euclid2"), "--y=1,2,3"}).code, kExitInput);
  EXPECT_EQ(run({"report", spec_path("euclid2"), "--y=0,0"}).code, kExitInput);
  EXPECT_EQ(run({"report", spec_path("euclid2"), "--x=1", "--y=1,0"}).code, kExitInput);
}

TEST(CliVerify, QuarticPassesAndIsByteIdentical) {
  const std::vector<std::string> args = {"verify", spec_path("quartic2"), "--samples=100",
                                         "--seed=7", "--tol=1e-6"};
  const CliRun a = run(args);
  const CliRun b = run(args);
  EXPECT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const json doc = json::parse(a.out);
  EXPECT_EQ(doc["pass"], true);
  EXPECT_GE(doc["checks"].size(), 20u);
}

TEST(CliVerify, EuclideanResidualsTiny) {
  const CliRun r = run({"verify", spec_path("euclid2"), "--samples=10"});
  ASSERT_EQ(r.code, kExitOk);
  for (const auto& c : json::parse(r.out)["checks"]) {
    EXPECT_LT(c["max_residual"].get<double>(), 1e-12) << c["name"];
  }
}

TEST(CliVerify, OutputIndependentOfThreads) {
  const CliRun a = run({"verify", spec_path("quartic2"), "--samples=30", "--threads=1"});
  const CliRun b = run({"verify", spec_path("quartic2"), "--samples=30", "--threads=4"});
  EXPECT_EQ(a.out, b.out);
}

TEST(CliVerify, ImpossibleToleranceFails) {
  EXPECT_EQ(run({"verify", spec_path("quartic2"), "--samples=10", "--tol=0"}).code,
            kExitCheckFailed);
}

TEST(CliVerify, TamperedSpecRejected) {
  // The y^1 y^2 coefficient split into two differing entries: only sorted indices exist,
  // so an asymmetric A_12 != A_21 cannot be written down.
  const std::string path = write_temp(
      "tampered", R"({"dimension": 2, "degree": 2, "coefficients": [
           {"index": [1, 1], "poly": [{"exp": [0, 0], "coeff": 1}]},
           {"index": [1, 2], "poly": [{"exp": [0, 0], "coeff": 0.1}]},
           {"index": [2, 1], "poly": [{"exp": [0, 0], "coeff": 0.3}]},
           {"index": [2, 2], "poly": [{"exp": [0, 0], "coeff": 1}]}]})");
  EXPECT_EQ(run({"verify", path}).code, kExitInput);
}

TEST(CliVerify, StarvedExitCode) {
  const std::string path = write_temp(
      "negative", R"({"dimension": 2, "degree": 2, "coefficients": [
           {"index": [1, 1], "poly": [{"exp": [0, 0], "coeff": -1}]},
           {"index": [2, 2], "poly": [{"exp": [0, 0], "coeff": -1}]}]})");
  EXPECT_EQ(run({"verify", path, "--samples=5"}).code, kExitStarved);
  EXPECT_EQ(run({"classify", path, "--samples=5"}).code, kExitStarved);
}

TEST(CliClassify, Verdicts) {
  const auto verdicts = [](const std::string& name) {
    const CliRun r = run({"classify", spec_path(name), "--seed=3"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    return json::parse(r.out);
  };
  const json bm = verdicts("berwald_moor3");
  EXPECT_EQ(bm["verdicts"]["riemannian"], false);
  EXPECT_EQ(bm["verdicts"]["landsberg"], true);
  EXPECT_EQ(bm["verdicts"]["berwald"], true);
  EXPECT_EQ(bm["verdicts"]["h_flat"], true);
  EXPECT_EQ(bm["landsberg_fit"]["c"].get<double>(), 0.0);

  const json eu = verdicts("euclid2");
  for (const char* v : {"riemannian", "landsberg", "berwald", "weakly_berwald", "h_flat"}) {
    EXPECT_EQ(eu["verdicts"][v], true) << v;
  }

  const json q = verdicts("quartic2");
  EXPECT_EQ(q["verdicts"]["riemannian"], false);
  EXPECT_GT(q["landsberg_fit"]["residual_rel"].get<double>(), 1e-6);
  EXPECT_EQ(q["forbidden_quadrant"], false);
  EXPECT_LT(q["rationality"]["heldout_residual"].get<double>(), 1e-7);
}

TEST(CliClassify, ByteIdenticalAcrossRunsAndThreads) {
  const CliRun a = run({"classify", spec_path("quartic2"), "--seed=5", "--threads=1"});
  const CliRun b = run({"classify", spec_path("quartic2"), "--seed=5", "--threads=3"});
  EXPECT_EQ(a.out, b.out);
}

TEST(CliExport, PrintsSpec) {
  const CliRun r = run({"export", "quartic2"});
  ASSERT_EQ(r.code, kExitOk);
  std::ifstream in(spec_path("quartic2"));
  std::stringstream shipped;
  shipped << in.rdbuf();
  EXPECT_EQ(r.out, shipped.str());
  EXPECT_EQ(run({"export", "nope"}).code, kExitInput);
}
