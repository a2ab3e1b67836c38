#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli_io.hpp"
#include "commands.hpp"

namespace fs = std::filesystem;
using witloop::cli::run;

namespace
{

struct Result
{
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args)
{
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name)
{
  return std::string(WITLOOP_DATA_DIR) + "/" + name;
}

fs::path scratch(const std::string& name)
{
  const fs::path dir = fs::temp_directory_path() / "witloop_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_file(const std::string& name, const std::string& text)
{
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

std::vector<std::string> lines(const std::string& text)
{
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    out.push_back(line);
  return out;
}

}  // namespace

TEST(CliDecompose, PhiPlusSummaryAndJson)
{
  const auto r = invoke({"decompose", data("w_phi_plus.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("c0: 0.25\n"), std::string::npos);
  EXPECT_NE(r.out.find("abs_sum: 0.75\n"), std::string::npos);
  EXPECT_NE(r.out.find("settings: 3\n"), std::string::npos);

  const auto j = invoke({"decompose", data("w_phi_plus.json"), "--output", "-"});
  ASSERT_EQ(j.code, 0);
  const auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc["decomposition"]["abs_sum"].get<double>(), 0.75);
  EXPECT_EQ(doc["optimal"]["abs_sum"].get<double>(), 0.75);
  EXPECT_NE(j.err.find("abs_sum: 0.75"), std::string::npos);
}

TEST(CliDecompose, IdentityHasNoSettings)
{
  const auto r = invoke({"decompose", data("identity4.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("settings: 0\n"), std::string::npos);
}

TEST(CliDecompose, OutputIsByteIdentical)
{
  const auto a = invoke({"decompose", data("ghz3_witness.json"), "--output", "-", "--wm", "-0.2"});
  const auto b = invoke({"decompose", data("ghz3_witness.json"), "--output", "-", "--wm", "-0.2"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(CliDecompose, ThresholdAndCertificationSections)
{
  const auto r = invoke({"decompose", data("w_phi_plus.json"), "--output", "-", "--wm", "-0.5", "--eta-minus", "0.7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc["threshold"]["eta_minus_threshold"].get<double>(), 2.0 / 3.0, 1e-12);
  EXPECT_EQ(doc["threshold"]["eta_minus_threshold_4dp"], "0.6667");
  EXPECT_TRUE(doc["certification"]["certified"].get<bool>());
}

TEST(CliDecompose, ParseErrorsExitTwo)
{
  const auto bad = write_file("bad.json", "{\"dims\": [2,2], \"matrix\": [");
  EXPECT_EQ(invoke({"decompose", bad.string()}).code, 2);

  const auto missing = write_file("missing.json", "{\"dims\": [2]}");
  const auto r = invoke({"decompose", missing.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("matrix"), std::string::npos);

  const auto typed = write_file("typed.json", R"({"dims": [1], "matrix": [[{"re": "x", "im": 0}]]})");
  const auto t = invoke({"decompose", typed.string()});
  EXPECT_EQ(t.code, 2);
  EXPECT_NE(t.err.find("matrix[0][0].re"), std::string::npos);

  EXPECT_EQ(invoke({"decompose", "/nonexistent/file.json"}).code, 2);
  EXPECT_EQ(invoke({"decompose"}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
}

TEST(CliDecompose, SemanticErrorsExitThree)
{
  const auto dims = write_file("dims.json", R"({"dims": [2, 2], "matrix": [[{"re": 1, "im": 0}, {"re": 0, "im": 0}],
                                                                         [{"re": 0, "im": 0}, {"re": 1, "im": 0}]]})");
  const auto r = invoke({"decompose", dims.string()});
  EXPECT_EQ(r.code, 3);

  const auto herm = write_file("herm.json", R"({"dims": [2], "matrix": [[{"re": 1, "im": 0}, {"re": 1, "im": 0}],
                                                                       [{"re": 0, "im": 0}, {"re": 1, "im": 0}]]})");
  EXPECT_EQ(invoke({"decompose", herm.string()}).code, 3);
  EXPECT_EQ(invoke({"decompose", data("ghz3_witness.json"), "--basis", "pauli"}).code, 0);
}

TEST(CliThreshold, ReferenceValues)
{
  const auto r = invoke({"threshold", "--wm", "-0.5", "--c0", "0.25", "--abs-sum", "0.75"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("eta_minus_threshold: 0.666666666667\n"), std::string::npos);

  const auto b = invoke({"threshold", "--wm", "-0.493", "--c0", "0.25", "--abs-sum", "0.75"});
  ASSERT_EQ(b.code, 0);
  EXPECT_NE(b.out.find("eta_minus_threshold_4dp: 0.6698\n"), std::string::npos);

  const auto f = invoke({"threshold", "--wm", "-0.5", "--input", data("w_phi_plus.json")});
  ASSERT_EQ(f.code, 0) << f.err;
  EXPECT_NE(f.out.find("eta_minus_threshold: 0.666666666667\n"), std::string::npos);
}

TEST(CliThreshold, NothingToCertifyExitsFour)
{
  const auto r = invoke({"threshold", "--wm", "0.1", "--c0", "0.25", "--abs-sum", "0.75"});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.out.find("not certifiable"), std::string::npos);
  EXPECT_EQ(invoke({"threshold", "--wm", "0", "--c0", "0.25", "--abs-sum", "0.75"}).code, 4);
}

TEST(CliThreshold, CertificationAtGivenEfficiencies)
{
  const auto r = invoke({"threshold", "--wm", "-0.5", "--c0", "0.25", "--abs-sum", "0.75", "--eta-plus", "1",
                         "--eta-minus", "0.6"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("certified: no\n"), std::string::npos);
  EXPECT_EQ(invoke({"threshold", "--wm", "-0.5", "--c0", "0.25", "--abs-sum", "0.75", "--eta-minus", "1.5"}).code, 2);
  EXPECT_EQ(invoke({"threshold", "--wm", "-0.5", "--c0", "0.25", "--abs-sum", "0.75", "--eta-plus", "0.9"}).code, 2);
  EXPECT_EQ(invoke({"threshold", "--wm", "-0.5", "--c0", "0.25"}).code, 2);
}

TEST(CliContour, GridFormat)
{
  const auto r = invoke({"contour", "--grid", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0], "eta_minus\\eta_plus,0.5,1");
  EXPECT_EQ(l[2].substr(0, 2), "1,");
  EXPECT_EQ(l[2].substr(l[2].rfind(',') + 1), "0");
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(CliContour, WritesFileAndRejectsBadInput)
{
  const fs::path p = scratch("grid.csv");
  ASSERT_EQ(invoke({"contour", "--grid", "20", "--output", p.string()}).code, 0);
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(lines(buf.str()).size(), 21u);

  EXPECT_EQ(invoke({"contour", "--grid", "1"}).code, 2);
  EXPECT_EQ(invoke({"contour", "--output", "/nonexistent/dir/grid.csv"}).code, 2);
}

TEST(CliVerify, MaximallyMixedHasNothingToCertify)
{
  const auto r = invoke({"verify", "--input", data("w_phi_plus.json"), "--state", data("maximally_mixed_2q.json"),
                         "--eta-minus", "0.8"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("true_value: 0.25\n"), std::string::npos);
  EXPECT_NE(r.out.find("no entanglement to certify"), std::string::npos);
}

TEST(CliVerify, InputErrors)
{
  const std::vector<std::string> base{"verify", "--input", data("w_phi_plus.json"), "--state"};
  auto with = [&](std::vector<std::string> tail) {
    std::vector<std::string> args = base;
    args.insert(args.end(), tail.begin(), tail.end());
    return invoke(args).code;
  };
  EXPECT_EQ(with({data("phi_plus_state.json"), "--eta-minus", "0.8", "--shots", "0"}), 2);
  const auto unnormalized = write_file("trace2.json", R"({"dims": [2, 2], "matrix": [
    [{"re": 0.5, "im": 0}, {"re": 0, "im": 0}, {"re": 0, "im": 0}, {"re": 0, "im": 0}],
    [{"re": 0, "im": 0}, {"re": 0.5, "im": 0}, {"re": 0, "im": 0}, {"re": 0, "im": 0}],
    [{"re": 0, "im": 0}, {"re": 0, "im": 0}, {"re": 0.5, "im": 0}, {"re": 0, "im": 0}],
    [{"re": 0, "im": 0}, {"re": 0, "im": 0}, {"re": 0, "im": 0}, {"re": 0.5, "im": 0}]]})");
  EXPECT_EQ(with({unnormalized.string(), "--eta-minus", "0.8"}), 3);
  EXPECT_EQ(with({data("w_phi_plus.json"), "--eta-minus", "0.8"}), 3);
  EXPECT_EQ(with({data("ghz3_witness.json"), "--eta-minus", "0.8"}), 3);
  EXPECT_EQ(with({data("phi_plus_state.json"), "--eta-minus", "0"}), 2);
}

TEST(CliVerify, JsonIsDeterministic)
{
  const std::vector<std::string> args{"verify",      "--input", data("w_phi_plus.json"), "--state",
                                      data("phi_plus_state.json"), "--eta-minus", "0.9", "--output", "-"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(nlohmann::json::parse(a.out).is_object());
}

TEST(CliConjectureScan, SmallScan)
{
  const auto r = invoke({"conjecture-scan", "--samples", "200", "--seed", "3", "--product-samples", "100",
                         "--output", "-"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["note"], "conjecture exploration, not a proof");
  EXPECT_NEAR(doc["reference_phi_plus"]["threshold"].get<double>(), 2.0 / 3.0, 1e-12);
  EXPECT_GE(doc["min_threshold"].get<double>(), 2.0 / 3.0 - 1e-9);
  EXPECT_NE(r.err.find("conjecture exploration, not a proof"), std::string::npos);
  EXPECT_EQ(invoke({"conjecture-scan", "--samples", "0"}).code, 2);
}

TEST(CliHelp, ExitsZero)
{
  EXPECT_EQ(invoke({"--help"}).code, 0);
}
