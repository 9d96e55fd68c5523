#include <gtest/gtest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ckbound/ckbound.hpp"
#include "cli.hpp"

using namespace ckbound;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempFile {
 public:
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             ("ckbound-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + ".json"))
                .string();
    std::ofstream(path_) << content;
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

Json genus_two() {
  return Json{{"g", 2},        {"n", 0}, {"r", 0},          {"s", 0}, {"rho", 1}, {"d_closed", 0},
              {"n1", 0},       {"p", 3}, {"points_mod_p", 4}, {"bad_primes", Json::array()}};
}

}  // namespace

TEST(Json, SeriesRoundTrip) {
  const QSeries s(std::vector<Rational>{1, Rational(-3, 7), 0, Rational(22, 5)});
  const Json j = series_to_json(s);
  EXPECT_EQ(j.at("coeffs").at(1), "-3/7");
  EXPECT_EQ(series_from_json(j), s);
  EXPECT_EQ(series_from_json(Json::parse(j.dump())), s);
}

TEST(Json, SeriesSchemaErrors) {
  auto code = [](const Json& j) {
    try {
      series_from_json(j);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidParams;
  };
  EXPECT_EQ(code(Json{{"order", 1}, {"coeffs", {"1"}}}), ErrorCode::SchemaViolation);
  EXPECT_EQ(code(Json{{"order", 0}, {"coeffs", {1}}}), ErrorCode::SchemaViolation);
  EXPECT_EQ(code(Json{{"order", 0}, {"coeffs", {"1/0"}}}), ErrorCode::SchemaViolation);
  EXPECT_EQ(code(Json{{"coeffs", {"1"}}}), ErrorCode::SchemaViolation);
}

TEST(Json, CurveRoundTrip) {
  CurveData c;
  c.g = 1;
  c.n = 3;
  c.n1 = 1;
  c.r = 1;
  c.s = 1;
  c.rho = 1;
  c.d_closed = 2;
  c.p = 5;
  c.points_mod_p = 7;
  c.bad_primes = {{11, 2, true}, {13, 3, false}};
  const CurveData back = curve_from_json(curve_to_json(c));
  EXPECT_EQ(curve_to_json(back), curve_to_json(c));
  Json missing = curve_to_json(c);
  missing.erase("rho");
  try {
    curve_from_json(missing);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SchemaViolation);
    EXPECT_NE(std::string(e.what()).find("rho"), std::string::npos);
  }
}

TEST(Json, BoundReportRoundTrip) {
  const CurveData c = curve_from_json(genus_two());
  const BoundReport r = compute_bound(c, BoundMode::ExactCoefficient, 4096);
  const Json j = bound_report_to_json(r);
  EXPECT_EQ(bound_report_to_json(bound_report_from_json(j)), j);
  EXPECT_EQ(j.at("M"), 16);
  EXPECT_EQ(j.at("conjectural"), true);
}

TEST(Json, KappaRoundTrip) {
  const Json j = kappa_to_json(kappa_p(5));
  EXPECT_EQ(kappa_to_json(kappa_from_json(j)), j);
}

TEST(Json, CMReportRoundTrip) {
  CMData d;
  d.r = 2;
  d.s = 0;
  d.p = 7;
  d.points_mod_p = 8;
  d.C1 = Rational(1);
  const Json j = cm_bound_report_to_json(cm_bound(d, CMBoundMode::Asymptotic, 4096));
  EXPECT_EQ(cm_bound_report_to_json(cm_bound_report_from_json(j)), j);
}

TEST(Cli, SeriesText) {
  const auto r = run_cli({"series", "--kind", "local", "--g", "2", "--n", "0", "--order", "4"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("    3  26\n    4  97\n"), std::string::npos) << r.out;
}

TEST(Cli, SeriesJson) {
  const auto r = run_cli({"series", "--kind", "global", "--g", "1", "--n", "1", "--n1", "1", "--order",
                          "6", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("conjectural"), true);
  EXPECT_EQ(j.at("order"), 6);
}

TEST(Cli, GenusZeroDefaultsToRhoZero) {
  const auto r = run_cli({"find-m", "--g", "0", "--n", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto bad = run_cli({"find-m", "--g", "0", "--n", "3", "--rho", "1"});
  EXPECT_EQ(bad.code, 2);
}

TEST(Cli, BoundFromFile) {
  const TempFile f(genus_two().dump());
  const auto r = run_cli({"bound", "--input", f.path(), "--mode", "simplified", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("M"), 16);
  EXPECT_EQ(j.at("factors").at("simplified_exponent"), "120");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({"verify", "--suite", "nonsense"}).code, 2);
  EXPECT_EQ(run_cli({"series", "--kind", "local", "--g", "1", "--n", "0"}).code, 2);
  EXPECT_EQ(run_cli({"polylog", "find-m", "--s", "12", "--budget", "64"}).code, 3);
  EXPECT_EQ(run_cli({"find-m", "--g", "0", "--n", "4", "--s", "2", "--cap", "1"}).code, 1);
  EXPECT_EQ(run_cli({"bound", "--input", "/nonexistent.json"}).code, 2);
  const TempFile broken("{not json");
  EXPECT_EQ(run_cli({"bound", "--input", broken.path()}).code, 2);
}

TEST(Cli, VerifySuiteJson) {
  const auto r = run_cli({"verify", "--suite", "lemma31", "--order", "32", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("holds"), true);
  EXPECT_EQ(j.at("seed"), 20240601);
  ASSERT_EQ(j.at("suites").size(), 1u);
  EXPECT_EQ(j.at("suites").at(0).at("suite"), "lemma31");
}

TEST(Cli, CMFindM) {
  const auto r = run_cli({"cm", "find-m", "--r", "2", "--s", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("m_tilde: 32"), std::string::npos) << r.out;
}
