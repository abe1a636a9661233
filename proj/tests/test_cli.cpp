#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "normal_field/cli.hpp"

using nfield::cli::run_cli;

namespace {

const std::string data = NF_DATA_DIR;

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::filesystem::path temp(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "normal_field_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

int count(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (std::size_t i = hay.find(needle); i != std::string::npos; i = hay.find(needle, i + 1)) ++n;
  return n;
}

}  // namespace

TEST(Cli, CurveVerifyEllipse) {
  const auto out = temp("ellipse.json");
  const CliRun r = run({"curve", "verify", "--spec", data + "/ellipse.json", "--point", "0,0", "--out",
                     out.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(out));
  EXPECT_TRUE(j["report"]["all_checks_pass"].get<bool>());
  for (const auto& [name, ok] : j["report"]["checks"].items()) EXPECT_TRUE(ok.get<bool>()) << name;
  EXPECT_EQ(j["seed"], 0);
  EXPECT_EQ(j["tolerances"]["genericity"], 1e-6);
}

TEST(Cli, PointOnCurveIsInputError) {
  const CliRun r = run({"curve", "verify", "--spec", data + "/ellipse.json", "--point", "2,0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("curve"), std::string::npos);
}

TEST(Cli, SurfaceVerifyEllipsoid) {
  const auto out = temp("ellipsoid.json");
  const CliRun r = run({"surface", "verify", "--spec", data + "/ellipsoid.json", "--point", "0,0,0",
                     "--out", out.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(out));
  EXPECT_EQ(j["report"]["n_plus"], 2);
  EXPECT_EQ(j["report"]["n_minus"], 2);
  EXPECT_EQ(j["report"]["n_zero"], 2);
}

TEST(Cli, UsageErrorsPrintGrammar) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"curve"},
           {"curve", "explode", "--spec", data + "/ellipse.json"},
           {"curve", "verify", "--spec", data + "/ellipse.json", "--point", "1,2,3"},
           {"curve", "verify", "--spec", data + "/ellipse.json", "--bogus"},
           {"field", "emit", "--spec", data + "/ellipse.json", "--res", "1,4", "--svg", "x.svg"},
           {"curve", "verify"},
       }) {
    const CliRun r = run(args);
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("usage: normal-field"), std::string::npos);
  }
}

TEST(Cli, BadSpecIsInputError) {
  const auto bad = temp("bad.json");
  std::ofstream(bad) << "{\"preset\": {\"name\": \"ellipse\", \"params\": [2]}}";
  EXPECT_EQ(run({"curve", "analyze", "--spec", bad.string()}).code, 1);
  EXPECT_EQ(run({"curve", "analyze", "--spec", "/no/such/file.json"}).code, 1);
}

TEST(Cli, BatteryIsDeterministic) {
  const auto a = temp("battery_a.json"), b = temp("battery_b.json");
  const CliRun ra = run({"curve", "verify", "--battery", "3,3", "--seed", "42", "--out", a.string()});
  const CliRun rb = run({"curve", "verify", "--battery", "3,3", "--seed", "42", "--out", b.string()});
  EXPECT_EQ(ra.code, 0) << ra.out;
  EXPECT_EQ(rb.code, 0);
  const std::string ja = slurp(a);
  EXPECT_EQ(ja, slurp(b));
  const auto j = nlohmann::json::parse(ja);
  EXPECT_EQ(j["seed"], 42);
  EXPECT_EQ(j["battery"]["failures"], 0);
  EXPECT_TRUE(j.contains("tolerances"));
  const auto c = temp("battery_c.json");
  run({"curve", "verify", "--battery", "3,3", "--seed", "43", "--out", c.string()});
  EXPECT_NE(ja, slurp(c));
}

TEST(Cli, CsvOutputs) {
  const auto crit = temp("crit.csv"), idx = temp("idx.csv");
  EXPECT_EQ(run({"curve", "critical-points", "--spec", data + "/ellipse.json", "--csv", crit.string()}).code, 0);
  const std::string c = slurp(crit);
  EXPECT_EQ(count(c, "\n"), 5);
  EXPECT_EQ(run({"curve", "indices", "--spec", data + "/ellipse.json", "--csv", idx.string()}).code, 0);
  EXPECT_NE(slurp(idx).find("\n1,3,4,2,0,2,0,4,1,-1\n"), std::string::npos);
}

TEST(Cli, FieldPlotMarksFourCriticalPoints) {
  const auto svg = temp("field.svg");
  EXPECT_EQ(run({"field", "emit", "--spec", data + "/ellipse.json", "--svg", svg.string()}).code, 0);
  const std::string s = slurp(svg);
  EXPECT_EQ(count(s, "class=\"critical-point"), 4);
  EXPECT_EQ(count(s, "class=\"fold\""), 1);
  EXPECT_NE(s.find("</svg>"), std::string::npos);
}

TEST(Cli, CirclePlotHasPointEvolute) {
  const auto svg = temp("circle.svg");
  EXPECT_EQ(run({"curve", "emit", "--spec", data + "/circle.json", "--point", "0.5,0", "--svg", svg.string()}).code, 0);
  const std::string s = slurp(svg);
  EXPECT_EQ(count(s, "class=\"evolute-point\""), 1);
  EXPECT_EQ(count(s, "class=\"evolute\""), 0);
  // One centre at rho = 0.5, drawn red; the saddle normal is dashed.
  EXPECT_EQ(count(s, "class=\"normal-segment\""), 1);
  EXPECT_NE(s.find("stroke=\"red\""), std::string::npos);
}

TEST(Cli, EllipseFarPointNormalSegmentIsGreen) {
  const auto svg = temp("far.svg");
  EXPECT_EQ(run({"curve", "emit", "--spec", data + "/ellipse.json", "--point", "5,0", "--svg", svg.string()}).code, 0);
  const std::string s = slurp(svg);
  EXPECT_EQ(count(s, "class=\"normal-segment\""), 1);
  EXPECT_NE(s.find("class=\"normal-segment\" x1"), std::string::npos);
  EXPECT_NE(s.find("stroke=\"green\""), std::string::npos);
}

TEST(Cli, SpherePlotLabelsLimaconPoles) {
  const auto svg = temp("sphere.svg");
  const CliRun r = run({"field", "emit", "--spec", data + "/limacon.json", "--view", "sphere", "--svg", svg.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  const std::string s = slurp(svg);
  EXPECT_NE(s.find("i_N = 3"), std::string::npos);
  EXPECT_NE(s.find("i_S = -1"), std::string::npos);
}

TEST(Cli, SurfaceFocalCsv) {
  const auto csv = temp("sheets.csv");
  EXPECT_EQ(run({"surface", "emit", "--spec", data + "/bumpy_sphere.json", "--res", "8,4", "--csv", csv.string()}).code, 0);
  const std::string s = slurp(csv);
  EXPECT_EQ(s.substr(0, s.find('\n')), "sheet,x,y,z");
  EXPECT_EQ(count(s, "\n"), 1 + 2 * 8 * 4);
}
