#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "harmconv/cli.hpp"
#include "harmconv/csv.hpp"
#include "harmconv/errors.hpp"
#include "oracles.hpp"

using namespace harmconv;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    v.push_back(line);
  return v;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "harmconv_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("real literals") {
  CHECK(parse_real("0.25") == 0.25);
  CHECK(parse_real("-1e-3") == -1e-3);
  CHECK(parse_real("pi") == oracle::kPi);
  CHECK(parse_real("-pi/2") == -oracle::kPi / 2);
  CHECK(parse_real("3pi/4") == 3 * oracle::kPi / 4);
  CHECK(parse_real("2*pi/3") == 2 * oracle::kPi / 3);
  CHECK(parse_real("1/3") == 1.0 / 3.0);
  for (const char* bad : {"", "abc", "1/0", "pi/", "2pi3", "nan"})
    CHECK_THROWS_AS(parse_real(bad), ParseError);
}

TEST_CASE("family spec strings") {
  const auto s = parse_family_spec("plus-t:eta=3pi/4,gamma=0.5,n=2,order=64");
  CHECK(s.kind == FamilyKind::PlusT);
  CHECK(s.params.eta == 3 * oracle::kPi / 4);
  CHECK(s.params.n == 2);
  CHECK(s.order == 64);
  const auto back = parse_family_spec(format_family_spec(s));
  CHECK(back.kind == s.kind);
  CHECK(back.params.eta == s.params.eta);
  CHECK(back.params.gamma == s.params.gamma);
  CHECK(back.order == s.order);

  const auto m = parse_family_spec("minus-t:target=minus");
  CHECK(m.minus_target == PommerenkeVariant::Minus);
  CHECK(m.order == kDefaultOrder);
  CHECK_THROWS_AS(parse_family_spec("half-plane-fa:b=0.1"), ConfigurationError);
  CHECK_THROWS_AS(parse_family_spec("half-plane-fa:a"), ConfigurationError);
  CHECK_THROWS_AS(parse_family_spec("nope"), ConfigurationError);
}

TEST_CASE("config parsing") {
  const auto entries = parse_config("# comment\n\norder = 64\nfamily=standard-f0  # trailing\n");
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].line == 3);
  CHECK(entries[0].key == "order");
  CHECK(entries[1].value == "standard-f0");
  CHECK_THROWS_AS(parse_config("no equals sign\n"), ParseError);
}

TEST_CASE("build prints the coefficient table") {
  const auto r = run({"build", "--family", "standard-f0", "--order", "8"});
  REQUIRE(r.code == kExitPass);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == kCoefficientHeader);
  const auto f = parse_coefficient_table(r.out);
  for (std::size_t k = 1; k <= 8; ++k) {
    CHECK(f.h[k] == Complex(0.5 * double(k + 1)));
    CHECK(f.g[k] == Complex(0.5 * (1.0 - double(k))));
  }
}

TEST_CASE("configuration errors exit with 2") {
  CHECK(run({"build", "--family", "half-plane-fa", "--a", "1.5"}).code == kExitConfiguration);
  CHECK(run({"build", "--family", "strip-v", "--beta", "0"}).code == kExitConfiguration);
  CHECK(run({"build", "--family", "standard-f0", "--order", "1"}).code == kExitConfiguration);
  CHECK(run({"build", "--family", "unknown"}).code == kExitConfiguration);
  CHECK(run({"frobnicate"}).code == kExitConfiguration);
  CHECK(run({"verify", "--theorem", "t2.3", "--a", "-0.9", "--n", "4"}).code ==
        kExitConfiguration);
  const auto r = run({"verify", "--theorem", "t2.3", "--a", "1.5"});
  CHECK(r.code == kExitConfiguration);
  CHECK(r.err.find("a") != std::string::npos);
}

TEST_CASE("verify theorem instances") {
  const auto t = run({"verify", "--theorem", "t2.3", "--a", "0", "--alpha", "0", "--gamma", "0",
                      "--eta", "pi", "--n", "1", "--theta", "0", "--order", "1500", "--radius",
                      "0.95"});
  CHECK(t.code == kExitPass);
  CHECK(lines(t.out)[0] == kReportHeader);
  const auto m = run({"verify", "--theorem", "t3.2", "--b", "0", "--eta", "3pi/4", "--n", "2",
                      "--order", "1500", "--radius", "0.95"});
  CHECK(m.code == kExitPass);
}

TEST_CASE("sweep over a") {
  const auto r = run({"sweep", "--theorem", "t2.3", "--n", "1", "--range", "a=-0.5:0.9:0.1",
                      "--order", "600", "--radii", "0.5,0.9", "--angles", "256", "--samples",
                      "512", "--radius", "0.9"});
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 16);
  CHECK(rows[0].rfind("a,in_hypothesis,verdict,", 0) == 0);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double a = std::stod(rows[i].substr(0, rows[i].find(',')));
    const bool inside = rows[i].find(",true,") != std::string::npos;
    CHECK(inside == (a >= -1.0 / 3.0));
  }
  CHECK((r.code == kExitPass || r.code == kExitFailure));
}

TEST_CASE("sweep over n") {
  const auto r = run({"sweep", "--theorem", "t2.3", "--a", "0", "--range", "n=1:4:1", "--order",
                      "600", "--radii", "0.5,0.9", "--angles", "256", "--samples", "512",
                      "--radius", "0.9"});
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 1; i <= 4; ++i) {
    const bool inside = rows[i].find(",true,") != std::string::npos;
    CHECK(inside == (i <= 2));
  }
  const auto empty = run({"sweep", "--theorem", "t2.3", "--range", "a=0.5:0.1:0.1"});
  CHECK(lines(empty.out).size() == 1);
}

TEST_CASE("flags override the config file") {
  const auto cfg = scratch("build.cfg");
  write_file(cfg, "# defaults\nfamily = half-plane-fa\na = 0.5\norder = 6\n");
  const auto from_cfg = run({"build", "--config", cfg.string()});
  REQUIRE(from_cfg.code == kExitPass);
  CHECK(lines(from_cfg.out).size() == 8);
  const auto overridden = run({"build", "--config", cfg.string(), "--order", "4", "--a", "0.25"});
  REQUIRE(overridden.code == kExitPass);
  CHECK(lines(overridden.out).size() == 6);
  CHECK(parse_coefficient_table(overridden.out).h[1] == parse_coefficient_table(
      run({"build", "--family", "half-plane-fa", "--a", "0.25", "--order", "4"}).out).h[1]);

  write_file(cfg, "family = standard-f0\ncolour = red\n");
  const auto bad = run({"build", "--config", cfg.string()});
  CHECK(bad.code == kExitConfiguration);
  CHECK(bad.err.find("line 2") != std::string::npos);
}

TEST_CASE("built tables round-trip through verify") {
  const auto table = scratch("f.csv");
  REQUIRE(run({"build", "--family", "half-plane-fa", "--a", "0.3", "--order", "300", "--out",
               table.string()})
              .code == kExitPass);
  const auto from_csv = run({"verify", "--map", table.string(), "--direction", "0", "--radius",
                             "0.9"});
  const auto from_spec = run({"verify", "--map", "half-plane-fa:a=0.3,order=300", "--direction",
                              "0", "--radius", "0.9"});
  CHECK(from_csv.code == from_spec.code);
  CHECK(from_csv.out == from_spec.out);
  CHECK(read_file(table) == run({"build", "--family", "half-plane-fa", "--a", "0.3", "--order",
                                 "300"})
                                .out);
}

TEST_CASE("runtime and inconclusive exits") {
  CHECK(run({"render", "--family", "standard-f0", "--order", "64", "--out",
             "/nonexistent-dir/x.svg"})
            .code == kExitFailure);
  const auto table = scratch("flat.csv");
  write_file(table, std::string(kCoefficientHeader) + "\n0,0,0,0,0\n1,0,0,0,0\n2,1,0,0,0\n");
  CHECK(run({"verify", "--map", table.string()}).code == kExitInconclusive);
}

TEST_CASE("render writes an SVG") {
  const auto r = run({"render", "--family", "standard-f0", "--order", "256", "--circles", "3",
                      "--radial-lines", "4", "--guide", "0"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("<svg") != std::string::npos);
  CHECK(r.out.find("class=\"guide\"") != std::string::npos);
}
