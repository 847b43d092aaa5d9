#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "xsb/experiment.hpp"
#include "xsb/stats.hpp"

using namespace xsb;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<ExperimentRecord> power_law(double exponent, std::size_t n) {
  std::vector<ExperimentRecord> r;
  for (std::size_t i = 0; i < n; ++i) {
    ExperimentRecord rec;
    rec.N = std::pow(2.0, static_cast<double>(i + 2));
    rec.ratio = 0.3 * std::pow(rec.N, exponent);
    r.push_back(rec);
  }
  return r;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("line fits") {
  const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
  const LinearFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.slope_stderr == doctest::Approx(0.0));
  CHECK(f.points == 4);
  CHECK(std::isnan(fit_line(std::vector<double>{1, 2}, std::vector<double>{0, 1}).slope_stderr));
  CHECK_THROWS_AS(fit_line(std::vector<double>{1}, std::vector<double>{1}), DomainError);
  CHECK_THROWS_AS(fit_line(std::vector<double>{1, 1}, std::vector<double>{1, 2}), DomainError);
  CHECK_THROWS_AS(fit_loglog(std::vector<double>{1, 2}, std::vector<double>{1, -2}), DomainError);
  // noisy data: stderr matches the textbook formula
  const std::vector<double> xn{0, 1, 2, 3, 4}, yn{0.1, 0.9, 2.2, 2.8, 4.0};
  const LinearFit g = fit_line(xn, yn);
  double sr = 0.0;
  for (std::size_t i = 0; i < 5; ++i) sr += std::pow(yn[i] - g.intercept - g.slope * xn[i], 2);
  CHECK(g.slope_stderr == doctest::Approx(std::sqrt(sr / 3.0 / 10.0)));
}

TEST_CASE("slope fit over the upper half") {
  CHECK(fit_slope(power_law(0.5, 7)).slope == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(fit_slope(power_law(0.0, 7)).slope) < 1e-12);
  CHECK(fit_slope(power_law(-1.25, 4)).points == 2);
  auto bent = power_law(1.0, 8);
  for (std::size_t i = 0; i < 4; ++i) bent[i].ratio = 1.0;  // only the upper half is fitted
  CHECK(fit_slope(bent).slope == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_slope(power_law(0.5, 3)), DomainError);
  auto zero = power_law(0.5, 6);
  zero[0].ratio = 0.0;
  CHECK_THROWS_AS(fit_slope(zero), DomainError);
}

TEST_CASE("ranges") {
  CHECK(parse_range("4:256:x2") == std::vector<double>{4, 8, 16, 32, 64, 128, 256});
  CHECK(parse_range("1:10:x3") == std::vector<double>{1, 3, 9});
  CHECK(parse_range("0:1:+0.25") == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
  CHECK(parse_range("-0.75,-0.5, -0.25") == std::vector<double>{-0.75, -0.5, -0.25});
  CHECK(parse_range("7") == std::vector<double>{7});
  for (const char* bad : {"", "abc", "1:2", "1:2:y3", "0:4:x2", "1:4:x1", "1:2:+0", "4:2:x2", "1,,2", "1e999"}) {
    CHECK_THROWS_AS(parse_range(bad), UsageError);
  }
}

TEST_CASE("suites and configs") {
  for (Suite s : {Suite::norms, Suite::propagator, Suite::strichartz, Suite::knapp, Suite::trilinear}) {
    CHECK(parse_suite(to_string(s)) == s);
    CHECK_NOTHROW(ExperimentConfig::defaults(s).validate());
  }
  CHECK_THROWS_AS(parse_suite("lemma"), UsageError);

  ExperimentConfig c = ExperimentConfig::defaults(Suite::knapp);
  c.N = {};
  CHECK_THROWS_AS(c.validate(), UsageError);
  c.N = {2, 8};
  CHECK_THROWS_AS(c.validate(), UsageError);
  c.N = {8, 4};
  CHECK_THROWS_AS(c.validate(), UsageError);
  c.N = {4, 512};
  CHECK_THROWS_AS(c.validate(), UsageError);
  c.N = {4, 8};
  c.j = {4};
  CHECK_THROWS_AS(c.validate(), UsageError);
  c.j = {1};
  c.nodes = 1;
  CHECK_THROWS_AS(c.validate(), UsageError);

  ExperimentConfig t = ExperimentConfig::defaults(Suite::trilinear);
  t.b = {0.5};
  CHECK_THROWS_AS(t.validate(), UsageError);
  t.b = {0.75};
  t.grid = {12, 12, 256};
  CHECK_THROWS_AS(t.validate(), UsageError);
  t.grid = {12, 13, 12};
  CHECK_THROWS_AS(t.validate(), UsageError);
  t.signs = {};
  CHECK_THROWS_AS(t.validate(), UsageError);

  ExperimentConfig p = ExperimentConfig::defaults(Suite::propagator);
  p.grid = {1024, 1024, 8};
  CHECK_NOTHROW(p.validate());
  p.grid = {2048, 1024, 8};
  CHECK_THROWS_AS(p.validate(), UsageError);
}

TEST_CASE("knapp bundle") {
  ExperimentConfig c = ExperimentConfig::defaults(Suite::knapp);
  c.s = {0.0};
  c.N = {4, 8, 16, 32};
  c.j = {1, 3};
  const ResultBundle r = execute(c);
  CHECK(r.rows.size() == 8);
  CHECK(r.passed());
  const std::string csv = r.csv();
  CHECK(csv.substr(0, csv.find('\n')) ==
        "N,s,b,j,symbol,norm_u,norm_v,norm_prod,ratio,paper_upper,paper_lower,upper_ok,lower_ok");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
  CHECK(r.rows[0][12] == "pass");
  CHECK(execute(c).csv() == csv);

  const auto j = nlohmann::json::parse(r.json());
  CHECK(j["config"]["suite"] == "knapp");
  CHECK(j["records"].size() == 8);
  CHECK(j["records"][0]["N"] == 4);
  CHECK(j["records"][0]["symbol"] == "hyperbolic");
  CHECK(j["passed"] == true);
  CHECK(j["checks"].size() == r.checks.size());
  CHECK(j.contains("timings"));

  c.s = {-0.5};
  c.N = {4, 8, 16, 32, 64, 128, 256};
  c.j = {1};
  const ResultBundle neg = execute(c);
  REQUIRE(neg.fits.size() == 1);
  CHECK(neg.fits[0].fit.slope > 0.5);
  CHECK(neg.info.count("smallest valid N s=-0.5 b=0.75 j=1") == 1);
}

TEST_CASE("norms bundle") {
  const ResultBundle r = execute(ExperimentConfig::defaults(Suite::norms));
  CHECK(r.passed());
  CHECK(r.columns.front() == "N");
}

TEST_CASE("files are byte-identical under a fixed seed") {
  ExperimentConfig c = ExperimentConfig::defaults(Suite::trilinear);
  c.s = {0.0};
  c.signs = {kMinusMinus};
  c.grid = {8, 8, 8};
  c.seed = 42;
  const auto base = std::filesystem::temp_directory_path() / "xsb_determinism";
  std::filesystem::remove_all(base);
  c.out = base / "a";
  const ResultBundle a = run(c);
  c.out = base / "b";
  run(c);
  CHECK(slurp(base / "a" / "trilinear.csv") == slurp(base / "b" / "trilinear.csv"));
  CHECK(slurp(base / "a" / "trilinear.csv") == a.csv());
  CHECK(a.passed());
  CHECK(a.info.count("probe constant s=0 b=0.55 signs=--") == 1);

  c.seed = 43;
  CHECK(execute(c).csv() != a.csv());
  std::filesystem::remove_all(base);
}

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 256.0, -0.75, 1e-300, 6.02e23}) {
    CHECK(std::stod(format_number(x)) == x);
  }
  CHECK(format_number(4.0) == "4");
}

}
