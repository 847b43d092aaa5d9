#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "xsb/error.hpp"
#include "xsb/experiment.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, sep);) out.push_back(p);
  return out;
}

std::array<std::size_t, 3> parse_grid(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw xsb::UsageError("--grid expects n1,n2,nt");
  std::array<std::size_t, 3> g{};
  for (std::size_t i = 0; i < 3; ++i) {
    const double x = xsb::parse_range(parts[i]).at(0);
    if (x < 1.0 || x != static_cast<double>(static_cast<std::size_t>(x))) {
      throw xsb::UsageError("--grid entries must be positive integers");
    }
    g[i] = static_cast<std::size_t>(x);
  }
  return g;
}

void report(const xsb::ResultBundle& bundle) {
  for (const auto& c : bundle.checks) {
    std::printf("[%s] %s: %.6g (threshold %.6g)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.threshold);
  }
  for (const auto& f : bundle.fits) {
    std::printf("fit %s: slope %.6g +- %.2g over %zu points\n", f.label.c_str(), f.fit.slope, f.fit.slope_stderr,
                f.fit.points);
  }
  for (const auto& [k, v] : bundle.info) std::printf("info %s: %.6g\n", k.c_str(), v);
  std::printf("%zu records, %.2f s\n", bundle.rows.size(), bundle.timings.at("total"));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"X^{s,b} bilinear-estimate laboratory"};
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "plain key = value file; command-line flags win");

  std::string out = ".", grid, s, b, N, j, signs, symbol;
  std::uint64_t seed = 1;
  std::size_t nodes = 0, workers = 0;
  app.add_option("--out", out, "output directory for <suite>.csv and <suite>.json");
  app.add_option("--seed", seed, "seed for every random draw");
  app.add_option("--nodes", nodes, "Gauss-Legendre nodes per quadrature piece");
  app.add_option("--grid", grid, "grid sizes n1,n2,nt");
  app.add_option("--s", s, "s values (list or range)");
  app.add_option("--b", b, "b values (list or range)");
  app.add_option("--N", N, "N values, e.g. 4:256:x2");
  app.add_option("--j", j, "product selectors 1, 2, 3");
  app.add_option("--signs", signs, "sign pairs among --, ++, +- (comma separated)");
  app.add_option("--symbol", symbol, "hyperbolic or elliptic");
  app.add_option("--workers", workers, "worker threads (0 = hardware concurrency)");

  for (const char* name : {"norms", "propagator", "strichartz", "knapp", "trilinear"}) {
    app.add_subcommand(name, std::string("run the ") + name + " suite")->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    const xsb::Suite suite = xsb::parse_suite(app.get_subcommands().front()->get_name());
    xsb::ExperimentConfig cfg = xsb::ExperimentConfig::defaults(suite);
    auto given = [&](const char* flag) { return app.count(flag) > 0; };
    cfg.out = out;
    cfg.seed = seed;
    cfg.workers = workers;
    if (given("--nodes")) cfg.nodes = nodes;
    if (given("--grid")) cfg.grid = parse_grid(grid);
    if (given("--s")) cfg.s = xsb::parse_range(s);
    if (given("--b")) cfg.b = xsb::parse_range(b);
    if (given("--N")) cfg.N = xsb::parse_range(N);
    if (given("--j")) {
      cfg.j.clear();
      for (double x : xsb::parse_range(j)) {
        if (x != static_cast<double>(static_cast<int>(x))) throw xsb::UsageError("--j entries must be integers");
        cfg.j.push_back(static_cast<int>(x));
      }
    }
    if (given("--signs")) {
      cfg.signs.clear();
      for (const auto& p : split(signs, ',')) cfg.signs.push_back(xsb::parse_sign_pair(p));
    }
    if (given("--symbol")) cfg.symbol = xsb::parse_symbol(symbol);

    const xsb::ResultBundle bundle = xsb::run(cfg);
    report(bundle);
    return bundle.passed() ? kExitPass : kExitFail;
  } catch (const xsb::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const xsb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
