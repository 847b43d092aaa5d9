#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "xsb/knapp.hpp"
#include "xsb/stats.hpp"
#include "xsb/trilinear.hpp"

namespace xsb {

enum class Suite { norms, propagator, strichartz, knapp, trilinear };

std::string to_string(Suite suite);
/// Throws UsageError for an unknown name.
Suite parse_suite(const std::string& name);

/// Parses "a:b:xk" (a, a k, a k^2, ... <= b), "a:b:+d" (a, a + d, ... <= b), comma lists and
/// single values. Throws UsageError on malformed or empty ranges.
std::vector<double> parse_range(const std::string& text);

/// Caps on the sizes a configuration may request.
inline constexpr std::size_t kMaxGrid3 = 128;
inline constexpr std::size_t kMaxGrid2 = 1024;
inline constexpr double kMaxN = 256.0;

struct ExperimentConfig {
  Suite suite = Suite::knapp;
  std::vector<double> s{-0.5};
  std::vector<double> b{0.75};
  std::vector<double> N{4, 8, 16, 32, 64, 128, 256};
  std::vector<int> j{1};
  SymbolKind symbol = SymbolKind::hyperbolic;
  std::vector<SignPair> signs{kSignPairs.begin(), kSignPairs.end()};
  std::array<std::size_t, 3> grid{12, 12, 12};
  std::size_t nodes = kDefaultNodes;
  std::filesystem::path out = ".";
  std::uint64_t seed = 1;
  std::size_t workers = 0;

  /// Parameter defaults for each suite; paths, seed and workers are left alone.
  static ExperimentConfig defaults(Suite suite);
  /// Throws UsageError when a range is empty or a size exceeds its cap.
  void validate() const;
};

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;      ///< the measured quantity
  double threshold = 0.0;  ///< what it is compared against
  std::string detail;
};

struct SlopeRecord {
  std::string label;
  LinearFit fit;
};

struct ResultBundle {
  ExperimentConfig config;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<SlopeRecord> fits;
  std::vector<Check> checks;
  std::map<std::string, double> info;
  std::map<std::string, double> timings;  ///< seconds

  bool passed() const;
  std::string csv() const;
  std::string json() const;
};

/// Least-squares slope of log(ratio) against log(N) over the upper half of the records
/// (index >= size / 2). Throws DomainError with fewer than four records or a nonpositive ratio.
LinearFit fit_slope(const std::vector<ExperimentRecord>& records);

/// Shortest decimal form that round-trips, as written to every CSV cell.
std::string format_number(double x);

/// Runs the suite and returns the bundle without touching the filesystem.
ResultBundle execute(const ExperimentConfig& config);

/// execute(), then writes <out>/<suite>.csv and <out>/<suite>.json.
ResultBundle run(const ExperimentConfig& config);

}  // namespace xsb
