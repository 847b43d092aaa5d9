#include "xsb/knapp.hpp"

#include <boost/random/sobol.hpp>

#include <cmath>
#include <numbers>
#include <string>

#include "xsb/error.hpp"
#include "xsb/parallel.hpp"

namespace xsb {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

RotatedBox reflect_box(const RotatedBox& b) {
  return {{-b.u.hi, -b.u.lo}, {-b.v.hi, -b.v.lo}, {-b.tau.hi, -b.tau.lo}};
}

// Box supporting the spectrum of the factor that actually enters the product (conj reflects).
RotatedBox effective_box(const KnappPair& pair, int which) {
  const bool reflected = which == 0 ? pair.reflect_u : pair.reflect_v;
  const bool conj = which == 0 ? pair.conj_u : pair.conj_v;
  const RotatedBox q = knapp_box(pair.N);
  return (reflected != conj) ? reflect_box(q) : q;
}

}  // namespace

RotatedBox knapp_box(double N) {
  if (!(N >= 1.0) || !std::isfinite(N)) throw DomainError("knapp_box: N must be >= 1, got " + std::to_string(N));
  const double vh = 1.0 / (4.0 * kSqrt2 * N);
  return {{N / kSqrt2, 2.0 * N / kSqrt2}, {-vh, vh}, {-0.5, 0.5}};
}

RotatedBox knapp_core_box(double N) {
  if (!(N >= 1.0) || !std::isfinite(N)) throw DomainError("knapp_core_box: N must be >= 1");
  const double uh = N / (2.0 * kSqrt2);
  const double vh = 1.0 / (8.0 * kSqrt2 * N);
  return {{-uh, uh}, {-vh, vh}, {-0.25, 0.25}};
}

bool membership_check(const RotatedBox& box, const InclusionBand& band, std::size_t samples, SymbolKind symbol) {
  if (samples < 1000) throw DomainError("membership_check: need at least 1000 samples");
  boost::random::sobol engine(3);
  const double scale = 1.0 / (static_cast<double>(engine.max()) - static_cast<double>(engine.min()) + 1.0);
  auto draw = [&](const Interval& iv) {
    const double x = (static_cast<double>(engine()) - static_cast<double>(engine.min())) * scale;
    return iv.lo + x * iv.length();
  };
  // corners first: the extremes of both conditions sit there
  for (int c = 0; c < 8; ++c) {
    const double u = (c & 1) ? box.u.hi : box.u.lo;
    const double v = (c & 2) ? box.v.hi : box.v.lo;
    const double t = (c & 4) ? box.tau.hi : box.tau.lo;
    const double a = symbol_rotated(symbol, u, v);
    const double r = std::sqrt(u * u + v * v);
    if (std::abs(t + a) > band.modulation_max || std::abs(t - a) > band.modulation_max) return false;
    if (r < band.radius_min || r > band.radius_max) return false;
  }
  for (std::size_t i = 0; i < samples; ++i) {
    const double u = draw(box.u);
    const double v = draw(box.v);
    const double t = draw(box.tau);
    const double a = symbol_rotated(symbol, u, v);
    const double r = std::sqrt(u * u + v * v);
    if (std::abs(t + a) > band.modulation_max || std::abs(t - a) > band.modulation_max) return false;
    if (r < band.radius_min || r > band.radius_max) return false;
  }
  return true;
}

KnappPair KnappPair::make(double N, int j) {
  switch (j) {
    case 1:
      return {N, 1, false, true, false, false};
    case 2:
      return {N, 2, true, false, true, true};
    case 3:
      return {N, 3, true, true, true, false};
    default:
      throw DomainError("KnappPair: j must be 1, 2 or 3, got " + std::to_string(j));
  }
}

SeparableSpectrum factor_spectrum(const KnappPair& pair, int which) {
  const bool reflected = which == 0 ? pair.reflect_u : pair.reflect_v;
  const RotatedBox q = knapp_box(pair.N);
  return SeparableSpectrum::indicator(reflected ? reflect_box(q) : q);
}

SeparableSpectrum product_spectrum(const KnappPair& pair) {
  const RotatedBox a = effective_box(pair, 0);
  const RotatedBox b = effective_box(pair, 1);
  return {std::pow(2.0 * std::numbers::pi, -1.5), Profile::convolve_indicators(a.u, b.u),
          Profile::convolve_indicators(a.v, b.v), Profile::convolve_indicators(a.tau, b.tau)};
}

double knapp_upper_bound(double N, double s, double b) {
  const double B = std::max(1.0, std::abs(b));
  return std::pow(2.0, B - s - 1.0) * std::pow(N, s);
}

double knapp_lower_bound(double N, double s, double b) {
  const double B = std::max(1.0, std::abs(b));
  return std::pow(2.0, B - 8.5) * std::pow(std::numbers::pi, -1.5) * std::pow(N, s);
}

double knapp_pointwise_floor() { return std::pow(2.0, -6.5) * std::pow(std::numbers::pi, -1.5); }

ExperimentRecord knapp_record(double N, double s, double b, int j, SymbolKind symbol, const KnappOptions& options) {
  const KnappPair pair = KnappPair::make(N, j);
  const FactorSigns signs = options.signs.value_or(FactorSigns::natural(pair));
  const auto q = SeparableSpectrum::indicator(knapp_box(N));

  ExperimentRecord rec;
  rec.N = N;
  rec.s = s;
  rec.b = b;
  rec.j = j;
  rec.symbol = symbol;
  rec.norm_u = xsb_norm_separable(q, {s, b, signs.u, symbol}, options.nodes);
  rec.norm_v = xsb_norm_separable(q, {s, b, signs.v, symbol}, options.nodes);
  rec.norm_prod = xsb_norm_separable(product_spectrum(pair), {s, b - 1.0, options.product_sign, symbol}, options.nodes);
  rec.upper_bound = knapp_upper_bound(N, s, b);
  rec.lower_bound = knapp_lower_bound(N, s, b);
  rec.upper_ok = rec.norm_u <= rec.upper_bound * (1.0 + kBoundSlack) &&
                 rec.norm_v <= rec.upper_bound * (1.0 + kBoundSlack);
  rec.lower_ok = rec.norm_prod >= rec.lower_bound * (1.0 - kBoundSlack);
  const double denom = rec.norm_u * rec.norm_v;
  rec.valid = denom > 0.0 && std::isfinite(denom) && std::isfinite(rec.norm_prod);
  rec.ratio = rec.valid ? rec.norm_prod / denom : 0.0;
  return rec;
}

std::vector<ExperimentRecord> ratio_curve(double s, double b, int j, SymbolKind symbol,
                                          const std::vector<double>& N_list, const KnappOptions& options) {
  if (N_list.empty()) throw DomainError("ratio_curve: empty N list");
  for (std::size_t i = 0; i < N_list.size(); ++i) {
    if (N_list[i] < 4.0) throw DomainError("ratio_curve: every N must be >= 4");
    if (i > 0 && !(N_list[i] > N_list[i - 1])) throw DomainError("ratio_curve: N list must be increasing");
  }
  return parallel_map(
      N_list.size(), [&](std::size_t i) { return knapp_record(N_list[i], s, b, j, symbol, options); },
      options.workers);
}

bool bound_check(const ExperimentRecord& record) { return record.valid && record.upper_ok && record.lower_ok; }

std::optional<int> smallest_valid_N(double s, double b, int j, int N_max, const KnappOptions& options) {
  for (int N = 1; N <= N_max; ++N) {
    if (bound_check(knapp_record(N, s, b, j, SymbolKind::hyperbolic, options))) return N;
  }
  return std::nullopt;
}

}  // namespace xsb
