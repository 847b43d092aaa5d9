#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "xsb/quadrature.hpp"
#include "xsb/spectral.hpp"

namespace xsb {

/// Dispersion relation a(xi): hyperbolic xi1^2 - xi2^2 (= 2uv) or elliptic xi1^2 + xi2^2 (= u^2 + v^2).
enum class SymbolKind { hyperbolic, elliptic };

std::string to_string(SymbolKind kind);
SymbolKind parse_symbol(const std::string& name);

inline double japanese(double x) { return std::sqrt(1.0 + x * x); }

inline double symbol_xi(SymbolKind kind, double xi1, double xi2) {
  return kind == SymbolKind::hyperbolic ? xi1 * xi1 - xi2 * xi2 : xi1 * xi1 + xi2 * xi2;
}
inline double symbol_rotated(SymbolKind kind, double u, double v) {
  return kind == SymbolKind::hyperbolic ? 2.0 * u * v : u * u + v * v;
}

struct Rotated {
  double u;
  double v;
};
inline Rotated to_rotated(double xi1, double xi2) {
  return {(xi1 + xi2) / std::numbers::sqrt2, (xi1 - xi2) / std::numbers::sqrt2};
}

/// (s, b), the sign sigma in <tau - sigma a(xi)>, and the symbol.
struct NormParams {
  double s = 0.0;
  double b = 0.0;
  int sign = +1;
  SymbolKind symbol = SymbolKind::hyperbolic;

  /// max{1, |b|}
  double B() const { return std::max(1.0, std::abs(b)); }
};

/// <tau - sigma a>^b <xi>^s evaluated in rotated coordinates.
inline double xsb_weight(double u, double v, double tau, const NormParams& p) {
  const double m = tau - p.sign * symbol_rotated(p.symbol, u, v);
  return std::pow(1.0 + m * m, 0.5 * p.b) * std::pow(1.0 + u * u + v * v, 0.5 * p.s);
}

/// Nonnegative, compactly supported, piecewise-linear 1D function.
///
/// Stored as closed segments [x0, x1] carrying the linear interpolant between y0 and y1; the
/// function is zero outside the union of segments. Segments are sorted and do not overlap.
class Profile {
 public:
  struct Segment {
    double x0, x1, y0, y1;
  };

  Profile() = default;
  explicit Profile(std::vector<Segment> segments);

  static Profile indicator(Interval support);
  /// The correlation-style convolution (1_a * 1_b)(x) = |a intersect (x - b)|: a trapezoid
  /// (hat when the lengths agree) on [a.lo + b.lo, a.hi + b.hi].
  static Profile convolve_indicators(Interval a, Interval b);

  double operator()(double x) const;
  const std::vector<Segment>& segments() const { return segments_; }
  std::vector<double> breakpoints() const;
  Interval support() const;
  double peak() const;
  Profile reflected() const;
  bool empty() const { return segments_.empty(); }

 private:
  std::vector<Segment> segments_;
};

/// scale * P_u(u) * P_v(v) * P_tau(tau).
struct SeparableSpectrum {
  double scale = 1.0;
  Profile u;
  Profile v;
  Profile tau;

  static SeparableSpectrum indicator(const RotatedBox& box);

  double operator()(double uu, double vv, double tt) const { return scale * u(uu) * v(vv) * tau(tt); }
  RotatedBox support() const { return {u.support(), v.support(), tau.support()}; }
  double peak() const { return scale * u.peak() * v.peak() * tau.peak(); }
  bool empty() const { return scale == 0.0 || u.empty() || v.empty() || tau.empty(); }
  /// f(-xi, -tau)
  SeparableSpectrum reflected() const { return {scale, u.reflected(), v.reflected(), tau.reflected()}; }
};

/// Riemann-sum X^{s,b} norm of grid samples (grid axes are xi1, xi2, tau).
double xsb_norm_grid(const SpectralField& field, const NormParams& params);

using SpectrumSampler = std::function<cplx(double xi1, double xi2, double tau)>;

/// Same sum as xsb_norm_grid, evaluating the spectrum on the fly instead of storing it.
double xsb_norm_sampled(const Grid3& grid, const SpectrumSampler& sampler, const NormParams& params);

/// Samples a separable spectrum at the (xi1, xi2, tau) points of `grid`.
SpectralField sample(const SeparableSpectrum& spec, const Grid3& grid);

/// Default nodes per quadrature piece for separable norms.
inline constexpr std::size_t kDefaultNodes = 32;

/// Quadrature X^{s,b} norm of a separable spectrum over its support box.
///
/// Each axis is split at the profile kinks; the u and v axes are additionally split at
/// 0, +-1, +-2, +-4, ... so that the <xi>^s factor is resolved when the support is long.
double xsb_norm_separable(const SeparableSpectrum& spec, const NormParams& params,
                          std::size_t nodes = kDefaultNodes);

}  // namespace xsb
