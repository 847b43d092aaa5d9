#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "xsb/norms.hpp"
#include "xsb/spectral.hpp"

namespace xsb {

enum class Side { frequency, space };

/// e^{i sign t a(D)} applied to frequency samples phi_hat (grid axes xi1, xi2).
///
/// With Side::frequency the multiplied samples are returned on the same grid; with Side::space
/// they are inverse transformed onto the dual x grid. Both are exactly unitary.
SpatialField2 free_propagate(const SpatialField2& phi_hat, double t, SymbolKind symbol, int sign,
                             Side out = Side::frequency);

/// The closed-form Gaussian phi_hat(xi) = c exp(-xi^T A xi / 2) with A complex symmetric, Re A > 0.
struct GaussianState {
  cplx a11{1.0, 0.0};
  cplx a12{0.0, 0.0};
  cplx a22{1.0, 0.0};
  cplx amplitude{1.0, 0.0};

  bool valid() const;
  cplx det() const { return a11 * a22 - a12 * a12; }
  /// Branch of sqrt(det A) continuous from real positive definite A.
  cplx sqrt_det() const;

  cplx frequency(double xi1, double xi2) const;
  /// phi(x) = c / sqrt(det A) exp(-x^T A^{-1} x / 2).
  cplx space(double x1, double x2) const;
  /// sup_x |phi(x)|, attained at the origin.
  double space_sup() const;
  /// 1 / Re(A^{-1})_{ii}: squared width of |phi|^2 ~ exp(-x_i^2 / w^2) along axis i.
  double space_width_squared(int axis) const;

  SpatialField2 sample_frequency(const Grid2& grid) const;
  SpatialField2 sample_space(const Grid2& grid) const;

  /// Gaussian whose spatial form is exp(-|x|^2 / (2 w^2)), i.e. A = w^2 I, c = w^2.
  static GaussianState spatial_width(double w);
};

/// Exact evolution of a Gaussian: A -> A - 2 i sign t diag(1, +-1). Throws DomainError if the
/// input has Re A not positive definite.
GaussianState gaussian_oracle(const GaussianState& state, double t, SymbolKind symbol, int sign);

struct DispersionSample {
  double t = 0.0;
  double sup = 0.0;
};

struct DispersionOptions {
  double width = 0.05;
  std::size_t size = std::size_t{1} << 19;
  double extent = 160.0;
  std::size_t workers = 0;
};

/// sup_x |e^{it a(D)} phi| for the narrow Gaussian probe exp(-|x|^2 / (2 width^2)).
///
/// a(xi) = xi1^2 +- xi2^2 splits into one 1D evolution per axis, so the 2D supremum is the
/// product of two 1D suprema; each is computed by a centered FFT on a long 1D grid.
/// Throws DomainError if any t is zero.
std::vector<DispersionSample> dispersion_sup(const std::vector<double>& t_list, SymbolKind symbol,
                                             const DispersionOptions& options = {});

struct TimeWindow {
  double t0 = -4.0;
  double t1 = 4.0;
  std::size_t samples = 64;  ///< composite 4-point Gauss-Legendre nodes (rounded up to a multiple of 4)
};

/// ||e^{i sign t a(D)} phi||_{L^4(grid x window)} / ||phi||_{L^2} for spatial samples phi.
/// Throws DomainError for a zero phi.
double strichartz_ratio(const SpatialField2& phi, SymbolKind symbol, int sign, const TimeWindow& window,
                        std::size_t workers = 0);

/// Twenty test data on `grid` (x side): Gaussians, anisotropic and shifted Gaussians, compact
/// bumps, and seeded random wave-packet superpositions.
std::vector<SpatialField2> strichartz_library(const Grid2& grid, std::uint64_t seed);

}  // namespace xsb
