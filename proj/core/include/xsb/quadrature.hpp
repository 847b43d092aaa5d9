#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace xsb {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool operator==(const Interval&) const = default;
};

/// Axis-aligned box in the orthonormal rotated frame u = (xi1 + xi2)/sqrt2, v = (xi1 - xi2)/sqrt2, tau.
struct RotatedBox {
  Interval u;
  Interval v;
  Interval tau;

  double volume() const { return u.length() * v.length() * tau.length(); }
  bool contains(double uu, double vv, double tt) const { return u.contains(uu) && v.contains(vv) && tau.contains(tt); }
  const Interval& axis(std::size_t i) const { return i == 0 ? u : (i == 1 ? v : tau); }
  bool operator==(const RotatedBox&) const = default;
};

/// M-point Gauss-Legendre rule on [a, b].
struct Quadrature1D {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Nodes from Newton iteration on P_M; weights 2 / ((1 - x^2) P_M'(x)^2), mapped affinely.
Quadrature1D gauss_legendre(std::size_t points, double a = -1.0, double b = 1.0);

/// Gauss-Legendre applied on each piece of [a, b] split at the interior `breakpoints`.
Quadrature1D composite_gauss_legendre(std::size_t points_per_piece, double a, double b,
                                      std::span<const double> breakpoints = {});

using BoxIntegrand = std::function<double(double u, double v, double tau)>;

/// Tensor Gauss-Legendre approximation of the integral of `integrand` over `box`.
///
/// Each axis is split at the breakpoints listed for it (those outside the open interval are
/// ignored). Throws NumericalDomain if the integrand returns a non-finite value.
double quad_box(const BoxIntegrand& integrand, const RotatedBox& box, std::size_t nodes_per_axis,
                const std::array<std::vector<double>, 3>& breakpoints = {});

/// Tensor rule built from three explicit 1D rules.
double quad_tensor(const BoxIntegrand& integrand, const Quadrature1D& qu, const Quadrature1D& qv,
                   const Quadrature1D& qt);

}  // namespace xsb
