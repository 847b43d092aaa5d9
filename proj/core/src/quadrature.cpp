#include "xsb/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "xsb/error.hpp"

namespace xsb {

namespace {

// P_M(x) and P_M'(x) by the three-term recurrence.
std::pair<double, double> legendre(std::size_t m, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (std::size_t k = 2; k <= m; ++k) {
    const auto kk = static_cast<double>(k);
    const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
    p0 = p1;
    p1 = p2;
  }
  return {p1, static_cast<double>(m) * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

Quadrature1D gauss_legendre(std::size_t points, double a, double b) {
  if (points < 1) throw DomainError("gauss_legendre: need at least one node");
  if (!(b > a)) throw DomainError("gauss_legendre: empty interval");

  Quadrature1D rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const auto m = static_cast<double>(points);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  for (std::size_t i = 0; i < (points + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (m + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(points, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(points, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);

    rule.nodes[i] = mid - half * x;
    rule.nodes[points - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[points - 1 - i] = half * w;
  }
  return rule;
}

Quadrature1D composite_gauss_legendre(std::size_t points_per_piece, double a, double b,
                                      std::span<const double> breakpoints) {
  std::vector<double> cuts{a};
  for (double c : breakpoints) {
    if (c > a && c < b) cuts.push_back(c);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const Quadrature1D ref = gauss_legendre(points_per_piece);
  Quadrature1D rule;
  rule.nodes.reserve(points_per_piece * (cuts.size() - 1));
  rule.weights.reserve(points_per_piece * (cuts.size() - 1));
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double mid = 0.5 * (cuts[p] + cuts[p + 1]);
    const double half = 0.5 * (cuts[p + 1] - cuts[p]);
    if (!(half > 0.0)) continue;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      rule.nodes.push_back(mid + half * ref.nodes[i]);
      rule.weights.push_back(half * ref.weights[i]);
    }
  }
  return rule;
}

double quad_tensor(const BoxIntegrand& integrand, const Quadrature1D& qu, const Quadrature1D& qv,
                   const Quadrature1D& qt) {
  double total = 0.0;
  for (std::size_t i = 0; i < qu.size(); ++i) {
    double plane = 0.0;
    for (std::size_t j = 0; j < qv.size(); ++j) {
      double line = 0.0;
      for (std::size_t k = 0; k < qt.size(); ++k) {
        const double f = integrand(qu.nodes[i], qv.nodes[j], qt.nodes[k]);
        if (!std::isfinite(f)) throw NumericalDomain("quadrature integrand returned a non-finite value");
        line += qt.weights[k] * f;
      }
      plane += qv.weights[j] * line;
    }
    total += qu.weights[i] * plane;
  }
  return total;
}

double quad_box(const BoxIntegrand& integrand, const RotatedBox& box, std::size_t nodes_per_axis,
                const std::array<std::vector<double>, 3>& breakpoints) {
  if (nodes_per_axis < 2) throw DomainError("quad_box: nodes_per_axis must be >= 2");
  for (std::size_t ax = 0; ax < 3; ++ax) {
    if (!(box.axis(ax).hi > box.axis(ax).lo)) throw DomainError("quad_box: empty box");
  }
  const auto qu = composite_gauss_legendre(nodes_per_axis, box.u.lo, box.u.hi, breakpoints[0]);
  const auto qv = composite_gauss_legendre(nodes_per_axis, box.v.lo, box.v.hi, breakpoints[1]);
  const auto qt = composite_gauss_legendre(nodes_per_axis, box.tau.lo, box.tau.hi, breakpoints[2]);
  return quad_tensor(integrand, qu, qv, qt);
}

}  // namespace xsb
