#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include "xsb/spectral.hpp"

namespace testing {

template <std::size_t D>
xsb::Field<D> random_field(const xsb::Grid<D>& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  xsb::Field<D> f(grid);
  for (auto& x : f.values) x = {n(rng), n(rng)};
  return f;
}

// Textbook sum (2 pi)^{-D/2} sum_x e^{-/+ i x.xi} f(x) dV at every dual point.
template <std::size_t D>
xsb::Field<D> naive_dft(const xsb::Field<D>& f, xsb::Direction dir) {
  const auto& g = f.grid;
  const xsb::Grid<D> d = g.dual();
  const double sgn = dir == xsb::Direction::forward ? -1.0 : 1.0;
  const double scale = g.cell_volume() * std::pow(2.0 * std::numbers::pi, -0.5 * D);
  xsb::Field<D> out(d);
  const std::size_t n = g.count();
  for (std::size_t k = 0; k < n; ++k) {
    std::array<double, D> xi{};
    std::size_t r = k;
    for (std::size_t i = D; i-- > 0;) {
      xi[i] = d.point(i, r % d.size(i));
      r /= d.size(i);
    }
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t m = 0; m < n; ++m) {
      std::size_t q = m;
      double phase = 0.0;
      for (std::size_t i = D; i-- > 0;) {
        phase += g.point(i, q % g.size(i)) * xi[i];
        q /= g.size(i);
      }
      acc += std::polar(1.0, sgn * phase) * f.values[m];
    }
    out.values[k] = scale * acc;
  }
  return out;
}

template <std::size_t D>
double max_abs_diff(const xsb::Field<D>& a, const xsb::Field<D>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

}  // namespace testing
