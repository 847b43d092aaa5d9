#include "xsb/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "xsb/error.hpp"
#include "xsb/parallel.hpp"
#include "xsb/quadrature.hpp"

namespace xsb {

namespace {

using namespace std::complex_literals;

// sign of the xi2^2 term in a(xi)
int second_axis_sign(SymbolKind symbol) { return symbol == SymbolKind::hyperbolic ? -1 : +1; }

}  // namespace

SpatialField2 free_propagate(const SpatialField2& phi_hat, double t, SymbolKind symbol, int sign, Side out) {
  if (phi_hat.values.size() != phi_hat.grid.count()) throw InvalidGrid("free_propagate: sample count mismatch");
  const auto& g = phi_hat.grid;
  SpatialField2 result(g, phi_hat.values);
  if (t != 0.0) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < g.size(0); ++i) {
      const double xi1 = g.point(0, i);
      for (std::size_t j = 0; j < g.size(1); ++j, ++idx) {
        const double phase = sign * t * symbol_xi(symbol, xi1, g.point(1, j));
        result.values[idx] *= std::polar(1.0, phase);
      }
    }
  }
  if (out == Side::space) return fft2(result, Direction::inverse);
  return result;
}

bool GaussianState::valid() const {
  // Re A positive definite
  return a11.real() > 0.0 && a11.real() * a22.real() - a12.real() * a12.real() > 0.0;
}

cplx GaussianState::sqrt_det() const {
  // eigenvalues of a complex symmetric matrix with Re A > 0 have positive real part
  const cplx half_trace = 0.5 * (a11 + a22);
  const cplx disc = std::sqrt(half_trace * half_trace - det());
  return std::sqrt(half_trace + disc) * std::sqrt(half_trace - disc);
}

cplx GaussianState::frequency(double xi1, double xi2) const {
  return amplitude * std::exp(-0.5 * (a11 * xi1 * xi1 + 2.0 * a12 * xi1 * xi2 + a22 * xi2 * xi2));
}

cplx GaussianState::space(double x1, double x2) const {
  const cplx d = det();
  const cplx i11 = a22 / d;
  const cplx i12 = -a12 / d;
  const cplx i22 = a11 / d;
  return amplitude / sqrt_det() * std::exp(-0.5 * (i11 * x1 * x1 + 2.0 * i12 * x1 * x2 + i22 * x2 * x2));
}

double GaussianState::space_sup() const { return std::abs(amplitude) / std::abs(sqrt_det()); }

double GaussianState::space_width_squared(int axis) const {
  const cplx d = det();
  const cplx inv = (axis == 0 ? a22 : a11) / d;
  return 1.0 / inv.real();
}

SpatialField2 GaussianState::sample_frequency(const Grid2& grid) const {
  SpatialField2 f(grid);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < grid.size(0); ++i) {
    for (std::size_t j = 0; j < grid.size(1); ++j, ++idx) f.values[idx] = frequency(grid.point(0, i), grid.point(1, j));
  }
  return f;
}

SpatialField2 GaussianState::sample_space(const Grid2& grid) const {
  SpatialField2 f(grid);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < grid.size(0); ++i) {
    for (std::size_t j = 0; j < grid.size(1); ++j, ++idx) f.values[idx] = space(grid.point(0, i), grid.point(1, j));
  }
  return f;
}

GaussianState GaussianState::spatial_width(double w) {
  const double w2 = w * w;
  return {w2, 0.0, w2, w2};
}

GaussianState gaussian_oracle(const GaussianState& state, double t, SymbolKind symbol, int sign) {
  if (!state.valid()) throw DomainError("gaussian_oracle: Re A is not positive definite");
  GaussianState out = state;
  out.a11 -= 2.0i * static_cast<double>(sign) * t;
  out.a22 -= 2.0i * static_cast<double>(sign * second_axis_sign(symbol)) * t;
  if (!out.valid()) throw DomainError("gaussian_oracle: evolved state lost positive definiteness");
  return out;
}

std::vector<DispersionSample> dispersion_sup(const std::vector<double>& t_list, SymbolKind symbol,
                                             const DispersionOptions& options) {
  for (double t : t_list) {
    if (t == 0.0 || !std::isfinite(t)) throw DomainError("dispersion_sup: t must be finite and nonzero");
  }
  const Grid1 grid({options.extent}, {options.size});
  const double w = options.width;
  // 1D factor of the probe spectrum: w exp(-w^2 xi^2 / 2)
  Field<1> profile(grid);
  for (std::size_t k = 0; k < grid.size(0); ++k) {
    const double xi = grid.point(0, k);
    profile.values[k] = w * std::exp(-0.5 * w * w * xi * xi);
  }
  auto axis_sup = [&](double t, int sign) {
    Field<1> f = profile;
    for (std::size_t k = 0; k < grid.size(0); ++k) {
      const double xi = grid.point(0, k);
      f.values[k] *= std::polar(1.0, sign * t * xi * xi);
    }
    const Field<1> x = transform<1>(f, Direction::inverse);
    double m = 0.0;
    for (const auto& z : x.values) m = std::max(m, std::abs(z));
    return m;
  };
  return parallel_map(
      t_list.size(),
      [&](std::size_t i) {
        const double t = t_list[i];
        return DispersionSample{t, axis_sup(t, +1) * axis_sup(t, second_axis_sign(symbol))};
      },
      options.workers);
}

double strichartz_ratio(const SpatialField2& phi, SymbolKind symbol, int sign, const TimeWindow& window,
                        std::size_t workers) {
  const double l2 = l2_norm(phi);
  if (!(l2 > 0.0)) throw DomainError("strichartz_ratio: zero data");
  if (!(window.t1 > window.t0) || window.samples < 1) throw DomainError("strichartz_ratio: empty time window");

  const SpatialField2 phi_hat = fft2(phi, Direction::forward);
  const std::size_t panels = (window.samples + 3) / 4;
  std::vector<double> cuts;
  for (std::size_t p = 1; p < panels; ++p) {
    cuts.push_back(window.t0 + (window.t1 - window.t0) * static_cast<double>(p) / static_cast<double>(panels));
  }
  const Quadrature1D times = composite_gauss_legendre(4, window.t0, window.t1, cuts);

  const auto slices = parallel_map(
      times.size(),
      [&](std::size_t k) {
        const SpatialField2 u = free_propagate(phi_hat, times.nodes[k], symbol, sign, Side::space);
        double acc = 0.0;
        for (const auto& z : u.values) {
          const double m = std::norm(z);
          acc += m * m;
        }
        return acc * u.grid.cell_volume();
      },
      workers);
  double total = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) total += times.weights[k] * slices[k];
  return std::pow(total, 0.25) / l2;
}

std::vector<SpatialField2> strichartz_library(const Grid2& grid, std::uint64_t seed) {
  std::vector<SpatialField2> lib;
  auto add = [&](auto&& fn) {
    SpatialField2 f(grid);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < grid.size(0); ++i) {
      for (std::size_t j = 0; j < grid.size(1); ++j, ++idx) f.values[idx] = fn(grid.point(0, i), grid.point(1, j));
    }
    lib.push_back(std::move(f));
  };
  auto gauss = [](double x, double y, double wx, double wy) {
    return std::exp(-0.5 * (x * x / (wx * wx) + y * y / (wy * wy)));
  };

  for (double w : {1.0, 0.8, 1.25}) add([&](double x, double y) { return cplx(gauss(x, y, w, w)); });
  add([&](double x, double y) { return cplx(gauss(x, y, 1.0, 0.8)); });
  add([&](double x, double y) { return cplx(gauss(x, y, 0.8, 1.25)); });
  add([&](double x, double y) {
    const double c = std::numbers::sqrt2 / 2.0;
    return cplx(gauss(c * (x + y), c * (x - y), 1.0, 0.7));
  });
  add([&](double x, double y) { return cplx(gauss(x - 2.0, y + 1.0, 1.0, 1.0)); });
  add([&](double x, double y) { return cplx(gauss(x + 3.0, y - 2.0, 0.9, 0.9)); });
  add([&](double x, double y) { return gauss(x, y, 1.0, 1.0) * std::polar(1.0, 0.5 * x + 0.3 * y); });
  add([&](double x, double y) { return gauss(x, y, 1.1, 1.1) * std::polar(1.0, -0.4 * x + 0.6 * y); });
  add([&](double x, double y) { return gauss(x, y, 1.0, 1.0) * std::polar(1.0, 0.2 * (x * x + y * y)); });
  for (double radius : {2.5, 3.5}) {
    add([&](double x, double y) {
      const double r2 = (x * x + y * y) / (radius * radius);
      return r2 < 1.0 ? cplx(std::exp(1.0 - 1.0 / (1.0 - r2))) : cplx(0.0);
    });
  }
  add([&](double x, double y) { return cplx(gauss(x - 2.0, y, 1.0, 1.0) + gauss(x + 2.0, y, 1.0, 1.0)); });
  add([&](double x, double y) { return cplx(x * gauss(x, y, 1.0, 1.0)); });

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> centre(-3.0, 3.0);
  std::uniform_real_distribution<double> freq(-0.8, 0.8);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  while (lib.size() < 20) {
    struct Packet {
      double x, y, kx, ky;
      cplx c;
    };
    std::vector<Packet> packets(6);
    for (auto& p : packets) {
      p.x = centre(rng);
      p.y = centre(rng);
      p.kx = freq(rng);
      p.ky = freq(rng);
      p.c = {normal(rng), normal(rng)};
    }
    add([&](double x, double y) {
      cplx acc{0.0, 0.0};
      for (const auto& p : packets) acc += p.c * gauss(x - p.x, y - p.y, 1.0, 1.0) * std::polar(1.0, p.kx * x + p.ky * y);
      return acc;
    });
  }
  return lib;
}

}  // namespace xsb
