#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "xsb/error.hpp"

namespace xsb {

using cplx = std::complex<double>;

/// Uniform, extent-symmetric sampling of [-L, L) along each of D axes.
///
/// Point k on axis i sits at -L_i + k * spacing_i with spacing_i = 2 L_i / n_i, so index n_i / 2
/// is the origin. Sizes must be even and at least 8.
template <std::size_t D>
class Grid {
 public:
  Grid() = default;
  Grid(std::array<double, D> extent, std::array<std::size_t, D> size);

  const std::array<double, D>& extent() const { return extent_; }
  const std::array<std::size_t, D>& size() const { return size_; }

  double extent(std::size_t axis) const { return extent_[axis]; }
  std::size_t size(std::size_t axis) const { return size_[axis]; }
  double spacing(std::size_t axis) const { return 2.0 * extent_[axis] / static_cast<double>(size_[axis]); }
  double point(std::size_t axis, std::size_t k) const {
    return -extent_[axis] + static_cast<double>(k) * spacing(axis);
  }
  /// Signed index relative to the origin sample.
  long centered(std::size_t axis, std::size_t k) const {
    return static_cast<long>(k) - static_cast<long>(size_[axis] / 2);
  }

  std::size_t count() const;
  double cell_volume() const;

  /// Grid of the discrete Fourier dual: spacing 2*pi/(n*Delta), same sizes.
  Grid dual() const;

  bool operator==(const Grid& other) const = default;

 private:
  std::array<double, D> extent_{};
  std::array<std::size_t, D> size_{};
};

using Grid1 = Grid<1>;
using Grid2 = Grid<2>;
using Grid3 = Grid<3>;

/// Complex samples on a Grid, row-major with the last axis fastest.
template <std::size_t D>
struct Field {
  Grid<D> grid;
  std::vector<cplx> values;

  Field() = default;
  explicit Field(Grid<D> g) : grid(g), values(g.count(), cplx{0.0, 0.0}) {}
  Field(Grid<D> g, std::vector<cplx> v) : grid(g), values(std::move(v)) {}

  std::size_t index(const std::array<std::size_t, D>& k) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < D; ++i) idx = idx * grid.size(i) + k[i];
    return idx;
  }
  cplx& operator[](const std::array<std::size_t, D>& k) { return values[index(k)]; }
  const cplx& operator[](const std::array<std::size_t, D>& k) const { return values[index(k)]; }

  /// Throws InvalidGrid if the sample count disagrees with the grid; NumericalDomain on a
  /// non-finite sample.
  void validate() const;
};

using SpectralField = Field<3>;
using SpatialField2 = Field<2>;

enum class Direction { forward, inverse };

/// Centered unitary DFT that discretizes (2 pi)^{-D/2} \int e^{-/+ i x.xi} f dxi.
///
/// The result lives on field.grid.dual(). forward(inverse(f)) == f and
/// sum |f|^2 * cell_volume is preserved exactly (up to rounding).
template <std::size_t D>
Field<D> transform(const Field<D>& field, Direction direction);

inline SpectralField fft3(const SpectralField& field, Direction direction) {
  return transform<3>(field, direction);
}
inline SpatialField2 fft2(const SpatialField2& field, Direction direction) {
  return transform<2>(field, direction);
}

/// In-place variant on raw samples; `size` are the per-axis counts, `scale` multiplies the output.
void transform_inplace(std::span<cplx> data, std::span<const std::size_t> size, Direction direction,
                       double scale);

/// (sum |f|^2 * cell volume)^{1/2}.
template <std::size_t D>
double l2_norm(const Field<D>& field);

/// (sum |f|^p * cell volume)^{1/p}.
template <std::size_t D>
double lp_norm(const Field<D>& field, double p);

/// Point reflection f(-xi); the -L plane is treated as its own mirror image (periodic wrap).
template <std::size_t D>
Field<D> reflect(const Field<D>& field);

/// True when any sample on an outer face exceeds `threshold` in modulus.
template <std::size_t D>
bool touches_boundary(const Field<D>& field, double threshold = 0.0);

/// Zero-pad to twice the extent on every axis, keeping the spacing.
template <std::size_t D>
Field<D> zero_pad(const Field<D>& field);

}  // namespace xsb
