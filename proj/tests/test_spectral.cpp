#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "xsb/spectral.hpp"

using namespace xsb;

TEST_SUITE("spectral") {

TEST_CASE("grid geometry") {
  const Grid3 g({2.0, 3.0, 4.0}, {8, 10, 16});
  CHECK(g.count() == 8 * 10 * 16);
  CHECK(g.spacing(0) == doctest::Approx(0.5));
  CHECK(g.point(0, 4) == 0.0);
  CHECK(g.point(2, 0) == -4.0);
  CHECK(g.centered(1, 0) == -5);
  CHECK(g.cell_volume() == doctest::Approx(0.5 * 0.6 * 0.5));

  const Grid3 d = g.dual();
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(d.spacing(i) * g.spacing(i) * static_cast<double>(g.size(i)) == doctest::Approx(2.0 * std::numbers::pi));
    CHECK(d.dual().extent(i) == doctest::Approx(g.extent(i)).epsilon(1e-14));
  }
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid3({1.0, 1.0, 1.0}, {8, 7, 8}), InvalidGrid);
  CHECK_THROWS_AS(Grid3({1.0, 1.0, 1.0}, {8, 6, 8}), InvalidGrid);
  CHECK_THROWS_AS(Grid2({1.0, 0.0}, {8, 8}), InvalidGrid);
  CHECK_THROWS_AS(Grid1({std::nan("")}, {8}), InvalidGrid);

  SpectralField f(Grid3({1.0, 1.0, 1.0}, {8, 8, 8}));
  f.values.pop_back();
  CHECK_THROWS_AS(f.validate(), InvalidGrid);
  CHECK_THROWS_AS(fft3(f, Direction::forward), InvalidGrid);
  f.values.push_back({std::numeric_limits<double>::infinity(), 0.0});
  CHECK_THROWS_AS(f.validate(), NumericalDomain);
}

TEST_CASE("fft matches the textbook sum in 1, 2 and 3 dimensions") {
  const Field<1> f1 = testing::random_field(Grid1({3.0}, {16}), 11);
  const Field<2> f2 = testing::random_field(Grid2({2.0, 5.0}, {8, 12}), 12);
  const Field<3> f3 = testing::random_field(Grid3({1.0, 2.0, 3.0}, {8, 8, 10}), 13);
  for (auto dir : {Direction::forward, Direction::inverse}) {
    CHECK(testing::max_abs_diff(transform<1>(f1, dir), testing::naive_dft(f1, dir)) < 1e-12);
    CHECK(testing::max_abs_diff(transform<2>(f2, dir), testing::naive_dft(f2, dir)) < 1e-12);
    CHECK(testing::max_abs_diff(fft3(f3, dir), testing::naive_dft(f3, dir)) < 1e-12);
  }
}

TEST_CASE("round trip and Plancherel") {
  const Grid3 g({4.0, 4.0, 4.0}, {32, 32, 32});
  const SpectralField f = testing::random_field(g, 5);
  const SpectralField back = fft3(fft3(f, Direction::forward), Direction::inverse);
  CHECK(back.grid.extent(0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(testing::max_abs_diff(back, f) < 1e-12);

  const Grid3 small({2.0, 3.0, 1.5}, {16, 8, 12});
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SpectralField h = testing::random_field(small, 1000 + seed);
    const double a = l2_norm(h);
    worst = std::max(worst, std::abs(l2_norm(fft3(h, Direction::forward)) / a - 1.0));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("a constant becomes a delta at the zero frequency") {
  const Grid2 g({3.0, 3.0}, {16, 16});
  SpatialField2 one(g);
  for (auto& z : one.values) z = 1.0;
  const SpatialField2 hat = fft2(one, Direction::forward);
  // (2 pi)^{-1} * sum dV = area / (2 pi), concentrated on the origin sample
  const double expect = 36.0 / (2.0 * std::numbers::pi);
  CHECK(std::abs(hat[{8, 8}] - expect) < 1e-12);
  double rest = 0.0;
  for (std::size_t i = 0; i < hat.values.size(); ++i) {
    if (i != hat.index({8, 8})) rest = std::max(rest, std::abs(hat.values[i]));
  }
  CHECK(rest < 1e-12);
}

TEST_CASE("the unit Gaussian is its own transform") {
  const Grid2 g({12.0, 12.0}, {64, 64});
  SpatialField2 f(g);
  for (std::size_t i = 0; i < 64; ++i)
    for (std::size_t j = 0; j < 64; ++j) {
      const double r2 = g.point(0, i) * g.point(0, i) + g.point(1, j) * g.point(1, j);
      f[{i, j}] = std::exp(-0.5 * r2);
    }
  const SpatialField2 hat = fft2(f, Direction::forward);
  double err = 0.0;
  for (std::size_t i = 0; i < 64; ++i)
    for (std::size_t j = 0; j < 64; ++j) {
      const double r2 = hat.grid.point(0, i) * hat.grid.point(0, i) + hat.grid.point(1, j) * hat.grid.point(1, j);
      err = std::max(err, std::abs(hat[{i, j}] - std::exp(-0.5 * r2)));
    }
  CHECK(err < 1e-12);
}

TEST_CASE("norms, reflection, padding and boundary detection") {
  const Grid3 g({1.0, 1.0, 1.0}, {8, 8, 8});
  SpectralField f(g);
  f[{4, 4, 4}] = 2.0;
  f[{5, 6, 2}] = {0.0, 1.0};
  CHECK(l2_norm(f) == doctest::Approx(std::sqrt(5.0 * g.cell_volume())));
  CHECK(lp_norm(f, 4.0) == doctest::Approx(std::pow(17.0 * g.cell_volume(), 0.25)));

  const SpectralField r = reflect(f);
  CHECK(r[{4, 4, 4}] == cplx{2.0, 0.0});
  CHECK(r[{3, 2, 6}] == cplx{0.0, 1.0});
  CHECK(testing::max_abs_diff(reflect(r), f) == 0.0);

  CHECK_FALSE(touches_boundary(f));
  f[{0, 3, 3}] = 1e-3;
  CHECK(touches_boundary(f));
  CHECK_FALSE(touches_boundary(f, 1e-2));

  const SpectralField p = zero_pad(f);
  CHECK(p.grid.size(0) == 16);
  CHECK(p.grid.extent(0) == 2.0);
  CHECK(p.grid.spacing(0) == g.spacing(0));
  CHECK(p[{8, 8, 8}] == cplx{2.0, 0.0});
  CHECK(p[{4, 7, 7}] == cplx{1e-3, 0.0});
  CHECK(l2_norm(p) == doctest::Approx(l2_norm(f)).epsilon(1e-15));
}

TEST_CASE("in-place transform agrees with the field transform") {
  const Grid2 g({2.0, 2.0}, {8, 16});
  const SpatialField2 f = testing::random_field(g, 3);
  std::vector<cplx> data = f.values;
  const std::array<std::size_t, 2> size{8, 16};
  const double scale = g.cell_volume() / (2.0 * std::numbers::pi);
  transform_inplace(data, size, Direction::forward, scale);
  const SpatialField2 ref = fft2(f, Direction::forward);
  double err = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) err = std::max(err, std::abs(data[i] - ref.values[i]));
  CHECK(err < 1e-12);
  std::vector<cplx> short_data(5);
  CHECK_THROWS_AS(transform_inplace(short_data, size, Direction::forward, 1.0), InvalidGrid);
}

}
