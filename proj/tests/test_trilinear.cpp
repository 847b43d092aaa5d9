#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "support.hpp"
#include "xsb/knapp.hpp"
#include "xsb/trilinear.hpp"

using namespace xsb;

namespace {

const double kTwoPi = 2.0 * std::numbers::pi;

double rel_sup(const SpectralField& a, const SpectralField& b) {
  double scale = 0.0;
  for (const auto& z : b.values) scale = std::max(scale, std::abs(z));
  return testing::max_abs_diff(a, b) / scale;
}

double median(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const std::size_t n = x.size();
  return n % 2 ? x[n / 2] : 0.5 * (x[n / 2 - 1] + x[n / 2]);
}

}  // namespace

TEST_SUITE("trilinear") {

TEST_CASE("sign pairs") {
  CHECK(to_string(kMinusMinus) == "--");
  CHECK(parse_sign_pair("+-") == kPlusMinus);
  CHECK(parse_sign_pair("++") == kPlusPlus);
  CHECK_THROWS_AS(parse_sign_pair("-+"), UsageError);
  CHECK_THROWS_AS(parse_sign_pair(""), UsageError);
}

TEST_CASE("weighted field") {
  const Grid3 g({2.0, 2.0, 3.0}, {8, 8, 12});
  const SpectralField data = random_spectrum(g, 3);
  CHECK(l2_norm(weighted_field(SpectralField(g), 0.75, 1, SymbolKind::hyperbolic)) == 0.0);

  SpectralField mod(g);
  for (std::size_t i = 0; i < data.values.size(); ++i) mod.values[i] = std::abs(data.values[i]);
  SpectralField ref = fft3(mod, Direction::inverse);
  for (auto& z : ref.values) z *= std::pow(kTwoPi, 1.5);
  CHECK(rel_sup(weighted_field(data, 0.0, -1, SymbolKind::hyperbolic), ref) < 1e-13);

  // G(x, t) = sum e^{i(x.mu + t tau)} |g| <tau + sign a>^{-b} dmu dtau at a few points
  const SpectralField G = weighted_field(data, 0.7, -1, SymbolKind::hyperbolic);
  for (std::array<std::size_t, 3> p : {std::array<std::size_t, 3>{0, 0, 0}, {3, 5, 7}, {7, 1, 10}}) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j)
        for (std::size_t k = 0; k < 12; ++k) {
          const double m1 = g.point(0, i), m2 = g.point(1, j), t = g.point(2, k);
          const double w = std::pow(1.0 + std::pow(t - (m1 * m1 - m2 * m2), 2), -0.35);
          const double phase = G.grid.point(0, p[0]) * m1 + G.grid.point(1, p[1]) * m2 + G.grid.point(2, p[2]) * t;
          acc += std::polar(1.0, phase) * std::abs(data[{i, j, k}]) * w;
        }
    CHECK(std::abs(G[p] - acc * g.cell_volume()) < 1e-12 * std::abs(acc * g.cell_volume()) + 1e-13);
  }
}

TEST_CASE("layer cake rebuilds G and satisfies Plancherel") {
  const Grid3 g({4.0, 4.0, 2.0}, {16, 16, 16});
  REQUIRE(matched_grid(g));
  REQUIRE(matched_grid(lemma_grid()));
  CHECK_FALSE(matched_grid(Grid3({4.0, 4.0, 2.5}, {16, 16, 16})));
  CHECK_FALSE(matched_grid(Grid3({4.0, 3.0, 2.0}, {16, 16, 16})));
  const SpectralField data = random_spectrum(g, 9);
  for (auto symbol : {SymbolKind::hyperbolic, SymbolKind::elliptic}) {
    for (int sign : {+1, -1}) {
      const LayerCake lc = layer_cake(data, 0.75, sign, symbol);
      CHECK(rel_sup(lc.field, weighted_field(data, 0.75, sign, symbol)) <= 1e-8);
      CHECK(std::abs(lc.layer_energy / lc.plancherel_target - 1.0) <= 1e-10);
      const double G4 = lp_norm(lc.field, 4.0);
      CHECK(G4 <= lc.minkowski_sum * (1.0 + 1e-10));
      CHECK(lc.minkowski_sum <= lc.strichartz_constant * lc.schwarz_bound * (1.0 + 1e-10));
      CHECK(lc.layers > 0);
    }
  }
  const LayerCake quick = layer_cake(data, 0.75, -1, SymbolKind::hyperbolic, false);
  CHECK(quick.field.values.empty());
  CHECK(std::abs(quick.layer_energy / quick.plancherel_target - 1.0) <= 1e-10);
  CHECK_THROWS_AS(layer_cake(random_spectrum(Grid3({4.0, 4.0, 2.5}, {16, 16, 16}), 1), 0.75, 1, SymbolKind::hyperbolic),
                  InvalidGrid);
}

TEST_CASE("direct sum agrees with a brute-force oracle") {
  const Grid3 g({2.0, 2.0, 2.0}, {8, 8, 8});
  const SpectralField f = testing::random_field(g, 1), gg = testing::random_field(g, 2), h = testing::random_field(g, 3);
  for (SignPair sp : kSignPairs) {
    for (double s : {0.0, 0.5, -0.5}) {
      const double mod = oracle::trilinear_brute(f, gg, h, s, 0.75, sp, SymbolKind::hyperbolic, false);
      CHECK(std::abs(trilinear_direct(f, gg, h, s, 0.75, sp, SymbolKind::hyperbolic).real() / mod - 1.0) < 1e-12);
      const double bnd = oracle::trilinear_brute(f, gg, h, s, 0.75, sp, SymbolKind::elliptic, true);
      const cplx d = trilinear_direct(f, gg, h, s, 0.75, sp, SymbolKind::elliptic, Integrand::bound);
      CHECK(std::abs(d.real() / bnd - 1.0) < 1e-12);
      CHECK(std::abs(d.imag()) < 1e-14 * bnd);
    }
  }
}

TEST_CASE("zero inputs and the raw integrand") {
  const Grid3 g({2.0, 2.0, 2.0}, {8, 8, 8});
  const SpectralField f = random_spectrum(g, 5), z(g);
  CHECK(trilinear_direct(z, f, f, 0.5, 0.75, kPlusMinus, SymbolKind::hyperbolic) == cplx{0.0, 0.0});
  CHECK(trilinear_direct(f, z, f, 0.5, 0.75, kPlusMinus, SymbolKind::hyperbolic) == cplx{0.0, 0.0});
  CHECK(trilinear_fast(f, f, z, 0.5, 0.75, kPlusMinus, SymbolKind::hyperbolic) == doctest::Approx(0.0));

  SpectralField pos(g);
  for (std::size_t i = 0; i < pos.values.size(); ++i) pos.values[i] = std::abs(f.values[i]);
  const cplx raw = trilinear_direct(pos, pos, pos, 0.5, 0.75, kMinusMinus, SymbolKind::hyperbolic, Integrand::raw);
  const cplx mod = trilinear_direct(pos, pos, pos, 0.5, 0.75, kMinusMinus, SymbolKind::hyperbolic);
  CHECK(std::abs(raw - mod) < 1e-12 * std::abs(mod));
  const cplx signed_raw = trilinear_direct(f, f, f, 0.5, 0.75, kMinusMinus, SymbolKind::hyperbolic, Integrand::raw);
  CHECK(std::abs(signed_raw) <= std::abs(trilinear_direct(f, f, f, 0.5, 0.75, kMinusMinus, SymbolKind::hyperbolic)));

  const SpectralField other = random_spectrum(Grid3({2.0, 2.0, 2.0}, {8, 8, 10}), 1);
  CHECK_THROWS_AS(trilinear_direct(f, other, f, 0.0, 0.75, kMinusMinus, SymbolKind::hyperbolic), InvalidGrid);
  CHECK_THROWS_AS(trilinear_fast(f, f, other, 0.0, 0.75, kMinusMinus, SymbolKind::hyperbolic), InvalidGrid);
}

TEST_CASE("fast path equals the direct sum on grids up to 16^3") {
  for (std::size_t n : {8, 12, 16}) {
    const Grid3 g({3.0, 3.0, 3.0}, {n, n, n});
    for (std::uint64_t t = 0; t < 3; ++t) {
      const SpectralField f = random_spectrum(g, 10 * n + 3 * t);
      const SpectralField gg = random_spectrum(g, 10 * n + 3 * t + 1);
      const SpectralField h = random_spectrum(g, 10 * n + 3 * t + 2);
      for (SignPair sp : kSignPairs) {
        const double direct = trilinear_direct(f, gg, h, 0.5, 0.75, sp, SymbolKind::hyperbolic, Integrand::bound).real();
        const double fast = trilinear_fast(f, gg, h, 0.5, 0.75, sp, SymbolKind::hyperbolic);
        CHECK(std::abs(fast / direct - 1.0) <= 1e-8);
      }
    }
  }
}

TEST_CASE("Hoelder chain on 50 triples") {
  const Grid3 g({3.0, 3.0, 3.0}, {12, 12, 12});
  std::size_t failures = 0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    const SpectralField f = random_spectrum(g, 500 + 3 * t);
    const SpectralField gg = random_spectrum(g, 501 + 3 * t);
    const SpectralField h = random_spectrum(g, 502 + 3 * t);
    for (double s : {0.0, 0.5}) {
      for (SignPair sp : kSignPairs) {
        const HoelderChain c = hoelder_chain(f, gg, h, s, 0.75, sp, SymbolKind::hyperbolic);
        if (!c.form_ok || !c.majorant_ok) ++failures;
        if (!(c.form <= std::pow(2.0, s) * std::pow(kTwoPi, -1.5) * c.f_l2 * c.G_l4 * c.H_l4 * (1.0 + 1e-10))) ++failures;
      }
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("submultiplicativity") {
  for (double s : {0.0, 0.5, 2.0}) {
    const auto r = submultiplicativity_check(s, 1000000, 17);
    CHECK(r.pairs == 1000000);
    CHECK(r.violations == 0);
    CHECK(r.max_ratio <= 1.0 + 1e-12);
  }
  CHECK(submultiplicativity_check(1.0, 100000, 1).max_ratio > 0.5);
  CHECK_THROWS_AS(submultiplicativity_check(-0.1, 10, 1), DomainError);
}

TEST_CASE("band-limited data") {
  const BandLimitedData d = BandLimitedData::random(4);
  const Grid3 g({4.0, 4.0, 8.0}, {16, 16, 16});
  const SpectralField f = d.sample(g);
  double err = 0.0;
  for (std::size_t i = 0; i < 16; i += 3)
    for (std::size_t j = 0; j < 16; j += 5)
      for (std::size_t k = 0; k < 16; k += 2) err = std::max(err, std::abs(f[{i, j, k}] - d(g.point(0, i), g.point(1, j), g.point(2, k))));
  CHECK(err < 1e-12);
  CHECK(d(2.0, 0.0, 0.0) == cplx{0.0, 0.0});
  CHECK(d(0.0, 0.0, -4.0) == cplx{0.0, 0.0});
  CHECK(BandLimitedData::random(4).coefficients == d.coefficients);
}

TEST_CASE("bilinear probe") {
  CHECK_THROWS_AS(bilinear_constant_probe(0.0, 0.75, kMinusMinus, 9), DomainError);

  ProbeOptions coarse;
  ProbeOptions fine;
  fine.grid = Grid3({4.0, 4.0, 8.0}, {48, 48, 48});
  const double c32 = bilinear_constant_probe(0.0, 0.75, kMinusMinus, 10, coarse);
  const double c48 = bilinear_constant_probe(0.0, 0.75, kMinusMinus, 10, fine);
  CHECK(std::isfinite(c32));
  CHECK(c32 > 0.0);
  CHECK(std::abs(c48 / c32 - 1.0) <= 0.2);
  CHECK(bilinear_constant_probe(0.0, 0.75, kMinusMinus, 10, coarse) == c32);

  const double knapp = knapp_record(64.0, -0.5, 0.75, 1, SymbolKind::hyperbolic).ratio;
  CHECK(knapp >= 10.0 * c32);

  const Grid3 g({3.0, 3.0, 3.0}, {12, 12, 12});
  const SpectralField u = random_spectrum(g, 1), v = random_spectrum(g, 2);
  CHECK(bilinear_ratio(SpectralField(g), v, 0.0, 0.75, kMinusMinus, SymbolKind::hyperbolic) == 0.0);
  CHECK_THROWS_AS(bilinear_ratio(u, random_spectrum(Grid3({3.0, 3.0, 3.0}, {12, 12, 16}), 1), 0.0, 0.75, kMinusMinus,
                                 SymbolKind::hyperbolic),
                  InvalidGrid);
}

TEST_CASE("conjugation coherence") {
  // conj reflects spectra, and the X^{s,b} norm of conj(w) uses the opposite sign in the weight,
  // so (+,+) on (u, v) matches (-,-) on (conj u, conj v) once the factor weight sign flips too.
  const Grid3 g({4.0, 4.0, 8.0}, {16, 16, 16});
  for (std::uint64_t seed : {1, 2, 3}) {
    const SpectralField u = BandLimitedData::random(seed, 2.0, 4.0).sample(g);
    const SpectralField v = BandLimitedData::random(seed + 10, 2.0, 4.0).sample(g);
    const SpectralField cu = oracle::conj_spectrum(u), cv = oracle::conj_spectrum(v);
    for (int fs : {+1, -1}) {
      const double pp = bilinear_ratio(u, v, 0.0, 0.75, kPlusPlus, SymbolKind::hyperbolic, fs);
      const double mm = bilinear_ratio(cu, cv, 0.0, 0.75, kMinusMinus, SymbolKind::hyperbolic, -fs);
      CHECK(std::abs(pp / mm - 1.0) <= 1e-10);
    }
    const double pm = bilinear_ratio(u, v, 0.5, 0.75, kPlusMinus, SymbolKind::elliptic, 1, -1);
    const double mm = bilinear_ratio(cu, v, 0.5, 0.75, kMinusMinus, SymbolKind::elliptic, 1, -1);
    const double mm_norms = xsb_norm_grid(cu, {0.5, 0.75, 1, SymbolKind::elliptic}) /
                            xsb_norm_grid(u, {0.5, 0.75, 1, SymbolKind::elliptic});
    CHECK(std::abs(pm / (mm * mm_norms) - 1.0) <= 1e-10);
  }
}

TEST_CASE("lemma library") {
  const Grid3 g = lemma_grid();
  const auto lib = lemma_library(g, -1, SymbolKind::hyperbolic, 1);
  REQUIRE(lib.size() == 20);
  for (double b : {0.6, 0.75, 0.9}) {
    std::vector<double> ratios;
    for (const auto& item : lib) {
      ratios.push_back(lp_norm(weighted_field(item, b, -1, SymbolKind::hyperbolic), 4.0) / l2_norm(item));
      CHECK(std::abs(layer_cake(item, b, -1, SymbolKind::hyperbolic, false).layer_energy /
                         (kTwoPi * kTwoPi * l2_norm(item) * l2_norm(item)) -
                     1.0) <= 1e-10);
    }
    CHECK(*std::max_element(ratios.begin(), ratios.end()) <= 2.0 * median(ratios));
  }
}

}
