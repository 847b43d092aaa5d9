#include "xsb/trilinear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "xsb/error.hpp"
#include "xsb/parallel.hpp"
#include "xsb/propagator.hpp"

namespace xsb {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

// Grids that went through dual() twice differ from the original in the last bits of the extent.
bool same_grid(const Grid3& a, const Grid3& b) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (a.size(i) != b.size(i) || !close(a.extent(i), b.extent(i))) return false;
  }
  return true;
}

double weight_power(double m, double p) { return std::pow(1.0 + m * m, 0.5 * p); }

// <tau + sign a(mu)>^{-b} |g| in place of the samples
std::vector<cplx> weighted_values(const SpectralField& g, double b, int sign, SymbolKind symbol) {
  const auto& gr = g.grid;
  std::vector<cplx> out(g.values.size());
  std::size_t idx = 0;
  for (std::size_t i = 0; i < gr.size(0); ++i) {
    for (std::size_t j = 0; j < gr.size(1); ++j) {
      const double a = symbol_xi(symbol, gr.point(0, i), gr.point(1, j));
      for (std::size_t k = 0; k < gr.size(2); ++k, ++idx) {
        const double m = std::abs(g.values[idx]);
        out[idx] = m == 0.0 ? 0.0 : m * weight_power(gr.point(2, k) + sign * a, -b);
      }
    }
  }
  return out;
}

Grid2 mu_grid(const Grid3& g) { return Grid2({g.extent(0), g.extent(1)}, {g.size(0), g.size(1)}); }

SpectralField space_time(const SpectralField& spectrum) {
  SpectralField out = transform<3>(spectrum, Direction::inverse);
  const double s = std::pow(kTwoPi, 1.5);
  for (auto& z : out.values) z *= s;
  return out;
}

}  // namespace

std::string to_string(SignPair signs) {
  return std::string(1, signs.first > 0 ? '+' : '-') + std::string(1, signs.second > 0 ? '+' : '-');
}

SignPair parse_sign_pair(const std::string& text) {
  for (const auto& p : kSignPairs) {
    if (to_string(p) == text) return p;
  }
  throw UsageError("unknown sign pair '" + text + "' (expected --, ++ or +-)");
}

SpectralField weighted_spectrum(const SpectralField& g, double b, int sign, SymbolKind symbol) {
  if (g.values.size() != g.grid.count()) throw InvalidGrid("weighted_spectrum: sample count mismatch");
  return {g.grid, weighted_values(g, b, sign, symbol)};
}

SpectralField weighted_field(const SpectralField& g, double b, int sign, SymbolKind symbol) {
  return space_time(weighted_spectrum(g, b, sign, symbol));
}

bool matched_grid(const Grid3& grid) {
  if (!close(grid.spacing(0), grid.spacing(1))) return false;
  const double r = grid.spacing(0) * grid.spacing(0) / grid.spacing(2);
  const double n = std::round(r);
  return n >= 1.0 && std::abs(r - n) <= 1e-9 * n;
}

LayerCake layer_cake(const SpectralField& g, double b, int sign, SymbolKind symbol, bool propagate,
                     std::size_t workers) {
  const auto& gr = g.grid;
  if (g.values.size() != gr.count()) throw InvalidGrid("layer_cake: sample count mismatch");
  if (!matched_grid(gr)) throw InvalidGrid("layer_cake: a(mu) is not a multiple of the tau spacing on this grid");
  const std::size_t n0 = gr.size(0), n1 = gr.size(1), nt = gr.size(2);
  const long ratio = std::lround(gr.spacing(0) * gr.spacing(0) / gr.spacing(2));
  const long second = symbol == SymbolKind::hyperbolic ? -1 : 1;

  // a(mu) / d tau at every mu, exact in integers: a = d mu^2 (c1^2 +- c2^2)
  std::vector<long> shift(n0 * n1);
  long lo = 0, hi = 0;
  for (std::size_t i = 0; i < n0; ++i) {
    const long c1 = gr.centered(0, i);
    for (std::size_t j = 0; j < n1; ++j) {
      const long c2 = gr.centered(1, j);
      const long q = sign * ratio * (c1 * c1 + second * c2 * c2);
      shift[i * n1 + j] = q;
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
  }
  // lambda_m = -T + m d tau with m = k + q
  const double dl = gr.spacing(2);
  const Grid2 mg = mu_grid(gr);
  struct Layer {
    double lambda;
    SpatialField2 psi_hat;
  };
  std::vector<Layer> layers;
  LayerCake out;
  for (long m = lo; m < static_cast<long>(nt) + hi; ++m) {
    SpatialField2 psi(mg);
    bool nonzero = false;
    for (std::size_t ij = 0; ij < n0 * n1; ++ij) {
      const long k = m - shift[ij];
      if (k < 0 || k >= static_cast<long>(nt)) continue;
      const cplx v = kTwoPi * std::abs(g.values[ij * nt + static_cast<std::size_t>(k)]);
      if (v != 0.0) {
        psi.values[ij] = v;
        nonzero = true;
      }
    }
    if (!nonzero) continue;
    const double energy = l2_norm(psi);
    out.layer_energy += energy * energy * dl;
    layers.push_back({gr.point(2, 0) + static_cast<double>(m) * dl, std::move(psi)});
  }
  const double gl2 = l2_norm(g);
  out.plancherel_target = kTwoPi * kTwoPi * gl2 * gl2;
  out.layers = layers.size();

  double weights = 0.0;  // sum <lambda>^{-2b} over the full lambda range, empty layers included
  for (long m = lo; m < static_cast<long>(nt) + hi; ++m) {
    weights += weight_power(gr.point(2, 0) + static_cast<double>(m) * dl, -2.0 * b) * dl;
  }
  out.schwarz_bound = std::sqrt(weights * out.layer_energy);
  if (!propagate) return out;

  const Grid3 dual = gr.dual();
  const std::size_t plane = n0 * n1;
  struct Slice {
    std::vector<cplx> G;
    std::vector<double> l4;  // per layer: sum_x |e^{-i sign t a(D)} psi|^4 dx
  };
  const auto slices = parallel_map(
      nt,
      [&](std::size_t kt) {
        const double t = dual.point(2, kt);
        Slice s{std::vector<cplx>(plane), std::vector<double>(layers.size())};
        for (std::size_t l = 0; l < layers.size(); ++l) {
          const SpatialField2 evolved = free_propagate(layers[l].psi_hat, t, symbol, -sign, Side::space);
          const cplx c = dl * weight_power(layers[l].lambda, -b) * std::polar(1.0, t * layers[l].lambda);
          double acc = 0.0;
          for (std::size_t ij = 0; ij < plane; ++ij) {
            s.G[ij] += c * evolved.values[ij];
            const double m2 = std::norm(evolved.values[ij]);
            acc += m2 * m2;
          }
          s.l4[l] = acc * evolved.grid.cell_volume();
        }
        return s;
      },
      workers);

  out.field = SpectralField(dual);
  std::vector<double> l4(layers.size(), 0.0);
  for (std::size_t kt = 0; kt < nt; ++kt) {
    for (std::size_t ij = 0; ij < plane; ++ij) out.field.values[ij * nt + kt] = slices[kt].G[ij];
    for (std::size_t l = 0; l < layers.size(); ++l) l4[l] += slices[kt].l4[l] * dual.spacing(2);
  }
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const double norm4 = std::pow(l4[l], 0.25);
    out.minkowski_sum += dl * weight_power(layers[l].lambda, -b) * norm4;
    out.strichartz_constant = std::max(out.strichartz_constant, norm4 / l2_norm(layers[l].psi_hat));
  }
  return out;
}

cplx trilinear_direct(const SpectralField& f, const SpectralField& g, const SpectralField& h, double s, double b,
                      SignPair signs, SymbolKind symbol, Integrand integrand) {
  if (!same_grid(f.grid, g.grid) || !same_grid(f.grid, h.grid)) throw InvalidGrid("trilinear_direct: grids differ");
  const auto& gr = f.grid;
  const std::size_t n0 = gr.size(0), n1 = gr.size(1), n2 = gr.size(2);
  const std::size_t count = gr.count();

  std::vector<cplx> wf(count), wg(count), wh(count);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t j = 0; j < n1; ++j) {
      const double m1 = gr.point(0, i), m2 = gr.point(1, j);
      const double a = symbol_xi(symbol, m1, m2);
      const double radial = 1.0 + m1 * m1 + m2 * m2;
      for (std::size_t k = 0; k < n2; ++k, ++idx) {
        const double tau = gr.point(2, k);
        const double kg = weight_power(tau + signs.first * a, -b);
        const double kh = weight_power(tau + signs.second * a, -b);
        if (integrand == Integrand::bound) {
          wf[idx] = std::abs(f.values[idx]);
          wg[idx] = std::abs(g.values[idx]) * kg;
          wh[idx] = std::abs(h.values[idx]) * kh;
          continue;
        }
        const double kf = std::pow(radial, 0.5 * s) * weight_power(tau + a, b - 1.0);
        const double ks = std::pow(radial, -0.5 * s);
        if (integrand == Integrand::modulus) {
          wf[idx] = std::abs(f.values[idx]) * kf;
          wg[idx] = std::abs(g.values[idx]) * kg * ks;
          wh[idx] = std::abs(h.values[idx]) * kh * ks;
        } else {
          wf[idx] = f.values[idx] * kf;
          wg[idx] = g.values[idx] * kg * ks;
          wh[idx] = h.values[idx] * kh * ks;
        }
      }
    }
  }

  // p0 index on each axis is 3n/2 - i1 - i2 (centered indices sum to zero)
  auto range = [](std::size_t n, std::size_t i1) {
    const long top = static_cast<long>(3 * n / 2) - static_cast<long>(i1);
    return std::pair<long, long>{std::max(0L, top - static_cast<long>(n) + 1), std::min(static_cast<long>(n) - 1, top)};
  };
  cplx total{0.0, 0.0};
  for (std::size_t i1 = 0; i1 < n0; ++i1) {
    const auto [ia, ib] = range(n0, i1);
    for (std::size_t j1 = 0; j1 < n1; ++j1) {
      const auto [ja, jb] = range(n1, j1);
      for (std::size_t k1 = 0; k1 < n2; ++k1) {
        const cplx g1 = wg[(i1 * n1 + j1) * n2 + k1];
        if (g1 == 0.0) continue;
        const auto [ka, kb] = range(n2, k1);
        cplx inner{0.0, 0.0};
        for (long i2 = ia; i2 <= ib; ++i2) {
          const std::size_t i0 = 3 * n0 / 2 - i1 - static_cast<std::size_t>(i2);
          for (long j2 = ja; j2 <= jb; ++j2) {
            const std::size_t j0 = 3 * n1 / 2 - j1 - static_cast<std::size_t>(j2);
            const cplx* hrow = &wh[(static_cast<std::size_t>(i2) * n1 + static_cast<std::size_t>(j2)) * n2];
            const cplx* frow = &wf[(i0 * n1 + j0) * n2];
            for (long k2 = ka; k2 <= kb; ++k2) {
              inner += hrow[k2] * frow[3 * n2 / 2 - k1 - static_cast<std::size_t>(k2)];
            }
          }
        }
        total += g1 * inner;
      }
    }
  }
  const double dv = gr.cell_volume();
  total *= dv * dv;
  if (integrand == Integrand::bound) total *= std::pow(2.0, s);
  return total;
}

namespace {

struct FastFields {
  SpectralField F, G, H;
};

FastFields fast_fields(const SpectralField& f, const SpectralField& g, const SpectralField& h, double b,
                       SignPair signs, SymbolKind symbol) {
  if (!same_grid(f.grid, g.grid) || !same_grid(f.grid, h.grid)) throw InvalidGrid("trilinear_fast: grids differ");
  SpectralField af(f.grid);
  for (std::size_t i = 0; i < f.values.size(); ++i) af.values[i] = std::abs(f.values[i]);
  return {transform<3>(zero_pad(af), Direction::inverse),
          space_time(zero_pad(weighted_spectrum(g, b, signs.first, symbol))),
          space_time(zero_pad(weighted_spectrum(h, b, signs.second, symbol)))};
}

double fast_sum(const FastFields& ff, double s) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < ff.F.values.size(); ++i) acc += ff.F.values[i] * ff.G.values[i] * ff.H.values[i];
  return std::pow(2.0, s) * std::pow(kTwoPi, -1.5) * acc.real() * ff.F.grid.cell_volume();
}

}  // namespace

double trilinear_fast(const SpectralField& f, const SpectralField& g, const SpectralField& h, double s, double b,
                      SignPair signs, SymbolKind symbol) {
  return fast_sum(fast_fields(f, g, h, b, signs, symbol), s);
}

HoelderChain hoelder_chain(const SpectralField& f, const SpectralField& g, const SpectralField& h, double s,
                           double b, SignPair signs, SymbolKind symbol, double slack) {
  const FastFields ff = fast_fields(f, g, h, b, signs, symbol);
  HoelderChain c;
  c.form = std::abs(trilinear_direct(f, g, h, s, b, signs, symbol, Integrand::modulus));
  c.majorant = fast_sum(ff, s);
  c.f_l2 = l2_norm(f);
  c.G_l4 = lp_norm(ff.G, 4.0);
  c.H_l4 = lp_norm(ff.H, 4.0);
  c.bound = std::pow(2.0, s) * std::pow(kTwoPi, -1.5) * c.f_l2 * c.G_l4 * c.H_l4;
  c.form_ok = c.form <= c.majorant * (1.0 + slack);
  c.majorant_ok = c.majorant <= c.bound * (1.0 + slack);
  return c;
}

SubmultiplicativityResult submultiplicativity_check(double s, std::size_t pairs, std::uint64_t seed) {
  if (s < 0.0) throw DomainError("submultiplicativity_check: needs s >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::uniform_real_distribution<double> decade(-2.0, 3.0);
  auto draw = [&] {
    const double r = std::pow(10.0, decade(rng));
    const double th = angle(rng);
    return std::array<double, 2>{r * std::cos(th), r * std::sin(th)};
  };
  auto log_bracket = [](double x, double y) { return 0.5 * std::log1p(x * x + y * y); };
  SubmultiplicativityResult res;
  res.pairs = pairs;
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto m1 = draw();
    const auto m2 = draw();
    const double lr = s * (log_bracket(m1[0] + m2[0], m1[1] + m2[1]) - std::log(2.0) - log_bracket(m1[0], m1[1]) -
                           log_bracket(m2[0], m2[1]));
    const double ratio = std::exp(lr);
    res.max_ratio = std::max(res.max_ratio, ratio);
    if (ratio > 1.0 + 1e-12) ++res.violations;
  }
  return res;
}

SpectralField random_spectrum(const Grid3& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  SpectralField out(grid);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < grid.size(0); ++i) {
    for (std::size_t j = 0; j < grid.size(1); ++j) {
      for (std::size_t k = 0; k < grid.size(2); ++k, ++idx) {
        const bool inside = std::abs(grid.point(0, i)) <= 0.5 * grid.extent(0) &&
                            std::abs(grid.point(1, j)) <= 0.5 * grid.extent(1) &&
                            std::abs(grid.point(2, k)) <= 0.5 * grid.extent(2);
        if (inside) out.values[idx] = {normal(rng), normal(rng)};
      }
    }
  }
  return out;
}

BandLimitedData BandLimitedData::random(std::uint64_t seed, double xi_radius, double tau_radius) {
  BandLimitedData d;
  d.xi_radius = xi_radius;
  d.tau_radius = tau_radius;
  const std::array<double, 3> radius{xi_radius, xi_radius, tau_radius};
  for (std::size_t ax = 0; ax < 3; ++ax) {
    const long half = static_cast<long>(std::floor(radius[ax] / d.bump_width));
    for (long c = -half; c <= half; ++c) d.lattice[ax].push_back(static_cast<double>(c) * d.bump_width);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  d.coefficients.resize(d.lattice[0].size() * d.lattice[1].size() * d.lattice[2].size());
  for (auto& c : d.coefficients) c = {normal(rng), normal(rng)};
  return d;
}

namespace {

// window(x) * exp(-(x - c)^2 / (2 w^2)) for every lattice centre c
std::vector<double> bump_row(double x, double radius, double width, const std::vector<double>& centres) {
  std::vector<double> row(centres.size(), 0.0);
  if (std::abs(x) >= radius) return row;
  const double c = std::cos(0.5 * std::numbers::pi * x / radius);
  for (std::size_t q = 0; q < centres.size(); ++q) {
    const double z = (x - centres[q]) / width;
    row[q] = c * c * std::exp(-0.5 * z * z);
  }
  return row;
}

}  // namespace

cplx BandLimitedData::operator()(double xi1, double xi2, double tau) const {
  const auto a = bump_row(xi1, xi_radius, bump_width, lattice[0]);
  const auto b = bump_row(xi2, xi_radius, bump_width, lattice[1]);
  const auto c = bump_row(tau, tau_radius, bump_width, lattice[2]);
  cplx acc{0.0, 0.0};
  std::size_t idx = 0;
  for (double x : a) {
    for (double y : b) {
      for (double z : c) acc += coefficients[idx++] * (x * y * z);
    }
  }
  return acc;
}

SpectralField BandLimitedData::sample(const Grid3& grid) const {
  const std::size_t L0 = lattice[0].size(), L1 = lattice[1].size(), L2 = lattice[2].size();
  std::array<std::vector<std::vector<double>>, 3> rows;
  const std::array<double, 3> radius{xi_radius, xi_radius, tau_radius};
  for (std::size_t ax = 0; ax < 3; ++ax) {
    for (std::size_t k = 0; k < grid.size(ax); ++k) {
      rows[ax].push_back(bump_row(grid.point(ax, k), radius[ax], bump_width, lattice[ax]));
    }
  }
  const std::size_t n0 = grid.size(0), n1 = grid.size(1), n2 = grid.size(2);
  // contract one lattice axis at a time: (L0 L1 L2) -> (L0 L1 n2) -> (L0 n1 n2) -> (n0 n1 n2)
  std::vector<cplx> t2(L0 * L1 * n2, 0.0);
  for (std::size_t ab = 0; ab < L0 * L1; ++ab) {
    for (std::size_t k = 0; k < n2; ++k) {
      cplx acc{0.0, 0.0};
      for (std::size_t c = 0; c < L2; ++c) acc += coefficients[ab * L2 + c] * rows[2][k][c];
      t2[ab * n2 + k] = acc;
    }
  }
  std::vector<cplx> t1(L0 * n1 * n2, 0.0);
  for (std::size_t a = 0; a < L0; ++a) {
    for (std::size_t j = 0; j < n1; ++j) {
      for (std::size_t b = 0; b < L1; ++b) {
        const double w = rows[1][j][b];
        if (w == 0.0) continue;
        for (std::size_t k = 0; k < n2; ++k) t1[(a * n1 + j) * n2 + k] += w * t2[(a * L1 + b) * n2 + k];
      }
    }
  }
  SpectralField out(grid);
  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t a = 0; a < L0; ++a) {
      const double w = rows[0][i][a];
      if (w == 0.0) continue;
      for (std::size_t jk = 0; jk < n1 * n2; ++jk) out.values[i * n1 * n2 + jk] += w * t1[a * n1 * n2 + jk];
    }
  }
  return out;
}

double bilinear_ratio(const SpectralField& u, const SpectralField& v, double s, double b, SignPair signs,
                      SymbolKind symbol, int factor_sign, int product_sign) {
  if (!same_grid(u.grid, v.grid)) throw InvalidGrid("bilinear_ratio: grids differ");
  const double nu = xsb_norm_grid(u, {s, b, factor_sign, symbol});
  const double nv = xsb_norm_grid(v, {s, b, factor_sign, symbol});
  if (!(nu > 0.0) || !(nv > 0.0)) return 0.0;
  const SpectralField ux = transform<3>(zero_pad(u), Direction::inverse);
  SpectralField px = transform<3>(zero_pad(v), Direction::inverse);
  for (std::size_t i = 0; i < px.values.size(); ++i) {
    const cplx a = signs.first > 0 ? std::conj(ux.values[i]) : ux.values[i];
    const cplx c = signs.second > 0 ? std::conj(px.values[i]) : px.values[i];
    px.values[i] = a * c;
  }
  const SpectralField product = transform<3>(px, Direction::forward);
  return xsb_norm_grid(product, {s, b - 1.0, product_sign, symbol}) / (nu * nv);
}

double bilinear_constant_probe(double s, double b, SignPair signs, std::size_t trials, const ProbeOptions& options) {
  if (trials < 10) throw DomainError("bilinear_constant_probe: needs at least 10 trials");
  const auto ratios = parallel_map(
      trials,
      [&](std::size_t i) {
        std::seed_seq su{options.seed, static_cast<std::uint64_t>(i), std::uint64_t{0}};
        std::seed_seq sv{options.seed, static_cast<std::uint64_t>(i), std::uint64_t{1}};
        std::array<std::uint64_t, 2> keys{};
        std::array<std::uint32_t, 2> raw{};
        su.generate(raw.begin(), raw.end());
        keys[0] = (static_cast<std::uint64_t>(raw[0]) << 32) | raw[1];
        sv.generate(raw.begin(), raw.end());
        keys[1] = (static_cast<std::uint64_t>(raw[0]) << 32) | raw[1];
        const double xr = 0.5 * std::min(options.grid.extent(0), options.grid.extent(1));
        const double tr = 0.5 * options.grid.extent(2);
        const SpectralField u = BandLimitedData::random(keys[0], xr, tr).sample(options.grid);
        const SpectralField v = BandLimitedData::random(keys[1], xr, tr).sample(options.grid);
        return bilinear_ratio(u, v, s, b, signs, options.symbol);
      },
      options.workers);
  double best = 0.0;
  for (double r : ratios) {
    if (std::isfinite(r)) best = std::max(best, r);
  }
  return best;
}

Grid3 lemma_grid() { return Grid3({8.0, 8.0, 16.0}, {32, 32, 128}); }

std::vector<SpectralField> lemma_library(const Grid3& grid, int sign, SymbolKind symbol, std::uint64_t seed) {
  struct Bump {
    double c1, c2, w1, w2;
  };
  // g(mu, tau) = A(mu) Lambda(tau + sign a(mu)) with A a sum of bumps and Lambda a Gaussian
  struct Item {
    std::vector<Bump> bumps;
    std::vector<double> weights;
    double lambda0, thickness;
  };
  std::vector<Item> items;
  for (double w : {0.6, 0.8, 1.0, 1.2}) items.push_back({{{0.0, 0.0, w, w}}, {1.0}, 0.0, 1.0});
  for (auto [c1, c2] : std::vector<std::pair<double, double>>{{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.5}, {0.7, -0.7}}) {
    items.push_back({{{c1, c2, 0.8, 0.8}}, {1.0}, 0.0, 1.0});
  }
  for (double d : {0.7, 1.4}) items.push_back({{{0.0, 0.0, 0.8, 0.8}}, {1.0}, 0.0, d});
  for (double l0 : {0.5, -0.5}) items.push_back({{{0.0, 0.0, 0.8, 0.8}}, {1.0}, l0, 1.0});
  items.push_back({{{0.0, 0.0, 1.0, 0.6}}, {1.0}, 0.0, 1.0});
  items.push_back({{{0.0, 0.0, 0.6, 1.0}}, {1.0}, 0.0, 1.0});
  items.push_back({{{-0.8, 0.0, 0.6, 0.6}, {0.8, 0.0, 0.6, 0.6}}, {1.0, 1.0}, 0.0, 1.0});

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> shift(-0.5, 0.5);
  while (items.size() < 20) {
    Item it;
    for (double c1 : {-0.75, 0.0, 0.75}) {
      for (double c2 : {-0.75, 0.0, 0.75}) {
        it.bumps.push_back({c1, c2, 0.6, 0.6});
        it.weights.push_back(std::abs(normal(rng)));
      }
    }
    it.lambda0 = shift(rng);
    it.thickness = 1.0;
    items.push_back(std::move(it));
  }

  std::vector<SpectralField> lib;
  lib.reserve(items.size());
  for (const auto& it : items) {
    SpectralField g(grid);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < grid.size(0); ++i) {
      for (std::size_t j = 0; j < grid.size(1); ++j) {
        const double m1 = grid.point(0, i), m2 = grid.point(1, j);
        double amp = 0.0;
        for (std::size_t q = 0; q < it.bumps.size(); ++q) {
          const auto& bp = it.bumps[q];
          const double z1 = (m1 - bp.c1) / bp.w1, z2 = (m2 - bp.c2) / bp.w2;
          amp += it.weights[q] * std::exp(-0.5 * (z1 * z1 + z2 * z2));
        }
        const double a = symbol_xi(symbol, m1, m2);
        for (std::size_t k = 0; k < grid.size(2); ++k, ++idx) {
          const double z = (grid.point(2, k) + sign * a - it.lambda0) / it.thickness;
          g.values[idx] = amp * std::exp(-0.5 * z * z);
        }
      }
    }
    lib.push_back(std::move(g));
  }
  return lib;
}

}  // namespace xsb
