#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "xsb/norms.hpp"
#include "xsb/spectral.hpp"

namespace xsb {

/// Signs (s1, s2) in <tau1 + s1 a(mu1)> and <tau2 + s2 a(mu2)>.
///
/// (-,-) is the estimate for u v, (+,+) for conj(u) conj(v), (+,-) for conj(u) v.
struct SignPair {
  int first = -1;
  int second = -1;

  bool operator==(const SignPair&) const = default;
};

inline constexpr SignPair kMinusMinus{-1, -1};
inline constexpr SignPair kPlusPlus{+1, +1};
inline constexpr SignPair kPlusMinus{+1, -1};
inline constexpr std::array<SignPair, 3> kSignPairs{kMinusMinus, kPlusPlus, kPlusMinus};

std::string to_string(SignPair signs);
/// "--", "++" or "+-"; throws UsageError otherwise.
SignPair parse_sign_pair(const std::string& text);

/// |g| / <tau + sign a(mu)>^b on the grid of g.
SpectralField weighted_spectrum(const SpectralField& g, double b, int sign, SymbolKind symbol);

/// G(x, t) = sum over the grid of e^{i(x.mu + t tau)} |g| / <tau + sign a>^b, i.e. (2 pi)^{3/2} times
/// the inverse transform of weighted_spectrum. Lives on g.grid.dual().
SpectralField weighted_field(const SpectralField& g, double b, int sign, SymbolKind symbol);

/// True when a(mu) is an integer multiple of the tau spacing at every grid point, which is the
/// case when spacing(0) == spacing(1) and spacing(0)^2 / spacing(2) is an integer.
bool matched_grid(const Grid3& grid);

/// Data of the change of variables lambda = tau + sign a(mu).
struct LayerCake {
  SpectralField field;               ///< G rebuilt layer by layer (empty when not requested)
  double layer_energy = 0.0;         ///< sum_lambda ||psi_lambda||_2^2 d lambda
  double plancherel_target = 0.0;    ///< (2 pi)^2 ||g||_2^2
  double minkowski_sum = 0.0;        ///< sum_lambda <lambda>^{-b} ||e^{-i sign t a(D)} psi_lambda||_4 d lambda
  double schwarz_bound = 0.0;        ///< (sum <lambda>^{-2b} d lambda)^{1/2} (layer_energy)^{1/2}
  double strichartz_constant = 0.0;  ///< max over layers of ||e^{-i sign t a(D)} psi||_4 / ||psi||_2
  std::size_t layers = 0;            ///< nonzero layers
};

/// Layer-by-layer evaluation of G on a matched grid:
///   G(x, t) = sum_lambda e^{i t lambda} <lambda>^{-b} e^{-i sign t a(D)} psi_lambda,
///   psi_hat_lambda(mu) = 2 pi |g(mu, lambda - sign a(mu))|.
/// With propagate = false only the energies are computed. Throws InvalidGrid for unmatched grids.
LayerCake layer_cake(const SpectralField& g, double b, int sign, SymbolKind symbol, bool propagate = true,
                     std::size_t workers = 0);

enum class Integrand {
  bound,    ///< 2^s |f| |g| |h| / (<tau1 + s1 a>^b <tau2 + s2 a>^b): what Hoelder bounds
  modulus,  ///< full form with moduli of f, g, h
  raw,      ///< full form with the complex samples
};

/// Direct constrained sum over (mu1, tau1) x (mu2, tau2) with mu0 = -mu1 - mu2, tau0 = -tau1 - tau2
/// and measure (cell volume)^2; triples with (mu0, tau0) off the grid are dropped. The full
/// integrand is
///   <mu0>^s f(p0) g(p1) h(p2) / (<tau0 + a(mu0)>^{1-b} <mu1>^s <mu2>^s <tau1 + s1 a>^b <tau2 + s2 a>^b).
/// Throws InvalidGrid if the three grids differ.
cplx trilinear_direct(const SpectralField& f, const SpectralField& g, const SpectralField& h, double s, double b,
                      SignPair signs, SymbolKind symbol, Integrand integrand = Integrand::modulus);

/// The bound integrand through x space: 2^s (2 pi)^{-3/2} sum_{x,t} F^{-1}[|f|] G H dx dt, with all
/// fields zero-padded to twice the extent so the discrete convolution is not cyclic.
double trilinear_fast(const SpectralField& f, const SpectralField& g, const SpectralField& h, double s, double b,
                      SignPair signs, SymbolKind symbol);

struct HoelderChain {
  double form = 0.0;      ///< |I| with the modulus integrand
  double majorant = 0.0;  ///< trilinear_fast
  double f_l2 = 0.0;
  double G_l4 = 0.0;  ///< on the padded grid
  double H_l4 = 0.0;
  double bound = 0.0;  ///< 2^s (2 pi)^{-3/2} ||f||_2 ||G||_4 ||H||_4
  bool form_ok = false;      ///< form <= majorant (needs s >= 0)
  bool majorant_ok = false;  ///< majorant <= bound
};

HoelderChain hoelder_chain(const SpectralField& f, const SpectralField& g, const SpectralField& h, double s,
                           double b, SignPair signs, SymbolKind symbol, double slack = 1e-10);

struct SubmultiplicativityResult {
  std::size_t pairs = 0;
  std::size_t violations = 0;
  double max_ratio = 0.0;  ///< max of <mu1 + mu2>^s / (2^s <mu1>^s <mu2>^s)
};

/// Checks <mu1 + mu2>^s <= 2^s <mu1>^s <mu2>^s on random pairs in R^2 with magnitudes spread over
/// several decades. Throws DomainError for s < 0.
SubmultiplicativityResult submultiplicativity_check(double s, std::size_t pairs, std::uint64_t seed);

/// Independent standard complex normal entries where |xi1|, |xi2|, |tau| are at most half the
/// grid extent, zero elsewhere.
SpectralField random_spectrum(const Grid3& grid, std::uint64_t seed);

/// Smooth band-limited space-time spectrum: a compact cos^2 window times a lattice of Gaussian
/// bumps with standard complex normal coefficients. It is a fixed function of (xi, tau), so
/// sampling it on finer grids converges.
struct BandLimitedData {
  double xi_radius = 2.0;
  double tau_radius = 4.0;
  double bump_width = 0.5;
  std::array<std::vector<double>, 3> lattice;  ///< bump centres per axis (xi1, xi2, tau)
  std::vector<cplx> coefficients;              ///< row-major over the lattice

  static BandLimitedData random(std::uint64_t seed, double xi_radius = 2.0, double tau_radius = 4.0);
  cplx operator()(double xi1, double xi2, double tau) const;
  SpectralField sample(const Grid3& grid) const;
};

/// ||N(u, v)||_{s,b-1} / (||u||_{s,b} ||v||_{s,b}) with the product formed in x space on
/// zero-padded grids. N is u v, conj(u) conj(v) or conj(u) v for (-,-), (+,+), (+,-). The factor
/// norms use <tau - factor_sign a>, the product norm <tau - product_sign a>. Returns 0 when a
/// denominator vanishes.
double bilinear_ratio(const SpectralField& u, const SpectralField& v, double s, double b, SignPair signs,
                      SymbolKind symbol, int factor_sign = +1, int product_sign = +1);

struct ProbeOptions {
  Grid3 grid{{4.0, 4.0, 8.0}, {32, 32, 32}};
  std::uint64_t seed = 1;
  SymbolKind symbol = SymbolKind::hyperbolic;
  std::size_t workers = 0;
};

/// Max of bilinear_ratio over `trials` random BandLimitedData pairs. Throws DomainError when
/// trials < 10.
double bilinear_constant_probe(double s, double b, SignPair signs, std::size_t trials, const ProbeOptions& options = {});

/// Grid used for the weighted-field experiments: 32 x 32 x 128 over [-8,8)^2 x [-16,16), matched.
Grid3 lemma_grid();

/// Twenty data g adapted to <tau + sign a>: bumps in (mu, lambda = tau + sign a(mu)) of varied
/// centre, width and thickness, plus seeded random superpositions.
std::vector<SpectralField> lemma_library(const Grid3& grid, int sign, SymbolKind symbol, std::uint64_t seed);

}  // namespace xsb
