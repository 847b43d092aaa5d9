#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "xsb/norms.hpp"
#include "xsb/quadrature.hpp"

namespace xsb {

/// Q_N = {N <= xi1 + xi2 <= 2N, |xi1 - xi2| <= 1/(4N), |tau| <= 1/2} in rotated coordinates.
/// Volume 1/4 for every N. Throws DomainError for N < 1.
RotatedBox knapp_box(double N);

/// R_N = {|xi1 + xi2| <= N/2, |xi1 - xi2| <= 1/(8N), |tau| <= 1/4}. Volume 1/16.
RotatedBox knapp_core_box(double N);

/// Membership conditions |tau +- a(xi)| <= modulation_max and radius_min <= |xi| <= radius_max.
struct InclusionBand {
  double modulation_max = 1.0;
  double radius_min = 0.0;
  double radius_max = 0.0;
};

/// The band Q_N sits in: |tau +- a| <= 1, N/2 <= |xi| <= 2N.
inline InclusionBand q_inclusion(double N) { return {1.0, N / 2.0, 2.0 * N}; }
/// The band R_N sits in: |tau +- a| <= 1, |xi| <= N/2.
inline InclusionBand r_inclusion(double N) { return {1.0, 0.0, N / 2.0}; }

/// Checks the band on `samples` Sobol points of the box, for both signs of a.
/// Throws DomainError when samples < 1000.
bool membership_check(const RotatedBox& box, const InclusionBand& band, std::size_t samples,
                      SymbolKind symbol = SymbolKind::hyperbolic);

/// One counterexample family member. j selects the product:
///   j = 1: u v,      u~ = 1_Q(.),  v~ = 1_Q(-.)
///   j = 2: conj(u) conj(v), u~ = 1_Q(-.), v~ = 1_Q(.)
///   j = 3: conj(u) v, u~ = 1_Q(-.), v~ = 1_Q(-.)
struct KnappPair {
  double N = 4.0;
  int j = 1;
  bool reflect_u = false;
  bool reflect_v = true;
  bool conj_u = false;
  bool conj_v = false;

  static KnappPair make(double N, int j);
};

/// Spectrum of u_N (`which` = 0) or v_N (`which` = 1).
SeparableSpectrum factor_spectrum(const KnappPair& pair, int which);

/// Exact space-time spectrum of the product N_j(u_N, v_N): (2 pi)^{-3/2} times the
/// convolution of the two effective factor spectra, each axis a trapezoid/hat profile.
SeparableSpectrum product_spectrum(const KnappPair& pair);

/// Weight signs sigma in <tau - sigma a> used for the factor norms, written as integrals over Q_N.
/// The defaults make them the true X^{s,b} norms: +1 for an unreflected factor, -1 for a reflected one.
struct FactorSigns {
  int u = +1;
  int v = -1;

  static FactorSigns natural(const KnappPair& pair) { return {pair.reflect_u ? -1 : +1, pair.reflect_v ? -1 : +1}; }
};

struct ExperimentRecord {
  double N = 0.0;
  double s = 0.0;
  double b = 0.0;
  int j = 1;
  SymbolKind symbol = SymbolKind::hyperbolic;
  double norm_u = 0.0;
  double norm_v = 0.0;
  double norm_prod = 0.0;
  double ratio = 0.0;
  double upper_bound = 0.0;
  double lower_bound = 0.0;
  bool upper_ok = false;
  bool lower_ok = false;
  bool valid = true;
  bool truncated = false;
};

/// 2^{B-s-1} N^s
double knapp_upper_bound(double N, double s, double b);
/// 2^{B-8-1/2} pi^{-3/2} N^s
double knapp_lower_bound(double N, double s, double b);
/// 2^{-6-1/2} pi^{-3/2}: pointwise floor of the product spectrum on R_N.
double knapp_pointwise_floor();

/// Relative slack allowed on both sides of the bound chain.
inline constexpr double kBoundSlack = 1e-6;

struct KnappOptions {
  std::size_t nodes = kDefaultNodes;
  std::optional<FactorSigns> signs;  ///< defaults to FactorSigns::natural
  int product_sign = +1;
  std::size_t workers = 0;
};

/// All norms and bounds for one N (any N >= 1).
ExperimentRecord knapp_record(double N, double s, double b, int j, SymbolKind symbol,
                              const KnappOptions& options = {});

/// Records for every N in N_list (increasing, each >= 4), computed in parallel and ordered by N.
std::vector<ExperimentRecord> ratio_curve(double s, double b, int j, SymbolKind symbol,
                                          const std::vector<double>& N_list, const KnappOptions& options = {});

/// Both halves of the bound chain hold within kBoundSlack.
bool bound_check(const ExperimentRecord& record);

/// Smallest integer N in [1, N_max] at which bound_check passes, if any.
std::optional<int> smallest_valid_N(double s, double b, int j, int N_max = 256, const KnappOptions& options = {});

}  // namespace xsb
