#include "xsb/norms.hpp"

#include <algorithm>
#include <array>

#include "xsb/error.hpp"

namespace xsb {

std::string to_string(SymbolKind kind) { return kind == SymbolKind::hyperbolic ? "hyperbolic" : "elliptic"; }

SymbolKind parse_symbol(const std::string& name) {
  if (name == "hyperbolic") return SymbolKind::hyperbolic;
  if (name == "elliptic") return SymbolKind::elliptic;
  throw UsageError("unknown symbol '" + name + "' (expected hyperbolic or elliptic)");
}

Profile::Profile(std::vector<Segment> segments) : segments_(std::move(segments)) {
  std::sort(segments_.begin(), segments_.end(), [](const Segment& a, const Segment& b) { return a.x0 < b.x0; });
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (!(s.x1 >= s.x0) || s.y0 < 0.0 || s.y1 < 0.0) throw DomainError("profile segment is invalid or negative");
    if (i > 0 && s.x0 < segments_[i - 1].x1) throw DomainError("profile segments overlap");
  }
  std::erase_if(segments_, [](const Segment& s) { return s.x1 == s.x0; });
}

Profile Profile::indicator(Interval support) { return Profile({{support.lo, support.hi, 1.0, 1.0}}); }

Profile Profile::convolve_indicators(Interval a, Interval b) {
  const double la = a.length();
  const double lb = b.length();
  const double shortest = std::min(la, lb);
  const double lo = a.lo + b.lo;
  const double hi = a.hi + b.hi;
  std::vector<Segment> segs;
  segs.push_back({lo, lo + shortest, 0.0, shortest});
  if (la != lb) segs.push_back({lo + shortest, hi - shortest, shortest, shortest});
  segs.push_back({hi - shortest, hi, shortest, 0.0});
  return Profile(std::move(segs));
}

double Profile::operator()(double x) const {
  // segments are few (at most three in practice), a linear scan is fine
  for (const auto& s : segments_) {
    if (x >= s.x0 && x <= s.x1) {
      const double t = (x - s.x0) / (s.x1 - s.x0);
      return s.y0 + t * (s.y1 - s.y0);
    }
  }
  return 0.0;
}

std::vector<double> Profile::breakpoints() const {
  std::vector<double> out;
  for (const auto& s : segments_) {
    out.push_back(s.x0);
    out.push_back(s.x1);
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Interval Profile::support() const {
  if (segments_.empty()) return {0.0, 0.0};
  return {segments_.front().x0, segments_.back().x1};
}

double Profile::peak() const {
  double m = 0.0;
  for (const auto& s : segments_) m = std::max({m, s.y0, s.y1});
  return m;
}

Profile Profile::reflected() const {
  std::vector<Segment> segs;
  segs.reserve(segments_.size());
  for (const auto& s : segments_) segs.push_back({-s.x1, -s.x0, s.y1, s.y0});
  return Profile(std::move(segs));
}

SeparableSpectrum SeparableSpectrum::indicator(const RotatedBox& box) {
  return {1.0, Profile::indicator(box.u), Profile::indicator(box.v), Profile::indicator(box.tau)};
}

double xsb_norm_grid(const SpectralField& field, const NormParams& params) {
  if (field.values.size() != field.grid.count()) throw InvalidGrid("xsb_norm_grid: sample count mismatch");
  const auto& g = field.grid;
  double acc = 0.0;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < g.size(0); ++i) {
    for (std::size_t j = 0; j < g.size(1); ++j) {
      const auto r = to_rotated(g.point(0, i), g.point(1, j));
      for (std::size_t k = 0; k < g.size(2); ++k, ++idx) {
        const double a = std::abs(field.values[idx]);
        if (a == 0.0) continue;
        const double w = xsb_weight(r.u, r.v, g.point(2, k), params);
        acc += (w * a) * (w * a);
      }
    }
  }
  return std::sqrt(acc * g.cell_volume());
}

double xsb_norm_sampled(const Grid3& g, const SpectrumSampler& sampler, const NormParams& params) {
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(0); ++i) {
    for (std::size_t j = 0; j < g.size(1); ++j) {
      const double xi1 = g.point(0, i);
      const double xi2 = g.point(1, j);
      const auto r = to_rotated(xi1, xi2);
      for (std::size_t k = 0; k < g.size(2); ++k) {
        const double a = std::abs(sampler(xi1, xi2, g.point(2, k)));
        if (a == 0.0) continue;
        const double w = xsb_weight(r.u, r.v, g.point(2, k), params);
        acc += (w * a) * (w * a);
      }
    }
  }
  return std::sqrt(acc * g.cell_volume());
}

SpectralField sample(const SeparableSpectrum& spec, const Grid3& g) {
  SpectralField out(g);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < g.size(0); ++i) {
    for (std::size_t j = 0; j < g.size(1); ++j) {
      const auto r = to_rotated(g.point(0, i), g.point(1, j));
      const double uv = spec.scale * spec.u(r.u) * spec.v(r.v);
      for (std::size_t k = 0; k < g.size(2); ++k, ++idx) {
        if (uv != 0.0) out.values[idx] = uv * spec.tau(g.point(2, k));
      }
    }
  }
  return out;
}

namespace {

std::vector<double> radial_grading(const Interval& iv, std::vector<double> cuts) {
  cuts.push_back(0.0);
  for (double r = 1.0; r < std::max(std::abs(iv.lo), std::abs(iv.hi)); r *= 2.0) {
    cuts.push_back(r);
    cuts.push_back(-r);
  }
  return cuts;
}

}  // namespace

double xsb_norm_separable(const SeparableSpectrum& spec, const NormParams& params, std::size_t nodes) {
  if (spec.empty()) return 0.0;
  const RotatedBox box = spec.support();
  if (box.volume() <= 0.0) return 0.0;

  const std::array<std::vector<double>, 3> cuts{radial_grading(box.u, spec.u.breakpoints()),
                                                radial_grading(box.v, spec.v.breakpoints()),
                                                spec.tau.breakpoints()};
  const auto qu = composite_gauss_legendre(nodes, box.u.lo, box.u.hi, cuts[0]);
  const auto qv = composite_gauss_legendre(nodes, box.v.lo, box.v.hi, cuts[1]);
  const auto qt = composite_gauss_legendre(nodes, box.tau.lo, box.tau.hi, cuts[2]);

  // |spec * weight|^2 factors as P_u^2 P_v^2 <xi>^{2s} times P_tau^2 <tau - sigma a>^{2b}
  std::vector<double> tau_profile(qt.size());
  for (std::size_t k = 0; k < qt.size(); ++k) {
    const double p = spec.tau(qt.nodes[k]);
    tau_profile[k] = qt.weights[k] * p * p;
  }
  double integral = 0.0;
  for (std::size_t i = 0; i < qu.size(); ++i) {
    const double u = qu.nodes[i];
    const double pu = spec.u(u);
    double plane = 0.0;
    for (std::size_t j = 0; j < qv.size(); ++j) {
      const double v = qv.nodes[j];
      const double pv = spec.v(v);
      const double radial = std::pow(1.0 + u * u + v * v, params.s);
      const double a = params.sign * symbol_rotated(params.symbol, u, v);
      double line = 0.0;
      for (std::size_t k = 0; k < qt.size(); ++k) {
        const double m = qt.nodes[k] - a;
        line += tau_profile[k] * std::pow(1.0 + m * m, params.b);
      }
      plane += qv.weights[j] * pv * pv * radial * line;
    }
    integral += qu.weights[i] * pu * pu * plane;
  }
  integral *= spec.scale * spec.scale;
  if (!std::isfinite(integral)) throw NumericalDomain("xsb_norm_separable: non-finite integral");
  return std::sqrt(std::max(integral, 0.0));
}

}  // namespace xsb
