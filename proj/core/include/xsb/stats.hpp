#pragma once

#include <cstddef>
#include <span>

namespace xsb {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;  ///< NaN when fewer than three points
  std::size_t points = 0;
};

/// Ordinary least squares y = intercept + slope * x. Needs at least two points with distinct x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Least squares in log-log coordinates; throws DomainError on nonpositive data.
LinearFit fit_loglog(std::span<const double> x, std::span<const double> y);

}  // namespace xsb
