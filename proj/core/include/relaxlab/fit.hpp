#pragma once

#include <span>

namespace relaxlab {

/// Ordinary least squares y = intercept + slope x with a Student-t interval on the slope.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double r_squared = 0.0;
  int n = 0;
};

LinearFit linear_fit(std::span<const double> x, std::span<const double> y, double confidence = 0.95);

/// Fit of log y against log x; the slope is the power-law exponent.
LinearFit power_law_fit(std::span<const double> x, std::span<const double> y,
                        double confidence = 0.95);

/// log2(coarse / fine) for a refinement by two.
double observed_order(double coarse_error, double fine_error);

}  // namespace relaxlab
