#include "relaxlab/fit.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "relaxlab/error.hpp"

namespace relaxlab {

LinearFit linear_fit(std::span<const double> x, std::span<const double> y, double confidence) {
  if (x.size() != y.size()) throw ConfigError("fit needs paired samples");
  if (x.size() < 2) throw ConfigError("fit needs at least two samples");
  if (!(confidence > 0.0 && confidence < 1.0)) throw ConfigError("confidence must lie in (0, 1)");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw ConfigError("fit needs distinct abscissae");
  LinearFit f;
  f.n = static_cast<int>(x.size());
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - f.intercept - f.slope * x[i];
    sse += e * e;
  }
  f.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  if (x.size() == 2) {
    f.slope_stderr = std::numeric_limits<double>::quiet_NaN();
    f.ci_low = -std::numeric_limits<double>::infinity();
    f.ci_high = std::numeric_limits<double>::infinity();
    return f;
  }
  f.slope_stderr = std::sqrt(sse / (n - 2.0) / sxx);
  const boost::math::students_t dist(n - 2.0);
  const double t = boost::math::quantile(boost::math::complement(dist, (1.0 - confidence) / 2.0));
  f.ci_low = f.slope - t * f.slope_stderr;
  f.ci_high = f.slope + t * f.slope_stderr;
  return f;
}

LinearFit power_law_fit(std::span<const double> x, std::span<const double> y, double confidence) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ConfigError("power-law fit needs positive samples");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return linear_fit(lx, ly, confidence);
}

double observed_order(double coarse_error, double fine_error) {
  return std::log2(coarse_error / fine_error);
}

}  // namespace relaxlab
