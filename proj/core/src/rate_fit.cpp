#include "alr/rate_fit.hpp"

#include <cmath>
#include <stdexcept>

namespace alr {

RateFit fit_loglog(const std::vector<double>& abscissa, const std::vector<double>& quantity) {
  if (abscissa.size() != quantity.size())
    throw std::invalid_argument("fit_loglog: size mismatch");
  std::vector<double> x, y;
  x.reserve(abscissa.size());
  y.reserve(abscissa.size());
  RateFit fit;
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    if (!(abscissa[i] > 0.0) || !std::isfinite(abscissa[i]))
      throw std::invalid_argument("fit_loglog: abscissa must be positive and finite");
    if (!(quantity[i] > 0.0) || !std::isfinite(quantity[i])) {
      ++fit.points_excluded;
      continue;
    }
    x.push_back(std::log10(abscissa[i]));
    y.push_back(std::log10(quantity[i]));
  }
  if (x.size() < 2) throw std::invalid_argument("fit_loglog: fewer than 2 usable points");

  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / x.size();
  const double my = sy / y.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_loglog: degenerate abscissa");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points_used = static_cast<int>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = std::abs(y[i] - (fit.intercept + fit.slope * x[i]));
    if (r > fit.max_residual) fit.max_residual = r;
  }
  fit.reliable = fit.max_residual <= 0.1;
  return fit;
}

}  // namespace alr
