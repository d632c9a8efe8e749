#pragma once

#include <vector>

namespace alr {

// Least-squares fit of log10(quantity) against log10(abscissa).
// Points with nonpositive or nonfinite quantity are excluded (and counted);
// a fit with max residual above 0.1 is flagged unreliable.
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;      // log10 units
  double max_residual = 0.0;   // log10 units
  int points_used = 0;
  int points_excluded = 0;
  bool reliable = false;
};

RateFit fit_loglog(const std::vector<double>& abscissa, const std::vector<double>& quantity);

}
