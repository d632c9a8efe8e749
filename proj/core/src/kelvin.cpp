#include "alr/kelvin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace alr {

PolarPoint KelvinMap::map_point(PolarPoint p) const {
  if (!(pivot > 0.0)) {
    throw std::invalid_argument("kelvin pivot must be positive");
  }
  if (p.r < 0.0) {
    throw std::domain_error("negative radius");
  }
  const double p2 = pivot * pivot;
  double r;
  if (p.r == 0.0) {
    r = std::numeric_limits<double>::infinity();
  } else if (std::isinf(p.r)) {
    r = 0.0;
  } else {
    r = p2 / p.r;
  }
  return PolarPoint{r, p.theta};
}

double KelvinMap::jacobian(double r) const {
  const double p2 = pivot * pivot;
  const double q = p2 / (r * r);
  return q * q;
}

ScalarField pushforward_density(const KelvinMap& map, ScalarField f) {
  return [map, f = std::move(f)](PolarPoint y) {
    return f(map.map_point(y)) * map.jacobian(y.r);
  };
}

ScalarField pullback_field(const KelvinMap& map, ScalarField w) {
  return [map, w = std::move(w)](PolarPoint x) { return w(map.map_point(x)); };
}

GradientField pullback_gradient(const KelvinMap& map, GradientField grad_w) {
  return [map, grad_w = std::move(grad_w)](PolarPoint x) {
    const PolarPoint y = map.map_point(x);
    const PolarGradient g = grad_w(y);
    const double scale = (map.pivot * map.pivot) / (x.r * x.r);  // = rho / r
    PolarGradient out;
    out.d_r = -scale * g.d_r;
    out.d_theta_over_r = scale * g.d_theta_over_r;
    return out;
  };
}

TransmissionReport verify_transmission(const KelvinMap& map, const ScalarField& u,
                                       const GradientField& grad_u, const ScalarField& v,
                                       const GradientField& grad_v, int n_samples) {
  if (n_samples < 1) {
    throw std::invalid_argument("need at least one sample angle");
  }
  TransmissionReport rep;
  const double step = 2.0 * std::numbers::pi / n_samples;
  for (int k = 0; k < n_samples; ++k) {
    const PolarPoint p{map.pivot, k * step};
    rep.value_gap = std::max(rep.value_gap, std::abs(u(p) - v(p)));
    rep.flux_gap = std::max(rep.flux_gap, std::abs(grad_u(p).d_r + grad_v(p).d_r));
  }
  return rep;
}

}  // namespace alr
