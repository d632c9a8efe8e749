#pragma once

#include "alr/field.hpp"

#include <functional>

namespace alr {

// Inversion through the circle of radius `pivot`: r -> pivot^2 / r, theta
// fixed. Involutive; swaps the inside and outside of the pivot circle while
// preserving harmonicity in two dimensions.
struct KelvinMap {
  double pivot = 1.0;

  PolarPoint map_point(PolarPoint p) const;

  // |det DF| at radius r, i.e. pivot^4 / r^4.
  double jacobian(double r) const;
};

using ScalarField = std::function<cplx(PolarPoint)>;
using GradientField = std::function<PolarGradient(PolarPoint)>;

// Density pushforward: (T_* f)(y) = f(F(y)) * |det DF(y)|, which preserves
// integrals region-to-region. F is its own inverse, so the same formula
// transports densities in either direction.
ScalarField pushforward_density(const KelvinMap& map, ScalarField f);

// Pullback of field values: (F^* w)(x) = w(F(x)).
ScalarField pullback_field(const KelvinMap& map, ScalarField w);

// Polar gradient of the pullback w∘F expressed at x, from the gradient of w
// at F(x). With rho = pivot^2 / r:
//   d_r (w∘F)   = -(pivot^2 / r^2) w_rho
//   (1/r) d_th  =  (rho / r) * (1/rho) w_th = (pivot^2 / r^2) (w_th / rho)
GradientField pullback_gradient(const KelvinMap& map, GradientField grad_w);

// Max value mismatch and max flux mismatch between an interior field u and an
// exterior-reflected field v across the pivot circle, sampled at n_samples
// angles. Flux matching means d_r v = -d_r u there (inversion flips the
// radial direction).
struct TransmissionReport {
  double value_gap = 0.0;
  double flux_gap = 0.0;
};

TransmissionReport verify_transmission(const KelvinMap& map, const ScalarField& u,
                                       const GradientField& grad_u, const ScalarField& v,
                                       const GradientField& grad_v, int n_samples = 256);

}  // namespace alr
