#pragma once

#include "alr/modal.hpp"

#include <vector>

namespace alr {

// Gradient in polar components: (d/dr, (1/r) d/dtheta). The squared magnitude
// |grad u|^2 = |d_r|^2 + |d_theta_over_r|^2 is basis independent.
struct PolarGradient {
  cplx d_r{0.0, 0.0};
  cplx d_theta_over_r{0.0, 0.0};
};

// One radial annulus (or disk when r_lo == 0) of a separated-variables field:
//   u = inner.zero_mode + outer.zero_mode + log_coeff * log r
//     + sum_n (inner[n] r^n + outer[n] r^{-n}) e^{+-i n theta}.
// A disk region must have outer == 0 and log_coeff == 0 (regularity at the
// origin).
struct FieldRegion {
  double r_lo = 0.0;
  double r_hi = 0.0;
  ModalCoefficients inner;
  ModalCoefficients outer;
  cplx log_coeff{0.0, 0.0};
};

// Piecewise-harmonic complex field on concentric radial regions. Regions are
// kept sorted; a query on a shared interface resolves to the inner region
// (the fields of interest are continuous there).
class HarmonicField {
 public:
  HarmonicField() = default;
  explicit HarmonicField(std::vector<FieldRegion> regions, bool real_valued = false);

  cplx evaluate(PolarPoint p) const;
  PolarGradient gradient(PolarPoint p) const;

  double r_min() const { return regions_.empty() ? 0.0 : regions_.front().r_lo; }
  double r_max() const { return regions_.empty() ? 0.0 : regions_.back().r_hi; }
  const std::vector<FieldRegion>& regions() const { return regions_; }
  bool real_valued() const { return real_valued_; }

  double grad_energy() const;  // integral of |grad u|^2 over all regions
  double l2_mass() const;
  double h1_norm_sq() const { return grad_energy() + l2_mass(); }

 private:
  const FieldRegion& region_at(double r) const;

  std::vector<FieldRegion> regions_;
  bool real_valued_ = false;
};

}
