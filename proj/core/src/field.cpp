#include "alr/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace alr {

namespace {

void validate_region(const FieldRegion& reg) {
  if (!(reg.r_lo >= 0.0) || !(reg.r_hi > reg.r_lo)) {
    throw std::invalid_argument("field region must satisfy 0 <= r_lo < r_hi");
  }
  reg.inner.validate();
  reg.outer.validate();
  if (reg.r_lo == 0.0) {
    bool singular = std::abs(reg.log_coeff) != 0.0;
    for (int n = 1; n <= reg.outer.order() && !singular; ++n) {
      singular = std::abs(reg.outer.plus[n - 1]) != 0.0 || std::abs(reg.outer.minus[n - 1]) != 0.0;
    }
    if (singular) {
      throw std::invalid_argument("disk region cannot carry r^{-n} or log terms");
    }
  }
}

}  // namespace

HarmonicField::HarmonicField(std::vector<FieldRegion> regions, bool real_valued)
    : regions_(std::move(regions)), real_valued_(real_valued) {
  std::sort(regions_.begin(), regions_.end(),
            [](const FieldRegion& a, const FieldRegion& b) { return a.r_lo < b.r_lo; });
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    validate_region(regions_[i]);
    if (i > 0 && regions_[i].r_lo != regions_[i - 1].r_hi) {
      throw std::invalid_argument("field regions must tile [r_min, r_max] without gaps");
    }
  }
}

const FieldRegion& HarmonicField::region_at(double r) const {
  if (regions_.empty()) {
    throw std::domain_error("field has no regions");
  }
  if (!(r >= r_min() && r <= r_max())) {
    throw std::domain_error("point outside field domain");
  }
  // Interfaces resolve inward: region i covers [r_lo, r_hi].
  for (const FieldRegion& reg : regions_) {
    if (r <= reg.r_hi) return reg;
  }
  return regions_.back();
}

cplx HarmonicField::evaluate(PolarPoint p) const {
  const FieldRegion& reg = region_at(p.r);
  cplx acc = reg.inner.zero_mode + reg.outer.zero_mode;
  if (std::abs(reg.log_coeff) != 0.0) {
    acc += reg.log_coeff * std::log(p.r);
  }
  const int n_inner = reg.inner.order();
  const int n_outer = reg.outer.order();
  const int n_max = std::max(n_inner, n_outer);
  if (n_max > 0) {
    const cplx phase(std::cos(p.theta), std::sin(p.theta));
    cplx e_plus(1.0, 0.0);  // e^{i n theta}, advanced per mode
    double r_pow = 1.0;     // r^n
    const double r_inv = (p.r > 0.0) ? 1.0 / p.r : 0.0;
    double r_neg = 1.0;     // r^{-n}
    for (int n = 1; n <= n_max; ++n) {
      e_plus *= phase;
      r_pow *= p.r;
      r_neg *= r_inv;
      const cplx e_minus = std::conj(e_plus);
      if (n <= n_inner) {
        acc += reg.inner.plus[n - 1] * r_pow * e_plus;
        acc += reg.inner.minus[n - 1] * r_pow * e_minus;
      }
      if (n <= n_outer) {
        acc += reg.outer.plus[n - 1] * r_neg * e_plus;
        acc += reg.outer.minus[n - 1] * r_neg * e_minus;
      }
    }
  }
  if (real_valued_) return cplx(acc.real(), 0.0);
  return acc;
}

PolarGradient HarmonicField::gradient(PolarPoint p) const {
  const FieldRegion& reg = region_at(p.r);
  if (p.r == 0.0) {
    // Only the n = 1 inner terms contribute a (finite) gradient at the origin.
    PolarGradient g;
    if (reg.inner.order() >= 1) {
      const cplx phase(std::cos(p.theta), std::sin(p.theta));
      const cplx cp = reg.inner.plus[0];
      const cplx cm = reg.inner.minus[0];
      g.d_r = cp * phase + cm * std::conj(phase);
      g.d_theta_over_r = cplx(0.0, 1.0) * (cp * phase - cm * std::conj(phase));
    }
    return g;
  }
  cplx d_r(0.0, 0.0);
  cplx d_t(0.0, 0.0);  // (1/r) d/dtheta
  const double r_inv = 1.0 / p.r;
  if (std::abs(reg.log_coeff) != 0.0) {
    d_r += reg.log_coeff * r_inv;
  }
  const int n_inner = reg.inner.order();
  const int n_outer = reg.outer.order();
  const int n_max = std::max(n_inner, n_outer);
  if (n_max > 0) {
    const cplx phase(std::cos(p.theta), std::sin(p.theta));
    const cplx iunit(0.0, 1.0);
    cplx e_plus(1.0, 0.0);
    double r_pow_m1 = r_inv;  // r^{n-1}, starts at r^0 / r
    double r_neg_p1 = 1.0;    // r^{-(n+1)} * r = r^{-n}, divide once more below
    for (int n = 1; n <= n_max; ++n) {
      e_plus *= phase;
      r_pow_m1 *= p.r;          // now r^{n-1}
      r_neg_p1 *= r_inv;        // now r^{-n}
      const cplx e_minus = std::conj(e_plus);
      const double dn = static_cast<double>(n);
      if (n <= n_inner) {
        const cplx cp = reg.inner.plus[n - 1];
        const cplx cm = reg.inner.minus[n - 1];
        const double fac = dn * r_pow_m1;
        d_r += fac * (cp * e_plus + cm * e_minus);
        d_t += fac * iunit * (cp * e_plus - cm * e_minus);
      }
      if (n <= n_outer) {
        const cplx cp = reg.outer.plus[n - 1];
        const cplx cm = reg.outer.minus[n - 1];
        const double fac = dn * r_neg_p1 * r_inv;  // n r^{-n-1}
        d_r -= fac * (cp * e_plus + cm * e_minus);
        d_t += fac * iunit * (cp * e_plus - cm * e_minus);
      }
    }
  }
  PolarGradient g;
  g.d_r = d_r;
  g.d_theta_over_r = d_t;
  if (real_valued_) {
    g.d_r = cplx(g.d_r.real(), 0.0);
    g.d_theta_over_r = cplx(g.d_theta_over_r.real(), 0.0);
  }
  return g;
}

double HarmonicField::grad_energy() const {
  double total = 0.0;
  for (const FieldRegion& reg : regions_) {
    if (reg.r_lo == 0.0) {
      total += grad_energy_disk(reg.inner, reg.r_hi);
    } else {
      total += grad_energy_annulus(reg.inner, reg.outer, reg.log_coeff, reg.r_lo, reg.r_hi);
    }
  }
  return total;
}

double HarmonicField::l2_mass() const {
  double total = 0.0;
  for (const FieldRegion& reg : regions_) {
    if (reg.r_lo == 0.0) {
      total += l2_mass_disk(reg.inner, reg.r_hi);
    } else {
      total += l2_mass_annulus(reg.inner, reg.outer, reg.log_coeff, reg.r_lo, reg.r_hi);
    }
  }
  return total;
}

}  // namespace alr
