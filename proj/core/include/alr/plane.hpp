#pragma once

#include "alr/core_shell.hpp"
#include "alr/field.hpp"
#include "alr/spline.hpp"

#include <functional>
#include <map>
#include <memory>
#include <variant>
#include <vector>

namespace alr {

// Source for the whole-plane problem: density f supported on the annulus
// [support_lo, support_hi] with support_lo > 1, zero total integral. The
// folded_modes closed form, when present, gives the signed modal profiles of
// the inverted source on [1/support_hi, 1/support_lo] directly and skips the
// angular projection (n > 0 selects e^{+in theta}, n < 0 the conjugate).
struct SourceSpec {
  double support_lo = 0.0;
  double support_hi = 0.0;
  std::function<cplx(PolarPoint)> density;
  std::function<cplx(int, double)> folded_modes;
};

// Modal radial profiles of the source folded into the unit disk through
// x -> x/|x|^2 (density transport: value at the preimage times the inverse
// Jacobian 1/rho^4). Profiles live on [rho_lo, rho_hi] and vanish outside.
class SourceProfiles {
 public:
  // Folded profiles given directly; for sources described inside the disk.
  SourceProfiles(double rho_lo, double rho_hi, std::function<cplx(int, double)> modes,
                 int order, double scale);

  double rho_lo() const { return rho_lo_; }
  double rho_hi() const { return rho_hi_; }
  int order() const { return order_; }

  // Largest profile magnitude seen on the sampling grid; the reference scale
  // for the compatibility tolerance.
  double scale() const { return scale_; }

  // Signed modal profile at rho; zero outside the support annulus.
  cplx mode(int n, double rho) const;

 private:
  friend SourceProfiles pushforward_source(const SourceSpec&, int, int);

  SourceProfiles() = default;  // projection-path construction via the friend

  double rho_lo_ = 0.0;
  double rho_hi_ = 0.0;
  int order_ = 0;
  double scale_ = 0.0;
  std::function<cplx(int, double)> closed_form_;
  // Projection fallback: per-radius modal coefficients of the folded source,
  // filled lazily. Not safe to share across threads while filling.
  std::function<cplx(PolarPoint)> density_;
  int n_theta_ = 0;
  mutable std::map<double, ModalCoefficients> projected_;
};

// Folds the physical source into the unit disk. Verifies the zero-mean
// condition (the integral of the folded zero mode must vanish, or the
// Neumann problem below has no solution) and throws if it fails.
SourceProfiles pushforward_source(const SourceSpec& f, int n_modes, int n_theta = 1024);

// Solution profiles of  Laplace(w) = folded source  on the unit disk with
// zero Neumann data at rho = 1, regularity at 0, and zero disk average for
// the zero mode. Between the support radii the profile is a clamped cubic
// spline through variation-of-parameters values; outside it reduces to the
// exact homogeneous forms A rho^n and B (rho^n + rho^{-n}).
class RadialProfiles {
 public:
  int order() const { return static_cast<int>(plus_.size()); }
  double support_lo() const { return rho_lo_; }
  double support_hi() const { return rho_hi_; }

  cplx value(int n, double rho) const;       // signed mode, rho in [0, 1]
  cplx derivative(int n, double rho) const;  // d/drho of the same profile

  cplx evaluate(PolarPoint p) const;         // full sum over modes
  PolarGradient gradient(PolarPoint p) const;

  const ModalCoefficients& trace() const { return trace_; }  // values at rho = 1
  cplx origin() const { return origin_; }                    // value at rho = 0
  double source_scale() const { return source_scale_; }

 private:
  friend RadialProfiles solve_disk_neumann(const SourceProfiles&, int);

  struct ModeProfile {
    cplx inner_coef{0.0, 0.0};  // w = inner_coef * rho^n on [0, rho_lo]
    cplx outer_coef{0.0, 0.0};  // w = outer_coef * (rho^n + rho^{-n}) on [rho_hi, 1]
    CubicSpline mid;            // on [rho_lo, rho_hi]
  };

  cplx mode_value(const ModeProfile& m, int n, double rho) const;
  cplx mode_derivative(const ModeProfile& m, int n, double rho) const;
  const ModeProfile& profile(int n, bool minus) const;

  double rho_lo_ = 0.0;
  double rho_hi_ = 1.0;
  double source_scale_ = 0.0;
  cplx zero_constant_{0.0, 0.0};  // mode-0 value on [0, rho_lo]; equals origin
  cplx zero_after_{0.0, 0.0};     // mode-0 value on [rho_hi, 1]
  CubicSpline zero_mid_;
  std::vector<ModeProfile> plus_;
  std::vector<ModeProfile> minus_;
  ModalCoefficients trace_;
  cplx origin_{0.0, 0.0};
};

// Variation-of-parameters solve per mode over the homogeneous pair
// rho^n, rho^{-n}; cumulative integrals by composite 16-point Gauss-Legendre
// over `nodes` subdivisions of the support. Zero Neumann data at 1 holds
// exactly by construction.
RadialProfiles solve_disk_neumann(const SourceProfiles& source, int nodes = 256);

// Trace verdict: every mode above 0 must vanish on the unit circle (within
// tol) for the fields to stay bounded as delta -> 0. Reports the largest
// surviving mode otherwise. Borderline is never produced here; the question
// is a threshold comparison, not an extrapolation.
struct TraceReport {
  CompatibilityVerdict verdict = CompatibilityVerdict::Compatible;
  int dominant_mode = 0;           // signed; 0 when compatible
  double dominant_magnitude = 0.0;
  double tol = 0.0;
};

TraceReport classify_trace(const ModalCoefficients& trace, double tol);
TraceReport classify_trace(const RadialProfiles& profiles);  // tol = 1e-8 * max(1, scale)

// Coefficients of the delta-solution. Interior (r <= 1):
//   a0 + sum a_{n,+-} r^n e^{+-in theta},
// exterior: b0 + sum b_{n,+-} r^{-n} e^{+-in theta} + profiles at 1/r. The
// additive constants are pinned by decay at infinity: b0 = -origin,
// a0 = b0 + trace zero mode.
struct PlaneSolution {
  double delta = 0.0;
  double clamp_tol = 0.0;
  ModalCoefficients a;  // zero_mode = a0
  ModalCoefficients b;  // zero_mode = b0
  std::shared_ptr<const RadialProfiles> profiles;
};

// a_{n,+-} = trace_n / (i delta), b_{n,+-} = (1 - i delta) trace_n / (i delta).
// Trace modes below clamp_tol are treated as exact zeros: they are artifacts
// of quadrature, and dividing them by delta would manufacture a spurious
// delta-dependence in an otherwise delta-independent field.
ModalCoefficients plane_coefficients(const ModalCoefficients& trace, double delta,
                                     bool exterior, double clamp_tol);

PlaneSolution solve_plane_modes(std::shared_ptr<const RadialProfiles> profiles, double delta);

// The assembled field on the whole plane; evaluates to 0 at r = infinity.
class PlaneField {
 public:
  explicit PlaneField(PlaneSolution sol);

  cplx evaluate(PolarPoint p) const;
  PolarGradient gradient(PolarPoint p) const;

  // One-sided values on either side of the unit circle, for transmission
  // checks; evaluate() itself resolves r = 1 to the interior side.
  cplx evaluate_interior(PolarPoint p) const;
  cplx evaluate_exterior(PolarPoint p) const;
  PolarGradient gradient_interior(PolarPoint p) const;
  PolarGradient gradient_exterior(PolarPoint p) const;

  const PlaneSolution& solution() const { return sol_; }

 private:
  PlaneSolution sol_;
};

struct DiskRegion {
  double radius = 0.0;  // centered at the origin
};
struct SectorRegion {
  double r_lo = 0.0, r_hi = 0.0;
  double theta_lo = 0.0, theta_hi = 0.0;
};
struct RectRegion {
  double x_lo = 0.0, x_hi = 0.0;
  double y_lo = 0.0, y_hi = 0.0;
};
using Region = std::variant<DiskRegion, SectorRegion, RectRegion>;

// Integral of |grad u|^2 over the region: closed form for origin-centered
// disks inside the unit circle, composite tensor Gauss-Legendre otherwise
// (with panel counts scaled to the modal bandwidth).
double power_on_region(const PlaneField& u, const Region& region, int points_per_panel = 16);

// The radial profile of a source assembled as Laplace(cutoff * harmonic sum)
// outside the unit disk: harmonic sum r^n/6^n e^{in theta} over n_modes
// modes, quintic cutoff falling from 1 to 0 across [2, 3]. Carries both the
// physical density and the folded closed form.
SourceSpec cutoff_harmonic_source(int n_modes = 100);

// Folded source built from the interior profile (1 - rho^2)^2 rho cos(theta),
// whose value and normal derivative both vanish on the unit circle: every
// trace mode is zero and the assembled field is delta-independent. Enters at
// the folded level because its physical support reaches the unit circle.
SourceProfiles vanishing_trace_profiles();

}  // namespace alr
