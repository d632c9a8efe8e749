#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace alr {

using cplx = std::complex<double>;

struct PolarPoint {
  double r = 0.0;
  double theta = 0.0;
};

// Truncated Fourier data on a circle:
//   f(theta) = zero_mode + sum_{n=1}^{N} (plus[n-1] e^{+i n theta} + minus[n-1] e^{-i n theta}).
// plus and minus always have equal length N.
struct ModalCoefficients {
  cplx zero_mode{0.0, 0.0};
  std::vector<cplx> plus;
  std::vector<cplx> minus;

  ModalCoefficients() = default;
  explicit ModalCoefficients(int n_modes) : plus(n_modes), minus(n_modes) {}

  int order() const { return static_cast<int>(plus.size()); }

  // Magnitude of the last retained mode pair; the caller's handle on
  // truncation error.
  double tail_magnitude() const;

  // All entries finite and plus/minus lengths equal; throws otherwise.
  void validate() const;

  // Zero-padded or truncated copy with the given order.
  ModalCoefficients resized(int n_modes) const;

  bool is_real_symmetric(double tol = 1e-12) const;  // minus[n] == conj(plus[n]), zero_mode real
};

ModalCoefficients operator+(const ModalCoefficients& a, const ModalCoefficients& b);
ModalCoefficients operator-(const ModalCoefficients& a, const ModalCoefficients& b);
ModalCoefficients operator*(cplx s, const ModalCoefficients& a);

// Projects boundary samples onto modes 0..N by the uniform trapezoid rule,
// which is exact for band-limited data once the sample count exceeds twice
// the bandwidth. Samples are taken at theta_j = 2 pi j / M with
// M = max(8N, min_samples). Non-finite samples are rejected with a
// diagnostic naming the offending angle.
ModalCoefficients project_boundary(const std::function<cplx(double)>& sampler, int n_modes,
                                   int min_samples = 64);

// Fills plus[n-1] = generator(n) directly; minus stays zero.
ModalCoefficients project_generator(const std::function<cplx(int)>& generator, int n_modes,
                                    cplx zero_mode = {});

// Discrete H^{1/2}-type sum, squared convention:
//   |h_0|^2 + sum_{n>=1} n (|h_{n,+}|^2 + |h_{n,-}|^2).
// The equivalence constant to the integral trace norm is fixed to 1.
double h_half_norm(const ModalCoefficients& h);

// -------- Closed-form energies of separated-variables fields --------
//
// Disk field  u = c_0 + sum c_{n,+-} r^n e^{+-i n theta}  on B_rho:
//   int |grad u|^2 = 2 pi sum n |c_{n,+-}|^2 rho^{2n}
// Annulus field u = a0 + b0 log r + sum (p r^n + q r^{-n}) e^{+-i n theta} on r_lo < r < r_hi:
//   int |grad u|^2 = 2 pi |b0|^2 log(r_hi/r_lo)
//                  + 2 pi sum n [ |p|^2 (r_hi^{2n} - r_lo^{2n}) + |q|^2 (r_lo^{-2n} - r_hi^{-2n}) ]
// The r^n / r^{-n} gradient cross terms cancel pointwise, so no mixed term
// appears. L2 masses keep their cross terms.

double grad_energy_disk(const ModalCoefficients& c, double rho);

double grad_energy_annulus(const ModalCoefficients& inner, const ModalCoefficients& outer,
                           cplx log_coeff, double r_lo, double r_hi);

double l2_mass_disk(const ModalCoefficients& c, double rho);

double l2_mass_annulus(const ModalCoefficients& inner, const ModalCoefficients& outer,
                       cplx log_coeff, double r_lo, double r_hi);

}
