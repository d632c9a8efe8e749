#include "alr/modal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace alr {

namespace {
constexpr double kPi = 3.14159265358979323846;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
}  // namespace

double ModalCoefficients::tail_magnitude() const {
  if (plus.empty()) return std::abs(zero_mode);
  return std::max(std::abs(plus.back()), std::abs(minus.back()));
}

void ModalCoefficients::validate() const {
  if (plus.size() != minus.size())
    throw std::invalid_argument("ModalCoefficients: plus/minus length mismatch");
  if (!finite(zero_mode)) throw std::invalid_argument("ModalCoefficients: zero_mode not finite");
  for (std::size_t i = 0; i < plus.size(); ++i) {
    if (!finite(plus[i]) || !finite(minus[i]))
      throw std::invalid_argument("ModalCoefficients: non-finite entry at mode " +
                                  std::to_string(i + 1));
  }
}

ModalCoefficients ModalCoefficients::resized(int n_modes) const {
  if (n_modes < 0) throw std::invalid_argument("ModalCoefficients::resized: negative order");
  ModalCoefficients out(n_modes);
  out.zero_mode = zero_mode;
  const int keep = std::min(n_modes, order());
  for (int i = 0; i < keep; ++i) {
    out.plus[i] = plus[i];
    out.minus[i] = minus[i];
  }
  return out;
}

bool ModalCoefficients::is_real_symmetric(double tol) const {
  if (std::abs(zero_mode.imag()) > tol) return false;
  for (std::size_t i = 0; i < plus.size(); ++i)
    if (std::abs(minus[i] - std::conj(plus[i])) > tol) return false;
  return true;
}

ModalCoefficients operator+(const ModalCoefficients& a, const ModalCoefficients& b) {
  const int n = std::max(a.order(), b.order());
  ModalCoefficients out = a.resized(n);
  out.zero_mode += b.zero_mode;
  for (int i = 0; i < b.order(); ++i) {
    out.plus[i] += b.plus[i];
    out.minus[i] += b.minus[i];
  }
  return out;
}

ModalCoefficients operator-(const ModalCoefficients& a, const ModalCoefficients& b) {
  return a + (cplx(-1.0, 0.0) * b);
}

ModalCoefficients operator*(cplx s, const ModalCoefficients& a) {
  ModalCoefficients out = a;
  out.zero_mode *= s;
  for (auto& v : out.plus) v *= s;
  for (auto& v : out.minus) v *= s;
  return out;
}

ModalCoefficients project_boundary(const std::function<cplx(double)>& sampler, int n_modes,
                                   int min_samples) {
  if (n_modes < 0) throw std::invalid_argument("project_boundary: negative mode count");
  const int m = std::max(8 * std::max(n_modes, 1), min_samples);
  std::vector<cplx> samples(m);
  for (int j = 0; j < m; ++j) {
    const double theta = 2.0 * kPi * j / m;
    samples[j] = sampler(theta);
    if (!finite(samples[j]))
      throw std::invalid_argument("project_boundary: non-finite sample at theta = " +
                                  std::to_string(theta));
  }
  ModalCoefficients out(n_modes);
  // c_n = (1/M) sum_j f(theta_j) e^{-i n theta_j}; incremental phase update
  // per sample keeps this O(M N) without per-mode trig calls.
  for (int j = 0; j < m; ++j) {
    const double theta = 2.0 * kPi * j / m;
    const cplx step = std::polar(1.0, -theta);
    cplx phase = step;
    out.zero_mode += samples[j];
    for (int n = 1; n <= n_modes; ++n) {
      out.plus[n - 1] += samples[j] * phase;
      out.minus[n - 1] += samples[j] * std::conj(phase);
      phase *= step;
    }
  }
  const double inv = 1.0 / m;
  out.zero_mode *= inv;
  for (auto& v : out.plus) v *= inv;
  for (auto& v : out.minus) v *= inv;
  return out;
}

ModalCoefficients project_generator(const std::function<cplx(int)>& generator, int n_modes,
                                    cplx zero_mode) {
  if (n_modes < 0) throw std::invalid_argument("project_generator: negative mode count");
  ModalCoefficients out(n_modes);
  out.zero_mode = zero_mode;
  for (int n = 1; n <= n_modes; ++n) out.plus[n - 1] = generator(n);
  out.validate();
  return out;
}

double h_half_norm(const ModalCoefficients& h) {
  double s = std::norm(h.zero_mode);
  for (int n = 1; n <= h.order(); ++n)
    s += n * (std::norm(h.plus[n - 1]) + std::norm(h.minus[n - 1]));
  return s;
}

double grad_energy_disk(const ModalCoefficients& c, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("grad_energy_disk: rho must be positive");
  double s = 0.0;
  double rp = 1.0;
  const double r2 = rho * rho;
  for (int n = 1; n <= c.order(); ++n) {
    rp *= r2;  // rho^{2n}
    s += n * (std::norm(c.plus[n - 1]) + std::norm(c.minus[n - 1])) * rp;
  }
  return 2.0 * kPi * s;
}

double grad_energy_annulus(const ModalCoefficients& inner, const ModalCoefficients& outer,
                           cplx log_coeff, double r_lo, double r_hi) {
  if (!(0.0 < r_lo && r_lo < r_hi))
    throw std::invalid_argument("grad_energy_annulus: requires 0 < r_lo < r_hi");
  if (inner.order() != outer.order())
    throw std::invalid_argument("grad_energy_annulus: order mismatch");
  double s = std::norm(log_coeff) * std::log(r_hi / r_lo);
  const double hi2 = r_hi * r_hi, lo2 = r_lo * r_lo;
  const double ihi2 = 1.0 / hi2, ilo2 = 1.0 / lo2;
  double hp = 1.0, lp = 1.0, him = 1.0, lom = 1.0;
  for (int n = 1; n <= inner.order(); ++n) {
    hp *= hi2;    // r_hi^{2n}
    lp *= lo2;    // r_lo^{2n}
    him *= ihi2;  // r_hi^{-2n}
    lom *= ilo2;  // r_lo^{-2n}
    const double pn = std::norm(inner.plus[n - 1]) + std::norm(inner.minus[n - 1]);
    const double qn = std::norm(outer.plus[n - 1]) + std::norm(outer.minus[n - 1]);
    s += n * (pn * (hp - lp) + qn * (lom - him));
  }
  return 2.0 * kPi * s;
}

double l2_mass_disk(const ModalCoefficients& c, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("l2_mass_disk: rho must be positive");
  double s = std::norm(c.zero_mode) * rho * rho / 2.0;
  const double r2 = rho * rho;
  double rp = r2;
  for (int n = 1; n <= c.order(); ++n) {
    rp *= r2;  // rho^{2n+2}
    s += (std::norm(c.plus[n - 1]) + std::norm(c.minus[n - 1])) * rp / (2.0 * n + 2.0);
  }
  return 2.0 * kPi * s;
}

double l2_mass_annulus(const ModalCoefficients& inner, const ModalCoefficients& outer,
                       cplx log_coeff, double r_lo, double r_hi) {
  if (!(0.0 < r_lo && r_lo < r_hi))
    throw std::invalid_argument("l2_mass_annulus: requires 0 < r_lo < r_hi");
  if (inner.order() != outer.order())
    throw std::invalid_argument("l2_mass_annulus: order mismatch");
  auto sq = [](double v) { return v * v; };
  // mode 0 with log: antiderivatives of r, r log r, r log^2 r
  const double t1 = (sq(r_hi) - sq(r_lo)) / 2.0;
  auto F2 = [&](double r) { return r * r * (2.0 * std::log(r) - 1.0) / 4.0; };
  auto F3 = [&](double r) {
    const double l = std::log(r);
    return r * r * (2.0 * l * l - 2.0 * l + 1.0) / 4.0;
  };
  const cplx a0 = inner.zero_mode + outer.zero_mode;  // both hold constants on an annulus
  double s = std::norm(a0) * t1 + 2.0 * (a0 * std::conj(log_coeff)).real() * (F2(r_hi) - F2(r_lo)) +
             std::norm(log_coeff) * (F3(r_hi) - F3(r_lo));
  for (int n = 1; n <= inner.order(); ++n) {
    const double tp =
        (std::pow(r_hi, 2 * n + 2) - std::pow(r_lo, 2 * n + 2)) / (2.0 * n + 2.0);
    const double tq = (n == 1) ? std::log(r_hi / r_lo)
                               : (std::pow(r_hi, 2 - 2 * n) - std::pow(r_lo, 2 - 2 * n)) /
                                     (2.0 - 2.0 * n);
    for (int sign = 0; sign < 2; ++sign) {
      const cplx p = sign ? inner.minus[n - 1] : inner.plus[n - 1];
      const cplx q = sign ? outer.minus[n - 1] : outer.plus[n - 1];
      s += std::norm(p) * tp + std::norm(q) * tq + 2.0 * (p * std::conj(q)).real() * t1;
    }
  }
  return 2.0 * kPi * s;
}

}  // namespace alr
