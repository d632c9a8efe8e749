#include "alr/core_shell.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace alr {

void SolverConfig::validate() const {
  if (!(R > 1.0) || !std::isfinite(R)) {
    throw std::invalid_argument("outer radius must exceed the inclusion radius 1");
  }
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("loss parameter must lie in (0, 1)");
  }
  if (truncation < 0) {
    throw std::invalid_argument("truncation must be nonnegative");
  }
}

int resonance_order(double delta, double R) {
  if (!(delta > 0.0) || !(delta < 1.0) || !(R > 1.0)) {
    throw std::invalid_argument("need 0 < delta < 1 and R > 1");
  }
  const double n = 0.5 * std::abs(std::log(delta)) / std::log(R);
  return std::max(1, static_cast<int>(std::ceil(n)));
}

int working_truncation(double delta, double R) { return 4 * resonance_order(delta, R); }

CoreShellSolution solve_modes(const SolverConfig& config, const ModalCoefficients& h) {
  config.validate();
  const int order =
      config.truncation > 0 ? config.truncation : working_truncation(config.delta, config.R);
  const ModalCoefficients data = h.resized(order);

  CoreShellSolution sol;
  sol.R = config.R;
  sol.delta = config.delta;
  sol.data = data;
  sol.core = ModalCoefficients(order);
  sol.ring_inner = ModalCoefficients(order);
  sol.ring_outer = ModalCoefficients(order);
  sol.core.zero_mode = data.zero_mode;
  sol.ring_outer.zero_mode = data.zero_mode;

  const double d = config.delta;
  const double r_inv = 1.0 / config.R;
  // Scaled mode response: core_n = 2 h_n R^{-n} / ((2 - i d) R^{-2n} + i d).
  // Powers of R^{-1} only, so nothing overflows however large n gets.
  const cplx to_ring_outer(1.0, -0.5 * d);  // (2 - i d) / 2
  const cplx to_ring_inner(0.0, 0.5 * d);   // i d / 2
  double rn_inv = 1.0;
  for (int n = 1; n <= order; ++n) {
    rn_inv *= r_inv;
    const double s = rn_inv * rn_inv;
    const cplx den(2.0 * s, d * (1.0 - s));
    const cplx scale = 2.0 * rn_inv / den;
    for (int branch = 0; branch < 2; ++branch) {
      const cplx hn = branch == 0 ? data.plus[n - 1] : data.minus[n - 1];
      const cplx c = scale * hn;
      auto& core = branch == 0 ? sol.core.plus : sol.core.minus;
      auto& ro = branch == 0 ? sol.ring_outer.plus : sol.ring_outer.minus;
      auto& ri = branch == 0 ? sol.ring_inner.plus : sol.ring_inner.minus;
      core[n - 1] = c;
      ro[n - 1] = to_ring_outer * c;
      ri[n - 1] = to_ring_inner * c;
    }
  }
  return sol;
}

CoreShellSolution limit_solution(double R, const ModalCoefficients& h) {
  if (!(R > 1.0) || !std::isfinite(R)) {
    throw std::invalid_argument("outer radius must exceed the inclusion radius 1");
  }
  const int order = h.order();
  CoreShellSolution sol;
  sol.R = R;
  sol.delta = 0.0;
  sol.data = h;
  sol.core = ModalCoefficients(order);
  sol.ring_inner = ModalCoefficients(order);
  sol.ring_outer = ModalCoefficients(order);
  sol.core.zero_mode = h.zero_mode;
  sol.ring_outer.zero_mode = h.zero_mode;

  const double log_r = std::log(R);
  double rn = 1.0;
  for (int n = 1; n <= order; ++n) {
    rn *= R;
    for (int branch = 0; branch < 2; ++branch) {
      const cplx hn = branch == 0 ? h.plus[n - 1] : h.minus[n - 1];
      cplx c = hn * rn;
      if (!std::isfinite(std::abs(c)) && std::abs(hn) > 0.0) {
        // h_n R^n may be representable even when R^n alone is not.
        const double mag = std::abs(hn);
        c = (hn / mag) * std::exp(std::log(mag) + n * log_r);
      }
      auto& core = branch == 0 ? sol.core.plus : sol.core.minus;
      auto& ro = branch == 0 ? sol.ring_outer.plus : sol.ring_outer.minus;
      core[n - 1] = c;
      ro[n - 1] = c;
    }
  }
  return sol;
}

HarmonicField CoreShellSolution::field() const {
  std::vector<FieldRegion> regions;
  regions.push_back(FieldRegion{0.0, 1.0, core, ModalCoefficients{}, cplx(0.0)});
  regions.push_back(FieldRegion{1.0, R, ring_inner, ring_outer, cplx(0.0)});
  return HarmonicField(std::move(regions));
}

double CoreShellSolution::core_grad_energy() const { return grad_energy_disk(core, 1.0); }

double CoreShellSolution::matrix_grad_energy() const {
  return grad_energy_annulus(ring_inner, ring_outer, cplx(0.0), 1.0, R);
}

double CoreShellSolution::grad_energy() const { return core_grad_energy() + matrix_grad_energy(); }

double CoreShellSolution::l2_mass() const {
  return l2_mass_disk(core, 1.0) + l2_mass_annulus(ring_inner, ring_outer, cplx(0.0), 1.0, R);
}

double CoreShellSolution::power() const { return delta * core_grad_energy(); }

cplx gap_multiplier(int n, double delta, double R) {
  if (n < 0) throw std::invalid_argument("mode index must be nonnegative");
  if (!(delta > 0.0) || !(delta < 1.0) || !(R > 1.0)) {
    throw std::invalid_argument("need 0 < delta < 1 and R > 1");
  }
  if (n == 0) return cplx(0.0);
  const double s = std::exp(-2.0 * n * std::log(R));  // R^{-2n}, may underflow to 0
  const double t = delta * (1.0 - s);
  const double den = 4.0 * s * s + t * t;
  // m = -i t / (2 s + i t), expanded so the components are bounded by 1.
  return cplx(-t * t / den, -2.0 * s * t / den);
}

double localized_resonance_gap(const ModalCoefficients& h, double delta, double R) {
  if (!(delta > 0.0) || !(delta < 1.0) || !(R > 1.0)) {
    throw std::invalid_argument("need 0 < delta < 1 and R > 1");
  }
  const double s_step = std::exp(-2.0 * std::log(R));
  double s = 1.0;
  double gap = 0.0;
  for (int n = 1; n <= h.order(); ++n) {
    s *= s_step;
    const double t = delta * (1.0 - s);
    const double msq = t * t / (4.0 * s * s + t * t);  // |m_n|^2, never above 1
    gap += msq * (n * (std::norm(h.plus[n - 1]) + std::norm(h.minus[n - 1])));
  }
  return gap;
}

double h1_distance_sq(const CoreShellSolution& u, const CoreShellSolution& v) {
  if (u.R != v.R) {
    throw std::invalid_argument("solutions live on different domains");
  }
  const int order = std::max(u.core.order(), v.core.order());
  const ModalCoefficients core_d = u.core.resized(order) - v.core.resized(order);
  const ModalCoefficients ri_d = u.ring_inner.resized(order) - v.ring_inner.resized(order);
  const ModalCoefficients ro_d = u.ring_outer.resized(order) - v.ring_outer.resized(order);
  return grad_energy_disk(core_d, 1.0) + grad_energy_annulus(ri_d, ro_d, cplx(0.0), 1.0, u.R) +
         l2_mass_disk(core_d, 1.0) + l2_mass_annulus(ri_d, ro_d, cplx(0.0), 1.0, u.R);
}

ModalCoefficients design_incompatible_data(double alpha, double R, int order) {
  if (!(alpha > 0.0) || !(alpha < 0.5)) {
    throw std::invalid_argument("growth exponent must lie in (0, 1/2)");
  }
  if (!(R > 1.0)) throw std::invalid_argument("need R > 1");
  if (order < 1) throw std::invalid_argument("need at least one mode");
  const double gamma = 1.0 - 2.0 * alpha;
  ModalCoefficients h;
  h.zero_mode = cplx(0.0);
  h.plus.resize(order);
  h.minus.resize(order);
  const double step = std::exp(-gamma * std::log(R));  // R^{-gamma}
  double mag = 1.0;
  for (int n = 1; n <= order; ++n) {
    mag *= step;
    const cplx value(mag / std::sqrt(static_cast<double>(n)), 0.0);
    h.plus[n - 1] = value;
    h.minus[n - 1] = value;
  }
  return h;
}

const char* to_string(CompatibilityVerdict v) {
  switch (v) {
    case CompatibilityVerdict::Compatible: return "Compatible";
    case CompatibilityVerdict::Incompatible: return "Incompatible";
    case CompatibilityVerdict::Borderline: return "Borderline";
  }
  return "Borderline";
}

const char* to_string(Quantity q) {
  switch (q) {
    case Quantity::Power: return "power";
    case Quantity::GradEnergy: return "grad_energy";
    case Quantity::Gap: return "gap";
    case Quantity::H1Norm: return "h1_norm";
  }
  return "power";
}

CompatibilityReport classify_compatibility(const ModalCoefficients& h, double R,
                                           TailDescriptor tail) {
  if (!(R > 1.0)) throw std::invalid_argument("need R > 1");
  CompatibilityReport rep;
  const double critical = 1.0 / R;

  switch (tail.kind) {
    case TailDescriptor::Kind::Finite:
      rep.verdict = CompatibilityVerdict::Compatible;
      rep.detail = "finite modal expansion";
      return rep;
    case TailDescriptor::Kind::Geometric: {
      if (!(tail.parameter >= 0.0)) {
        throw std::invalid_argument("geometric tail ratio must be nonnegative");
      }
      rep.estimated_ratio = tail.parameter;
      if (tail.parameter * R < 1.0) {
        rep.verdict = CompatibilityVerdict::Compatible;
        rep.detail = "declared geometric tail decays faster than 1/R";
      } else {
        rep.verdict = CompatibilityVerdict::Incompatible;
        rep.detail = "declared geometric tail decays no faster than 1/R";
      }
      return rep;
    }
    case TailDescriptor::Kind::Power:
      rep.verdict = CompatibilityVerdict::Incompatible;
      rep.detail = "algebraic tails always lose to the R^n growth";
      return rep;
    case TailDescriptor::Kind::None:
      break;
  }

  // No declared tail: estimate the decay ratio from the stored coefficients.
  const int order = h.order();
  std::vector<double> mag(order);
  int last = 0;
  for (int n = 1; n <= order; ++n) {
    mag[n - 1] = std::max(std::abs(h.plus[n - 1]), std::abs(h.minus[n - 1]));
    if (mag[n - 1] > 0.0) last = n;
  }
  if (last == 0) {
    rep.verdict = CompatibilityVerdict::Compatible;
    rep.detail = "constant data";
    return rep;
  }
  if (order - last >= 4) {
    rep.verdict = CompatibilityVerdict::Compatible;
    rep.detail = "expansion terminates before the stored order";
    return rep;
  }

  // Fit log |h_n| over the trailing half of the nonzero range.
  std::vector<double> xs, ys;
  for (int n = (last + 1) / 2; n <= last; ++n) {
    if (mag[n - 1] > 0.0) {
      xs.push_back(static_cast<double>(n));
      ys.push_back(std::log(mag[n - 1]));
    }
  }
  if (xs.size() < 16) {
    rep.verdict = CompatibilityVerdict::Borderline;
    rep.detail = "tail too short to estimate a decay rate";
    return rep;
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double m = static_cast<double>(xs.size());
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double ratio = std::exp(slope);
  rep.estimated_ratio = ratio;
  if (ratio < critical * 0.99) {
    rep.verdict = CompatibilityVerdict::Compatible;
    rep.detail = "fitted decay rate safely below 1/R";
  } else if (ratio > critical * 1.01) {
    rep.verdict = CompatibilityVerdict::Incompatible;
    rep.detail = "fitted decay rate at or above 1/R";
  } else {
    rep.verdict = CompatibilityVerdict::Borderline;
    rep.detail = "fitted decay rate within 1% of 1/R";
  }
  return rep;
}

SweepResult delta_sweep(double R, const DataGenerator& gen, Quantity quantity,
                        std::vector<double> deltas) {
  if (deltas.size() < 4) {
    throw std::invalid_argument("sweep needs at least four loss values");
  }
  double lo = deltas[0], hi = deltas[0];
  for (double d : deltas) {
    if (!(d > 0.0) || !(d < 1.0)) {
      throw std::invalid_argument("loss values must lie in (0, 1)");
    }
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  if (hi / lo < 1.0e3) {
    throw std::invalid_argument("sweep must span at least three decades");
  }

  SweepResult result;
  result.quantity = quantity;
  result.truncation = working_truncation(lo, R);
  const ModalCoefficients data = gen(result.truncation).resized(result.truncation);

  CoreShellSolution limit;
  if (quantity == Quantity::H1Norm) limit = limit_solution(R, data);

  std::vector<double> values;
  values.reserve(deltas.size());
  for (double d : deltas) {
    double value = 0.0;
    switch (quantity) {
      case Quantity::Gap:
        value = localized_resonance_gap(data, d, R);
        break;
      case Quantity::Power:
      case Quantity::GradEnergy: {
        const CoreShellSolution sol = solve_modes({R, d, result.truncation}, data);
        value = quantity == Quantity::Power ? sol.power() : sol.grad_energy();
        break;
      }
      case Quantity::H1Norm: {
        const CoreShellSolution sol = solve_modes({R, d, result.truncation}, data);
        value = std::sqrt(h1_distance_sq(sol, limit));
        break;
      }
    }
    result.points.push_back(SweepPoint{d, value});
    values.push_back(value);
  }

  result.fit = fit_loglog(deltas, values);
  if (result.fit.points_excluded > 0) {
    result.warnings.push_back(std::to_string(result.fit.points_excluded) +
                              " point(s) underflowed or were invalid and were excluded");
  }
  if (!result.fit.reliable) {
    result.warnings.push_back("rate fit residual above 0.1 in log10 units");
  }
  return result;
}

}  // namespace alr
