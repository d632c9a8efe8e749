#include "alr/plane.hpp"

#include "alr/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace alr {

namespace {

constexpr int kGaussOrder = 16;

using Integrand = std::function<cplx(double)>;

cplx gauss_segment(const Integrand& f, double a, double b) {
  const GaussRule& rule = gauss_legendre(kGaussOrder);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  cplx acc(0.0, 0.0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return acc * half;
}

}  // namespace

SourceProfiles::SourceProfiles(double rho_lo, double rho_hi, std::function<cplx(int, double)> modes,
                               int order, double scale)
    : rho_lo_(rho_lo), rho_hi_(rho_hi), order_(order), scale_(scale),
      closed_form_(std::move(modes)) {
  if (!(rho_lo_ >= 0.0) || !(rho_hi_ > rho_lo_) || !(rho_hi_ <= 1.0)) {
    throw std::invalid_argument("folded support must satisfy 0 <= lo < hi <= 1");
  }
  if (order_ < 0) throw std::invalid_argument("mode count must be nonnegative");
  if (!closed_form_) throw std::invalid_argument("folded profile evaluator required");
  if (!(scale_ >= 0.0)) throw std::invalid_argument("scale must be nonnegative");
}

cplx SourceProfiles::mode(int n, double rho) const {
  if (std::abs(n) > order_) return cplx(0.0);
  if (rho < rho_lo_ || rho > rho_hi_) return cplx(0.0);
  if (closed_form_) return closed_form_(n, rho);

  auto it = projected_.find(rho);
  if (it == projected_.end()) {
    const double r = 1.0 / rho;
    const double jac = 1.0 / (rho * rho * rho * rho);
    ModalCoefficients c = project_boundary(
        [&](double theta) { return density_(PolarPoint{r, theta}); }, order_, n_theta_);
    c = cplx(jac, 0.0) * c;
    it = projected_.emplace(rho, std::move(c)).first;
  }
  if (n == 0) return it->second.zero_mode;
  return n > 0 ? it->second.plus[n - 1] : it->second.minus[-n - 1];
}

SourceProfiles pushforward_source(const SourceSpec& f, int n_modes, int n_theta) {
  if (!(f.support_lo >= 1.0) || !(f.support_hi > f.support_lo)) {
    throw std::invalid_argument("source support must be an annulus outside the unit disk");
  }
  if (n_modes < 0) throw std::invalid_argument("mode count must be nonnegative");
  if (n_theta < 64) throw std::invalid_argument("need at least 64 angular samples");
  if (!f.density && !f.folded_modes) {
    throw std::invalid_argument("source needs a density or folded closed form");
  }

  SourceProfiles p;
  p.rho_lo_ = std::isinf(f.support_hi) ? 0.0 : 1.0 / f.support_hi;
  p.rho_hi_ = 1.0 / f.support_lo;
  p.order_ = n_modes;
  p.closed_form_ = f.folded_modes;
  p.density_ = f.density;
  p.n_theta_ = n_theta;

  // Reference scale: largest modal magnitude across a support sample.
  const int samples = 65;
  double scale = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double rho =
        p.rho_lo_ + (p.rho_hi_ - p.rho_lo_) * (k + 0.5) / static_cast<double>(samples);
    for (int n = -n_modes; n <= n_modes; ++n) {
      scale = std::max(scale, std::abs(p.mode(n, rho)));
    }
  }
  p.scale_ = scale;

  // The folded zero mode must have zero radial average or the zero-flux
  // problem in the disk is unsolvable.
  cplx mean(0.0, 0.0);
  const int segments = 64;
  for (int j = 0; j < segments; ++j) {
    const double a = p.rho_lo_ + (p.rho_hi_ - p.rho_lo_) * j / static_cast<double>(segments);
    const double b = p.rho_lo_ + (p.rho_hi_ - p.rho_lo_) * (j + 1) / static_cast<double>(segments);
    mean += gauss_segment([&](double s) { return p.mode(0, s) * s; }, a, b);
  }
  if (std::abs(mean) > 1e-8 * std::max(1.0, p.scale_)) {
    throw std::invalid_argument("source violates the zero-mean condition");
  }
  return p;
}

namespace {

// Cumulative integrals of f against the two homogeneous weights, exact to
// quadrature at every grid node: forward P_j = int_{t_0}^{t_j} f s^{1+n} ds,
// backward Q_j = int_{t_j}^{t_end} f s^{1-n} ds.
struct CumulativePair {
  std::vector<cplx> forward;
  std::vector<cplx> backward;
};

CumulativePair cumulative_integrals(const Integrand& f, const std::vector<double>& t, int n) {
  const std::size_t m = t.size();
  CumulativePair c;
  c.forward.assign(m, cplx(0.0));
  c.backward.assign(m, cplx(0.0));
  const double dn = static_cast<double>(n);
  for (std::size_t j = 0; j + 1 < m; ++j) {
    c.forward[j + 1] =
        c.forward[j] +
        gauss_segment([&](double s) { return f(s) * std::pow(s, 1.0 + dn); }, t[j], t[j + 1]);
  }
  for (std::size_t j = m - 1; j-- > 0;) {
    c.backward[j] =
        c.backward[j + 1] +
        gauss_segment([&](double s) { return f(s) * std::pow(s, 1.0 - dn); }, t[j], t[j + 1]);
  }
  return c;
}

}  // namespace

RadialProfiles solve_disk_neumann(const SourceProfiles& source, int nodes) {
  if (nodes < 16) throw std::invalid_argument("need at least 16 radial nodes");
  const int order = source.order();
  const double sl = source.rho_lo();
  const double sh = source.rho_hi();

  RadialProfiles w;
  w.rho_lo_ = sl;
  w.rho_hi_ = sh;
  w.source_scale_ = source.scale();
  w.plus_.resize(order);
  w.minus_.resize(order);
  w.trace_ = ModalCoefficients(order);

  std::vector<double> t(nodes);
  for (int j = 0; j < nodes; ++j) {
    t[j] = sl + (sh - sl) * j / static_cast<double>(nodes - 1);
  }
  t.front() = sl;
  t.back() = sh;

  for (int n = 1; n <= order; ++n) {
    const double dn = static_cast<double>(n);
    for (int branch = 0; branch < 2; ++branch) {
      const int sn = branch == 0 ? n : -n;
      const CumulativePair cum =
          cumulative_integrals([&](double s) { return source.mode(sn, s); }, t, n);

      const cplx i2_total = -cum.forward.back() / (2.0 * dn);
      RadialProfiles::ModeProfile prof;
      prof.outer_coef = i2_total;
      prof.inner_coef = i2_total - cum.backward.front() / (2.0 * dn);

      bool all_zero = std::abs(prof.inner_coef) == 0.0 && std::abs(prof.outer_coef) == 0.0;
      std::vector<cplx> vals(t.size());
      for (std::size_t j = 0; j < t.size(); ++j) {
        const cplx coef = i2_total - cum.backward[j] / (2.0 * dn);
        const cplx i2 = -cum.forward[j] / (2.0 * dn);
        cplx v = std::pow(t[j], dn) * coef;
        if (std::abs(i2) != 0.0) v += std::pow(t[j], -dn) * i2;
        vals[j] = v;
        if (std::abs(v) != 0.0) all_zero = false;
      }
      if (!all_zero) {
        // Clamp with the one-sided closed-form slopes; the solution is C^1.
        const cplx d_left = prof.inner_coef * dn * std::pow(sl, dn - 1.0);
        const cplx d_right =
            prof.outer_coef * dn * (std::pow(sh, dn - 1.0) - std::pow(sh, -dn - 1.0));
        prof.mid = CubicSpline(t, vals, d_left, d_right);
      }

      const cplx trace = 2.0 * i2_total;
      auto& slot = branch == 0 ? w.plus_ : w.minus_;
      slot[n - 1] = std::move(prof);
      if (branch == 0) {
        w.trace_.plus[n - 1] = trace;
      } else {
        w.trace_.minus[n - 1] = trace;
      }
    }
  }

  // Mode 0: double quadrature. G(t) = int_sl^t s f_0 ds vanishes at both ends
  // (zero mean), D(rho) = int_sl^rho G(t)/t dt, and the constant makes the
  // disk average vanish.
  {
    const Integrand f0 = [&](double s) { return source.mode(0, s); };
    std::vector<cplx> g(t.size(), cplx(0.0));
    for (std::size_t j = 0; j + 1 < t.size(); ++j) {
      g[j + 1] = g[j] + gauss_segment([&](double s) { return f0(s) * s; }, t[j], t[j + 1]);
    }
    const auto g_at = [&](double x, std::size_t seg) {
      return g[seg] + gauss_segment([&](double s) { return f0(s) * s; }, t[seg], x);
    };
    std::vector<cplx> d(t.size(), cplx(0.0));
    for (std::size_t j = 0; j + 1 < t.size(); ++j) {
      d[j + 1] = d[j] + gauss_segment([&](double x) { return g_at(x, j) / x; }, t[j], t[j + 1]);
    }
    const auto d_at = [&](double x, std::size_t seg) {
      return d[seg] + gauss_segment([&](double y) { return g_at(y, seg) / y; }, t[seg], x);
    };

    bool has_mode0 = false;
    for (const cplx& v : d) {
      if (std::abs(v) != 0.0) has_mode0 = true;
    }

    cplx c0(0.0, 0.0);
    if (has_mode0) {
      cplx d_weighted(0.0, 0.0);  // int_sl^sh D(rho) rho drho
      for (std::size_t j = 0; j + 1 < t.size(); ++j) {
        d_weighted +=
            gauss_segment([&](double x) { return d_at(x, j) * x; }, t[j], t[j + 1]);
      }
      const cplx d_end = d.back();
      c0 = -2.0 * (d_weighted + d_end * 0.5 * (1.0 - sh * sh));
      std::vector<cplx> vals(t.size());
      for (std::size_t j = 0; j < t.size(); ++j) vals[j] = c0 + d[j];
      const cplx d_right = g.back() / sh;  // ~0 by zero mean; keep the residue
      w.zero_mid_ = CubicSpline(t, vals, cplx(0.0), d_right);
      w.zero_after_ = c0 + d_end;
    }
    w.zero_constant_ = c0;
    if (!has_mode0) w.zero_after_ = c0;
    w.origin_ = c0;
    w.trace_.zero_mode = w.zero_after_;
  }

  return w;
}

cplx RadialProfiles::mode_value(const ModeProfile& m, int n, double rho) const {
  const double dn = static_cast<double>(n);
  if (rho <= rho_lo_) return m.inner_coef * std::pow(rho, dn);
  if (rho >= rho_hi_) {
    cplx v = m.outer_coef * std::pow(rho, dn);
    if (std::abs(m.outer_coef) != 0.0) v += m.outer_coef * std::pow(rho, -dn);
    return v;
  }
  return m.mid.empty() ? cplx(0.0) : m.mid.value(rho);
}

cplx RadialProfiles::mode_derivative(const ModeProfile& m, int n, double rho) const {
  const double dn = static_cast<double>(n);
  if (rho <= rho_lo_) return m.inner_coef * dn * std::pow(rho, dn - 1.0);
  if (rho >= rho_hi_) {
    cplx v = m.outer_coef * dn * std::pow(rho, dn - 1.0);
    if (std::abs(m.outer_coef) != 0.0) v -= m.outer_coef * dn * std::pow(rho, -dn - 1.0);
    return v;
  }
  return m.mid.empty() ? cplx(0.0) : m.mid.derivative(rho);
}

const RadialProfiles::ModeProfile& RadialProfiles::profile(int n, bool minus) const {
  return minus ? minus_[n - 1] : plus_[n - 1];
}

cplx RadialProfiles::value(int n, double rho) const {
  if (!(rho >= 0.0) || !(rho <= 1.0)) {
    throw std::domain_error("profile evaluation outside [0, 1]");
  }
  if (std::abs(n) > order()) throw std::domain_error("mode index beyond stored order");
  if (n == 0) {
    if (rho <= rho_lo_) return zero_constant_;
    if (rho >= rho_hi_) return zero_after_;
    return zero_mid_.empty() ? zero_constant_ : zero_mid_.value(rho);
  }
  return mode_value(profile(std::abs(n), n < 0), std::abs(n), rho);
}

cplx RadialProfiles::derivative(int n, double rho) const {
  if (!(rho >= 0.0) || !(rho <= 1.0)) {
    throw std::domain_error("profile evaluation outside [0, 1]");
  }
  if (std::abs(n) > order()) throw std::domain_error("mode index beyond stored order");
  if (n == 0) {
    if (rho <= rho_lo_ || rho >= rho_hi_) return cplx(0.0);
    return zero_mid_.empty() ? cplx(0.0) : zero_mid_.derivative(rho);
  }
  return mode_derivative(profile(std::abs(n), n < 0), std::abs(n), rho);
}

cplx RadialProfiles::evaluate(PolarPoint p) const {
  cplx acc = value(0, p.r);
  if (order() > 0) {
    const cplx phase(std::cos(p.theta), std::sin(p.theta));
    cplx e_plus(1.0, 0.0);
    for (int n = 1; n <= order(); ++n) {
      e_plus *= phase;
      acc += value(n, p.r) * e_plus + value(-n, p.r) * std::conj(e_plus);
    }
  }
  return acc;
}

PolarGradient RadialProfiles::gradient(PolarPoint p) const {
  PolarGradient g;
  if (p.r == 0.0) {
    if (order() >= 1) {
      const cplx phase(std::cos(p.theta), std::sin(p.theta));
      const cplx cp = plus_.empty() ? cplx(0.0) : plus_[0].inner_coef;
      const cplx cm = minus_.empty() ? cplx(0.0) : minus_[0].inner_coef;
      g.d_r = cp * phase + cm * std::conj(phase);
      g.d_theta_over_r = cplx(0.0, 1.0) * (cp * phase - cm * std::conj(phase));
    }
    return g;
  }
  g.d_r = derivative(0, p.r);
  if (order() > 0) {
    const cplx phase(std::cos(p.theta), std::sin(p.theta));
    const cplx iunit(0.0, 1.0);
    const double r_inv = 1.0 / p.r;
    cplx e_plus(1.0, 0.0);
    for (int n = 1; n <= order(); ++n) {
      e_plus *= phase;
      const cplx e_minus = std::conj(e_plus);
      const cplx vp = value(n, p.r);
      const cplx vm = value(-n, p.r);
      g.d_r += derivative(n, p.r) * e_plus + derivative(-n, p.r) * e_minus;
      g.d_theta_over_r += iunit * (n * r_inv) * (vp * e_plus - vm * e_minus);
    }
  }
  return g;
}

TraceReport classify_trace(const ModalCoefficients& trace, double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be nonnegative");
  TraceReport rep;
  rep.tol = tol;
  for (int n = 1; n <= trace.order(); ++n) {
    const double mp = std::abs(trace.plus[n - 1]);
    const double mm = std::abs(trace.minus[n - 1]);
    if (mp > rep.dominant_magnitude) {
      rep.dominant_magnitude = mp;
      rep.dominant_mode = n;
    }
    if (mm > rep.dominant_magnitude) {
      rep.dominant_magnitude = mm;
      rep.dominant_mode = -n;
    }
  }
  if (rep.dominant_magnitude > tol) {
    rep.verdict = CompatibilityVerdict::Incompatible;
  } else {
    rep.verdict = CompatibilityVerdict::Compatible;
    rep.dominant_mode = 0;
  }
  return rep;
}

TraceReport classify_trace(const RadialProfiles& profiles) {
  return classify_trace(profiles.trace(), 1e-8 * std::max(1.0, profiles.source_scale()));
}

ModalCoefficients plane_coefficients(const ModalCoefficients& trace, double delta, bool exterior,
                                     double clamp_tol) {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("loss parameter must lie in (0, 1)");
  }
  if (!(clamp_tol >= 0.0)) throw std::invalid_argument("clamp tolerance must be nonnegative");
  const cplx inv_idelta(0.0, -1.0 / delta);  // 1 / (i delta)
  const cplx factor = exterior ? cplx(1.0, -delta) * inv_idelta : inv_idelta;
  ModalCoefficients out(trace.order());
  for (int n = 1; n <= trace.order(); ++n) {
    const cplx tp = trace.plus[n - 1];
    const cplx tm = trace.minus[n - 1];
    out.plus[n - 1] = std::abs(tp) <= clamp_tol ? cplx(0.0) : factor * tp;
    out.minus[n - 1] = std::abs(tm) <= clamp_tol ? cplx(0.0) : factor * tm;
  }
  return out;
}

PlaneSolution solve_plane_modes(std::shared_ptr<const RadialProfiles> profiles, double delta) {
  if (!profiles) throw std::invalid_argument("profiles required");
  PlaneSolution sol;
  sol.delta = delta;
  sol.clamp_tol = 1e-8 * std::max(1.0, profiles->source_scale());
  sol.a = plane_coefficients(profiles->trace(), delta, false, sol.clamp_tol);
  sol.b = plane_coefficients(profiles->trace(), delta, true, sol.clamp_tol);
  sol.b.zero_mode = -profiles->origin();
  sol.a.zero_mode = sol.b.zero_mode + profiles->trace().zero_mode;
  sol.profiles = std::move(profiles);
  return sol;
}

PlaneField::PlaneField(PlaneSolution sol) : sol_(std::move(sol)) {
  if (!sol_.profiles) throw std::invalid_argument("solution lacks radial profiles");
}

cplx PlaneField::evaluate_interior(PolarPoint p) const {
  cplx acc = sol_.a.zero_mode;
  const int order = sol_.a.order();
  if (order > 0) {
    const cplx phase(std::cos(p.theta), std::sin(p.theta));
    cplx e_plus(1.0, 0.0);
    double rn = 1.0;
    for (int n = 1; n <= order; ++n) {
      e_plus *= phase;
      rn *= p.r;
      acc += rn * (sol_.a.plus[n - 1] * e_plus + sol_.a.minus[n - 1] * std::conj(e_plus));
    }
  }
  return acc;
}

cplx PlaneField::evaluate_exterior(PolarPoint p) const {
  const double rho = std::isinf(p.r) ? 0.0 : 1.0 / p.r;
  cplx acc = sol_.b.zero_mode + sol_.profiles->evaluate(PolarPoint{rho, p.theta});
  const int order = sol_.b.order();
  if (order > 0) {
    const cplx phase(std::cos(p.theta), std::sin(p.theta));
    cplx e_plus(1.0, 0.0);
    double rn = 1.0;
    for (int n = 1; n <= order; ++n) {
      e_plus *= phase;
      rn *= rho;
      acc += rn * (sol_.b.plus[n - 1] * e_plus + sol_.b.minus[n - 1] * std::conj(e_plus));
    }
  }
  return acc;
}

cplx PlaneField::evaluate(PolarPoint p) const {
  if (!(p.r >= 0.0)) throw std::domain_error("negative radius");
  return p.r <= 1.0 ? evaluate_interior(p) : evaluate_exterior(p);
}

PolarGradient PlaneField::gradient_interior(PolarPoint p) const {
  PolarGradient g;
  const int order = sol_.a.order();
  if (order == 0) return g;
  const cplx phase(std::cos(p.theta), std::sin(p.theta));
  const cplx iunit(0.0, 1.0);
  if (p.r == 0.0) {
    const cplx cp = sol_.a.plus[0];
    const cplx cm = sol_.a.minus[0];
    g.d_r = cp * phase + cm * std::conj(phase);
    g.d_theta_over_r = iunit * (cp * phase - cm * std::conj(phase));
    return g;
  }
  cplx e_plus(1.0, 0.0);
  double rn1 = 1.0;  // r^{n-1}, advanced after use
  for (int n = 1; n <= order; ++n) {
    e_plus *= phase;
    const cplx e_minus = std::conj(e_plus);
    const cplx cp = sol_.a.plus[n - 1];
    const cplx cm = sol_.a.minus[n - 1];
    const double fac = n * rn1;
    g.d_r += fac * (cp * e_plus + cm * e_minus);
    g.d_theta_over_r += fac * iunit * (cp * e_plus - cm * e_minus);
    rn1 *= p.r;
  }
  return g;
}

PolarGradient PlaneField::gradient_exterior(PolarPoint p) const {
  PolarGradient g;
  const double rho = std::isinf(p.r) ? 0.0 : 1.0 / p.r;
  const PolarGradient gw = sol_.profiles->gradient(PolarPoint{rho, p.theta});
  const double scale = rho * rho;  // 1 / r^2; the fold reverses the radial axis
  g.d_r = -scale * gw.d_r;
  g.d_theta_over_r = scale * gw.d_theta_over_r;
  const int order = sol_.b.order();
  if (order > 0 && rho > 0.0) {
    const cplx phase(std::cos(p.theta), std::sin(p.theta));
    const cplx iunit(0.0, 1.0);
    cplx e_plus(1.0, 0.0);
    double rn1 = rho;
    for (int n = 1; n <= order; ++n) {
      e_plus *= phase;
      rn1 *= rho;  // rho^{n+1}
      const cplx e_minus = std::conj(e_plus);
      const cplx cp = sol_.b.plus[n - 1];
      const cplx cm = sol_.b.minus[n - 1];
      const double fac = n * rn1;  // n rho^{n+1} = n r^{-n-1}
      g.d_r -= fac * (cp * e_plus + cm * e_minus);
      g.d_theta_over_r += fac * iunit * (cp * e_plus - cm * e_minus);
    }
  }
  return g;
}

PolarGradient PlaneField::gradient(PolarPoint p) const {
  if (!(p.r >= 0.0)) throw std::domain_error("negative radius");
  return p.r <= 1.0 ? gradient_interior(p) : gradient_exterior(p);
}

namespace {

double grad_sq(const PlaneField& u, PolarPoint p) {
  const PolarGradient g = u.gradient(p);
  return std::norm(g.d_r) + std::norm(g.d_theta_over_r);
}

// Composite Gauss-Legendre panels over [a, b], split at the given radii.
std::vector<double> panel_edges(double a, double b, std::initializer_list<double> cuts,
                                int min_panels) {
  std::vector<double> edges{a, b};
  for (double c : cuts) {
    if (c > a && c < b) edges.push_back(c);
  }
  std::sort(edges.begin(), edges.end());
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = edges[i], hi = edges[i + 1];
    const int parts = std::max(1, static_cast<int>(std::ceil((hi - lo) / (b - a) * min_panels)));
    for (int k = 0; k < parts; ++k) {
      out.push_back(lo + (hi - lo) * k / static_cast<double>(parts));
    }
  }
  out.push_back(b);
  return out;
}

double tensor_power(const PlaneField& u, const std::vector<double>& r_edges,
                    const std::vector<double>& th_edges, int points) {
  const GaussRule& rule = gauss_legendre(points);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < r_edges.size(); ++i) {
    const double rm = 0.5 * (r_edges[i] + r_edges[i + 1]);
    const double rh = 0.5 * (r_edges[i + 1] - r_edges[i]);
    for (std::size_t j = 0; j + 1 < th_edges.size(); ++j) {
      const double tm = 0.5 * (th_edges[j] + th_edges[j + 1]);
      const double th = 0.5 * (th_edges[j + 1] - th_edges[j]);
      double cell = 0.0;
      for (std::size_t a = 0; a < rule.nodes.size(); ++a) {
        const double r = rm + rh * rule.nodes[a];
        double row = 0.0;
        for (std::size_t b = 0; b < rule.nodes.size(); ++b) {
          const double theta = tm + th * rule.nodes[b];
          row += rule.weights[b] * grad_sq(u, PolarPoint{r, theta});
        }
        cell += rule.weights[a] * row * r;
      }
      total += cell * rh * th;
    }
  }
  return total;
}

}  // namespace

double power_on_region(const PlaneField& u, const Region& region, int points_per_panel) {
  if (points_per_panel < 4) throw std::invalid_argument("need at least 4 points per panel");
  const PlaneSolution& sol = u.solution();
  const int order = std::max(sol.a.order(), sol.profiles->order());
  const double sup_lo = sol.profiles->support_lo();
  const double sup_hi = sol.profiles->support_hi();
  // Radii where the assembled field changes analytic form.
  const double cut1 = 1.0;
  const double cut2 = sup_hi > 0.0 ? 1.0 / sup_hi : 0.0;
  const double cut3 = sup_lo > 0.0 ? 1.0 / sup_lo : 0.0;

  if (const DiskRegion* disk = std::get_if<DiskRegion>(&region)) {
    if (!(disk->radius > 0.0)) throw std::invalid_argument("disk region needs positive radius");
    const double closed_part = grad_energy_disk(sol.a, std::min(disk->radius, 1.0));
    if (disk->radius <= 1.0) return closed_part;
    const auto r_edges = panel_edges(1.0, disk->radius, {cut2, cut3}, 8);
    const int th_panels = std::max(2, order + 1);
    std::vector<double> th_edges(th_panels + 1);
    for (int j = 0; j <= th_panels; ++j) {
      th_edges[j] = 2.0 * std::numbers::pi * j / th_panels;
    }
    return closed_part + tensor_power(u, r_edges, th_edges, points_per_panel);
  }

  if (const SectorRegion* sec = std::get_if<SectorRegion>(&region)) {
    if (!(sec->r_lo >= 0.0) || !(sec->r_hi > sec->r_lo) || !(sec->theta_hi > sec->theta_lo)) {
      throw std::invalid_argument("sector region is degenerate");
    }
    const auto r_edges = panel_edges(sec->r_lo, sec->r_hi, {cut1, cut2, cut3}, 8);
    const double range = sec->theta_hi - sec->theta_lo;
    const int th_panels =
        std::max(2, static_cast<int>(std::ceil(order * range / (2.0 * std::numbers::pi))) + 1);
    std::vector<double> th_edges(th_panels + 1);
    for (int j = 0; j <= th_panels; ++j) {
      th_edges[j] = sec->theta_lo + range * j / th_panels;
    }
    return tensor_power(u, r_edges, th_edges, points_per_panel);
  }

  const RectRegion& rect = std::get<RectRegion>(region);
  if (!(rect.x_hi > rect.x_lo) || !(rect.y_hi > rect.y_lo)) {
    throw std::invalid_argument("rectangle region is degenerate");
  }
  const GaussRule& rule = gauss_legendre(points_per_panel);
  const int panels = 8;
  double total = 0.0;
  for (int ip = 0; ip < panels; ++ip) {
    const double xa = rect.x_lo + (rect.x_hi - rect.x_lo) * ip / static_cast<double>(panels);
    const double xb = rect.x_lo + (rect.x_hi - rect.x_lo) * (ip + 1) / static_cast<double>(panels);
    for (int jp = 0; jp < panels; ++jp) {
      const double ya = rect.y_lo + (rect.y_hi - rect.y_lo) * jp / static_cast<double>(panels);
      const double yb =
          rect.y_lo + (rect.y_hi - rect.y_lo) * (jp + 1) / static_cast<double>(panels);
      double cell = 0.0;
      for (std::size_t a = 0; a < rule.nodes.size(); ++a) {
        const double x = 0.5 * (xa + xb) + 0.5 * (xb - xa) * rule.nodes[a];
        double row = 0.0;
        for (std::size_t b = 0; b < rule.nodes.size(); ++b) {
          const double y = 0.5 * (ya + yb) + 0.5 * (yb - ya) * rule.nodes[b];
          row += rule.weights[b] * grad_sq(u, PolarPoint{std::hypot(x, y), std::atan2(y, x)});
        }
        cell += rule.weights[a] * row;
      }
      total += cell * 0.25 * (xb - xa) * (yb - ya);
    }
  }
  return total;
}

SourceSpec cutoff_harmonic_source(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("need at least one mode");

  // Derivatives of the quintic ramp that is 1 and flat (two derivatives) at
  // r=2, 0 and flat at r=3; the ramp itself drops out of the Laplacian.
  const auto phi_p = [](double r) {
    return -1080.0 + r * (1800.0 + r * (-1110.0 + r * (300.0 - 30.0 * r)));
  };
  const auto phi_pp = [](double r) { return 1800.0 + r * (-2220.0 + r * (900.0 - 120.0 * r)); };

  // Laplacian of phi * r^n e^{in theta} / 6^n; the harmonic factor drops out
  // and only cutoff derivatives survive: (r^{n-1}/6^n)(phi'' r + (2n+1) phi').
  const auto mode_profile = [=](int n, double r) -> cplx {
    if (n < 1 || n > n_modes || r < 2.0 || r > 3.0) return cplx(0.0);
    const double base = std::pow(r / 6.0, static_cast<double>(n)) / r;
    return cplx(base * (phi_pp(r) * r + (2.0 * n + 1.0) * phi_p(r)), 0.0);
  };

  SourceSpec spec;
  spec.support_lo = 2.0;
  spec.support_hi = 3.0;
  spec.density = [=](PolarPoint p) {
    if (p.r < 2.0 || p.r > 3.0) return cplx(0.0);
    const double bracket_base = phi_pp(p.r) * p.r;
    const double dphi = phi_p(p.r);
    const cplx phase(std::cos(p.theta), std::sin(p.theta));
    cplx e_plus(1.0, 0.0);
    double t = 1.0 / p.r;
    cplx acc(0.0, 0.0);
    const double ratio = p.r / 6.0;
    for (int n = 1; n <= n_modes; ++n) {
      e_plus *= phase;
      t *= ratio;  // (r/6)^n / r
      acc += t * (bracket_base + (2.0 * n + 1.0) * dphi) * e_plus;
    }
    return acc;
  };
  spec.folded_modes = [=](int n, double rho) -> cplx {
    if (rho <= 0.0) return cplx(0.0);
    const double r = 1.0 / rho;
    const double jac = r * r * r * r;  // 1 / rho^4
    return mode_profile(n, r) * jac;
  };
  return spec;
}

SourceProfiles vanishing_trace_profiles() {
  // Laplacian of (1 - rho^2)^2 rho cos(theta), split across the two mode-1
  // branches; the largest profile magnitude on [0, 1] is 4.
  const auto modes = [](int n, double rho) -> cplx {
    if (n != 1 && n != -1) return cplx(0.0);
    return cplx(0.5 * (-16.0 * rho + 24.0 * rho * rho * rho), 0.0);
  };
  return SourceProfiles(0.0, 1.0, modes, 1, 4.0);
}

}  // namespace alr
