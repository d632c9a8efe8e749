#include "alr/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace alr {

namespace {

// In-place Gaussian elimination with partial pivoting on an m x (m+1)
// augmented system. Small and dense is all the oracle ever needs.
template <std::size_t M>
std::array<cplx, M> eliminate(std::array<std::array<cplx, M + 1>, M> a) {
  for (std::size_t col = 0; col < M; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < M; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    if (!(std::abs(a[pivot][col]) > 0.0)) {
      throw std::runtime_error("transmission system is singular");
    }
    std::swap(a[col], a[pivot]);
    for (std::size_t row = col + 1; row < M; ++row) {
      const cplx factor = a[row][col] / a[col][col];
      a[row][col] = cplx(0.0);
      for (std::size_t k = col + 1; k <= M; ++k) a[row][k] -= factor * a[col][k];
    }
  }
  std::array<cplx, M> x;
  for (std::size_t row = M; row-- > 0;) {
    cplx acc = a[row][M];
    for (std::size_t k = row + 1; k < M; ++k) acc -= a[row][k] * x[k];
    x[row] = acc / a[row][row];
  }
  return x;
}

}  // namespace

TransmissionSystem mode_transmission_oracle(int n, cplx h_n, double R, double delta) {
  if (n < 1) throw std::invalid_argument("mode index must be positive");
  if (!(R > 1.0) || !std::isfinite(R)) throw std::invalid_argument("need R > 1");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("need delta > 0");

  const double rn_inv = std::pow(R, -static_cast<double>(n));
  // Unknown order (q, p, c); the Dirichlet row is divided by its largest
  // coefficient R^n so every row sits at unit scale. Without that the pivot
  // order recovers the small ring coefficient as a difference of two
  // near-equal O(h) terms and loses a factor of delta/R^{-2n} in accuracy.
  std::array<std::array<cplx, 4>, 3> system{{
      {cplx(rn_inv * rn_inv), cplx(1.0), cplx(0.0), h_n * rn_inv},
      {cplx(-1.0), cplx(-1.0), cplx(1.0), cplx(0.0)},
      {cplx(1.0), cplx(-1.0), cplx(-1.0, delta), cplx(0.0)},
  }};
  const std::array<cplx, 3> x = eliminate<3>(system);
  return TransmissionSystem{x[2], x[1], x[0]};
}

double quadrature_energy(const GradientField& grad, const QuadratureGrid& grid) {
  if (!grad) throw std::invalid_argument("gradient evaluator required");
  if (grid.r.empty() || grid.r.size() != grid.wr.size() || grid.n_theta < 4) {
    throw std::invalid_argument("malformed quadrature grid");
  }
  const double dtheta = 2.0 * std::numbers::pi / grid.n_theta;
  double total = 0.0;
  for (std::size_t i = 0; i < grid.r.size(); ++i) {
    double ring = 0.0;
    for (int j = 0; j < grid.n_theta; ++j) {
      const PolarGradient g = grad(PolarPoint{grid.r[i], dtheta * j});
      ring += std::norm(g.d_r) + std::norm(g.d_theta_over_r);
    }
    total += grid.wr[i] * grid.r[i] * ring;
  }
  return total * dtheta;
}

double quadrature_mass(const ScalarField& field, const QuadratureGrid& grid) {
  if (!field) throw std::invalid_argument("field evaluator required");
  if (grid.r.empty() || grid.r.size() != grid.wr.size() || grid.n_theta < 4) {
    throw std::invalid_argument("malformed quadrature grid");
  }
  const double dtheta = 2.0 * std::numbers::pi / grid.n_theta;
  double total = 0.0;
  for (std::size_t i = 0; i < grid.r.size(); ++i) {
    double ring = 0.0;
    for (int j = 0; j < grid.n_theta; ++j) {
      ring += std::norm(field(PolarPoint{grid.r[i], dtheta * j}));
    }
    total += grid.wr[i] * grid.r[i] * ring;
  }
  return total * dtheta;
}

RadialBvpSolution fd_radial_bvp(int n, const std::function<cplx(double)>& f, int m_points,
                                double rho_min) {
  if (n < 0) throw std::invalid_argument("mode index must be nonnegative");
  if (!f) throw std::invalid_argument("source sampler required");
  if (m_points < 1000) throw std::invalid_argument("need at least 1000 intervals");
  if (!(rho_min > 0.0) || !(rho_min < 0.5)) {
    throw std::invalid_argument("rho_min must lie in (0, 0.5)");
  }

  const int m = m_points;
  const double h = (1.0 - rho_min) / m;
  const double n2 = static_cast<double>(n) * n;
  const double h2_inv = 1.0 / (h * h);

  // Unknowns w_1..w_m with w_0 = 0 pinned; row m carries the ghost-node
  // Neumann closure (w_{m+1} = w_{m-1} from the centered w'(1) = 0).
  std::vector<double> lower(m), diag(m), upper(m);
  std::vector<cplx> rhs(m);
  for (int j = 1; j <= m; ++j) {
    const double rho = j == m ? 1.0 : rho_min + h * j;
    if (j < m) {
      const double adv = 1.0 / (2.0 * h * rho);
      lower[j - 1] = h2_inv - adv;
      diag[j - 1] = -2.0 * h2_inv - n2 / (rho * rho);
      upper[j - 1] = h2_inv + adv;
    } else {
      lower[j - 1] = 2.0 * h2_inv;
      diag[j - 1] = -2.0 * h2_inv - n2;
      upper[j - 1] = 0.0;
    }
    rhs[j - 1] = f(rho);
  }

  // Thomas elimination; the matrix is diagonally dominant on this grid.
  std::vector<double> cp(m);
  std::vector<cplx> dp(m);
  cp[0] = upper[0] / diag[0];
  dp[0] = rhs[0] / diag[0];
  for (int j = 1; j < m; ++j) {
    const double denom = diag[j] - lower[j] * cp[j - 1];
    cp[j] = upper[j] / denom;
    dp[j] = (rhs[j] - lower[j] * dp[j - 1]) / denom;
  }

  RadialBvpSolution out;
  out.rho.resize(m + 1);
  out.w.assign(m + 1, cplx(0.0));
  out.rho[0] = rho_min;
  for (int j = 1; j <= m; ++j) out.rho[j] = j == m ? 1.0 : rho_min + h * j;
  out.w[m] = dp[m - 1];
  for (int j = m - 1; j >= 1; --j) out.w[j] = dp[j - 1] - cp[j - 1] * out.w[j + 1];
  out.trace = out.w[m];
  return out;
}

double energy_identity_check(const CoreShellSolution& sol) {
  const int order = sol.data.order();
  cplx pairing(0.0, 0.0);
  double rn1 = 1.0;            // R^{n-1}
  double rn1_inv = 1.0 / (sol.R * sol.R);  // R^{-n-1}
  for (int n = 1; n <= order; ++n) {
    for (int branch = 0; branch < 2; ++branch) {
      const cplx p = branch == 0 ? sol.ring_inner.plus[n - 1] : sol.ring_inner.minus[n - 1];
      const cplx q = branch == 0 ? sol.ring_outer.plus[n - 1] : sol.ring_outer.minus[n - 1];
      const cplx hn = branch == 0 ? sol.data.plus[n - 1] : sol.data.minus[n - 1];
      const cplx radial = static_cast<double>(n) * (p * rn1 - q * rn1_inv);
      pairing += radial * std::conj(hn);
    }
    rn1 *= sol.R;
    rn1_inv /= sol.R;
  }
  const double lhs = 2.0 * std::numbers::pi * sol.R * pairing.imag();
  const double rhs = sol.delta * sol.core_grad_energy();
  const double denom = std::max(std::abs(lhs), std::abs(rhs));
  if (denom == 0.0) return 0.0;
  return std::abs(lhs - rhs) / denom;
}

BoundProbe scaled_h1_bound_probe(const ModalCoefficients& h, double R,
                                 const std::vector<double>& deltas) {
  if (deltas.empty()) throw std::invalid_argument("need at least one delta");
  h.validate();
  BoundProbe out;
  out.products.reserve(deltas.size());
  std::vector<double> xs, ys;
  for (double d : deltas) {
    SolverConfig cfg;
    cfg.R = R;
    cfg.delta = d;
    cfg.truncation = std::max(1, h.order());
    const CoreShellSolution sol = solve_modes(cfg, h);
    const double product = d * std::sqrt(sol.h1_norm_sq());
    out.products.push_back(SweepPoint{d, product});
    out.max_product = std::max(out.max_product, product);
    xs.push_back(d);
    ys.push_back(product);
  }
  out.fit = fit_loglog(xs, ys);
  return out;
}

}  // namespace alr
