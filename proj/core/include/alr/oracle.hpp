#pragma once

#include "alr/core_shell.hpp"
#include "alr/kelvin.hpp"
#include "alr/quadrature.hpp"

#include <functional>
#include <vector>

namespace alr {

// Brute-force counterparts of the closed forms elsewhere in the library.
// Nothing here shares a derivation with the code it checks: the mode system
// is eliminated numerically, energies are integrated on tensor grids, and
// the radial profiles are re-solved by finite differences.

// One transmission mode recovered by direct elimination: c r^n on the unit
// disk, p r^n + q r^{-n} on the annulus, Dirichlet value h_n at radius R.
struct TransmissionSystem {
  cplx core;        // c
  cplx ring_inner;  // p
  cplx ring_outer;  // q
};

// Assembles the raw 3x3 mode system
//   p R^n + q R^{-n} = h_n        (Dirichlet at R)
//   c - p - q        = 0          (continuity at 1)
//   (-1 + i delta) c - p + q = 0  (flux balance at 1, the n factor divided out)
// and solves it by Gaussian elimination with partial pivoting. The system is
// nonsingular for every delta > 0; a singular pivot is a hard failure.
TransmissionSystem mode_transmission_oracle(int n, cplx h_n, double R, double delta);

// Tensor quadrature of int |grad u|^2 r dr dtheta over the grid's annulus.
// The gradient must come from analytic differentiation by the caller, not
// from finite differences of field values.
double quadrature_energy(const GradientField& grad, const QuadratureGrid& grid);

// L2 counterpart, int |u|^2 r dr dtheta on the same grid.
double quadrature_mass(const ScalarField& field, const QuadratureGrid& grid);

struct RadialBvpSolution {
  std::vector<double> rho;  // nodes, first at rho_min, last at 1
  std::vector<cplx> w;
  cplx trace;               // w at rho = 1
};

// Second-order central-difference solve of
//   w'' + w'/rho - n^2 w / rho^2 = f(rho)   on [rho_min, 1]
// with w(rho_min) = 0 standing in for the rho^n regularity at the origin
// (contributes O(rho_min^n) to the answer) and w'(1) = 0 via a ghost node.
// m_points is the interval count; the tridiagonal system is eliminated
// directly. Trace error is O(m_points^{-2}).
RadialBvpSolution fd_radial_bvp(int n, const std::function<cplx(double)>& f, int m_points,
                                double rho_min = 1e-6);

// Residual of the dissipation balance: the imaginary part of the boundary
// pairing int_{dB_R} d_nu(u) conj(data) dsigma, computed from the annulus
// coefficients, must equal delta * int_{B_1} |grad u|^2. With the outward
// normal the pairing's imaginary part is +delta times the core energy; the
// single-mode closed form pins that sign. Returns |lhs - rhs| / max(|lhs|,
// |rhs|), or 0 when both sides vanish.
double energy_identity_check(const CoreShellSolution& sol);

// delta * H1(B_R) norm of the solution across a delta grid. The product is
// uniformly bounded for any fixed data; it tends to 0 when the data is
// compatible and stays merely bounded otherwise.
struct BoundProbe {
  std::vector<SweepPoint> products;  // (delta, delta * H1 norm)
  double max_product = 0.0;
  RateFit fit;  // log-log trend of the product against delta
};

BoundProbe scaled_h1_bound_probe(const ModalCoefficients& h, double R,
                                 const std::vector<double>& deltas);

}  // namespace alr
