#pragma once

#include <cstddef>
#include <vector>

namespace alr {

// Gauss-Legendre rule on [-1, 1]. Nodes ascending.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Computes (and caches) the K-point rule. K >= 1.
const GaussRule& gauss_legendre(int k);

// Rule mapped to [a, b]. a < b required.
GaussRule gauss_legendre_on(int k, double a, double b);

// Geometric breakpoints a = b_0 < b_1 < ... < b_m = b with constant ratio.
// Used to resolve integrands with r^{+-n} boundary layers. a > 0 required.
std::vector<double> geometric_breakpoints(double a, double b, int subdivisions);

// Tensor grid for disk/annulus integrals: composite Gauss-Legendre in radius,
// uniform trapezoid in angle (exact for band-limited integrands when
// n_theta exceeds twice the bandwidth).
struct QuadratureGrid {
  std::vector<double> r;        // radial nodes
  std::vector<double> wr;       // radial weights (without the r area factor)
  int n_theta = 0;              // uniform angles theta_j = 2*pi*j/n_theta

  static QuadratureGrid radial_annulus(double r_lo, double r_hi, int points_per_segment,
                                       int subdivisions, int n_theta);
};

}
