#include "alr/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace alr {

namespace {

GaussRule compute_rule(int k) {
  // Newton iteration on P_k from Chebyshev-like initial guesses; the rule is
  // symmetric, so only the lower half is solved for.
  GaussRule rule;
  rule.nodes.resize(k);
  rule.weights.resize(k);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (k + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (k + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence for P_k(x) and P_{k-1}(x).
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= k; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = k * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one polishing step after convergence
        p0 = 1.0;
        p1 = x;
        for (int j = 2; j <= k; ++j) {
          double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        pp = k * (x * p1 - p0) / (x * x - 1.0);
        break;
      }
    }
    rule.nodes[i] = x;
    rule.nodes[k - 1 - i] = -x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[k - 1 - i] = w;
  }
  // nodes were generated descending; flip to ascending
  for (int i = 0; i < k / 2; ++i) {
    std::swap(rule.nodes[i], rule.nodes[k - 1 - i]);
    std::swap(rule.weights[i], rule.weights[k - 1 - i]);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int k) {
  if (k < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, compute_rule(k)).first;
  return it->second;
}

GaussRule gauss_legendre_on(int k, double a, double b) {
  if (!(a < b)) throw std::invalid_argument("gauss_legendre_on: requires a < b");
  const GaussRule& base = gauss_legendre(k);
  GaussRule out;
  out.nodes.resize(k);
  out.weights.resize(k);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < k; ++i) {
    out.nodes[i] = mid + half * base.nodes[i];
    out.weights[i] = half * base.weights[i];
  }
  return out;
}

std::vector<double> geometric_breakpoints(double a, double b, int subdivisions) {
  if (!(0.0 < a && a < b)) throw std::invalid_argument("geometric_breakpoints: requires 0 < a < b");
  if (subdivisions < 1) throw std::invalid_argument("geometric_breakpoints: subdivisions >= 1");
  std::vector<double> pts(subdivisions + 1);
  const double ratio = std::pow(b / a, 1.0 / subdivisions);
  pts[0] = a;
  for (int i = 1; i < subdivisions; ++i) pts[i] = pts[i - 1] * ratio;
  pts[subdivisions] = b;
  return pts;
}

QuadratureGrid QuadratureGrid::radial_annulus(double r_lo, double r_hi, int points_per_segment,
                                              int subdivisions, int n_theta) {
  if (!(0.0 <= r_lo && r_lo < r_hi)) throw std::invalid_argument("radial_annulus: bad radii");
  if (n_theta < 4) throw std::invalid_argument("radial_annulus: n_theta too small");
  QuadratureGrid g;
  g.n_theta = n_theta;
  std::vector<double> breaks;
  if (r_lo > 0.0 && subdivisions > 1) {
    breaks = geometric_breakpoints(r_lo, r_hi, subdivisions);
  } else {
    breaks = {r_lo, r_hi};
  }
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    GaussRule seg = gauss_legendre_on(points_per_segment, breaks[s], breaks[s + 1]);
    g.r.insert(g.r.end(), seg.nodes.begin(), seg.nodes.end());
    g.wr.insert(g.wr.end(), seg.weights.begin(), seg.weights.end());
  }
  return g;
}

}  // namespace alr
