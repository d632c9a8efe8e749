#pragma once

#include <complex>
#include <vector>

namespace alr {

// Clamped cubic spline through (x_i, y_i) with prescribed end derivatives.
// x strictly increasing. Complex-valued; the tridiagonal system is solved
// once per construction.
class CubicSpline {
 public:
  using cplx = std::complex<double>;

  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<cplx> y, cplx deriv_left, cplx deriv_right);

  cplx value(double x) const;
  cplx derivative(double x) const;

  double x_min() const { return x_.empty() ? 0.0 : x_.front(); }
  double x_max() const { return x_.empty() ? 0.0 : x_.back(); }
  bool empty() const { return x_.empty(); }

 private:
  std::size_t segment(double x) const;  // throws std::domain_error outside [x_min, x_max]

  std::vector<double> x_;
  std::vector<cplx> y_;
  std::vector<cplx> m_;  // second derivatives at the knots
};

}
