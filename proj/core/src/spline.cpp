#include "alr/spline.hpp"

#include <algorithm>
#include <stdexcept>

namespace alr {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<cplx> y, cplx deriv_left,
                         cplx deriv_right)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw std::invalid_argument("CubicSpline: need >= 2 matching knots");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(x_[i] < x_[i + 1])) throw std::invalid_argument("CubicSpline: knots must increase");

  // Solve for second derivatives m with clamped boundary rows:
  //   2 h0 m0 + h0 m1 = 6 ((y1-y0)/h0 - s_left)
  //   h_{i-1} m_{i-1} + 2(h_{i-1}+h_i) m_i + h_i m_{i+1} = 6 (d_i - d_{i-1})
  //   h_{n-2} m_{n-2} + 2 h_{n-2} m_{n-1} = 6 (s_right - d_{n-2})
  std::vector<double> diag(n), sub(n), sup(n);
  std::vector<cplx> rhs(n);
  const double h0 = x_[1] - x_[0];
  diag[0] = 2.0 * h0;
  sup[0] = h0;
  rhs[0] = 6.0 * ((y_[1] - y_[0]) / h0 - deriv_left);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = x_[i] - x_[i - 1];
    const double hr = x_[i + 1] - x_[i];
    sub[i] = hl;
    diag[i] = 2.0 * (hl + hr);
    sup[i] = hr;
    rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
  }
  const double hn = x_[n - 1] - x_[n - 2];
  sub[n - 1] = hn;
  diag[n - 1] = 2.0 * hn;
  rhs[n - 1] = 6.0 * (deriv_right - (y_[n - 1] - y_[n - 2]) / hn);

  // Thomas algorithm; the clamped system is diagonally dominant.
  m_.resize(n);
  std::vector<double> c(n);
  std::vector<cplx> d(n);
  c[0] = sup[0] / diag[0];
  d[0] = rhs[0] / diag[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double denom = diag[i] - sub[i] * c[i - 1];
    c[i] = (i + 1 < n) ? sup[i] / denom : 0.0;
    d[i] = (rhs[i] - sub[i] * d[i - 1]) / denom;
  }
  m_[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) m_[i] = d[i] - c[i] * m_[i + 1];
}

std::size_t CubicSpline::segment(double x) const {
  if (x_.empty()) throw std::domain_error("CubicSpline: empty");
  const double lo = x_.front(), hi = x_.back();
  const double slack = 1e-12 * (1.0 + std::abs(hi - lo));
  if (x < lo - slack || x > hi + slack)
    throw std::domain_error("CubicSpline: query outside interpolation domain");
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i == 0) return 0;
  if (i >= x_.size()) return x_.size() - 2;
  return i - 1;
}

CubicSpline::cplx CubicSpline::value(double x) const {
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * (h * h) / 6.0;
}

CubicSpline::cplx CubicSpline::derivative(double x) const {
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return (y_[i + 1] - y_[i]) / h +
         ((3.0 * b * b - 1.0) * m_[i + 1] - (3.0 * a * a - 1.0) * m_[i]) * h / 6.0;
}

}  // namespace alr
