#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "alr/modal.hpp"
#include "alr/quadrature.hpp"
#include "alr/spline.hpp"
#include "helpers.hpp"

#include <cmath>
#include <numbers>

using namespace alr;
using alr::test::rng;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("projection recovers band-limited data exactly") {
  auto gen = rng();
  for (int trial = 0; trial < 50; ++trial) {
    const ModalCoefficients h = alr::test::random_data(gen, 12);
    auto sampler = [&](double theta) {
      cplx v = h.zero_mode;
      for (int n = 1; n <= h.order(); ++n) {
        const cplx e(std::cos(n * theta), std::sin(n * theta));
        v += h.plus[n - 1] * e + h.minus[n - 1] * std::conj(e);
      }
      return v;
    };
    const ModalCoefficients back = project_boundary(sampler, h.order());
    CHECK(std::abs(back.zero_mode - h.zero_mode) < 1e-13);
    for (int n = 1; n <= h.order(); ++n) {
      CHECK(std::abs(back.plus[n - 1] - h.plus[n - 1]) < 1e-13);
      CHECK(std::abs(back.minus[n - 1] - h.minus[n - 1]) < 1e-13);
    }
  }
}

TEST_CASE("projection rejects non-finite samples with the angle named") {
  auto sampler = [](double theta) {
    return theta > 3.0 ? cplx(std::nan(""), 0.0) : cplx(1.0, 0.0);
  };
  CHECK_THROWS_AS(project_boundary(sampler, 4), std::invalid_argument);
}

TEST_CASE("half norm matches its definition") {
  ModalCoefficients h(3);
  h.zero_mode = cplx(2.0, 0.0);
  h.plus[0] = cplx(0.0, 1.0);
  h.minus[2] = cplx(3.0, 4.0);
  // |2|^2 + 1*1 + 3*25
  CHECK(h_half_norm(h) == doctest::Approx(4.0 + 1.0 + 75.0).epsilon(1e-15));
}

TEST_CASE("disk gradient energy matches quadrature for one mode") {
  // u = r^2 e^{2 i theta}: energy 2 pi * 2 * rho^4
  ModalCoefficients c(2);
  c.plus[1] = cplx(1.0, 0.0);
  CHECK(grad_energy_disk(c, 0.7) == doctest::Approx(4.0 * kPi * std::pow(0.7, 4)).epsilon(1e-14));
}

TEST_CASE("annulus energy: inner and outer branches and the log term") {
  ModalCoefficients inner(1), outer(1);
  inner.plus[0] = cplx(1.0, 0.0);   // r e^{i theta}
  outer.minus[0] = cplx(0.0, 2.0);  // 2i r^{-1} e^{-i theta}
  const double r_lo = 1.0, r_hi = 2.0;
  const double expect_modes =
      2.0 * kPi * ((r_hi * r_hi - r_lo * r_lo) + 4.0 * (1.0 / (r_lo * r_lo) - 1.0 / (r_hi * r_hi)));
  CHECK(grad_energy_annulus(inner, outer, cplx(0.0, 0.0), r_lo, r_hi) ==
        doctest::Approx(expect_modes).epsilon(1e-14));
  // log r alone: 2 pi log(r_hi/r_lo)
  ModalCoefficients zero(0);
  CHECK(grad_energy_annulus(zero, zero, cplx(1.0, 0.0), r_lo, r_hi) ==
        doctest::Approx(2.0 * kPi * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("l2 mass of a constant") {
  ModalCoefficients c(0);
  c.zero_mode = cplx(3.0, 0.0);
  CHECK(l2_mass_disk(c, 2.0) == doctest::Approx(9.0 * kPi * 4.0).epsilon(1e-14));
}

TEST_CASE("resized pads and truncates") {
  auto gen = rng();
  const ModalCoefficients h = alr::test::random_data(gen, 5);
  const ModalCoefficients up = h.resized(8);
  CHECK(up.order() == 8);
  CHECK(up.plus[7] == cplx(0.0, 0.0));
  CHECK(up.plus[2] == h.plus[2]);
  const ModalCoefficients down = h.resized(2);
  CHECK(down.order() == 2);
  CHECK(down.minus[1] == h.minus[1]);
}

TEST_CASE("real symmetry detection") {
  ModalCoefficients h(2);
  h.zero_mode = cplx(1.0, 0.0);
  h.plus[0] = cplx(0.5, 0.25);
  h.minus[0] = std::conj(h.plus[0]);
  h.plus[1] = cplx(0.0, -1.0);
  h.minus[1] = std::conj(h.plus[1]);
  CHECK(h.is_real_symmetric());
  h.minus[1] = cplx(0.0, -1.0);
  CHECK(!h.is_real_symmetric());
}

TEST_CASE("gauss rules integrate polynomials to machine precision") {
  // K points are exact through degree 2K-1.
  for (int k = 2; k <= 16; k += 7) {
    const GaussRule rule = gauss_legendre_on(k, 0.0, 1.0);
    const int degree = 2 * k - 1;
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      sum += rule.weights[i] * std::pow(rule.nodes[i], degree);
    }
    CHECK(sum == doctest::Approx(1.0 / (degree + 1)).epsilon(1e-13));
  }
}

TEST_CASE("geometric breakpoints have constant ratio") {
  const auto pts = geometric_breakpoints(0.01, 1.0, 4);
  REQUIRE(pts.size() == 5);
  CHECK(pts.front() == doctest::Approx(0.01));
  CHECK(pts.back() == doctest::Approx(1.0));
  const double ratio = pts[1] / pts[0];
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    CHECK(pts[i + 1] / pts[i] == doctest::Approx(ratio).epsilon(1e-12));
  }
}

TEST_CASE("clamped spline reproduces a cubic exactly") {
  // Clamped interpolation of a cubic is the cubic itself.
  auto f = [](double x) { return cplx(x * x * x - 2.0 * x, 0.5 * x * x); };
  auto fp = [](double x) { return cplx(3.0 * x * x - 2.0, x); };
  std::vector<double> xs;
  std::vector<cplx> ys;
  for (int i = 0; i <= 10; ++i) {
    const double x = -1.0 + 0.3 * i;
    xs.push_back(x);
    ys.push_back(f(x));
  }
  const CubicSpline s(xs, ys, fp(xs.front()), fp(xs.back()));
  for (double x = -1.0; x <= 2.0; x += 0.07) {
    CHECK(std::abs(s.value(x) - f(x)) < 1e-12);
    CHECK(std::abs(s.derivative(x) - fp(x)) < 1e-11);
  }
  CHECK(std::abs(s.derivative(xs.front()) - fp(xs.front())) < 1e-13);
  CHECK(std::abs(s.derivative(xs.back()) - fp(xs.back())) < 1e-13);
}

TEST_CASE("spline rejects queries outside its knots") {
  const CubicSpline s({0.0, 1.0}, {cplx(0.0, 0.0), cplx(1.0, 0.0)}, cplx(1.0, 0.0),
                      cplx(1.0, 0.0));
  CHECK_THROWS_AS(s.value(1.5), std::domain_error);
}
