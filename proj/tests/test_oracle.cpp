#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "alr/oracle.hpp"
#include "helpers.hpp"

#include <cmath>
#include <numbers>

using namespace alr;
using alr::test::rng;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("worked single-mode elimination") {
  // n = 1, R = 2, delta = 1, h = 1: core coefficient 2 / (1 + 1.5 i).
  const TransmissionSystem sys = mode_transmission_oracle(1, cplx(1.0, 0.0), 2.0, 1.0);
  const cplx expect = 2.0 / cplx(1.0, 1.5);
  CHECK(std::abs(sys.core - expect) < 1e-15);
  // and the three defining relations hold
  CHECK(std::abs(sys.ring_inner * 2.0 + sys.ring_outer * 0.5 - cplx(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(sys.core - sys.ring_inner - sys.ring_outer) < 1e-15);
  CHECK(std::abs(cplx(-1.0, 1.0) * sys.core - (sys.ring_inner - sys.ring_outer)) < 1e-15);
}

TEST_CASE("oracle validates its inputs") {
  CHECK_THROWS_AS(mode_transmission_oracle(0, cplx(1.0, 0.0), 2.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(mode_transmission_oracle(1, cplx(1.0, 0.0), 1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(mode_transmission_oracle(1, cplx(1.0, 0.0), 2.0, 0.0), std::invalid_argument);
}

TEST_CASE("oracle and solver agree on random draws") {
  auto gen = rng();
  std::uniform_int_distribution<int> pick_n(1, 30);
  std::uniform_real_distribution<double> pick_logd(-12.0, std::log10(0.5));
  const double radii[] = {1.5, 2.0, 3.0, 10.0};
  std::uniform_int_distribution<int> pick_r(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = pick_n(gen);
    const double delta = std::pow(10.0, pick_logd(gen));
    const double R = radii[pick_r(gen)];
    const cplx h = alr::test::random_unit(gen);
    SolverConfig config;
    config.R = R;
    config.delta = delta;
    config.truncation = n;
    ModalCoefficients data(n);
    data.plus[n - 1] = h;
    const CoreShellSolution sol = solve_modes(config, data);
    const TransmissionSystem sys = mode_transmission_oracle(n, h, R, delta);
    const auto rel = [](cplx got, cplx want) {
      return std::abs(got - want) / std::max(std::abs(want), 1e-300);
    };
    CHECK(rel(sol.core.plus[n - 1], sys.core) < 1e-12);
    CHECK(rel(sol.ring_inner.plus[n - 1], sys.ring_inner) < 1e-12);
    CHECK(rel(sol.ring_outer.plus[n - 1], sys.ring_outer) < 1e-12);
  }
}

TEST_CASE("tensor quadrature reproduces a known gradient energy") {
  // u = r^2 e^{2 i theta} on the annulus [0.5, 2]: closed form
  // 2 pi * 2 * (r_hi^4 - r_lo^4).
  GradientField grad = [](PolarPoint p) {
    const cplx e(std::cos(2.0 * p.theta), std::sin(2.0 * p.theta));
    return PolarGradient{2.0 * p.r * e, cplx(0.0, 2.0) * p.r * e};
  };
  const auto grid = QuadratureGrid::radial_annulus(0.5, 2.0, 16, 4, 16);
  const double want = 4.0 * kPi * (16.0 - 0.0625);
  CHECK(quadrature_energy(grad, grid) == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("tensor quadrature mass of a constant") {
  ScalarField three = [](PolarPoint) { return cplx(3.0, 0.0); };
  const auto grid = QuadratureGrid::radial_annulus(1.0, 2.0, 8, 2, 8);
  CHECK(quadrature_mass(three, grid) == doctest::Approx(9.0 * kPi * 3.0).epsilon(1e-13));
}

TEST_CASE("finite differences converge to a manufactured radial solution") {
  // w = rho^2 - rho^4/2 solves w'' + w'/rho - 4 w / rho^2 = -6 rho^2 with
  // w'(1) = 0; the scheme is second order in the mesh width.
  auto f = [](double rho) { return cplx(-6.0 * rho * rho, 0.0); };
  const RadialBvpSolution coarse = fd_radial_bvp(2, f, 1000);
  const RadialBvpSolution fine = fd_radial_bvp(2, f, 4000);
  const double err_coarse = std::abs(coarse.trace - cplx(0.5, 0.0));
  const double err_fine = std::abs(fine.trace - cplx(0.5, 0.0));
  CHECK(err_coarse < 1e-5);
  CHECK(err_fine < err_coarse / 8.0);  // 16x expected at second order
  // interior values too, not just the trace
  const std::size_t mid = coarse.rho.size() / 2;
  const double rho = coarse.rho[mid];
  CHECK(std::abs(coarse.w[mid] - cplx(rho * rho - 0.5 * rho * rho * rho * rho, 0.0)) < 1e-5);
}

TEST_CASE("finite difference solver validates its grid") {
  auto f = [](double) { return cplx(0.0, 0.0); };
  CHECK_THROWS_AS(fd_radial_bvp(2, f, 0), std::invalid_argument);
  CHECK_THROWS_AS(fd_radial_bvp(2, f, 1000, 0.7), std::invalid_argument);
  CHECK_THROWS_AS(fd_radial_bvp(-1, f, 1000), std::invalid_argument);
}

TEST_CASE("energy identity holds for random solves") {
  auto gen = rng();
  for (double delta : {0.1, 1e-5, 1e-11}) {
    const ModalCoefficients h = alr::test::random_data(gen, 12, 0.7);
    SolverConfig config;
    config.R = 2.0;
    config.delta = delta;
    config.truncation = 12;
    const CoreShellSolution sol = solve_modes(config, h);
    // Residual is relative; near-cancelling boundary pairings against the
    // quadratic form leave a few times 1e-11 at the smallest delta.
    CHECK(energy_identity_check(sol) < 5e-10);
  }
}

TEST_CASE("scaled product probe reports a bounded trend") {
  const ModalCoefficients h =
      project_generator([](int n) { return cplx(1.0 / (n * n), 0.0); }, 30);
  std::vector<double> deltas;
  for (int k = 2; k <= 10; k += 2) deltas.push_back(std::pow(10.0, -k));
  const BoundProbe probe = scaled_h1_bound_probe(h, 3.0, deltas);
  REQUIRE(probe.products.size() == deltas.size());
  CHECK(probe.max_product > 0.0);
  for (const SweepPoint& p : probe.products) CHECK(p.value <= probe.max_product);
  CHECK(probe.fit.slope > -0.02);
}
