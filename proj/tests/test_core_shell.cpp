#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "alr/core_shell.hpp"
#include "helpers.hpp"

#include <cmath>

using namespace alr;
using alr::test::rng;

namespace {

SolverConfig config_for(double R, double delta, int truncation) {
  SolverConfig c;
  c.R = R;
  c.delta = delta;
  c.truncation = truncation;
  return c;
}

}  // namespace

TEST_CASE("solution satisfies the boundary and transmission conditions") {
  auto gen = rng();
  for (double delta : {0.3, 1e-4, 1e-9}) {
    const double R = 2.0;
    const ModalCoefficients h = alr::test::random_data(gen, 16, 0.6);
    const CoreShellSolution sol = solve_modes(config_for(R, delta, 16), h);
    for (int n = 1; n <= 16; ++n) {
      const cplx c = sol.core.plus[n - 1];
      const cplx p = sol.ring_inner.plus[n - 1];
      const cplx q = sol.ring_outer.plus[n - 1];
      const double Rn = std::pow(R, n);
      // Dirichlet at R
      CHECK(std::abs(p * Rn + q / Rn - h.plus[n - 1]) < 1e-12);
      // continuity at 1
      CHECK(std::abs(c - p - q) < 1e-13);
      // flux: (-1 + i delta) c = p - q
      CHECK(std::abs(cplx(-1.0, delta) * c - (p - q)) < 1e-13);
    }
    // zero mode passes straight through
    CHECK(sol.core.zero_mode == h.zero_mode);
    CHECK(sol.ring_outer.zero_mode == h.zero_mode);
  }
}

TEST_CASE("dissipated power equals delta times the core energy") {
  auto gen = rng();
  const ModalCoefficients h = alr::test::random_data(gen, 10, 0.7);
  const CoreShellSolution sol = solve_modes(config_for(3.0, 1e-3, 10), h);
  CHECK(sol.power() == doctest::Approx(1e-3 * sol.core_grad_energy()).epsilon(1e-14));
  CHECK(sol.grad_energy() ==
        doctest::Approx(sol.core_grad_energy() + sol.matrix_grad_energy()).epsilon(1e-14));
}

TEST_CASE("solution energies agree with the assembled field") {
  auto gen = rng();
  const ModalCoefficients h = alr::test::random_data(gen, 8, 0.5);
  const CoreShellSolution sol = solve_modes(config_for(2.5, 1e-2, 8), h);
  const HarmonicField field = sol.field();
  CHECK(field.grad_energy() == doctest::Approx(sol.grad_energy()).epsilon(1e-12));
  CHECK(field.l2_mass() == doctest::Approx(sol.l2_mass()).epsilon(1e-12));
  CHECK(field.r_max() == doctest::Approx(2.5));
}

TEST_CASE("gap multiplier stays inside the unit disk") {
  for (int n : {1, 2, 7, 40, 500}) {
    for (double delta : {0.9, 1e-5, 1e-12, 1e-20}) {
      for (double R : {1.5, 3.0, 10.0}) {
        CHECK(std::abs(gap_multiplier(n, delta, R)) <= 1.0);
      }
    }
  }
}

TEST_CASE("gap shrinks with delta and never exceeds the half norm") {
  auto gen = rng();
  const ModalCoefficients h = alr::test::random_data(gen, 30, 0.8);
  const double norm = h_half_norm(h);
  double prev = norm;
  for (int k = 2; k <= 16; k += 2) {
    const double gap = localized_resonance_gap(h, std::pow(10.0, -k), 3.0);
    CHECK(gap <= norm * (1.0 + 1e-14));
    CHECK(gap <= prev * (1.0 + 1e-14));
    prev = gap;
  }
}

TEST_CASE("delta solution converges to the limit field for compatible data") {
  // |h_n| = R^{-4n} decays fast enough that the low modes, which respond
  // linearly in delta, dominate the H1 distance to the limit.
  const double R = 2.0;
  const ModalCoefficients h =
      project_generator([R](int n) { return cplx(std::pow(R, -4.0 * n), 0.0); }, 6);
  const CoreShellSolution limit = limit_solution(R, h);
  double prev = 1e300;
  for (double delta : {1e-2, 1e-3, 1e-4}) {
    const CoreShellSolution sol = solve_modes(config_for(R, delta, 6), h);
    const double dist = std::sqrt(h1_distance_sq(sol, limit));
    CHECK(dist < prev);
    prev = dist;
  }
  // distance ~ C delta: one decade of delta is one decade of distance
  const double d3 = std::sqrt(h1_distance_sq(solve_modes(config_for(R, 1e-3, 6), h), limit));
  const double d4 = std::sqrt(h1_distance_sq(solve_modes(config_for(R, 1e-4, 6), h), limit));
  CHECK(d3 / d4 == doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("limit solution reproduces the data on the outer circle") {
  const double R = 3.0;
  const ModalCoefficients h =
      project_generator([](int n) { return cplx(std::pow(0.05, n), 0.0); }, 5);
  const CoreShellSolution limit = limit_solution(R, h);
  for (int n = 1; n <= 5; ++n) {
    const cplx at_R = limit.ring_outer.plus[n - 1] * std::pow(R, -n) +
                      limit.ring_inner.plus[n - 1] * std::pow(R, n);
    CHECK(std::abs(at_R - h.plus[n - 1]) < 1e-14);
  }
}

TEST_CASE("designer data produces the advertised blow-up rate") {
  const double alpha = 0.4, R = 3.0;
  std::vector<double> deltas;
  for (int k = 0; k < 9; ++k) deltas.push_back(std::pow(10.0, -9.0 + k * 0.75));
  const SweepResult sweep = delta_sweep(
      R, [&](int order) { return design_incompatible_data(alpha, R, order); },
      Quantity::GradEnergy, deltas);
  CHECK(sweep.fit.reliable);
  CHECK(sweep.fit.slope == doctest::Approx(-2.0 * alpha).epsilon(0.03));
}

TEST_CASE("truncation scales logarithmically in delta") {
  CHECK(resonance_order(1e-2, 3.0) >= 1);
  CHECK(resonance_order(1e-12, 3.0) > resonance_order(1e-6, 3.0));
  CHECK(working_truncation(1e-8, 3.0) == 4 * resonance_order(1e-8, 3.0));
}

TEST_CASE("solver rejects invalid parameters") {
  ModalCoefficients h(2);
  h.plus[0] = cplx(1.0, 0.0);
  CHECK_THROWS_AS(solve_modes(config_for(0.9, 1e-3, 2), h), std::invalid_argument);
  CHECK_THROWS_AS(solve_modes(config_for(3.0, 0.0, 2), h), std::invalid_argument);
  CHECK_THROWS_AS(solve_modes(config_for(3.0, 1.5, 2), h), std::invalid_argument);
}

TEST_CASE("compatibility classification follows the declared tail") {
  const double R = 3.0;
  ModalCoefficients h(4);
  h.plus[3] = cplx(1e-3, 0.0);
  CHECK(classify_compatibility(h, R, TailDescriptor::finite()).verdict ==
        CompatibilityVerdict::Compatible);
  CHECK(classify_compatibility(h, R, TailDescriptor::geometric(0.1)).verdict ==
        CompatibilityVerdict::Compatible);
  CHECK(classify_compatibility(h, R, TailDescriptor::geometric(1.0 / R)).verdict ==
        CompatibilityVerdict::Incompatible);
  CHECK(classify_compatibility(h, R, TailDescriptor::geometric(0.5)).verdict ==
        CompatibilityVerdict::Incompatible);
  // any power tail decays slower than every geometric rate
  CHECK(classify_compatibility(h, R, TailDescriptor::power(4.0)).verdict ==
        CompatibilityVerdict::Incompatible);
}

TEST_CASE("tail estimation from stored coefficients") {
  const double R = 3.0;
  // clean geometric decay well inside the threshold
  const ModalCoefficients fast =
      project_generator([](int n) { return cplx(std::pow(0.05, n), 0.0); }, 40);
  CHECK(classify_compatibility(fast, R).verdict == CompatibilityVerdict::Compatible);
  const ModalCoefficients slow =
      project_generator([](int n) { return cplx(std::pow(0.8, n), 0.0); }, 40);
  CHECK(classify_compatibility(slow, R).verdict == CompatibilityVerdict::Incompatible);
  // decay exactly at 1/R sits in the +-1% band
  const ModalCoefficients edge =
      project_generator([R](int n) { return cplx(std::pow(1.0 / R, n), 0.0); }, 40);
  CHECK(classify_compatibility(edge, R).verdict == CompatibilityVerdict::Borderline);
  // too few stored modes to estimate
  const ModalCoefficients shorty =
      project_generator([](int n) { return cplx(std::pow(0.1, n), 0.0); }, 8);
  CHECK(classify_compatibility(shorty, R).verdict == CompatibilityVerdict::Borderline);
}

TEST_CASE("delta sweep rejects inadequate windows") {
  auto gen = [](int order) {
    ModalCoefficients h(order);
    if (order >= 1) h.plus[0] = cplx(1.0, 0.0);
    return h;
  };
  CHECK_THROWS_AS(delta_sweep(3.0, gen, Quantity::Power, {1e-3, 1e-4, 1e-5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(delta_sweep(3.0, gen, Quantity::Power, {1e-3, 2e-3, 4e-3, 8e-3}),
                  std::invalid_argument);
}

TEST_CASE("sweep quantities are consistent with direct solves") {
  std::vector<double> deltas = {1e-7, 1e-6, 1e-5, 1e-4, 1e-3};
  const double R = 2.0;
  auto gen = [](int order) {
    return project_generator([](int n) { return cplx(1.0 / (n * n), 0.0); }, order);
  };
  const SweepResult sweep = delta_sweep(R, gen, Quantity::Power, deltas);
  REQUIRE(sweep.points.size() == deltas.size());
  const CoreShellSolution direct =
      solve_modes(config_for(R, deltas[0], sweep.truncation), gen(sweep.truncation));
  CHECK(sweep.points[0].value == doctest::Approx(direct.power()).epsilon(1e-13));
}
