#pragma once

#include "alr/field.hpp"
#include "alr/rate_fit.hpp"

#include <functional>
#include <string>
#include <vector>

namespace alr {

// Transmission problem on the disk of radius R: coefficient -1 + i*delta on
// the unit disk, 1 on the surrounding annulus, Dirichlet data on the outer
// circle. Solved exactly mode by mode.
struct SolverConfig {
  double R = 3.0;
  double delta = 1e-6;
  int truncation = 0;  // modes to solve; 0 picks working_truncation(delta, R)

  void validate() const;
};

// Index of the last mode the loss term still damps: modes up to this order
// respond as if delta were zero, higher ones are suppressed. Grows like
// |log delta| / (2 log R). At least 1.
int resonance_order(double delta, double R);

// Default truncation: four times the resonance order, enough that the
// neglected tail is below double precision for geometric data.
int working_truncation(double delta, double R);

struct CoreShellSolution {
  double R = 0.0;
  double delta = 0.0;
  ModalCoefficients data;        // Dirichlet trace on the outer circle
  ModalCoefficients core;        // r^n coefficients on the unit disk
  ModalCoefficients ring_inner;  // r^n coefficients on the annulus
  ModalCoefficients ring_outer;  // r^{-n} coefficients on the annulus

  HarmonicField field() const;

  double core_grad_energy() const;    // over the unit disk
  double matrix_grad_energy() const;  // over the annulus
  double grad_energy() const;         // over the whole disk of radius R
  double l2_mass() const;
  double h1_norm_sq() const { return grad_energy() + l2_mass(); }

  // Dissipated power: delta * (gradient energy on the unit disk). Stays
  // bounded uniformly in delta exactly when the resonance is localized.
  double power() const;
};

CoreShellSolution solve_modes(const SolverConfig& config, const ModalCoefficients& h);

// The delta -> 0 field for compatible data: harmonic extension h_n R^n r^n
// inside, reflected decay h_n R^n r^{-n} on the annulus. Has finite energy
// only when |h_n| decays strictly faster than R^{-n}.
CoreShellSolution limit_solution(double R, const ModalCoefficients& h);

// Relative per-mode deviation of the delta-solution from its limit:
// core_n = (1 + m_n) * h_n R^n. Computed in a scaled form that neither
// overflows nor loses the bound |m_n| <= 1, which holds for every n, delta
// in (0, 1), R > 1.
cplx gap_multiplier(int n, double delta, double R);

// sum_n n |m_n|^2 (|h_{n,+}|^2 + |h_{n,-}|^2), the half-order trace measure
// of how far the response is from its limit. Never exceeds h_half_norm(h),
// and shrinks monotonically with delta.
double localized_resonance_gap(const ModalCoefficients& h, double delta, double R);

// ||u - v||_{H^1}^2 over the disk of radius R, via the closed-form energies
// of the coefficient differences. Requires matching R.
double h1_distance_sq(const CoreShellSolution& u, const CoreShellSolution& v);

// Boundary data h_0 = 0, h_{n,+-} = R^{-n*(1-2*alpha)} / sqrt(n), built so
// the gradient energy grows like delta^{-2*alpha}. Requires 0 < alpha < 1/2.
ModalCoefficients design_incompatible_data(double alpha, double R, int order);

// What is known (or assumed) about the data's modal tail beyond the stored
// coefficients. Geometric means |h_n| ~ C * rho^n, Power means |h_n| ~ n^-p.
struct TailDescriptor {
  enum class Kind { None, Finite, Geometric, Power };
  Kind kind = Kind::None;
  double parameter = 0.0;

  static TailDescriptor finite() { return {Kind::Finite, 0.0}; }
  static TailDescriptor geometric(double rho) { return {Kind::Geometric, rho}; }
  static TailDescriptor power(double p) { return {Kind::Power, p}; }
};

enum class CompatibilityVerdict { Compatible, Incompatible, Borderline };

struct CompatibilityReport {
  CompatibilityVerdict verdict = CompatibilityVerdict::Borderline;
  double estimated_ratio = 0.0;  // fitted per-mode decay ratio; 0 when unused
  std::string detail;
};

// Compatible data admits a finite-energy limit field; the dividing decay
// rate is 1/R. Without a tail descriptor the ratio is estimated from the
// trailing half of the stored coefficients, and estimates within 1% of the
// threshold are reported Borderline rather than forced to a side.
CompatibilityReport classify_compatibility(const ModalCoefficients& h, double R,
                                           TailDescriptor tail = {});

const char* to_string(CompatibilityVerdict v);

enum class Quantity { Power, GradEnergy, Gap, H1Norm };

const char* to_string(Quantity q);

// Produces data at whatever truncation the sweep needs.
using DataGenerator = std::function<ModalCoefficients(int order)>;

struct SweepPoint {
  double delta = 0.0;
  double value = 0.0;
};

struct SweepResult {
  Quantity quantity = Quantity::Power;
  int truncation = 0;
  std::vector<SweepPoint> points;
  RateFit fit;                        // log-log least squares
  std::vector<std::string> warnings;  // e.g. points the fit had to drop
};

// Evaluates the quantity across the deltas (at least four, spanning at least
// three decades) with one truncation sized for the smallest delta, then fits
// the decay rate.
SweepResult delta_sweep(double R, const DataGenerator& gen, Quantity quantity,
                        std::vector<double> deltas);

}  // namespace alr
