// Copyright 2026 zgamma contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zgamma/grid.hpp"
#include "zgamma/states.hpp"

namespace zgamma::measurement {

using Complex = std::complex<double>;
using states::StatePrep;

/// Three-mode input: signal rho1, idler rho2, ancilla sigma.
/// The ancilla must carry zero mean quadratures (<q3> = <p3> = 0 within
/// 1e-12), otherwise the first-moment trace conditions break; violation is a
/// hard error at construction.
struct Preparation {
  StatePrep rho1, rho2, sigma;

  Preparation(StatePrep r1, StatePrep r2, StatePrep s);
};

/// Moments of the measured pair (Q1, P2).
struct Moments {
  double mean_q1 = 0.0;
  double mean_p2 = 0.0;
  double var_q1 = 0.0;
  double var_p2 = 0.0;
  double cov_q1p2 = 0.0;
};

/// Predicted and grid-measured moments side by side.
struct MomentReport {
  Moments predicted;
  std::optional<Moments> measured;
};

/// Xi(lambda) = chi1(lambda) chi2(-gamma conj(lambda)) chi3(-kappa conj(lambda)),
/// kappa = sqrt(1 - gamma^2). The conjugated arguments come from expanding
/// exp(lambda T+ - lambda* T) over the three modes: modes 2 and 3 contribute
/// through creation operators. The convention is frozen by the first-moment
/// trace condition and the truncated-Fock oracle.
Complex moment_generating_fn(const Preparation& prep, double gamma, Complex lambda);

/// Analytic moments of the outcome distribution:
///   mean = (<q1> + g <q2>)/sqrt(2) + i (<p1> - g <p2>)/sqrt(2)
///   var_Q1 = DX^2 + (1-g^2)/2 <q3^2>, var_P2 = DY^2 + (1-g^2)/2 <p3^2>
///   cov = cov_XY - (1-g^2)/2 * sym-cov(q3, p3)
Moments predicted_moments(const Preparation& prep, double gamma);

/// Grid spec covering predicted mean +/- 6 sigma per coordinate.
GridSpec auto_grid(const Preparation& prep, double gamma, int n = 256);

/// Outcome density by 2-D FFT inversion of the moment generating function:
///   K(x, y) = (1/pi^2) int du dv exp(2i (u y - v x)) Xi(u + iv)
/// with lambda = u + iv and tau = x + iy (the kernel exp(l* t - l t*)
/// expanded exactly once; the all-vacuum Gaussian pair pins the convention).
/// The grid must cover mean +/- 3 sigma per side and the result must carry
/// unit mass within 1e-3, else coverage_error with suggested bounds.
OutcomeGrid outcome_density(const Preparation& prep, double gamma, const GridSpec& grid);

/// H(tau) = (1/g^2) int d2w W1(w) W2(-conj(tau - w)/g): the Fourier pair of
/// chi1(lambda) chi2(-gamma conj(lambda)), computed by direct Wigner
/// convolution. A quasi-density: may be negative for nonclassical rho2.
/// gamma below 1e-3 is rejected (kernel rescaling overflows).
OutcomeGrid h_density(const StatePrep& rho1, const StatePrep& rho2, double gamma,
                      const GridSpec& grid);

/// Full outcome density along the convolution route,
///   K(tau) = (1/k^2) int d2w H(w) W3(-conj(tau - w)/k),
/// the independent cross-check of outcome_density (agreement within 1e-6
/// pointwise on factorized inputs). Reduces to H when kappa = 0.
OutcomeGrid convolution_density(const Preparation& prep, double gamma,
                                const GridSpec& grid);

/// Means/variances/covariance by 2-D trapezoid integration. Requires grid
/// mass within 1e-3 of unity (coverage_error otherwise).
Moments empirical_moments(const OutcomeGrid& grid);

/// i.i.d. draws from the gridded density: inverse CDF over the flattened
/// cell distribution plus uniform jitter inside each cell. Deterministic for
/// a fixed seed (the generator and the bits-to-double map are pinned).
std::vector<Complex> sample_outcomes(const OutcomeGrid& grid, std::int64_t n,
                                     std::uint64_t seed);

/// Added-noise accounting for one preparation.
struct NoiseExcessReport {
  double gamma = 0.0;
  double intrinsic_var_x = 0.0;   // DX_gamma^2
  double intrinsic_var_y = 0.0;   // DY_gamma^2
  double excess_q = 0.0;          // (1-g^2)/2 <q3^2>
  double excess_p = 0.0;          // (1-g^2)/2 <p3^2>
  double var_q1 = 0.0;
  double var_p2 = 0.0;
  double uncertainty_product = 0.0;      // var_q1 * var_p2
  double product_lower_bound = 0.0;      // ((1-g^2)/2)^2, joint-measurement bound
  bool excess_positive = false;          // strict, expected whenever gamma < 1
};

NoiseExcessReport noise_excess_check(const Preparation& prep, double gamma);

/// {"predicted": {...}, "measured": {...}} (measured omitted when absent).
std::string report_to_json(const MomentReport& report);

}  // namespace zgamma::measurement
