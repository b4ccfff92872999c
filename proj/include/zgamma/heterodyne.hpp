// Copyright 2026 zgamma contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "zgamma/grid.hpp"
#include "zgamma/measurement.hpp"

namespace zgamma::heterodyne {

/// Signal and intermediate frequencies, any consistent units.
struct HeterodyneSpec {
  double omega_signal = 0.0;
  double omega_intermediate = 0.0;

  void validate() const;  // 0 <= omega_intermediate < omega_signal
};

/// gamma_C = sqrt((w1 - wI)/(w1 + wI)) in (0, 1].
double caves_gamma(const HeterodyneSpec& spec);

/// Side-by-side noise accounting: the frequency-offset measurement at
/// gamma_C against the standard heterodyne at gamma = 1.
struct NoiseBudget {
  double gamma_c = 0.0;
  double commutator_scale = 0.0;       // 2 wI / w1
  measurement::Moments caves;          // predicted at gamma_C
  measurement::Moments standard;       // predicted at gamma = 1
  double added_noise_q = 0.0;          // (1-gc^2)/2 <q3^2>
  double added_noise_p = 0.0;
  double delta_vs_standard_q = 0.0;    // var_Q1(gamma_C) - var_Q1(1)
  double delta_vs_standard_p = 0.0;
  bool matches_standard = false;       // budgets identical field by field
};

NoiseBudget noise_budget(const HeterodyneSpec& spec,
                         const measurement::Preparation& prep);

/// Distribution of the outcome argument, P(theta_k) ~ int K(r e^{i theta}) r dr.
struct PhaseReport {
  std::vector<double> theta;  // bin centers in (-pi, pi]... stored in [0, 2pi)
  std::vector<double> prob;   // sums to 1
  double circular_mean = 0.0;
  double circular_variance = 0.0;  // 1 - |sum p e^{i theta}|
};

/// Radial integration of a precomputed outcome grid: bilinear interpolation
/// along rays from the origin, trapezoid in r, default 360 bins.
PhaseReport feasible_phase(const OutcomeGrid& grid, int n_bins = 360);

/// Convenience: outcome grid first, then radial integration.
PhaseReport feasible_phase(const measurement::Preparation& prep, double gamma,
                           const GridSpec& grid, int n_bins = 360);

std::string phase_to_csv(const PhaseReport& report);
std::string phase_to_json(const PhaseReport& report);
std::string budget_to_json(const NoiseBudget& budget);

}  // namespace zgamma::heterodyne
