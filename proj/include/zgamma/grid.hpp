// Copyright 2026 zgamma contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace zgamma {

/// Rectangular outcome grid over tau = x + iy. Nodes are cell-centered:
/// x_i = center + (i - (nx-1)/2) * dx with dx = (x_max - x_min)/nx, so the
/// node set is symmetric about the center and never contains the exact
/// boundary values.
struct GridSpec {
  double x_min = 0.0, x_max = 0.0;
  double y_min = 0.0, y_max = 0.0;
  int nx = 0, ny = 0;

  double dx() const { return (x_max - x_min) / nx; }
  double dy() const { return (y_max - y_min) / ny; }
  double x(int i) const { return 0.5 * (x_min + x_max) + (i - 0.5 * (nx - 1)) * dx(); }
  double y(int j) const { return 0.5 * (y_min + y_max) + (j - 0.5 * (ny - 1)) * dy(); }

  /// nx, ny powers of two, bounds ordered. Throws domain_error.
  void validate() const;
};

/// Sampled 2-D density of measurement outcomes. `density` is stored row-major
/// with x fastest: density[j * nx + i] = K(x_i, y_j).
///
/// Probability densities keep raw values internally (FFT ringing may dip a few
/// ulps below zero); value() clamps at readout and min_raw records the
/// pre-clamp minimum. Quasi-densities (Wigner-convolution intermediates) set
/// `quasi` and are never clamped.
struct OutcomeGrid {
  GridSpec spec;
  std::vector<double> density;
  double min_raw = 0.0;
  bool quasi = false;

  double raw(int i, int j) const { return density[static_cast<size_t>(j) * spec.nx + i]; }
  double value(int i, int j) const {
    double v = raw(i, j);
    return (!quasi && v < 0.0) ? 0.0 : v;
  }

  /// Total mass by the 2-D trapezoid rule over the raw values.
  double mass() const;
};

/// CSV with header "x,y,density", one node per line, 17 significant digits.
std::string grid_to_csv(const OutcomeGrid& grid);

/// JSON header: bounds, sizes, mass, first/second moments.
std::string grid_to_json(const OutcomeGrid& grid);

void write_file(const std::string& path, const std::string& content);

}  // namespace zgamma
