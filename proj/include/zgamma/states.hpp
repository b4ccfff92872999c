// Copyright 2026 zgamma contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace zgamma::states {

using Complex = std::complex<double>;

// Quadrature convention throughout: q = (a^dag + a)/sqrt(2),
// p = i(a^dag - a)/sqrt(2), [q, p] = i, vacuum variance 1/2.

struct Vacuum {};

struct Coherent {
  Complex alpha;
};

/// Number-diagonal mixture sum_m p_m |m><m|.
struct NumberDiagonal {
  std::vector<double> weights;  // p_0 .. p_M, nonnegative, sum 1
};

/// Single-mode Gaussian state given by its quadrature moments.
struct GaussianSingleMode {
  double mean_q = 0.0;
  double mean_p = 0.0;
  double var_q = 0.5;
  double var_p = 0.5;
  double cov_qp = 0.0;
};

using StatePrep = std::variant<Vacuum, Coherent, NumberDiagonal, GaussianSingleMode>;

/// Checks the catalog invariants (weight normalization to 1e-12, Gaussian
/// positive-definiteness and var_q var_p - cov^2 >= 1/4). Throws domain_error.
void validate(const StatePrep& prep);

/// Recipes for number-diagonal weight vectors.
struct WeightRecipe {
  enum class Kind { Number, Thermal, PhaseDiagonal, PoissonDiagonal };
  Kind kind = Kind::Number;
  int number = 0;        // Number
  Complex z{0.0, 0.0};   // Thermal (real) / PhaseDiagonal, |z| < 1
  double alpha_sq = 0.0; // PoissonDiagonal, >= 0
  int cutoff = 256;      // weights kept for m <= cutoff
};

/// Generates weights, enforces tail mass < 1e-12 past the cutoff
/// (truncation_error otherwise), renormalizes, returns a NumberDiagonal prep.
StatePrep make_weights(const WeightRecipe& recipe);

/// sum_m p_m L_m(x) in one pass of the three-term Laguerre recurrence.
double laguerre_weighted_sum(std::span<const double> weights, double x);

/// Characteristic function chi(lambda) = Tr[rho D(lambda)]; chi(0) = 1.
Complex char_fn(const StatePrep& prep, Complex lambda);

struct QuadStats {
  double mean_q = 0.0;
  double mean_p = 0.0;
  double var_q = 0.0;
  double var_p = 0.0;
  double cov_qp = 0.0;
};

/// First and second quadrature moments.
QuadStats quad_stats(const StatePrep& prep);

/// Wigner function over the complex plane z = (q + ip)/sqrt(2), normalized
/// so that the integral of W over d^2z is 1. Vacuum peaks at 2/pi.
double wigner(const StatePrep& prep, Complex z);

/// Parses the prep mini-language: "vacuum", "coherent:re[,im]", "number:m",
/// "thermal:z", "phase:re[,im]", "poisson:a2", "weights:p0,p1,...".
StatePrep parse_prep(const std::string& text);

/// Inverse of parse_prep for diagnostics; not guaranteed to round-trip
/// weight lists digit-for-digit.
std::string describe(const StatePrep& prep);

}  // namespace zgamma::states
