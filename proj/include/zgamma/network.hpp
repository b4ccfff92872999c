// Copyright 2026 zgamma contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace zgamma::network {

using Complex = std::complex<double>;

/// Canonical reduction of the amplification parameter gamma.
///
/// Any finite nonzero gamma is equivalent, for measurement purposes, to a
/// real gamma in (0, 1]: a phase rotation on mode 2 removes arg(gamma), and
/// |gamma| > 1 maps to 1/|gamma| after swapping the mode labels (the leftover
/// multiplicative constant is kept in `scale`).
struct GammaParam {
  Complex raw;     ///< the parameter as given
  double reduced;  ///< canonical value in (0, 1]
  double phase;    ///< arg(gamma) in (-pi, pi]
  bool swapped;    ///< mode labels permuted (|gamma| > 1 case)
  double scale;    ///< multiplicative constant, 1 unless swapped

  /// Rebuilds the original gamma from the reduction record.
  Complex reconstruct() const;
};

/// Throws degenerate_gamma_error for gamma = 0, domain_error for non-finite.
GammaParam reduce_gamma(Complex gamma);

/// The 3x3 unitary mixing the signal modes with the ancilla.
/// Rows 1 and 2 are (1, gamma, kappa)/sqrt(2) and (1, -gamma, -kappa)/sqrt(2),
/// kappa = sqrt(1 - gamma^2).
struct MixingMatrix {
  Eigen::Matrix3cd entries;
  double gamma = 0.0;
  double kappa = 0.0;
};

/// Requires gamma in (0, 1]; callers reduce first.
MixingMatrix build_mixing_matrix(double gamma);

/// Factorization of the mixing matrix into two-mode rotations plus a pi
/// rotation on mode 2.
///
/// Stage convention (frozen by the recomposition regression tests): stages
/// act on the input in the order listed in `ordering`, i.e.
///   M = P2 * R13(theta13) * R23(theta23) * R12(theta12)
/// with P2 = diag(1,-1,1) and R_jk(theta) the rotation block of su2_block().
struct Su2Plan {
  double theta12 = 0.0;
  double theta13 = 0.0;
  double theta23 = 0.0;
  int pi_rotation_mode = 2;
  std::vector<std::string> ordering{"B12", "B23", "B13", "R2"};
};

/// Angles satisfy cos(theta23) = sqrt((1+g^2)/2),
/// cos(theta13) = sqrt(2 g^2/(1+g^2)), cos(theta12) = sqrt(g^2/(1+g^2)).
Su2Plan decompose(double gamma);

/// 3x3 identity with the [[cos, sin], [-sin, cos]] block on modes (j, k),
/// 1-based. Throws domain_error if j == k or out of range.
Eigen::Matrix3cd su2_block(double theta, int j, int k);

/// Multiplies the plan's stages back together; equals
/// build_mixing_matrix(gamma).entries for a plan from decompose(gamma).
Eigen::Matrix3cd compose_plan(const Su2Plan& plan);

/// Largest entry of |M M^dag - I|.
double unitarity_deviation(const Eigen::Matrix3cd& m);

/// {"gamma": g, "kappa": k, "entries": [[re, im] x 9 row-major]}
std::string to_json(const MixingMatrix& m);

}  // namespace zgamma::network
