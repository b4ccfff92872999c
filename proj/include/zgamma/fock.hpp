// Copyright 2026 zgamma contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <string>
#include <vector>

#include "zgamma/grid.hpp"
#include "zgamma/measurement.hpp"

// Brute-force verification in a truncated three-mode Fock space. Everything
// here is an oracle: built from first principles (ladder matrices, matrix
// exponentials, Hermite functions) and independent of the FFT route in
// zgamma::measurement.

namespace zgamma::fock {

using Complex = std::complex<double>;
using SparseOp = Eigen::SparseMatrix<Complex>;
using DenseOp = Eigen::MatrixXcd;

/// Fock cutoff (n <= n_max per mode) plus the margin inside which truncated
/// operator identities are not trusted.
struct TruncationSpec {
  int n_max = 12;
  int buffer = 3;

  int dim() const { return n_max + 1; }
  void validate() const;  // buffer >= 2, n_max >= 4 * buffer
};

// Basis convention: |n1, n2, n3> flattens to (n1 * d + n2) * d + n3.

/// Truncated annihilation operator for one of the three modes (1-based).
SparseOp mode_annihilator(int mode, int dim);

/// <k|D(alpha)|n> on a dim-dimensional single mode, closed form (associated
/// Laguerre). Exact per entry; no truncated-exponential error.
DenseOp displacement_matrix(Complex alpha, int dim);

/// Harmonic-oscillator position eigenfunctions psi_n(x), n < dim, under the
/// [q,p] = i convention. Row n holds psi_n over xs.
Eigen::MatrixXd hermite_functions(const std::vector<double>& xs, int dim);

struct FockUnitary {
  SparseOp matrix;
  double heisenberg_deviation = 0.0;  // vs. the mixing matrix, safe subspace
  double unitarity_deviation = 0.0;   // max |U^dag U - I|
};

/// Product of the decomposition's stage exponentials (two-mode rotations with
/// the real cos/sin mixing action, then the pi rotation exp(i pi N2)).
///
/// Safe subspace for the Heisenberg check: matrix elements between basis
/// states of total excitation n1+n2+n3 <= n_max - buffer. Two-mode rotations
/// conserve pair excitation, so the truncated stages are exact on every
/// complete sector; total-excitation states never leave those sectors. (A
/// per-index restriction is NOT enough: a rotation acting on |9,9> at
/// n_max = 12 leaks outside the cutoff and its elements are wrong at O(1).)
///
/// Throws truncation_error if the deviation exceeds `heisenberg_tol`.
FockUnitary build_unitary(double gamma, const TruncationSpec& trunc,
                          double heisenberg_tol = 1e-8);

/// T = a1 + gamma a2^dag + kappa a3^dag on the truncated space.
SparseOp operator_T(double gamma, const TruncationSpec& trunc);

/// max |[T, T^dag]| over per-index safe elements (all mode indices of row and
/// column states <= n_max - buffer).
double normality_deviation(double gamma, const TruncationSpec& trunc);

struct RelativeNumberReport {
  double gamma = 0.0;
  double comm_tn_deviation = 0.0;     // ||[T, N] - T|| on safe elements
  double normality = 0.0;             // ||[T, T^dag]|| on safe elements
  bool polar_computed = false;
  int polar_rank = 0;
  double polar_isometry_deviation = 0.0;  // ||V^dag V - P_range||
  double polar_comm_deviation = 0.0;      // ||V N - N V - V|| on safe elements
  std::string notice;
};

/// Commutator checks for N = N1 - N2 - N3 and, optionally, the polar
/// decomposition T = V |T| (dense eigensolve; keep n_max modest).
RelativeNumberReport relative_number_checks(double gamma, const TruncationSpec& trunc,
                                            bool with_polar = true);

/// Evolves rho1 x rho2 x sigma through the network unitary and reads the
/// joint (position of mode 1, momentum of mode 2) density from oscillator
/// eigenfunctions. Momentum phase convention: <p|n> = (-i)^n psi_n(p), frozen
/// by the requirement that the all-vacuum density is isotropic.
/// Inputs must be representable below the cutoff (tail mass < 1e-6), else
/// domain_error naming the offending mode.
OutcomeGrid joint_density_oracle(const measurement::Preparation& prep, double gamma,
                                 const GridSpec& grid, const TruncationSpec& trunc);

/// Quadrature options for the identity-resolution defect integral.
struct DefectQuadrature {
  int radial_panels = 8;
  int radial_nodes = 16;  // Gauss-Legendre nodes per panel, in s = r^2
  int angular_nodes = 40;
  double radius = 0.0;    // 0 = choose from n_max
};

/// Integrates (d^2z/pi) |z>><<z| over a disk, |z>> = D1(z)|gamma>> with
/// |gamma>> = sqrt(1-g^2) sum g^n |n,n>. The exact value of the integral is
/// (1-g^2) I (x) g^(2 N2); the defect from the identity is what the integral
/// fails to supply. Returns the two-mode matrix, flat index n1 * d + n2.
DenseOp identity_defect(double gamma, int n_max, const DefectQuadrature& quad = {});

/// max |identity_defect - (1-g^2) I (x) g^(2 N2)|.
double identity_defect_deviation(double gamma, int n_max,
                                 const DefectQuadrature& quad = {});

/// One named check outcome, serializable per the verify report format.
struct CheckResult {
  std::string name;
  double gamma = 0.0;
  int n_max = 0;
  int buffer = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

std::string checks_to_json(const std::vector<CheckResult>& checks);

}  // namespace zgamma::fock
