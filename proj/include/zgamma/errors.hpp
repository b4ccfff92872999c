// Copyright 2026 zgamma contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace zgamma {

/// Invalid parameter or configuration (CLI exit code 2).
class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// gamma = 0: Z degenerates to a single-mode operator and the joint
/// measurement collapses to plain homodyne.
class degenerate_gamma_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Output grid does not cover the predicted outcome distribution.
/// Carries suggested bounds (mean +/- 6 sigma per coordinate).
class coverage_error : public std::runtime_error {
 public:
  coverage_error(const std::string& what, double sx_min, double sx_max,
                 double sy_min, double sy_max)
      : std::runtime_error(what),
        suggested_x_min(sx_min),
        suggested_x_max(sx_max),
        suggested_y_min(sy_min),
        suggested_y_max(sy_max) {}
  double suggested_x_min, suggested_x_max, suggested_y_min, suggested_y_max;
};

/// Fock cutoff too small for the requested state or accuracy.
class truncation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical check failed its stated tolerance (CLI exit code 3).
class tolerance_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zgamma
