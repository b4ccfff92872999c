// Copyright 2026 zgamma contributors
// SPDX-License-Identifier: Apache-2.0

#include "zgamma/network.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

#include "zgamma/errors.hpp"

namespace zgamma::network {

Complex GammaParam::reconstruct() const {
  double mag = swapped ? scale : reduced;
  return std::polar(mag, phase);
}

GammaParam reduce_gamma(Complex gamma) {
  if (!std::isfinite(gamma.real()) || !std::isfinite(gamma.imag())) {
    throw domain_error("reduce_gamma: gamma must be finite");
  }
  double mag = std::abs(gamma);
  if (mag == 0.0) {
    throw degenerate_gamma_error(
        "reduce_gamma: gamma = 0 degenerates to single-mode homodyne");
  }
  GammaParam out;
  out.raw = gamma;
  out.phase = std::arg(gamma);
  if (mag <= 1.0) {
    out.reduced = mag;
    out.swapped = false;
    out.scale = 1.0;
  } else {
    out.reduced = 1.0 / mag;
    out.swapped = true;
    out.scale = mag;
  }
  return out;
}

namespace {

void require_canonical(double gamma, const char* who) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw domain_error(std::string(who) + ": gamma must lie in (0, 1]; reduce first");
  }
}

}  // namespace

MixingMatrix build_mixing_matrix(double gamma) {
  require_canonical(gamma, "build_mixing_matrix");
  double k = std::sqrt(1.0 - gamma * gamma);
  double r = 1.0 / std::sqrt(2.0);
  MixingMatrix m;
  m.gamma = gamma;
  m.kappa = k;
  m.entries << r, gamma * r, k * r,
               r, -gamma * r, -k * r,
               0.0, -k, gamma;
  return m;
}

Su2Plan decompose(double gamma) {
  require_canonical(gamma, "decompose");
  double g2 = gamma * gamma;
  Su2Plan plan;
  plan.theta23 = std::acos(std::sqrt((1.0 + g2) / 2.0));
  plan.theta13 = std::acos(std::sqrt(2.0 * g2 / (1.0 + g2)));
  plan.theta12 = std::acos(std::sqrt(g2 / (1.0 + g2)));
  return plan;
}

Eigen::Matrix3cd su2_block(double theta, int j, int k) {
  if (j < 1 || j > 3 || k < 1 || k > 3) {
    throw domain_error("su2_block: mode indices must be in {1,2,3}");
  }
  if (j == k) {
    throw domain_error("su2_block: modes must differ");
  }
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Identity();
  double c = std::cos(theta), s = std::sin(theta);
  m(j - 1, j - 1) = c;
  m(j - 1, k - 1) = s;
  m(k - 1, j - 1) = -s;
  m(k - 1, k - 1) = c;
  return m;
}

Eigen::Matrix3cd compose_plan(const Su2Plan& plan) {
  Eigen::Matrix3cd pi_rot = Eigen::Matrix3cd::Identity();
  pi_rot(plan.pi_rotation_mode - 1, plan.pi_rotation_mode - 1) = -1.0;
  // Stages act on the input in `ordering` order; the matrix product runs
  // right to left.
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Identity();
  for (const auto& stage : plan.ordering) {
    Eigen::Matrix3cd s;
    if (stage == "B12") s = su2_block(plan.theta12, 1, 2);
    else if (stage == "B13") s = su2_block(plan.theta13, 1, 3);
    else if (stage == "B23") s = su2_block(plan.theta23, 2, 3);
    else if (stage == "R2") s = pi_rot;
    else throw domain_error("compose_plan: unknown stage label " + stage);
    m = s * m;
  }
  return m;
}

double unitarity_deviation(const Eigen::Matrix3cd& m) {
  return (m * m.adjoint() - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff();
}

std::string to_json(const MixingMatrix& m) {
  nlohmann::json j;
  j["gamma"] = m.gamma;
  j["kappa"] = m.kappa;
  auto entries = nlohmann::json::array();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      entries.push_back({m.entries(r, c).real(), m.entries(r, c).imag()});
    }
  }
  j["entries"] = entries;
  return j.dump(2);
}

}  // namespace zgamma::network
