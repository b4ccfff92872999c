// Copyright 2026 zgamma contributors
// SPDX-License-Identifier: Apache-2.0

#include "zgamma/heterodyne.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <nlohmann/json.hpp>
#include <numbers>

#include "zgamma/errors.hpp"

namespace zgamma::heterodyne {

using measurement::Moments;
using Complex = std::complex<double>;

void HeterodyneSpec::validate() const {
  if (!(omega_signal > 0.0)) {
    throw domain_error("HeterodyneSpec: omega_signal must be positive");
  }
  if (!(omega_intermediate >= 0.0) || omega_intermediate >= omega_signal) {
    throw domain_error("HeterodyneSpec: need 0 <= omega_intermediate < omega_signal");
  }
}

double caves_gamma(const HeterodyneSpec& spec) {
  spec.validate();
  if (spec.omega_intermediate == 0.0) return 1.0;
  return std::sqrt((spec.omega_signal - spec.omega_intermediate) /
                   (spec.omega_signal + spec.omega_intermediate));
}

NoiseBudget noise_budget(const HeterodyneSpec& spec,
                         const measurement::Preparation& prep) {
  NoiseBudget b;
  b.gamma_c = caves_gamma(spec);
  b.commutator_scale = 2.0 * spec.omega_intermediate / spec.omega_signal;
  b.caves = measurement::predicted_moments(prep, b.gamma_c);
  b.standard = measurement::predicted_moments(prep, 1.0);
  auto s3 = states::quad_stats(prep.sigma);
  double half_k2 = 0.5 * (1.0 - b.gamma_c * b.gamma_c);
  b.added_noise_q = half_k2 * s3.var_q;
  b.added_noise_p = half_k2 * s3.var_p;
  b.delta_vs_standard_q = b.caves.var_q1 - b.standard.var_q1;
  b.delta_vs_standard_p = b.caves.var_p2 - b.standard.var_p2;
  auto close = [](double a, double c) { return std::abs(a - c) <= 1e-12; };
  b.matches_standard = close(b.caves.mean_q1, b.standard.mean_q1) &&
                       close(b.caves.mean_p2, b.standard.mean_p2) &&
                       close(b.caves.var_q1, b.standard.var_q1) &&
                       close(b.caves.var_p2, b.standard.var_p2) &&
                       close(b.caves.cov_q1p2, b.standard.cov_q1p2);
  return b;
}

namespace {

double bilinear(const OutcomeGrid& grid, double x, double y) {
  const auto& s = grid.spec;
  double fx = (x - s.x(0)) / s.dx();
  double fy = (y - s.y(0)) / s.dy();
  int i = std::clamp(static_cast<int>(std::floor(fx)), 0, s.nx - 2);
  int j = std::clamp(static_cast<int>(std::floor(fy)), 0, s.ny - 2);
  double tx = std::clamp(fx - i, 0.0, 1.0);
  double ty = std::clamp(fy - j, 0.0, 1.0);
  return grid.value(i, j) * (1 - tx) * (1 - ty) + grid.value(i + 1, j) * tx * (1 - ty) +
         grid.value(i, j + 1) * (1 - tx) * ty + grid.value(i + 1, j + 1) * tx * ty;
}

/// Parameter range where the ray r*(cx, cy), r >= 0, stays inside the node
/// hull of the grid. Returns (lo, hi); empty when hi <= lo.
std::pair<double, double> ray_clip(const GridSpec& s, double cx, double cy) {
  double lo = 0.0, hi = std::numeric_limits<double>::infinity();
  auto clip = [&](double dir, double bmin, double bmax) {
    if (std::abs(dir) < 1e-300) {
      if (0.0 < bmin || 0.0 > bmax) hi = -1.0;  // parallel and outside
      return;
    }
    double t0 = bmin / dir, t1 = bmax / dir;
    if (t0 > t1) std::swap(t0, t1);
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
  };
  clip(cx, s.x(0), s.x(s.nx - 1));
  clip(cy, s.y(0), s.y(s.ny - 1));
  return {lo, hi};
}

}  // namespace

PhaseReport feasible_phase(const OutcomeGrid& grid, int n_bins) {
  if (n_bins < 1) throw domain_error("feasible_phase: need at least one bin");
  double mass = grid.mass();
  if (std::abs(mass - 1.0) > 1e-3) {
    throw coverage_error("feasible_phase: grid mass " + std::to_string(mass) +
                             " outside tolerance",
                         grid.spec.x_min, grid.spec.x_max, grid.spec.y_min,
                         grid.spec.y_max);
  }
  PhaseReport rep;
  rep.theta.resize(n_bins);
  rep.prob.resize(n_bins);
  double dr = 0.5 * std::min(grid.spec.dx(), grid.spec.dy());
  double total = 0.0;
  for (int b = 0; b < n_bins; ++b) {
    double th = 2.0 * std::numbers::pi * (b + 0.5) / n_bins;
    rep.theta[b] = th;
    double cx = std::cos(th), cy = std::sin(th);
    auto [lo, hi] = ray_clip(grid.spec, cx, cy);
    double acc = 0.0;
    if (hi > lo) {
      int steps = std::max(2, static_cast<int>(std::ceil((hi - lo) / dr)));
      double h = (hi - lo) / steps;
      for (int t = 0; t <= steps; ++t) {
        double r = lo + t * h;
        double w = (t == 0 || t == steps) ? 0.5 : 1.0;
        acc += w * r * bilinear(grid, r * cx, r * cy);
      }
      acc *= h;
    }
    rep.prob[b] = acc;
    total += acc;
  }
  if (total <= 0.0) throw domain_error("feasible_phase: density vanishes on every ray");
  Complex first(0.0, 0.0);
  for (int b = 0; b < n_bins; ++b) {
    rep.prob[b] /= total;
    first += rep.prob[b] * std::polar(1.0, rep.theta[b]);
  }
  rep.circular_mean = std::arg(first);
  rep.circular_variance = 1.0 - std::abs(first);
  return rep;
}

PhaseReport feasible_phase(const measurement::Preparation& prep, double gamma,
                           const GridSpec& grid, int n_bins) {
  return feasible_phase(measurement::outcome_density(prep, gamma, grid), n_bins);
}

std::string phase_to_csv(const PhaseReport& rep) {
  std::string out = "theta,prob\n";
  char buf[96];
  for (size_t b = 0; b < rep.theta.size(); ++b) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", rep.theta[b], rep.prob[b]);
    out += buf;
  }
  return out;
}

std::string phase_to_json(const PhaseReport& rep) {
  nlohmann::json j;
  j["bins"] = rep.theta.size();
  j["circular_mean"] = rep.circular_mean;
  j["circular_variance"] = rep.circular_variance;
  return j.dump(2);
}

std::string budget_to_json(const NoiseBudget& b) {
  auto mom = [](const Moments& m) {
    return nlohmann::json{{"mean_Q1", m.mean_q1},
                          {"mean_P2", m.mean_p2},
                          {"var_Q1", m.var_q1},
                          {"var_P2", m.var_p2},
                          {"cov_Q1P2", m.cov_q1p2}};
  };
  nlohmann::json j;
  j["gamma_c"] = b.gamma_c;
  j["commutator_scale"] = b.commutator_scale;
  j["caves"] = mom(b.caves);
  j["standard"] = mom(b.standard);
  j["added_noise_q"] = b.added_noise_q;
  j["added_noise_p"] = b.added_noise_p;
  j["delta_vs_standard_q"] = b.delta_vs_standard_q;
  j["delta_vs_standard_p"] = b.delta_vs_standard_p;
  j["matches_standard"] = b.matches_standard;
  return j.dump(2);
}

}  // namespace zgamma::heterodyne
