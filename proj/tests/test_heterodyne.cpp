// Copyright 2026 zgamma contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "zgamma/errors.hpp"
#include "zgamma/heterodyne.hpp"

using namespace zgamma;
using namespace zgamma::heterodyne;
using measurement::Preparation;
using states::Coherent;
using states::parse_prep;
using states::Vacuum;
using Complex = std::complex<double>;

TEST_CASE("caves gamma values") {
  CHECK(caves_gamma({11.0, 0.0}) == 1.0);
  CHECK(std::abs(caves_gamma({11.0, 1.0}) - std::sqrt(5.0 / 6.0)) < 1e-12);
  CHECK(caves_gamma({1.0, 0.999}) < 0.03);
  CHECK_THROWS_AS(caves_gamma({1.0, 1.0}), domain_error);
  CHECK_THROWS_AS(caves_gamma({1.0, 2.0}), domain_error);
  CHECK_THROWS_AS(caves_gamma({0.0, 0.0}), domain_error);
  CHECK_THROWS_AS(caves_gamma({1.0, -0.1}), domain_error);
}

TEST_CASE("caves gamma is decreasing in omega_I and scale invariant") {
  double prev = 1.0;
  for (double wi = 0.1; wi < 10.0; wi += 0.3) {
    double g = caves_gamma({10.0, wi});
    CHECK(g < prev);
    prev = g;
    CHECK(std::abs(caves_gamma({30.0, 3.0 * wi}) - g) < 1e-14);
  }
}

TEST_CASE("vacuum ancillas: no added noise vs standard heterodyne") {
  Preparation prep{parse_prep("thermal:0.5"), Vacuum{}, Vacuum{}};
  auto b = noise_budget({11.0, 1.0}, prep);
  CHECK(b.matches_standard);
  CHECK(std::abs(b.delta_vs_standard_q) < 1e-14);
  CHECK(std::abs(b.delta_vs_standard_p) < 1e-14);
  CHECK(b.commutator_scale == doctest::Approx(2.0 / 11.0));
}

TEST_CASE("thermal ancilla adds noise at gamma_C < 1") {
  Preparation prep{Vacuum{}, Vacuum{}, parse_prep("thermal:0.5")};
  auto b = noise_budget({11.0, 1.0}, prep);
  CHECK_FALSE(b.matches_standard);
  double half_k2 = 0.5 * (1.0 - b.gamma_c * b.gamma_c);
  double var_q3 = states::quad_stats(prep.sigma).var_q;
  CHECK(std::abs(b.added_noise_q - half_k2 * var_q3) < 1e-15);
  CHECK(b.caves.var_q1 > b.standard.var_q1);
  // vs standard, only the sigma term survives: (1-gc^2)/2 (var_q3 - 1/2)
  CHECK(std::abs(b.delta_vs_standard_q - half_k2 * (var_q3 - 0.5)) < 1e-12);
}

TEST_CASE("small frequency offset scales the sigma term by 1 - gamma_c^2") {
  Preparation prep{Vacuum{}, Vacuum{}, parse_prep("thermal:0.5")};
  auto b = noise_budget({1000.0, 1.0}, prep);
  double one_minus = 1.0 - b.gamma_c * b.gamma_c;
  CHECK(one_minus == doctest::Approx(2e-3).epsilon(1e-3));
  double var_q3 = states::quad_stats(prep.sigma).var_q;
  CHECK(std::abs(b.delta_vs_standard_q - 0.5 * one_minus * (var_q3 - 0.5)) < 1e-15);
}

TEST_CASE("omega_I = 0 budgets are identical branch by branch") {
  Preparation prep{Coherent{{0.5, 0.1}}, Vacuum{}, parse_prep("thermal:0.3")};
  auto b = noise_budget({7.0, 0.0}, prep);
  CHECK(b.gamma_c == 1.0);
  CHECK(b.matches_standard);
  CHECK(b.commutator_scale == 0.0);
}

TEST_CASE("feasible phase of rotationally symmetric preps is uniform") {
  std::vector<states::StatePrep> signals = {Vacuum{}, parse_prep("thermal:0.5"),
                                            parse_prep("number:1")};
  for (const auto& signal : signals) {
    Preparation prep{signal, Vacuum{}, Vacuum{}};
    auto grid = measurement::auto_grid(prep, 0.6, 256);
    auto rep = feasible_phase(prep, 0.6, grid, 360);
    double total = 0.0, dev = 0.0;
    for (double p : rep.prob) {
      total += p;
      dev = std::max(dev, std::abs(p - 1.0 / 360.0));
    }
    CHECK(std::abs(total - 1.0) < 1e-9);
    CHECK(dev < 1e-6);
    CHECK(rep.circular_variance > 0.999);
  }
}

TEST_CASE("feasible phase tracks a coherent signal's argument") {
  double phi = 0.7;
  Preparation prep{Coherent{std::polar(3.0, phi)}, Vacuum{}, Vacuum{}};
  auto grid = measurement::auto_grid(prep, 0.8, 256);
  auto rep = feasible_phase(prep, 0.8, grid, 720);
  CHECK(std::abs(rep.circular_mean - phi) < 1e-3);
}

TEST_CASE("phase distribution narrows with amplitude") {
  double prev = 1.0;
  for (double amp : {1.0, 2.0, 4.0}) {
    Preparation prep{Coherent{{amp, 0.0}}, Vacuum{}, Vacuum{}};
    auto grid = measurement::auto_grid(prep, 0.6, 256);
    auto rep = feasible_phase(prep, 0.6, grid, 360);
    CHECK(rep.circular_variance < prev);
    prev = rep.circular_variance;
  }
}

TEST_CASE("phase csv serialization") {
  Preparation prep{Vacuum{}, Vacuum{}, Vacuum{}};
  auto grid = measurement::auto_grid(prep, 0.6, 64);
  auto rep = feasible_phase(prep, 0.6, grid, 8);
  auto csv = phase_to_csv(rep);
  CHECK(csv.rfind("theta,prob\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
}
