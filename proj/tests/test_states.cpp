// Copyright 2026 zgamma contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "zgamma/errors.hpp"
#include "zgamma/states.hpp"

using namespace zgamma;
using namespace zgamma::states;
using Complex = std::complex<double>;

namespace {

const std::vector<StatePrep> catalog() {
  return {
      Vacuum{},
      Coherent{{1.0, 0.0}},
      Coherent{{-0.4, 1.2}},
      std::get<NumberDiagonal>(make_weights({WeightRecipe::Kind::Number, 1, {}, 0, 1})),
      std::get<NumberDiagonal>(make_weights({WeightRecipe::Kind::Number, 2, {}, 0, 2})),
      std::get<NumberDiagonal>(
          make_weights({WeightRecipe::Kind::Thermal, 0, {0.6, 0.0}, 0, 128})),
      std::get<NumberDiagonal>(
          make_weights({WeightRecipe::Kind::PoissonDiagonal, 0, {}, 1.0, 64})),
      GaussianSingleMode{0.3, -0.2, 0.8, 0.4, 0.1},
  };
}

}  // namespace

TEST_CASE("char_fn normalization at the origin") {
  for (const auto& prep : catalog()) {
    CHECK(std::abs(char_fn(prep, 0.0) - 1.0) < 1e-14);
  }
}

TEST_CASE("number(1) characteristic function vanishes at |lambda| = 1") {
  StatePrep one = NumberDiagonal{{0.0, 1.0}};
  // L_1(1) = 0
  CHECK(std::abs(char_fn(one, Complex(1.0, 0.0))) < 1e-15);
  CHECK(std::abs(char_fn(one, std::polar(1.0, 0.7))) < 1e-15);
}

TEST_CASE("thermal Laguerre sum equals the Gaussian closed form") {
  for (double z : {0.1, 0.3, 0.6, 0.8, 0.9}) {
    auto prep = make_weights({WeightRecipe::Kind::Thermal, 0, {z, 0.0}, 0, 2048});
    double nbar = z * z / (1.0 - z * z);
    for (double r = 0.0; r <= 5.0; r += 0.25) {
      for (double phi : {0.0, 0.9, 2.2}) {
        Complex lam = std::polar(r, phi);
        Complex got = char_fn(prep, lam);
        double expected = std::exp(-0.5 * (2.0 * nbar + 1.0) * std::norm(lam));
        CHECK(std::abs(got - expected) < 1e-10);
      }
    }
  }
}

TEST_CASE("laguerre_weighted_sum fixed values") {
  std::vector<double> vac{1.0};
  CHECK(laguerre_weighted_sum(vac, 3.7) == 1.0);
  std::vector<double> one{0.0, 1.0};
  CHECK(laguerre_weighted_sum(one, 2.0) == doctest::Approx(-1.0).epsilon(1e-15));
  std::vector<double> uniform{0.25, 0.25, 0.25, 0.25};
  CHECK(laguerre_weighted_sum(uniform, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("make_weights recipes") {
  auto vac = make_weights({WeightRecipe::Kind::Thermal, 0, {0.0, 0.0}, 0, 16});
  const auto& vw = std::get<NumberDiagonal>(vac).weights;
  CHECK(vw.size() == 1);
  CHECK(vw[0] == 1.0);

  auto pois = make_weights({WeightRecipe::Kind::PoissonDiagonal, 0, {}, 1.0, 64});
  const auto& pw = std::get<NumberDiagonal>(pois).weights;
  CHECK(pw[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(pw[1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(pw[2] == doctest::Approx(std::exp(-1.0) / 2).epsilon(1e-12));

  auto phase = make_weights({WeightRecipe::Kind::PhaseDiagonal, 0, {0.5, 0.0}, 0, 64});
  const auto& fw = std::get<NumberDiagonal>(phase).weights;
  CHECK(fw[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(fw[1] == doctest::Approx(0.75 * 0.25).epsilon(1e-12));
  CHECK(fw[3] == doctest::Approx(0.75 * 0.25 * 0.25 * 0.25).epsilon(1e-12));
}

TEST_CASE("make_weights domain and truncation errors") {
  CHECK_THROWS_AS(make_weights({WeightRecipe::Kind::PhaseDiagonal, 0, {1.0, 0.0}, 0, 64}),
                  domain_error);
  CHECK_THROWS_AS(make_weights({WeightRecipe::Kind::Thermal, 0, {-0.2, 0.0}, 0, 64}),
                  domain_error);
  CHECK_THROWS_AS(make_weights({WeightRecipe::Kind::PoissonDiagonal, 0, {}, -1.0, 64}),
                  domain_error);
  // z = 0.9 needs ~ 131 terms for the 1e-12 tail
  CHECK_THROWS_AS(make_weights({WeightRecipe::Kind::Thermal, 0, {0.9, 0.0}, 0, 3}),
                  truncation_error);
}

TEST_CASE("quad_stats catalog values") {
  auto vac = quad_stats(Vacuum{});
  CHECK(vac.mean_q == 0.0);
  CHECK(vac.var_q == 0.5);
  CHECK(vac.var_p == 0.5);
  CHECK(vac.cov_qp == 0.0);

  auto coh = quad_stats(Coherent{{1.0, 0.0}});
  CHECK(coh.mean_q == doctest::Approx(std::numbers::sqrt2).epsilon(1e-15));
  CHECK(coh.mean_p == 0.0);
  CHECK(coh.var_q == 0.5);

  auto one = quad_stats(NumberDiagonal{{0.0, 1.0}});
  CHECK(one.var_q == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(one.var_p == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("quad_stats matches finite differences of char_fn") {
  const double h = 1e-4;
  for (const auto& prep : catalog()) {
    auto s = quad_stats(prep);
    auto chi = [&](double u, double v) { return char_fn(prep, Complex(u, v)); };
    double mean_q =
        ((chi(0, h) - chi(0, -h)) / (2 * h)).imag() / std::numbers::sqrt2;
    double mean_p =
        -((chi(h, 0) - chi(-h, 0)) / (2 * h)).imag() / std::numbers::sqrt2;
    double q2 = -((chi(0, h) - 2.0 + chi(0, -h)) / (h * h)).real() / 2.0;
    double p2 = -((chi(h, 0) - 2.0 + chi(-h, 0)) / (h * h)).real() / 2.0;
    double mixed =
        ((chi(h, h) - chi(h, -h) - chi(-h, h) + chi(-h, -h)) / (4 * h * h)).real();
    double cov = mixed / 2.0 - mean_q * mean_p;
    CHECK(std::abs(mean_q - s.mean_q) < 1e-6);
    CHECK(std::abs(mean_p - s.mean_p) < 1e-6);
    CHECK(std::abs(q2 - mean_q * mean_q - s.var_q) < 1e-6);
    CHECK(std::abs(p2 - mean_p * mean_p - s.var_p) < 1e-6);
    CHECK(std::abs(cov - s.cov_qp) < 1e-6);
  }
}

TEST_CASE("hermiticity and boundedness of char_fn") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-4.0, 4.0);
  for (const auto& prep : catalog()) {
    for (int i = 0; i < 50; ++i) {
      Complex lam(coord(rng), coord(rng));
      Complex a = char_fn(prep, lam);
      Complex b = char_fn(prep, -lam);
      CHECK(std::abs(a - std::conj(b)) < 1e-12);
      CHECK(std::abs(a) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("wigner fixed values") {
  CHECK(wigner(Vacuum{}, 0.0) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-14));
  StatePrep one = NumberDiagonal{{0.0, 1.0}};
  CHECK(wigner(one, 0.0) == doctest::Approx(-2.0 / std::numbers::pi).epsilon(1e-14));
  // coherent state: displaced vacuum
  Complex alpha(0.7, -0.3);
  CHECK(wigner(Coherent{alpha}, alpha) ==
        doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("wigner integrates to one") {
  const int n = 160;
  const double span = 14.0, dz = span / n;
  for (const auto& prep : catalog()) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Complex z(-span / 2 + (i + 0.5) * dz, -span / 2 + (j + 0.5) * dz);
        total += wigner(prep, z);
      }
    }
    total *= dz * dz;
    CHECK(std::abs(total - 1.0) < 1e-6);
  }
}

TEST_CASE("wigner is the Fourier pair of char_fn") {
  // W(z) = (1/pi^2) int d2l exp(l* z - l z*) chi(l), midpoint rule
  const int n = 96;
  const double span = 14.0, dl = span / n;
  std::vector<StatePrep> preps = {Vacuum{}, Coherent{{0.7, 0.2}},
                                  NumberDiagonal{{0.0, 1.0}}};
  for (const auto& prep : preps) {
    for (Complex z : {Complex(0.0, 0.0), Complex(0.5, 0.3), Complex(-0.8, 0.1)}) {
      Complex acc(0.0, 0.0);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          Complex lam(-span / 2 + (i + 0.5) * dl, -span / 2 + (j + 0.5) * dl);
          Complex kernel = std::exp(std::conj(lam) * z - lam * std::conj(z));
          acc += kernel * char_fn(prep, lam);
        }
      }
      acc *= dl * dl / (std::numbers::pi * std::numbers::pi);
      CHECK(std::abs(acc.imag()) < 1e-9);
      CHECK(std::abs(acc.real() - wigner(prep, z)) < 1e-6);
    }
  }
}

TEST_CASE("validate rejects broken preps") {
  CHECK_THROWS_AS(validate(StatePrep(NumberDiagonal{{0.5, 0.4}})), domain_error);
  CHECK_THROWS_AS(validate(StatePrep(NumberDiagonal{{0.5, -0.1, 0.6}})), domain_error);
  CHECK_THROWS_AS(validate(StatePrep(GaussianSingleMode{0, 0, 0.1, 0.1, 0.0})),
                  domain_error);  // below the uncertainty bound
  CHECK_THROWS_AS(validate(StatePrep(GaussianSingleMode{0, 0, 1.0, 1.0, 1.5})),
                  domain_error);  // not positive-definite
  CHECK_NOTHROW(validate(StatePrep(GaussianSingleMode{0, 0, 0.5, 0.5, 0.0})));
}

TEST_CASE("parse_prep round trips the mini-language") {
  CHECK(std::holds_alternative<Vacuum>(parse_prep("vacuum")));
  auto coh = std::get<Coherent>(parse_prep("coherent:1,0.5"));
  CHECK(coh.alpha == Complex(1.0, 0.5));
  auto real_coh = std::get<Coherent>(parse_prep("coherent:2"));
  CHECK(real_coh.alpha == Complex(2.0, 0.0));
  auto num = std::get<NumberDiagonal>(parse_prep("number:3"));
  CHECK(num.weights.size() == 4);
  CHECK(num.weights[3] == 1.0);
  auto th = std::get<NumberDiagonal>(parse_prep("thermal:0.5"));
  CHECK(th.weights[0] == doctest::Approx(0.75).epsilon(1e-9));
  auto wl = std::get<NumberDiagonal>(parse_prep("weights:0.5,0.25,0.25"));
  CHECK(wl.weights.size() == 3);

  CHECK_THROWS_AS(parse_prep("squeezed:0.5"), domain_error);
  CHECK_THROWS_AS(parse_prep("coherent:abc"), domain_error);
  CHECK_THROWS_AS(parse_prep("number:-2"), domain_error);
  CHECK_THROWS_AS(parse_prep("thermal:1.0"), domain_error);
  CHECK_THROWS_AS(parse_prep("weights:0.5,0.1"), domain_error);
}
