// Copyright 2026 zgamma contributors
// SPDX-License-Identifier: Apache-2.0

#include "zgamma/states.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "zgamma/errors.hpp"

namespace zgamma::states {

namespace {

constexpr double kWeightTol = 1e-12;
constexpr double kTailBound = 1e-12;

double sum_weights(const std::vector<double>& w) {
  return std::accumulate(w.begin(), w.end(), 0.0);
}

}  // namespace

void validate(const StatePrep& prep) {
  if (const auto* nd = std::get_if<NumberDiagonal>(&prep)) {
    if (nd->weights.empty()) throw domain_error("NumberDiagonal: empty weights");
    for (double p : nd->weights) {
      if (!(p >= 0.0)) throw domain_error("NumberDiagonal: negative weight");
    }
    if (std::abs(sum_weights(nd->weights) - 1.0) > kWeightTol) {
      throw domain_error("NumberDiagonal: weights must sum to 1 within 1e-12");
    }
  } else if (const auto* g = std::get_if<GaussianSingleMode>(&prep)) {
    double det = g->var_q * g->var_p - g->cov_qp * g->cov_qp;
    if (!(g->var_q > 0.0 && g->var_p > 0.0 && det > 0.0)) {
      throw domain_error("Gaussian: covariance matrix must be positive-definite");
    }
    if (det < 0.25 - 1e-12) {
      throw domain_error("Gaussian: var_q var_p - cov^2 >= 1/4 violated");
    }
  } else if (const auto* c = std::get_if<Coherent>(&prep)) {
    if (!std::isfinite(c->alpha.real()) || !std::isfinite(c->alpha.imag())) {
      throw domain_error("Coherent: alpha must be finite");
    }
  }
}

double laguerre_weighted_sum(std::span<const double> weights, double x) {
  if (weights.empty()) return 0.0;
  double acc = weights[0];  // L_0 = 1
  if (weights.size() == 1) return acc;
  double lm1 = 1.0;      // L_0
  double lm = 1.0 - x;   // L_1
  acc += weights[1] * lm;
  for (size_t m = 1; m + 1 < weights.size(); ++m) {
    double next = ((2.0 * m + 1.0 - x) * lm - m * lm1) / (m + 1.0);
    lm1 = lm;
    lm = next;
    acc += weights[m + 1] * lm;
  }
  return acc;
}

StatePrep make_weights(const WeightRecipe& recipe) {
  if (recipe.cutoff < 0) throw domain_error("make_weights: negative cutoff");
  std::vector<double> w;
  double tail = 0.0;
  switch (recipe.kind) {
    case WeightRecipe::Kind::Number: {
      if (recipe.number < 0) throw domain_error("make_weights: negative number");
      if (recipe.number > recipe.cutoff) {
        throw truncation_error("make_weights: cutoff below the number state");
      }
      w.assign(recipe.number + 1, 0.0);
      w[recipe.number] = 1.0;
      tail = 0.0;
      break;
    }
    case WeightRecipe::Kind::Thermal: {
      if (recipe.z.imag() != 0.0 || recipe.z.real() < 0.0) {
        throw domain_error("make_weights: thermal z must be real in [0, 1)");
      }
      [[fallthrough]];
    }
    case WeightRecipe::Kind::PhaseDiagonal: {
      double s = std::norm(recipe.z);  // |z|^2
      if (s >= 1.0) throw domain_error("make_weights: |z| must be < 1");
      if (s == 0.0) {
        w = {1.0};
        break;
      }
      w.resize(recipe.cutoff + 1);
      double p = 1.0 - s;
      for (int m = 0; m <= recipe.cutoff; ++m) {
        w[m] = p;
        p *= s;
      }
      tail = std::pow(s, recipe.cutoff + 1);  // geometric remainder
      break;
    }
    case WeightRecipe::Kind::PoissonDiagonal: {
      if (recipe.alpha_sq < 0.0) throw domain_error("make_weights: alpha_sq < 0");
      w.resize(recipe.cutoff + 1);
      double p = std::exp(-recipe.alpha_sq);
      double sum = 0.0;
      for (int m = 0; m <= recipe.cutoff; ++m) {
        w[m] = p;
        sum += p;
        p *= recipe.alpha_sq / (m + 1.0);
      }
      tail = std::max(0.0, 1.0 - sum);
      break;
    }
  }
  if (tail >= kTailBound) {
    std::ostringstream msg;
    msg << "make_weights: truncated tail mass " << tail << " exceeds " << kTailBound
        << " at cutoff " << recipe.cutoff;
    throw truncation_error(msg.str());
  }
  double total = sum_weights(w);
  for (double& p : w) p /= total;
  return NumberDiagonal{std::move(w)};
}

Complex char_fn(const StatePrep& prep, Complex lambda) {
  validate(prep);
  double a2 = std::norm(lambda);
  return std::visit(
      [&](const auto& s) -> Complex {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Vacuum>) {
          return std::exp(-0.5 * a2);
        } else if constexpr (std::is_same_v<T, Coherent>) {
          return std::exp(Complex(-0.5 * a2, 0.0) + lambda * std::conj(s.alpha) -
                          std::conj(lambda) * s.alpha);
        } else if constexpr (std::is_same_v<T, NumberDiagonal>) {
          return std::exp(-0.5 * a2) * laguerre_weighted_sum(s.weights, a2);
        } else {
          // Gaussian: D(lambda) = exp(i sqrt(2) (Im(l) q - Re(l) p)).
          double u = lambda.real(), v = lambda.imag();
          double phase = std::numbers::sqrt2 * (v * s.mean_q - u * s.mean_p);
          double quad = v * v * s.var_q + u * u * s.var_p - 2.0 * u * v * s.cov_qp;
          return std::exp(Complex(-quad, phase));
        }
      },
      prep);
}

QuadStats quad_stats(const StatePrep& prep) {
  validate(prep);
  return std::visit(
      [](const auto& s) -> QuadStats {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Vacuum>) {
          return {0.0, 0.0, 0.5, 0.5, 0.0};
        } else if constexpr (std::is_same_v<T, Coherent>) {
          return {std::numbers::sqrt2 * s.alpha.real(),
                  std::numbers::sqrt2 * s.alpha.imag(), 0.5, 0.5, 0.0};
        } else if constexpr (std::is_same_v<T, NumberDiagonal>) {
          double v = 0.0;
          for (size_t m = 0; m < s.weights.size(); ++m) {
            v += s.weights[m] * (m + 0.5);
          }
          return {0.0, 0.0, v, v, 0.0};
        } else {
          return {s.mean_q, s.mean_p, s.var_q, s.var_p, s.cov_qp};
        }
      },
      prep);
}

double wigner(const StatePrep& prep, Complex z) {
  validate(prep);
  constexpr double two_over_pi = 2.0 / std::numbers::pi;
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Vacuum>) {
          return two_over_pi * std::exp(-2.0 * std::norm(z));
        } else if constexpr (std::is_same_v<T, Coherent>) {
          return two_over_pi * std::exp(-2.0 * std::norm(z - s.alpha));
        } else if constexpr (std::is_same_v<T, NumberDiagonal>) {
          // W_m(z) = (2/pi)(-1)^m e^{-2|z|^2} L_m(4|z|^2); fold the signs into
          // the weights and reuse the single-pass sum.
          std::vector<double> signed_w(s.weights.size());
          for (size_t m = 0; m < s.weights.size(); ++m) {
            signed_w[m] = (m % 2 == 0) ? s.weights[m] : -s.weights[m];
          }
          return two_over_pi * std::exp(-2.0 * std::norm(z)) *
                 laguerre_weighted_sum(signed_w, 4.0 * std::norm(z));
        } else {
          // z = (q + ip)/sqrt(2): W_z(z) = 2 W_qp(sqrt(2) Re z, sqrt(2) Im z).
          double q = std::numbers::sqrt2 * z.real() - s.mean_q;
          double p = std::numbers::sqrt2 * z.imag() - s.mean_p;
          double det = s.var_q * s.var_p - s.cov_qp * s.cov_qp;
          double quad = (s.var_p * q * q - 2.0 * s.cov_qp * q * p + s.var_q * p * p) / det;
          return 2.0 / (2.0 * std::numbers::pi * std::sqrt(det)) * std::exp(-0.5 * quad);
        }
      },
      prep);
}

namespace {

Complex parse_complex(const std::string& text, const char* who) {
  std::istringstream in(text);
  double re = 0.0, im = 0.0;
  char sep = 0;
  if (!(in >> re)) throw domain_error(std::string(who) + ": cannot parse '" + text + "'");
  if (in >> sep) {
    if (sep != ',' || !(in >> im)) {
      throw domain_error(std::string(who) + ": expected 're' or 're,im' in '" + text + "'");
    }
  }
  std::string rest;
  if (in >> rest) throw domain_error(std::string(who) + ": trailing junk in '" + text + "'");
  return {re, im};
}

}  // namespace

StatePrep parse_prep(const std::string& text) {
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "vacuum") {
    if (!arg.empty()) throw domain_error("parse_prep: vacuum takes no argument");
    return Vacuum{};
  }
  if (head == "coherent") {
    return Coherent{parse_complex(arg, "parse_prep")};
  }
  if (head == "number") {
    int m = -1;
    try {
      size_t pos = 0;
      m = std::stoi(arg, &pos);
      if (pos != arg.size()) m = -1;
    } catch (const std::exception&) {
      m = -1;
    }
    if (m < 0) throw domain_error("parse_prep: number:m needs a nonnegative integer");
    WeightRecipe r;
    r.kind = WeightRecipe::Kind::Number;
    r.number = m;
    r.cutoff = m;
    return make_weights(r);
  }
  if (head == "thermal" || head == "phase") {
    WeightRecipe r;
    r.kind = head == "thermal" ? WeightRecipe::Kind::Thermal
                               : WeightRecipe::Kind::PhaseDiagonal;
    r.z = parse_complex(arg, "parse_prep");
    double s = std::norm(r.z);
    if (s >= 1.0) throw domain_error("parse_prep: |z| must be < 1");
    // pick the cutoff from the geometric tail bound
    r.cutoff = s > 0.0 ? std::max(8, static_cast<int>(std::ceil(
                                          std::log(kTailBound) / std::log(s))) + 2)
                       : 0;
    return make_weights(r);
  }
  if (head == "poisson") {
    WeightRecipe r;
    r.kind = WeightRecipe::Kind::PoissonDiagonal;
    Complex a = parse_complex(arg, "parse_prep");
    if (a.imag() != 0.0) throw domain_error("parse_prep: poisson:a2 must be real");
    r.alpha_sq = a.real();
    if (r.alpha_sq < 0.0) throw domain_error("parse_prep: poisson:a2 must be >= 0");
    // Poisson tail: generous cutoff, mean + wide deviation band
    r.cutoff = static_cast<int>(std::ceil(r.alpha_sq + 20.0 * std::sqrt(r.alpha_sq + 1.0))) + 20;
    return make_weights(r);
  }
  if (head == "weights") {
    std::vector<double> w;
    std::istringstream in(arg);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      try {
        size_t pos = 0;
        w.push_back(std::stod(tok, &pos));
        if (pos != tok.size()) throw domain_error("");
      } catch (const std::exception&) {
        throw domain_error("parse_prep: bad weight '" + tok + "'");
      }
    }
    StatePrep prep = NumberDiagonal{std::move(w)};
    validate(prep);
    return prep;
  }
  throw domain_error("parse_prep: unknown prep '" + text + "'");
}

std::string describe(const StatePrep& prep) {
  std::ostringstream out;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Vacuum>) {
          out << "vacuum";
        } else if constexpr (std::is_same_v<T, Coherent>) {
          out << "coherent:" << s.alpha.real() << "," << s.alpha.imag();
        } else if constexpr (std::is_same_v<T, NumberDiagonal>) {
          out << "weights:";
          for (size_t m = 0; m < s.weights.size(); ++m) {
            if (m) out << ",";
            out << s.weights[m];
          }
        } else {
          out << "gaussian(q=" << s.mean_q << ",p=" << s.mean_p << ",vq=" << s.var_q
              << ",vp=" << s.var_p << ",c=" << s.cov_qp << ")";
        }
      },
      prep);
  return out.str();
}

}  // namespace zgamma::states
