// Copyright 2026 zgamma contributors
// SPDX-License-Identifier: Apache-2.0

#include "zgamma/fock.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numbers>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "zgamma/errors.hpp"
#include "zgamma/network.hpp"

namespace zgamma::fock {

using Eigen::VectorXcd;
using Triplet = Eigen::Triplet<Complex>;

void TruncationSpec::validate() const {
  if (buffer < 2) throw domain_error("TruncationSpec: buffer must be >= 2");
  if (n_max < 4 * buffer) throw domain_error("TruncationSpec: n_max must be >= 4 * buffer");
}

namespace {

constexpr double kPrune = 1e-16;

void require_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw domain_error("fock: gamma must lie in (0, 1]");
  }
}

int flat(int n1, int n2, int n3, int d) { return (n1 * d + n2) * d + n3; }

/// Single-mode annihilation matrix.
Eigen::MatrixXcd ladder(int dim) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

/// exp(theta (a_k a_j^dag - a_j a_k^dag)) on an ordered mode pair; the real
/// two-mode rotation whose Heisenberg action is [[cos, sin], [-sin, cos]].
/// (The i-free form [[cos, -i sin], [-i sin, cos]] does not recompose to the
/// real mixing matrix; the Heisenberg regression pins this choice.)
Eigen::MatrixXcd pair_rotation(double theta, int dim) {
  Eigen::MatrixXcd a = ladder(dim);
  Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd aj = Eigen::kroneckerProduct(a, I).eval();
  Eigen::MatrixXcd ak = Eigen::kroneckerProduct(I, a).eval();
  Eigen::MatrixXcd gen =
      theta * (ak * aj.adjoint() - aj * ak.adjoint());
  return gen.exp();
}

/// Embeds a two-mode operator into the three-mode space; pair = (1,2), (2,3)
/// or (1,3), 1-based, matching the (n1 d + n2) d + n3 flattening.
SparseOp embed_pair(const Eigen::MatrixXcd& u2, int j, int k, int d) {
  std::vector<Triplet> trips;
  int d2 = d * d;
  trips.reserve(static_cast<size_t>(d) * d2);
  for (int pr = 0; pr < d2; ++pr) {
    for (int pc = 0; pc < d2; ++pc) {
      Complex v = u2(pr, pc);
      if (std::abs(v) < kPrune) continue;
      int r0 = pr / d, r1 = pr % d;
      int c0 = pc / d, c1 = pc % d;
      for (int sp = 0; sp < d; ++sp) {
        int row, col;
        if (j == 1 && k == 2) {
          row = flat(r0, r1, sp, d);
          col = flat(c0, c1, sp, d);
        } else if (j == 2 && k == 3) {
          row = flat(sp, r0, r1, d);
          col = flat(sp, c0, c1, d);
        } else {  // (1,3)
          row = flat(r0, sp, r1, d);
          col = flat(c0, sp, c1, d);
        }
        trips.emplace_back(row, col, v);
      }
    }
  }
  SparseOp out(d2 * d, d2 * d);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SparseOp pi_rotation_mode2(int d) {
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(d) * d * d);
  for (int n1 = 0; n1 < d; ++n1) {
    for (int n2 = 0; n2 < d; ++n2) {
      double sign = (n2 % 2 == 0) ? 1.0 : -1.0;
      for (int n3 = 0; n3 < d; ++n3) {
        int idx = flat(n1, n2, n3, d);
        trips.emplace_back(idx, idx, Complex(sign, 0.0));
      }
    }
  }
  SparseOp out(d * d * d, d * d * d);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

std::vector<int> total_excitation(int d) {
  std::vector<int> tot(static_cast<size_t>(d) * d * d);
  for (int n1 = 0; n1 < d; ++n1)
    for (int n2 = 0; n2 < d; ++n2)
      for (int n3 = 0; n3 < d; ++n3) tot[flat(n1, n2, n3, d)] = n1 + n2 + n3;
  return tot;
}

std::vector<char> per_index_safe(int d, int cut) {
  std::vector<char> safe(static_cast<size_t>(d) * d * d, 0);
  for (int n1 = 0; n1 < d; ++n1)
    for (int n2 = 0; n2 < d; ++n2)
      for (int n3 = 0; n3 < d; ++n3)
        safe[flat(n1, n2, n3, d)] = (n1 <= cut && n2 <= cut && n3 <= cut) ? 1 : 0;
  return safe;
}

double max_abs_on(const SparseOp& m, const std::vector<char>& row_ok,
                  const std::vector<char>& col_ok) {
  double dev = 0.0;
  for (int outer = 0; outer < m.outerSize(); ++outer) {
    for (SparseOp::InnerIterator it(m, outer); it; ++it) {
      if (row_ok[it.row()] && col_ok[it.col()]) {
        dev = std::max(dev, std::abs(it.value()));
      }
    }
  }
  return dev;
}

double max_abs_all(const SparseOp& m) {
  double dev = 0.0;
  for (int outer = 0; outer < m.outerSize(); ++outer) {
    for (SparseOp::InnerIterator it(m, outer); it; ++it) {
      dev = std::max(dev, std::abs(it.value()));
    }
  }
  return dev;
}

SparseOp sparse_identity(int n) {
  SparseOp I(n, n);
  I.setIdentity();
  return I;
}

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& xs, std::vector<double>& ws) {
  xs.resize(n);
  ws.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    xs[i] = -x;
    xs[n - 1 - i] = x;
    ws[i] = ws[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

}  // namespace

SparseOp mode_annihilator(int mode, int dim) {
  if (mode < 1 || mode > 3) throw domain_error("mode_annihilator: mode in {1,2,3}");
  std::vector<Triplet> trips;
  int d = dim;
  for (int n1 = 0; n1 < d; ++n1) {
    for (int n2 = 0; n2 < d; ++n2) {
      for (int n3 = 0; n3 < d; ++n3) {
        int n[3] = {n1, n2, n3};
        if (n[mode - 1] == 0) continue;
        double amp = std::sqrt(static_cast<double>(n[mode - 1]));
        int m[3] = {n1, n2, n3};
        m[mode - 1] -= 1;
        trips.emplace_back(flat(m[0], m[1], m[2], d), flat(n1, n2, n3, d),
                           Complex(amp, 0.0));
      }
    }
  }
  SparseOp out(d * d * d, d * d * d);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

DenseOp displacement_matrix(Complex alpha, int dim) {
  DenseOp D(dim, dim);
  double a2 = std::norm(alpha);
  double gauss = std::exp(-0.5 * a2);
  // row k, column n: sqrt(n!/k!) alpha^{k-n} e^{-|a|^2/2} L_n^{(k-n)}(|a|^2)
  // for k >= n, mirrored with -conj(alpha) below the diagonal.
  for (int k = 0; k < dim; ++k) {
    for (int n = 0; n <= k; ++n) {
      int m = k - n;
      double lg = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(k + 1.0));
      // associated Laguerre L_n^{(m)}(a2) by upward recurrence
      double l0 = 1.0, l1 = 1.0 + m - a2, ln = (n == 0) ? l0 : l1;
      for (int i = 2; i <= n; ++i) {
        double l2 = ((2.0 * i - 1.0 + m - a2) * l1 - (i - 1.0 + m) * l0) / i;
        l0 = l1;
        l1 = l2;
        ln = l2;
      }
      Complex zpow(1.0, 0.0);
      for (int i = 0; i < m; ++i) zpow *= alpha;
      D(k, n) = std::exp(lg) * zpow * gauss * ln;
      if (k != n) {
        Complex zpow2(1.0, 0.0);
        for (int i = 0; i < m; ++i) zpow2 *= -std::conj(alpha);
        D(n, k) = std::exp(lg) * zpow2 * gauss * ln;
      }
    }
  }
  return D;
}

Eigen::MatrixXd hermite_functions(const std::vector<double>& xs, int dim) {
  Eigen::MatrixXd psi(dim, static_cast<int>(xs.size()));
  const double norm0 = std::pow(std::numbers::pi, -0.25);
  for (size_t c = 0; c < xs.size(); ++c) {
    double x = xs[c];
    psi(0, c) = norm0 * std::exp(-0.5 * x * x);
    if (dim > 1) psi(1, c) = std::numbers::sqrt2 * x * psi(0, c);
    for (int n = 2; n < dim; ++n) {
      psi(n, c) = std::sqrt(2.0 / n) * x * psi(n - 1, c) -
                  std::sqrt((n - 1.0) / n) * psi(n - 2, c);
    }
  }
  return psi;
}

FockUnitary build_unitary(double gamma, const TruncationSpec& trunc, double heisenberg_tol) {
  require_gamma(gamma);
  trunc.validate();
  int d = trunc.dim();
  auto plan = network::decompose(gamma);
  SparseOp b12 = embed_pair(pair_rotation(plan.theta12, d), 1, 2, d);
  SparseOp b23 = embed_pair(pair_rotation(plan.theta23, d), 2, 3, d);
  SparseOp b13 = embed_pair(pair_rotation(plan.theta13, d), 1, 3, d);
  SparseOp r2 = pi_rotation_mode2(d);
  FockUnitary out;
  out.matrix = (r2 * (b13 * (b23 * b12))).pruned(kPrune, 1.0);

  SparseOp uhu = (SparseOp(out.matrix.adjoint()) * out.matrix - sparse_identity(d * d * d))
                     .eval();
  out.unitarity_deviation = max_abs_all(uhu);

  // Heisenberg action against the mixing matrix, on states whose total
  // excitation keeps every stage inside a complete pair sector.
  auto tot = total_excitation(d);
  std::vector<char> ok(tot.size());
  int cut = trunc.n_max - trunc.buffer;
  for (size_t i = 0; i < tot.size(); ++i) ok[i] = tot[i] <= cut ? 1 : 0;
  auto M = network::build_mixing_matrix(gamma);
  SparseOp a[3] = {mode_annihilator(1, d), mode_annihilator(2, d), mode_annihilator(3, d)};
  SparseOp uh = out.matrix.adjoint();
  double dev = 0.0;
  for (int k = 0; k < 3; ++k) {
    SparseOp heis = uh * SparseOp(a[k] * out.matrix);
    for (int l = 0; l < 3; ++l) heis -= SparseOp(M.entries(k, l) * a[l]);
    dev = std::max(dev, max_abs_on(heis, ok, ok));
  }
  out.heisenberg_deviation = dev;
  if (dev > heisenberg_tol) {
    throw truncation_error("build_unitary: Heisenberg deviation " + std::to_string(dev) +
                           " exceeds tolerance; raise n_max or buffer");
  }
  return out;
}

SparseOp operator_T(double gamma, const TruncationSpec& trunc) {
  require_gamma(gamma);
  trunc.validate();
  int d = trunc.dim();
  double kap = std::sqrt(1.0 - gamma * gamma);
  SparseOp t = mode_annihilator(1, d);
  t += SparseOp(gamma * SparseOp(mode_annihilator(2, d).adjoint()));
  t += SparseOp(kap * SparseOp(mode_annihilator(3, d).adjoint()));
  return t;
}

double normality_deviation(double gamma, const TruncationSpec& trunc) {
  SparseOp t = operator_T(gamma, trunc);
  SparseOp th = t.adjoint();
  SparseOp comm = SparseOp(t * th) - SparseOp(th * t);
  auto safe = per_index_safe(trunc.dim(), trunc.n_max - trunc.buffer);
  return max_abs_on(comm, safe, safe);
}

RelativeNumberReport relative_number_checks(double gamma, const TruncationSpec& trunc,
                                            bool with_polar) {
  require_gamma(gamma);
  trunc.validate();
  int d = trunc.dim();
  int dim3 = d * d * d;
  RelativeNumberReport rep;
  rep.gamma = gamma;

  SparseOp t = operator_T(gamma, trunc);
  auto safe = per_index_safe(d, trunc.n_max - trunc.buffer);

  std::vector<Triplet> ntrips;
  for (int n1 = 0; n1 < d; ++n1)
    for (int n2 = 0; n2 < d; ++n2)
      for (int n3 = 0; n3 < d; ++n3) {
        int idx = flat(n1, n2, n3, d);
        ntrips.emplace_back(idx, idx, Complex(n1 - n2 - n3, 0.0));
      }
  SparseOp nop(dim3, dim3);
  nop.setFromTriplets(ntrips.begin(), ntrips.end());

  SparseOp comm = SparseOp(t * nop) - SparseOp(nop * t) - t;
  rep.comm_tn_deviation = max_abs_on(comm, safe, safe);
  rep.normality = normality_deviation(gamma, trunc);

  if (!with_polar) {
    rep.notice = "polar check not requested";
    return rep;
  }

  // T = V |T| through the eigendecomposition of T^dag T; V maps each
  // N-eigenspace one step down, so [V, N] = V wherever truncation is honest.
  DenseOp td(t);
  DenseOp h = td.adjoint() * td;
  Eigen::SelfAdjointEigenSolver<DenseOp> es(h);
  if (es.info() != Eigen::Success) {
    rep.notice = "eigensolver failed; polar check skipped";
    return rep;
  }
  Eigen::VectorXd evals = es.eigenvalues().cwiseMax(0.0);
  Eigen::VectorXd sing = evals.cwiseSqrt();
  double smax = sing.maxCoeff();
  // the spectrum splits into an exact-kernel cluster and the rest; 1e-6 sits
  // inside the gap, anything tighter keeps garbage null directions
  double stol = smax * 1e-6;
  int rank = 0;
  for (int i = 0; i < sing.size(); ++i) {
    if (sing(i) > stol) ++rank;
  }
  if (rank == 0) {
    rep.notice = "|T| numerically singular; polar check skipped";
    return rep;
  }
  rep.polar_computed = true;
  rep.polar_rank = rank;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sing.size());
  Eigen::VectorXd proj = Eigen::VectorXd::Zero(sing.size());
  for (int i = 0; i < sing.size(); ++i) {
    if (sing(i) > stol) {
      inv(i) = 1.0 / sing(i);
      proj(i) = 1.0;
    }
  }
  const DenseOp& w = es.eigenvectors();
  DenseOp v = td * (w * inv.asDiagonal() * w.adjoint());
  DenseOp p_range = w * proj.asDiagonal() * w.adjoint();
  rep.polar_isometry_deviation = (v.adjoint() * v - p_range).cwiseAbs().maxCoeff();

  DenseOp nd(nop);
  DenseOp pc = v * nd - nd * v - v;
  double dev = 0.0;
  for (int r = 0; r < dim3; ++r) {
    if (!safe[r]) continue;
    for (int c = 0; c < dim3; ++c) {
      if (safe[c]) dev = std::max(dev, std::abs(pc(r, c)));
    }
  }
  rep.polar_comm_deviation = dev;
  rep.notice = "identities trusted only up to the truncation buffer";
  return rep;
}

namespace {

struct Component {
  double weight;
  VectorXcd vec;
};

std::vector<Component> mode_components(const states::StatePrep& prep, int d, int mode) {
  constexpr double kTail = 1e-6;
  std::vector<Component> out;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, states::Vacuum>) {
          VectorXcd v = VectorXcd::Zero(d);
          v(0) = 1.0;
          out.push_back({1.0, std::move(v)});
        } else if constexpr (std::is_same_v<T, states::Coherent>) {
          VectorXcd v = displacement_matrix(s.alpha, d).col(0);
          double tail = 1.0 - v.squaredNorm();
          if (tail > kTail) {
            throw domain_error("joint_density_oracle: coherent prep on mode " +
                               std::to_string(mode) + " not representable at this cutoff");
          }
          v /= v.norm();
          out.push_back({1.0, std::move(v)});
        } else if constexpr (std::is_same_v<T, states::NumberDiagonal>) {
          double tail = 0.0;
          for (size_t m = d; m < s.weights.size(); ++m) tail += s.weights[m];
          if (tail > kTail) {
            throw domain_error("joint_density_oracle: number-diagonal prep on mode " +
                               std::to_string(mode) + " not representable at this cutoff");
          }
          for (int m = 0; m < d && m < static_cast<int>(s.weights.size()); ++m) {
            if (s.weights[m] <= 0.0) continue;
            VectorXcd v = VectorXcd::Zero(d);
            v(m) = 1.0;
            out.push_back({s.weights[m], std::move(v)});
          }
        } else {
          throw domain_error("joint_density_oracle: Gaussian preps on mode " +
                             std::to_string(mode) +
                             " are not representable; use vacuum/coherent/number-diagonal");
        }
      },
      prep);
  return out;
}

}  // namespace

OutcomeGrid joint_density_oracle(const measurement::Preparation& prep, double gamma,
                                 const GridSpec& grid, const TruncationSpec& trunc) {
  require_gamma(gamma);
  grid.validate();
  trunc.validate();
  int d = trunc.dim();
  auto c1 = mode_components(prep.rho1, d, 1);
  auto c2 = mode_components(prep.rho2, d, 2);
  auto c3 = mode_components(prep.sigma, d, 3);
  SparseOp u = build_unitary(gamma, trunc).matrix;

  std::vector<double> xs(grid.nx), ys(grid.ny);
  for (int i = 0; i < grid.nx; ++i) xs[i] = grid.x(i);
  for (int j = 0; j < grid.ny; ++j) ys[j] = grid.y(j);
  Eigen::MatrixXd psi_x = hermite_functions(xs, d);
  Eigen::MatrixXd psi_y = hermite_functions(ys, d);
  // momentum eigenfunctions: <p|n> = (-i)^n psi_n(p)
  Eigen::MatrixXcd psi_p = psi_y.cast<Complex>();
  Complex phase(1.0, 0.0);
  for (int n = 0; n < d; ++n) {
    psi_p.row(n) *= phase;
    phase *= Complex(0.0, -1.0);
  }

  OutcomeGrid out;
  out.spec = grid;
  out.density.assign(static_cast<size_t>(grid.nx) * grid.ny, 0.0);
  VectorXcd psi(d * d * d);
  Eigen::MatrixXcd b(d, d);      // (n2, n3) at fixed x
  Eigen::MatrixXcd amp(grid.ny, d);  // (y, n3)
  for (const auto& m1 : c1) {
    for (const auto& m2 : c2) {
      for (const auto& m3 : c3) {
        double weight = m1.weight * m2.weight * m3.weight;
        for (int n1 = 0; n1 < d; ++n1)
          for (int n2 = 0; n2 < d; ++n2)
            for (int n3 = 0; n3 < d; ++n3)
              psi(flat(n1, n2, n3, d)) = m1.vec(n1) * m2.vec(n2) * m3.vec(n3);
        VectorXcd evolved = u * psi;
        for (int ix = 0; ix < grid.nx; ++ix) {
          b.setZero();
          for (int n1 = 0; n1 < d; ++n1) {
            double hx = psi_x(n1, ix);
            if (hx == 0.0) continue;
            for (int n2 = 0; n2 < d; ++n2) {
              for (int n3 = 0; n3 < d; ++n3) {
                b(n2, n3) += hx * evolved(flat(n1, n2, n3, d));
              }
            }
          }
          amp = psi_p.transpose() * b;  // (y, n3) = sum_n2 psi_p(n2, y) b(n2, n3)
          for (int jy = 0; jy < grid.ny; ++jy) {
            double k = 0.0;
            for (int n3 = 0; n3 < d; ++n3) k += std::norm(amp(jy, n3));
            out.density[static_cast<size_t>(jy) * grid.nx + ix] += weight * k;
          }
        }
      }
    }
  }
  out.min_raw = *std::min_element(out.density.begin(), out.density.end());
  double mass = out.mass();
  if (std::abs(mass - 1.0) > 1e-3) {
    throw coverage_error("joint_density_oracle: grid mass " + std::to_string(mass) +
                             " outside tolerance",
                         grid.x_min, grid.x_max, grid.y_min, grid.y_max);
  }
  return out;
}

DenseOp identity_defect(double gamma, int n_max, const DefectQuadrature& quad) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw domain_error("identity_defect: gamma must lie strictly inside (0, 1)");
  }
  if (n_max < 0) throw domain_error("identity_defect: n_max must be >= 0");
  int d = n_max + 1;
  double needed = std::sqrt(2.0 * n_max + 33.0);
  double radius = quad.radius > 0.0 ? quad.radius : needed;
  if (radius < needed) {
    throw domain_error("identity_defect: mass deficit, disk radius " +
                       std::to_string(radius) + " below required " + std::to_string(needed));
  }

  std::vector<double> gl_x, gl_w;
  gauss_legendre(quad.radial_nodes, gl_x, gl_w);

  double norm = std::sqrt(1.0 - gamma * gamma);
  std::vector<double> gpow(d);
  for (int n = 0; n < d; ++n) gpow[n] = norm * std::pow(gamma, n);

  DenseOp f = DenseOp::Zero(d * d, d * d);
  VectorXcd vec(d * d);
  double s_max = radius * radius;
  double panel = s_max / quad.radial_panels;
  for (int p = 0; p < quad.radial_panels; ++p) {
    double lo = p * panel, mid = lo + 0.5 * panel, half = 0.5 * panel;
    for (int q = 0; q < quad.radial_nodes; ++q) {
      double s = mid + half * gl_x[q];
      double ws = gl_w[q] * half;
      double r = std::sqrt(s);
      for (int m = 0; m < quad.angular_nodes; ++m) {
        double phi = 2.0 * std::numbers::pi * m / quad.angular_nodes;
        Complex z = std::polar(r, phi);
        DenseOp dz = displacement_matrix(z, d);
        // |z>> entries: <n1,n2|D1(z)|gamma>> = gpow[n2] D(z)(n1, n2)
        for (int n1 = 0; n1 < d; ++n1)
          for (int n2 = 0; n2 < d; ++n2) vec(n1 * d + n2) = gpow[n2] * dz(n1, n2);
        // measure d^2z/pi = (1/2) ds dphi / pi
        double w = ws * (2.0 * std::numbers::pi / quad.angular_nodes) /
                   (2.0 * std::numbers::pi);
        f.noalias() += w * (vec * vec.adjoint());
      }
    }
  }
  return f;
}

double identity_defect_deviation(double gamma, int n_max, const DefectQuadrature& quad) {
  DenseOp f = identity_defect(gamma, n_max, quad);
  int d = n_max + 1;
  DenseOp tgt = DenseOp::Zero(d * d, d * d);
  double g2 = gamma * gamma;
  for (int n1 = 0; n1 < d; ++n1)
    for (int n2 = 0; n2 < d; ++n2)
      tgt(n1 * d + n2, n1 * d + n2) = (1.0 - g2) * std::pow(g2, n2);
  return (f - tgt).cwiseAbs().maxCoeff();
}

std::string checks_to_json(const std::vector<CheckResult>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  for (const auto& c : checks) {
    arr.push_back({{"check", c.name},
                   {"gamma", c.gamma},
                   {"n_max", c.n_max},
                   {"buffer", c.buffer},
                   {"max_deviation", c.max_deviation},
                   {"tolerance", c.tolerance},
                   {"pass", c.pass}});
    all = all && c.pass;
  }
  nlohmann::json j;
  j["checks"] = arr;
  j["all_pass"] = all;
  return j.dump(2);
}

}  // namespace zgamma::fock
