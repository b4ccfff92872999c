// Copyright 2026 zgamma contributors
// SPDX-License-Identifier: Apache-2.0

#include "zgamma/measurement.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <nlohmann/json.hpp>
#include <numbers>
#include <random>
#include <sstream>

#include "zgamma/errors.hpp"

namespace zgamma::measurement {

using states::quad_stats;
using states::QuadStats;

namespace {

constexpr double kNaimarkTol = 1e-12;
constexpr double kMassTol = 1e-3;
constexpr double kMinGamma = 1e-3;

double kappa_of(double gamma) { return std::sqrt(1.0 - gamma * gamma); }

void require_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw domain_error("measurement: gamma must lie in (0, 1]; reduce first");
  }
}

/// Radius beyond which the state's Wigner function is below ~1e-16 of its
/// peak, in the z = (q+ip)/sqrt(2) plane. Used to size convolution kernels.
double wigner_radius(const StatePrep& prep) {
  constexpr double vac = 4.3;  // exp(-2 r^2) < 1e-16
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, states::Vacuum>) {
          return vac;
        } else if constexpr (std::is_same_v<T, states::Coherent>) {
          return std::abs(s.alpha) + vac;
        } else if constexpr (std::is_same_v<T, states::NumberDiagonal>) {
          return std::sqrt(static_cast<double>(s.weights.size())) + vac;
        } else {
          double mean = std::hypot(s.mean_q, s.mean_p) / std::numbers::sqrt2;
          double sigma = std::sqrt(std::max(s.var_q, s.var_p) / 2.0);
          return mean + 2.0 * vac * sigma + vac;
        }
      },
      prep);
}

coverage_error make_coverage_error(const std::string& what, const Moments& pred) {
  double sx = 6.0 * std::sqrt(pred.var_q1), sy = 6.0 * std::sqrt(pred.var_p2);
  std::ostringstream msg;
  msg << what << "; suggested bounds x in [" << pred.mean_q1 - sx << ", "
      << pred.mean_q1 + sx << "], y in [" << pred.mean_p2 - sy << ", "
      << pred.mean_p2 + sy << "]";
  return coverage_error(msg.str(), pred.mean_q1 - sx, pred.mean_q1 + sx,
                        pred.mean_p2 - sy, pred.mean_p2 + sy);
}

struct GridAccum {
  double m = 0, sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
};

GridAccum accumulate(const OutcomeGrid& grid) {
  GridAccum a;
  const auto& s = grid.spec;
  auto tw = [](int i, int n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; };
  for (int j = 0; j < s.ny; ++j) {
    double y = s.y(j), wy = tw(j, s.ny);
    for (int i = 0; i < s.nx; ++i) {
      double x = s.x(i);
      double w = wy * tw(i, s.nx) * grid.raw(i, j);
      a.m += w;
      a.sx += w * x;
      a.sy += w * y;
      a.sxx += w * x * x;
      a.syy += w * y * y;
      a.sxy += w * x * y;
    }
  }
  double area = s.dx() * s.dy();
  a.m *= area;
  a.sx *= area;
  a.sy *= area;
  a.sxx *= area;
  a.syy *= area;
  a.sxy *= area;
  return a;
}

std::mutex fftw_planner_mutex;

}  // namespace

Preparation::Preparation(StatePrep r1, StatePrep r2, StatePrep s)
    : rho1(std::move(r1)), rho2(std::move(r2)), sigma(std::move(s)) {
  states::validate(rho1);
  states::validate(rho2);
  states::validate(sigma);
  QuadStats qs = quad_stats(sigma);
  if (std::abs(qs.mean_q) > kNaimarkTol || std::abs(qs.mean_p) > kNaimarkTol) {
    throw domain_error(
        "Preparation: ancilla must have zero mean quadratures (<q3> = <p3> = 0); "
        "got " + states::describe(sigma));
  }
}

Complex moment_generating_fn(const Preparation& prep, double gamma, Complex lambda) {
  require_gamma(gamma);
  double k = kappa_of(gamma);
  // exp(l T+ - l* T) = D1(l) D2(-g conj(l)) D3(-k conj(l)): modes 2 and 3
  // enter through creation operators, which conjugates their displacement
  // arguments. Pinned by the first-moment trace condition (grid mean equals
  // alpha + g conj(beta)) and by the Fock oracle.
  Complex lc = std::conj(lambda);
  return states::char_fn(prep.rho1, lambda) * states::char_fn(prep.rho2, -gamma * lc) *
         states::char_fn(prep.sigma, -k * lc);
}

Moments predicted_moments(const Preparation& prep, double gamma) {
  require_gamma(gamma);
  QuadStats s1 = quad_stats(prep.rho1);
  QuadStats s2 = quad_stats(prep.rho2);
  QuadStats s3 = quad_stats(prep.sigma);
  double g2 = gamma * gamma;
  double half_k2 = 0.5 * (1.0 - g2);
  Moments m;
  m.mean_q1 = (s1.mean_q + gamma * s2.mean_q) / std::numbers::sqrt2;
  m.mean_p2 = (s1.mean_p - gamma * s2.mean_p) / std::numbers::sqrt2;
  double var_x = 0.5 * (s1.var_q + g2 * s2.var_q);
  double var_y = 0.5 * (s1.var_p + g2 * s2.var_p);
  m.var_q1 = var_x + half_k2 * s3.var_q;
  m.var_p2 = var_y + half_k2 * s3.var_p;
  double cov_xy = 0.5 * (s1.cov_qp - g2 * s2.cov_qp);
  m.cov_q1p2 = cov_xy - half_k2 * s3.cov_qp;
  return m;
}

GridSpec auto_grid(const Preparation& prep, double gamma, int n) {
  Moments pred = predicted_moments(prep, gamma);
  double sx = 6.0 * std::sqrt(pred.var_q1), sy = 6.0 * std::sqrt(pred.var_p2);
  GridSpec g;
  g.x_min = pred.mean_q1 - sx;
  g.x_max = pred.mean_q1 + sx;
  g.y_min = pred.mean_p2 - sy;
  g.y_max = pred.mean_p2 + sy;
  g.nx = g.ny = n;
  g.validate();
  return g;
}

OutcomeGrid outcome_density(const Preparation& prep, double gamma, const GridSpec& grid) {
  require_gamma(gamma);
  grid.validate();
  Moments pred = predicted_moments(prep, gamma);
  double sx = std::sqrt(pred.var_q1), sy = std::sqrt(pred.var_p2);
  if (grid.x_min > pred.mean_q1 - 3.0 * sx || grid.x_max < pred.mean_q1 + 3.0 * sx ||
      grid.y_min > pred.mean_p2 - 3.0 * sy || grid.y_max < pred.mean_p2 + 3.0 * sy) {
    throw make_coverage_error("outcome_density: grid does not span 3 sigma around the mean",
                              pred);
  }

  // Work on a window twice the requested span (same spacing, same center) and
  // crop: the periodization images of the inverse transform then land four
  // half-widths out, which keeps the ringing floor below the 1e-9 negativity
  // budget even for 6-sigma production grids.
  const int nx = 2 * grid.nx, ny = 2 * grid.ny;
  const double dx = grid.dx(), dy = grid.dy();
  const double cx = 0.5 * (grid.x_min + grid.x_max);
  const double cy = 0.5 * (grid.y_min + grid.y_max);
  // lambda = u + iv; u is conjugate to y (ny nodes), v to x (nx nodes)
  const double du = std::numbers::pi / (ny * dy);
  const double dv = std::numbers::pi / (nx * dx);
  const double ou = 0.5 * (ny - 1), ov = 0.5 * (nx - 1);
  const double kap = kappa_of(gamma);

  std::vector<Complex> buf(static_cast<size_t>(nx) * ny);
  fftw_plan plan_y, plan_x;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex);
    auto* data = reinterpret_cast<fftw_complex*>(buf.data());
    int len_y = ny, len_x = nx;
    plan_y = fftw_plan_many_dft(1, &len_y, nx, data, nullptr, nx, 1, data, nullptr, nx,
                                1, FFTW_BACKWARD, FFTW_ESTIMATE);
    plan_x = fftw_plan_many_dft(1, &len_x, ny, data, nullptr, 1, nx, data, nullptr, 1,
                                nx, FFTW_FORWARD, FFTW_ESTIMATE);
  }

  // Xi on the lambda grid times the centering phases:
  //   exp(2i u y) = a_y[j] e^{+2pi i jn/ny} b_y[n] g_y
  //   exp(-2i v x) = a_x[k] e^{-2pi i km/nx} b_x[m] g_x
  std::vector<Complex> ax(nx), ay(ny);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int j = 0; j < ny; ++j) {
    double u = (j - ou) * du;
    ay[j] = std::polar(1.0, 2.0 * u * cy - two_pi * ou * j / ny);
  }
  for (int k = 0; k < nx; ++k) {
    double v = (k - ov) * dv;
    ax[k] = std::polar(1.0, -2.0 * v * cx + two_pi * ov * k / nx);
  }
  for (int j = 0; j < ny; ++j) {
    double u = (j - ou) * du;
    for (int k = 0; k < nx; ++k) {
      double v = (k - ov) * dv;
      Complex lambda(u, v), lc(u, -v);
      buf[static_cast<size_t>(j) * nx + k] =
          states::char_fn(prep.rho1, lambda) *
          states::char_fn(prep.rho2, -gamma * lc) *
          states::char_fn(prep.sigma, -kap * lc) * ay[j] * ax[k];
    }
  }
  fftw_execute(plan_y);
  fftw_execute(plan_x);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex);
    fftw_destroy_plan(plan_y);
    fftw_destroy_plan(plan_x);
  }

  Complex global = std::polar(du * dv / (std::numbers::pi * std::numbers::pi),
                              two_pi * (ou * ou / ny - ov * ov / nx));
  OutcomeGrid out;
  out.spec = grid;
  out.density.resize(static_cast<size_t>(grid.nx) * grid.ny);
  double min_raw = 0.0, max_imag = 0.0;
  const int off_y = grid.ny / 2, off_x = grid.nx / 2;  // central crop
  for (int n = 0; n < grid.ny; ++n) {
    int ni = n + off_y;
    Complex bn = std::polar(1.0, -two_pi * ou * ni / ny);
    for (int m = 0; m < grid.nx; ++m) {
      int mi = m + off_x;
      Complex bm = std::polar(1.0, two_pi * ov * mi / nx);
      Complex val = global * bn * bm * buf[static_cast<size_t>(ni) * nx + mi];
      out.density[static_cast<size_t>(n) * grid.nx + m] = val.real();
      min_raw = std::min(min_raw, val.real());
      max_imag = std::max(max_imag, std::abs(val.imag()));
    }
  }
  out.min_raw = min_raw;
  if (max_imag > 1e-9) {
    throw tolerance_error("outcome_density: imaginary residue " + std::to_string(max_imag));
  }
  if (min_raw < -1e-9) {
    throw tolerance_error("outcome_density: negative ringing below -1e-9");
  }
  double mass = out.mass();
  if (std::abs(mass - 1.0) > kMassTol) {
    throw make_coverage_error("outcome_density: grid mass " + std::to_string(mass) +
                                  " outside [1 - 1e-3, 1 + 1e-3]",
                              pred);
  }
  return out;
}

namespace {

/// tau-lattice samples of a state's Wigner kernel W((.) / scale) / scale^2
/// over the difference lattice |di| <= mx, |dj| <= my.
struct Kernel {
  int mx = 0, my = 0;
  std::vector<double> w;  // (2mx+1) x (2my+1), di fastest

  double at(int di, int dj) const {
    return w[static_cast<size_t>(dj + my) * (2 * mx + 1) + (di + mx)];
  }
};

Kernel make_kernel(const StatePrep& prep, double scale, double dx, double dy) {
  // kernel(delta) = W(-conj(delta)/scale) / scale^2: the conjugation carries
  // over from the displacement arguments of the moment generating function
  // (invisible for phase-symmetric states, essential for coherent ones).
  Kernel k;
  double radius = scale * wigner_radius(prep);
  k.mx = static_cast<int>(std::ceil(radius / dx));
  k.my = static_cast<int>(std::ceil(radius / dy));
  k.w.resize(static_cast<size_t>(2 * k.mx + 1) * (2 * k.my + 1));
  for (int dj = -k.my; dj <= k.my; ++dj) {
    for (int di = -k.mx; di <= k.mx; ++di) {
      Complex z(-di * dx / scale, dj * dy / scale);
      k.w[static_cast<size_t>(dj + k.my) * (2 * k.mx + 1) + (di + k.mx)] =
          states::wigner(prep, z) / (scale * scale) * dx * dy;
    }
  }
  return k;
}

/// Values of W1 on the target lattice extended by (mx, my) cells per side.
std::vector<double> extended_wigner(const StatePrep& prep, const GridSpec& grid, int mx,
                                    int my) {
  int nx = grid.nx + 2 * mx, ny = grid.ny + 2 * my;
  std::vector<double> vals(static_cast<size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    double y = grid.y(j - my);
    for (int i = 0; i < nx; ++i) {
      vals[static_cast<size_t>(j) * nx + i] = states::wigner(prep, Complex(grid.x(i - mx), y));
    }
  }
  return vals;
}

/// Correlation step shared by the two convolution hops:
/// out(tau) = sum_delta field(tau + delta) kernel(delta).
std::vector<double> correlate(const std::vector<double>& field, int fnx,
                              const Kernel& ker, int out_nx, int out_ny) {
  std::vector<double> out(static_cast<size_t>(out_nx) * out_ny);
  for (int j = 0; j < out_ny; ++j) {
    for (int i = 0; i < out_nx; ++i) {
      double acc = 0.0;
      for (int dj = -ker.my; dj <= ker.my; ++dj) {
        const double* row = &field[static_cast<size_t>(j + ker.my + dj) * fnx + (i + ker.mx)];
        const double* kr = &ker.w[static_cast<size_t>(dj + ker.my) * (2 * ker.mx + 1)];
        for (int di = -ker.mx; di <= ker.mx; ++di) {
          acc += row[di] * kr[di + ker.mx];
        }
      }
      out[static_cast<size_t>(j) * out_nx + i] = acc;
    }
  }
  return out;
}

OutcomeGrid finish_grid(const GridSpec& spec, std::vector<double> vals, bool quasi) {
  OutcomeGrid out;
  out.spec = spec;
  out.density = std::move(vals);
  out.min_raw = *std::min_element(out.density.begin(), out.density.end());
  out.quasi = quasi;
  double mass = out.mass();
  if (std::abs(mass - 1.0) > kMassTol) {
    std::ostringstream msg;
    msg << "convolution grid mass " << mass << " outside [1 - 1e-3, 1 + 1e-3]";
    throw coverage_error(msg.str(), spec.x_min, spec.x_max, spec.y_min, spec.y_max);
  }
  return out;
}

}  // namespace

OutcomeGrid h_density(const StatePrep& rho1, const StatePrep& rho2, double gamma,
                      const GridSpec& grid) {
  require_gamma(gamma);
  grid.validate();
  if (gamma < kMinGamma) {
    throw domain_error("h_density: gamma below 1e-3, kernel rescaling overflows");
  }
  Kernel k2 = make_kernel(rho2, gamma, grid.dx(), grid.dy());
  auto w1 = extended_wigner(rho1, grid, k2.mx, k2.my);
  auto h = correlate(w1, grid.nx + 2 * k2.mx, k2, grid.nx, grid.ny);
  return finish_grid(grid, std::move(h), true);
}

OutcomeGrid convolution_density(const Preparation& prep, double gamma,
                                const GridSpec& grid) {
  require_gamma(gamma);
  grid.validate();
  if (gamma < kMinGamma) {
    throw domain_error("convolution_density: gamma below 1e-3");
  }
  double kap = kappa_of(gamma);
  if (kap < kMinGamma) {
    // ancilla decoupled: K reduces to H, which is a true density here
    OutcomeGrid h = h_density(prep.rho1, prep.rho2, gamma, grid);
    h.quasi = false;
    return h;
  }
  Kernel k3 = make_kernel(prep.sigma, kap, grid.dx(), grid.dy());
  // H on the grid extended by the sigma kernel's support
  GridSpec hspec = grid;
  hspec.x_min -= k3.mx * grid.dx();
  hspec.x_max += k3.mx * grid.dx();
  hspec.y_min -= k3.my * grid.dy();
  hspec.y_max += k3.my * grid.dy();
  hspec.nx = grid.nx + 2 * k3.mx;
  hspec.ny = grid.ny + 2 * k3.my;
  Kernel k2 = make_kernel(prep.rho2, gamma, grid.dx(), grid.dy());
  auto w1 = extended_wigner(prep.rho1, hspec, k2.mx, k2.my);
  auto h = correlate(w1, hspec.nx + 2 * k2.mx, k2, hspec.nx, hspec.ny);
  auto k = correlate(h, hspec.nx, k3, grid.nx, grid.ny);
  return finish_grid(grid, std::move(k), false);
}

Moments empirical_moments(const OutcomeGrid& grid) {
  GridAccum a = accumulate(grid);
  if (std::abs(a.m - 1.0) > kMassTol) {
    std::ostringstream msg;
    msg << "empirical_moments: grid mass " << a.m << " outside tolerance";
    throw coverage_error(msg.str(), grid.spec.x_min, grid.spec.x_max, grid.spec.y_min,
                         grid.spec.y_max);
  }
  Moments m;
  m.mean_q1 = a.sx / a.m;
  m.mean_p2 = a.sy / a.m;
  m.var_q1 = a.sxx / a.m - m.mean_q1 * m.mean_q1;
  m.var_p2 = a.syy / a.m - m.mean_p2 * m.mean_p2;
  m.cov_q1p2 = a.sxy / a.m - m.mean_q1 * m.mean_p2;
  return m;
}

std::vector<Complex> sample_outcomes(const OutcomeGrid& grid, std::int64_t n,
                                     std::uint64_t seed) {
  if (n < 1) throw domain_error("sample_outcomes: need n >= 1");
  const auto& s = grid.spec;
  std::vector<double> cdf(grid.density.size());
  double total = 0.0;
  for (int j = 0; j < s.ny; ++j) {
    for (int i = 0; i < s.nx; ++i) {
      total += grid.value(i, j);
      cdf[static_cast<size_t>(j) * s.nx + i] = total;
    }
  }
  if (total <= 0.0) throw domain_error("sample_outcomes: empty density");

  std::mt19937_64 rng(seed);
  // fixed bits-to-double map: draws are identical across platforms
  auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };

  std::vector<Complex> out;
  out.reserve(static_cast<size_t>(n));
  for (std::int64_t t = 0; t < n; ++t) {
    double u = uniform() * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    size_t cell = std::min(static_cast<size_t>(it - cdf.begin()), cdf.size() - 1);
    int i = static_cast<int>(cell % s.nx);
    int j = static_cast<int>(cell / s.nx);
    double x = s.x(i) + (uniform() - 0.5) * s.dx();
    double y = s.y(j) + (uniform() - 0.5) * s.dy();
    out.emplace_back(x, y);
  }
  return out;
}

NoiseExcessReport noise_excess_check(const Preparation& prep, double gamma) {
  require_gamma(gamma);
  QuadStats s1 = quad_stats(prep.rho1);
  QuadStats s2 = quad_stats(prep.rho2);
  QuadStats s3 = quad_stats(prep.sigma);
  double g2 = gamma * gamma;
  double half_k2 = 0.5 * (1.0 - g2);
  NoiseExcessReport r;
  r.gamma = gamma;
  r.intrinsic_var_x = 0.5 * (s1.var_q + g2 * s2.var_q);
  r.intrinsic_var_y = 0.5 * (s1.var_p + g2 * s2.var_p);
  r.excess_q = half_k2 * s3.var_q;
  r.excess_p = half_k2 * s3.var_p;
  r.var_q1 = r.intrinsic_var_x + r.excess_q;
  r.var_p2 = r.intrinsic_var_y + r.excess_p;
  r.uncertainty_product = r.var_q1 * r.var_p2;
  r.product_lower_bound = half_k2 * half_k2;
  r.excess_positive = r.excess_q > 0.0 && r.excess_p > 0.0;
  return r;
}

namespace {

nlohmann::json moments_json(const Moments& m) {
  return {{"mean_Q1", m.mean_q1},
          {"mean_P2", m.mean_p2},
          {"var_Q1", m.var_q1},
          {"var_P2", m.var_p2},
          {"cov_Q1P2", m.cov_q1p2}};
}

}  // namespace

std::string report_to_json(const MomentReport& report) {
  nlohmann::json j;
  j["predicted"] = moments_json(report.predicted);
  // the predicted means are the traced first moments of the target operator
  j["predicted"]["mean_X"] = report.predicted.mean_q1;
  j["predicted"]["mean_Y"] = report.predicted.mean_p2;
  if (report.measured) {
    j["measured"] = moments_json(*report.measured);
  }
  return j.dump(2);
}

}  // namespace zgamma::measurement
