// Copyright 2026 zgamma contributors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "zgamma/errors.hpp"
#include "zgamma/fock.hpp"
#include "zgamma/grid.hpp"
#include "zgamma/heterodyne.hpp"
#include "zgamma/measurement.hpp"
#include "zgamma/network.hpp"
#include "zgamma/states.hpp"

namespace fs = std::filesystem;
using namespace zgamma;
using json = nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitTolerance = 3;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::complex<double> parse_complex_arg(const std::string& text) {
  std::istringstream in(text);
  double re = 0.0, im = 0.0;
  char sep = 0;
  if (!(in >> re)) throw domain_error("cannot parse complex value '" + text + "'");
  if (in >> sep) {
    if (sep != ',' || !(in >> im)) {
      throw domain_error("expected 're' or 're,im', got '" + text + "'");
    }
  }
  return {re, im};
}

GridSpec parse_grid_arg(const std::string& text, const measurement::Preparation& prep,
                        double gamma, int default_n) {
  if (text == "auto" || text.empty()) {
    return measurement::auto_grid(prep, gamma, default_n);
  }
  std::vector<double> vals;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      size_t pos = 0;
      vals.push_back(std::stod(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw domain_error("--grid: cannot parse '" + tok + "'");
    }
  }
  if (vals.size() != 6) {
    throw domain_error("--grid wants 'auto' or 'xmin,xmax,ymin,ymax,nx,ny'");
  }
  GridSpec g{vals[0], vals[1], vals[2], vals[3], static_cast<int>(vals[4]),
             static_cast<int>(vals[5])};
  g.validate();
  return g;
}

/// Flat key=value config files; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t b = s.find_first_not_of(" \t\r");
      size_t e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = value;
  }
  return kv;
}

void ensure_dir(const std::string& out) {
  if (!out.empty()) fs::create_directories(out);
}

struct GammaReduction {
  network::GammaParam param;
  json to_json() const {
    return {{"raw", {param.raw.real(), param.raw.imag()}},
            {"reduced", param.reduced},
            {"phase", param.phase},
            {"swapped", param.swapped},
            {"scale", param.scale}};
  }
};

int cmd_decompose(const std::string& gamma_text, const std::string& out_dir) {
  GammaReduction red{network::reduce_gamma(parse_complex_arg(gamma_text))};
  double g = red.param.reduced;
  auto mix = network::build_mixing_matrix(g);
  auto plan = network::decompose(g);
  double residual = (network::compose_plan(plan) - mix.entries).cwiseAbs().maxCoeff();

  std::cout << "gamma (canonical) = " << fmt17(g) << ", kappa = " << fmt17(mix.kappa)
            << "\n";
  if (red.param.swapped || red.param.phase != 0.0) {
    std::cout << "reduction: phase " << fmt17(red.param.phase) << ", swapped "
              << (red.param.swapped ? "yes" : "no") << ", scale "
              << fmt17(red.param.scale) << "\n";
  }
  std::cout << "mixing matrix:\n";
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      std::cout << (c ? "  " : "  [") << fmt17(mix.entries(r, c).real());
    }
    std::cout << "]\n";
  }
  std::cout << "theta12 = " << fmt17(plan.theta12) << "\n"
            << "theta13 = " << fmt17(plan.theta13) << "\n"
            << "theta23 = " << fmt17(plan.theta23) << "\n"
            << "recomposition residual = " << fmt17(residual) << "\n";
  if (g == 1.0) {
    std::cout << "ancilla decouples: third mode passes through untouched\n";
  }
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    json j = json::parse(network::to_json(mix));
    j["reduction"] = red.to_json();
    j["plan"] = {{"theta12", plan.theta12},
                 {"theta13", plan.theta13},
                 {"theta23", plan.theta23},
                 {"pi_rotation_mode", plan.pi_rotation_mode},
                 {"ordering", plan.ordering},
                 {"recomposition_residual", residual}};
    write_file((fs::path(out_dir) / "decompose.json").string(), j.dump(2) + "\n");
  }
  return 0;
}

std::string samples_to_csv(const std::vector<std::complex<double>>& samples) {
  std::string out = "x,y\n";
  char buf[96];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", s.real(), s.imag());
    out += buf;
  }
  return out;
}

int cmd_simulate(const std::string& gamma_text, const std::string& rho1,
                 const std::string& rho2, const std::string& sigma,
                 const std::string& grid_text, long long samples, std::uint64_t seed,
                 bool seed_given, const std::string& out_dir) {
  if (samples > 0 && !seed_given) {
    throw domain_error("simulate: --seed is mandatory when --samples > 0");
  }
  GammaReduction red{network::reduce_gamma(parse_complex_arg(gamma_text))};
  double g = red.param.reduced;
  measurement::Preparation prep{states::parse_prep(rho1), states::parse_prep(rho2),
                                states::parse_prep(sigma)};
  GridSpec grid = parse_grid_arg(grid_text, prep, g, 256);
  OutcomeGrid density = measurement::outcome_density(prep, g, grid);
  measurement::MomentReport report;
  report.predicted = measurement::predicted_moments(prep, g);
  report.measured = measurement::empirical_moments(density);

  ensure_dir(out_dir);
  fs::path dir(out_dir);
  write_file((dir / "density.csv").string(), grid_to_csv(density));
  write_file((dir / "density.json").string(), grid_to_json(density) + "\n");
  json moments = json::parse(measurement::report_to_json(report));
  moments["gamma"] = red.to_json();
  write_file((dir / "moments.json").string(), moments.dump(2) + "\n");
  if (samples > 0) {
    auto draws = measurement::sample_outcomes(density, samples, seed);
    write_file((dir / "samples.csv").string(), samples_to_csv(draws));
  }
  std::cout << "wrote " << (dir / "density.csv").string() << " (mass "
            << fmt17(density.mass()) << "), moments.json"
            << (samples > 0 ? ", samples.csv" : "") << "\n";
  return 0;
}

int cmd_verify(double gamma, int n_max, int buffer, int polar_nmax,
               const std::string& out_dir) {
  fock::TruncationSpec trunc{n_max, buffer};
  trunc.validate();
  std::vector<fock::CheckResult> checks;
  auto push = [&](const std::string& name, double dev, double tol, int nm, int bf) {
    checks.push_back({name, gamma, nm, bf, dev, tol, dev <= tol});
  };

  double heis_dev = 0.0, unit_dev = 0.0;
  try {
    auto u = fock::build_unitary(gamma, trunc, 1e-8);
    heis_dev = u.heisenberg_deviation;
    unit_dev = u.unitarity_deviation;
  } catch (const truncation_error&) {
    heis_dev = 1.0;
    unit_dev = 1.0;
  }
  push("heisenberg_action", heis_dev, 1e-8, n_max, buffer);
  push("unitarity", unit_dev, 1e-10, n_max, buffer);
  push("normality_T", fock::normality_deviation(gamma, trunc), 1e-8, n_max, buffer);

  auto rel = fock::relative_number_checks(gamma, trunc, false);
  push("comm_T_N", rel.comm_tn_deviation, 1e-8, n_max, buffer);

  if (polar_nmax > 0) {
    fock::TruncationSpec pt{polar_nmax, 2};
    pt.validate();
    auto pol = fock::relative_number_checks(gamma, pt, true);
    if (pol.polar_computed) {
      push("polar_isometry", pol.polar_isometry_deviation, 1e-6, polar_nmax, 2);
      push("polar_comm_V_N", pol.polar_comm_deviation, 1e-6, polar_nmax, 2);
    } else {
      std::cout << "polar check skipped: " << pol.notice << "\n";
    }
  }

  if (gamma < 1.0) {
    int defect_nmax = std::min(n_max, 8);
    push("identity_defect", fock::identity_defect_deviation(gamma, defect_nmax), 1e-4,
         defect_nmax, 0);
  }

  // density equivalence, oracle vs FFT inversion
  for (const char* prep_text : {"vacuum", "coherent:1"}) {
    measurement::Preparation prep{states::parse_prep(prep_text), states::Vacuum{},
                                  states::Vacuum{}};
    GridSpec grid = measurement::auto_grid(prep, gamma, 64);
    OutcomeGrid fft = measurement::outcome_density(prep, gamma, grid);
    OutcomeGrid oracle = fock::joint_density_oracle(prep, gamma, grid, trunc);
    double l1 = 0.0;
    for (size_t i = 0; i < fft.density.size(); ++i) {
      l1 += std::abs(fft.density[i] - oracle.density[i]);
    }
    l1 *= grid.dx() * grid.dy();
    push(std::string("density_equivalence[") + prep_text + "]", l1, 1e-2, n_max, buffer);
  }

  bool all = true;
  for (const auto& c : checks) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": max deviation "
              << fmt17(c.max_deviation) << " (tolerance " << fmt17(c.tolerance) << ")\n";
    all = all && c.pass;
  }
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    write_file((fs::path(out_dir) / "verify.json").string(),
               fock::checks_to_json(checks) + "\n");
  }
  return all ? 0 : kExitTolerance;
}

int cmd_heterodyne(double omega1, double omega_i, const std::string& rho1,
                   const std::string& rho2, const std::string& sigma,
                   const std::string& grid_text, int bins, const std::string& out_dir) {
  heterodyne::HeterodyneSpec spec{omega1, omega_i};
  spec.validate();
  measurement::Preparation prep{states::parse_prep(rho1), states::parse_prep(rho2),
                                states::parse_prep(sigma)};
  auto budget = heterodyne::noise_budget(spec, prep);
  GridSpec grid = parse_grid_arg(grid_text, prep, budget.gamma_c, 256);
  auto phase = heterodyne::feasible_phase(prep, budget.gamma_c, grid, bins);

  std::cout << "gamma_C = " << fmt17(budget.gamma_c) << ", commutator scale 2wI/w1 = "
            << fmt17(budget.commutator_scale) << "\n";
  std::cout << "added noise per quadrature at gamma_C: q " << fmt17(budget.added_noise_q)
            << ", p " << fmt17(budget.added_noise_p) << "\n";
  std::cout << (budget.matches_standard
                    ? "no added noise vs standard heterodyne (budgets identical)\n"
                    : "budgets differ from standard heterodyne\n");
  std::cout << "circular mean " << fmt17(phase.circular_mean) << ", circular variance "
            << fmt17(phase.circular_variance) << "\n";

  ensure_dir(out_dir);
  fs::path dir(out_dir);
  json j = json::parse(heterodyne::budget_to_json(budget));
  j["phase"] = json::parse(heterodyne::phase_to_json(phase));
  write_file((dir / "heterodyne.json").string(), j.dump(2) + "\n");
  write_file((dir / "phase.csv").string(), heterodyne::phase_to_csv(phase));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"three-mode joint measurement of a1 + gamma a2^dag"};
  app.require_subcommand(1);

  std::string gamma_text = "0.6", rho1 = "vacuum", rho2 = "vacuum", sigma = "vacuum";
  std::string grid_text = "auto", out_dir = "out", config_path;
  long long samples = 0;
  std::uint64_t seed = 0;
  int n_max = 12, buffer = 3, polar_nmax = 8, bins = 360;
  double omega1 = 0.0, omega_i = 0.0;

  auto* dec = app.add_subcommand("decompose", "reduce gamma and print the network");
  dec->add_option("--gamma", gamma_text, "gamma as 're' or 're,im'");
  std::string dec_out;
  dec->add_option("--out", dec_out, "directory for decompose.json");

  auto* sim = app.add_subcommand("simulate", "outcome density, moments, samples");
  sim->add_option("--config", config_path, "flat key=value config file");
  sim->add_option("--gamma", gamma_text);
  sim->add_option("--rho1", rho1, "prep for mode 1");
  sim->add_option("--rho2", rho2, "prep for mode 2");
  sim->add_option("--sigma", sigma, "prep for the ancilla");
  sim->add_option("--grid", grid_text, "'auto' or xmin,xmax,ymin,ymax,nx,ny");
  sim->add_option("--samples", samples);
  auto* seed_opt = sim->add_option("--seed", seed);
  sim->add_option("--out", out_dir);

  auto* ver = app.add_subcommand("verify", "truncated-Fock oracle checks");
  double ver_gamma = 0.6;
  ver->add_option("--gamma", ver_gamma);
  ver->add_option("--nmax", n_max);
  ver->add_option("--buffer", buffer);
  ver->add_option("--polar-nmax", polar_nmax, "cutoff for the polar check, 0 disables");
  std::string ver_out;
  ver->add_option("--out", ver_out, "directory for verify.json");

  auto* het = app.add_subcommand("heterodyne", "Caves-gamma noise budget and phase");
  het->add_option("--omega1", omega1, "signal frequency")->required();
  het->add_option("--omegaI", omega_i, "intermediate frequency")->required();
  het->add_option("--rho1", rho1);
  het->add_option("--rho2", rho2);
  het->add_option("--sigma", sigma);
  het->add_option("--grid", grid_text);
  het->add_option("--bins", bins);
  het->add_option("--out", out_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  try {
    bool config_seed = false;
    if (*sim && !config_path.empty()) {
      auto kv = read_config(config_path);
      auto pick = [&](const char* key, std::string& target, const CLI::Option* opt) {
        if (kv.count(key) && (opt == nullptr || opt->count() == 0)) target = kv[key];
      };
      pick("gamma", gamma_text, sim->get_option("--gamma"));
      pick("rho1", rho1, sim->get_option("--rho1"));
      pick("rho2", rho2, sim->get_option("--rho2"));
      pick("sigma", sigma, sim->get_option("--sigma"));
      pick("grid", grid_text, sim->get_option("--grid"));
      pick("out", out_dir, sim->get_option("--out"));
      try {
        if (kv.count("samples") && sim->get_option("--samples")->count() == 0) {
          samples = std::stoll(kv["samples"]);
        }
        if (kv.count("seed") && seed_opt->count() == 0) {
          seed = std::stoull(kv["seed"]);
          config_seed = true;
        }
      } catch (const std::exception&) {
        throw domain_error("config: samples/seed must be integers");
      }
    }
    if (*dec) return cmd_decompose(gamma_text, dec_out);
    if (*sim) {
      return cmd_simulate(gamma_text, rho1, rho2, sigma, grid_text, samples, seed,
                          seed_opt->count() > 0 || config_seed, out_dir);
    }
    if (*ver) return cmd_verify(ver_gamma, n_max, buffer, polar_nmax, ver_out);
    if (*het) {
      return cmd_heterodyne(omega1, omega_i, rho1, rho2, sigma, grid_text, bins, out_dir);
    }
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const coverage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const tolerance_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTolerance;
  } catch (const truncation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTolerance;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
