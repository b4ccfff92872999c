// Copyright 2026 zgamma contributors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zgamma/errors.hpp"
#include "zgamma/fock.hpp"
#include "zgamma/grid.hpp"
#include "zgamma/heterodyne.hpp"
#include "zgamma/measurement.hpp"
#include "zgamma/network.hpp"
#include "zgamma/states.hpp"

namespace py = pybind11;
using namespace zgamma;

namespace {

py::array_t<double> density_array(const OutcomeGrid& g) {
  py::array_t<double> out({g.spec.ny, g.spec.nx});
  auto buf = out.mutable_unchecked<2>();
  for (int j = 0; j < g.spec.ny; ++j) {
    for (int i = 0; i < g.spec.nx; ++i) {
      buf(j, i) = g.value(i, j);
    }
  }
  return out;
}

measurement::Preparation make_prep(const std::string& rho1, const std::string& rho2,
                                   const std::string& sigma) {
  return {states::parse_prep(rho1), states::parse_prep(rho2), states::parse_prep(sigma)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Joint measurement of the two-boson operator a1 + gamma a2^dag via a "
            "three-mode linear network: outcome statistics, noise accounting and "
            "truncated-Fock verification.";

  py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);
  py::register_exception<coverage_error>(m, "CoverageError", PyExc_RuntimeError);
  py::register_exception<truncation_error>(m, "TruncationError", PyExc_RuntimeError);
  py::register_exception<tolerance_error>(m, "ToleranceError", PyExc_RuntimeError);

  // --- network ---
  py::class_<network::GammaParam>(m, "GammaParam")
      .def_readonly("raw", &network::GammaParam::raw)
      .def_readonly("reduced", &network::GammaParam::reduced)
      .def_readonly("phase", &network::GammaParam::phase)
      .def_readonly("swapped", &network::GammaParam::swapped)
      .def_readonly("scale", &network::GammaParam::scale)
      .def("reconstruct", &network::GammaParam::reconstruct);
  m.def("reduce_gamma", &network::reduce_gamma, py::arg("gamma"));

  py::class_<network::MixingMatrix>(m, "MixingMatrix")
      .def_readonly("gamma", &network::MixingMatrix::gamma)
      .def_readonly("kappa", &network::MixingMatrix::kappa)
      .def_property_readonly("entries",
                             [](const network::MixingMatrix& mm) { return mm.entries; })
      .def("to_json", [](const network::MixingMatrix& mm) { return network::to_json(mm); });
  m.def("build_mixing_matrix", &network::build_mixing_matrix, py::arg("gamma"));

  py::class_<network::Su2Plan>(m, "Su2Plan")
      .def_readonly("theta12", &network::Su2Plan::theta12)
      .def_readonly("theta13", &network::Su2Plan::theta13)
      .def_readonly("theta23", &network::Su2Plan::theta23)
      .def_readonly("pi_rotation_mode", &network::Su2Plan::pi_rotation_mode)
      .def_readonly("ordering", &network::Su2Plan::ordering);
  m.def("decompose", &network::decompose, py::arg("gamma"));
  m.def("su2_block", &network::su2_block, py::arg("theta"), py::arg("j"), py::arg("k"));
  m.def("compose_plan", &network::compose_plan, py::arg("plan"));

  // --- states (string mini-language front end) ---
  // the variant alternatives are registered so StatePrep crosses the boundary
  py::class_<states::Vacuum>(m, "Vacuum")
      .def(py::init<>())
      .def("__repr__", [](const states::Vacuum&) { return std::string("<vacuum>"); });
  py::class_<states::Coherent>(m, "Coherent")
      .def(py::init<std::complex<double>>(), py::arg("alpha"))
      .def_readonly("alpha", &states::Coherent::alpha)
      .def("__repr__", [](const states::Coherent& s) {
        return "<" + states::describe(states::StatePrep(s)) + ">";
      });
  py::class_<states::NumberDiagonal>(m, "NumberDiagonal")
      .def(py::init<std::vector<double>>(), py::arg("weights"))
      .def_readonly("weights", &states::NumberDiagonal::weights)
      .def("__repr__", [](const states::NumberDiagonal& s) {
        return "<number-diagonal, " + std::to_string(s.weights.size()) + " weights>";
      });
  py::class_<states::GaussianSingleMode>(m, "GaussianSingleMode")
      .def(py::init([](double mean_q, double mean_p, double var_q, double var_p,
                       double cov_qp) {
             states::GaussianSingleMode g{mean_q, mean_p, var_q, var_p, cov_qp};
             states::validate(states::StatePrep(g));
             return g;
           }),
           py::arg("mean_q") = 0.0, py::arg("mean_p") = 0.0, py::arg("var_q") = 0.5,
           py::arg("var_p") = 0.5, py::arg("cov_qp") = 0.0)
      .def("__repr__", [](const states::GaussianSingleMode& s) {
        return "<" + states::describe(states::StatePrep(s)) + ">";
      });
  m.def("prep", &states::parse_prep, py::arg("text"),
        "Parse 'vacuum', 'coherent:re,im', 'number:m', 'thermal:z', 'phase:z', "
        "'poisson:a2' or 'weights:p0,p1,...'");
  m.def("char_fn", &states::char_fn, py::arg("prep"), py::arg("lam"));
  m.def("wigner", &states::wigner, py::arg("prep"), py::arg("z"));
  m.def("laguerre_weighted_sum",
        [](const std::vector<double>& w, double x) {
          return states::laguerre_weighted_sum(w, x);
        },
        py::arg("weights"), py::arg("x"));
  py::class_<states::QuadStats>(m, "QuadStats")
      .def_readonly("mean_q", &states::QuadStats::mean_q)
      .def_readonly("mean_p", &states::QuadStats::mean_p)
      .def_readonly("var_q", &states::QuadStats::var_q)
      .def_readonly("var_p", &states::QuadStats::var_p)
      .def_readonly("cov_qp", &states::QuadStats::cov_qp);
  m.def("quad_stats", &states::quad_stats, py::arg("prep"));

  // --- grids ---
  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](double x_min, double x_max, double y_min, double y_max, int nx,
                       int ny) {
             GridSpec g{x_min, x_max, y_min, y_max, nx, ny};
             g.validate();
             return g;
           }),
           py::arg("x_min"), py::arg("x_max"), py::arg("y_min"), py::arg("y_max"),
           py::arg("nx") = 256, py::arg("ny") = 256)
      .def_readonly("x_min", &GridSpec::x_min)
      .def_readonly("x_max", &GridSpec::x_max)
      .def_readonly("y_min", &GridSpec::y_min)
      .def_readonly("y_max", &GridSpec::y_max)
      .def_readonly("nx", &GridSpec::nx)
      .def_readonly("ny", &GridSpec::ny);

  py::class_<OutcomeGrid>(m, "OutcomeGrid")
      .def_property_readonly("spec", [](const OutcomeGrid& g) { return g.spec; })
      .def_property_readonly("density", &density_array,
                             "Clamped density, shape (ny, nx), y along rows")
      .def_readonly("min_raw", &OutcomeGrid::min_raw)
      .def_readonly("quasi", &OutcomeGrid::quasi)
      .def("mass", &OutcomeGrid::mass)
      .def("to_csv", &grid_to_csv)
      .def("to_json", &grid_to_json);

  // --- measurement ---
  py::class_<measurement::Moments>(m, "Moments")
      .def_readonly("mean_q1", &measurement::Moments::mean_q1)
      .def_readonly("mean_p2", &measurement::Moments::mean_p2)
      .def_readonly("var_q1", &measurement::Moments::var_q1)
      .def_readonly("var_p2", &measurement::Moments::var_p2)
      .def_readonly("cov_q1p2", &measurement::Moments::cov_q1p2);

  m.def("moment_generating_fn",
        [](const std::string& r1, const std::string& r2, const std::string& s, double gamma,
           std::complex<double> lam) {
          return measurement::moment_generating_fn(make_prep(r1, r2, s), gamma, lam);
        },
        py::arg("rho1"), py::arg("rho2"), py::arg("sigma"), py::arg("gamma"), py::arg("lam"));
  m.def("predicted_moments",
        [](const std::string& r1, const std::string& r2, const std::string& s, double gamma) {
          return measurement::predicted_moments(make_prep(r1, r2, s), gamma);
        },
        py::arg("rho1"), py::arg("rho2"), py::arg("sigma"), py::arg("gamma"));
  m.def("auto_grid",
        [](const std::string& r1, const std::string& r2, const std::string& s, double gamma,
           int n) { return measurement::auto_grid(make_prep(r1, r2, s), gamma, n); },
        py::arg("rho1"), py::arg("rho2"), py::arg("sigma"), py::arg("gamma"),
        py::arg("n") = 256);
  m.def("outcome_density",
        [](const std::string& r1, const std::string& r2, const std::string& s, double gamma,
           std::optional<GridSpec> grid, int n) {
          auto prep = make_prep(r1, r2, s);
          GridSpec g = grid ? *grid : measurement::auto_grid(prep, gamma, n);
          return measurement::outcome_density(prep, gamma, g);
        },
        py::arg("rho1"), py::arg("rho2"), py::arg("sigma"), py::arg("gamma"),
        py::arg("grid") = py::none(), py::arg("n") = 256);
  m.def("h_density",
        [](const std::string& r1, const std::string& r2, double gamma, const GridSpec& g) {
          return measurement::h_density(states::parse_prep(r1), states::parse_prep(r2),
                                        gamma, g);
        },
        py::arg("rho1"), py::arg("rho2"), py::arg("gamma"), py::arg("grid"));
  m.def("convolution_density",
        [](const std::string& r1, const std::string& r2, const std::string& s, double gamma,
           const GridSpec& g) {
          return measurement::convolution_density(make_prep(r1, r2, s), gamma, g);
        },
        py::arg("rho1"), py::arg("rho2"), py::arg("sigma"), py::arg("gamma"), py::arg("grid"));
  m.def("empirical_moments", &measurement::empirical_moments, py::arg("grid"));
  m.def("sample_outcomes",
        [](const OutcomeGrid& grid, std::int64_t n, std::uint64_t seed) {
          auto samples = measurement::sample_outcomes(grid, n, seed);
          py::array_t<std::complex<double>> out(static_cast<py::ssize_t>(samples.size()));
          std::copy(samples.begin(), samples.end(), out.mutable_data());
          return out;
        },
        py::arg("grid"), py::arg("n"), py::arg("seed"));

  py::class_<measurement::NoiseExcessReport>(m, "NoiseExcessReport")
      .def_readonly("gamma", &measurement::NoiseExcessReport::gamma)
      .def_readonly("intrinsic_var_x", &measurement::NoiseExcessReport::intrinsic_var_x)
      .def_readonly("intrinsic_var_y", &measurement::NoiseExcessReport::intrinsic_var_y)
      .def_readonly("excess_q", &measurement::NoiseExcessReport::excess_q)
      .def_readonly("excess_p", &measurement::NoiseExcessReport::excess_p)
      .def_readonly("var_q1", &measurement::NoiseExcessReport::var_q1)
      .def_readonly("var_p2", &measurement::NoiseExcessReport::var_p2)
      .def_readonly("uncertainty_product",
                    &measurement::NoiseExcessReport::uncertainty_product)
      .def_readonly("product_lower_bound",
                    &measurement::NoiseExcessReport::product_lower_bound)
      .def_readonly("excess_positive", &measurement::NoiseExcessReport::excess_positive);
  m.def("noise_excess_check",
        [](const std::string& r1, const std::string& r2, const std::string& s, double gamma) {
          return measurement::noise_excess_check(make_prep(r1, r2, s), gamma);
        },
        py::arg("rho1"), py::arg("rho2"), py::arg("sigma"), py::arg("gamma"));

  // --- heterodyne ---
  m.def("caves_gamma",
        [](double omega1, double omega_i) {
          return heterodyne::caves_gamma({omega1, omega_i});
        },
        py::arg("omega_signal"), py::arg("omega_intermediate"));
  py::class_<heterodyne::NoiseBudget>(m, "NoiseBudget")
      .def_readonly("gamma_c", &heterodyne::NoiseBudget::gamma_c)
      .def_readonly("commutator_scale", &heterodyne::NoiseBudget::commutator_scale)
      .def_readonly("caves", &heterodyne::NoiseBudget::caves)
      .def_readonly("standard", &heterodyne::NoiseBudget::standard)
      .def_readonly("added_noise_q", &heterodyne::NoiseBudget::added_noise_q)
      .def_readonly("added_noise_p", &heterodyne::NoiseBudget::added_noise_p)
      .def_readonly("delta_vs_standard_q", &heterodyne::NoiseBudget::delta_vs_standard_q)
      .def_readonly("delta_vs_standard_p", &heterodyne::NoiseBudget::delta_vs_standard_p)
      .def_readonly("matches_standard", &heterodyne::NoiseBudget::matches_standard)
      .def("to_json", &heterodyne::budget_to_json);
  m.def("noise_budget",
        [](double omega1, double omega_i, const std::string& r1, const std::string& r2,
           const std::string& s) {
          return heterodyne::noise_budget({omega1, omega_i}, make_prep(r1, r2, s));
        },
        py::arg("omega_signal"), py::arg("omega_intermediate"), py::arg("rho1"),
        py::arg("rho2"), py::arg("sigma"));
  py::class_<heterodyne::PhaseReport>(m, "PhaseReport")
      .def_readonly("theta", &heterodyne::PhaseReport::theta)
      .def_readonly("prob", &heterodyne::PhaseReport::prob)
      .def_readonly("circular_mean", &heterodyne::PhaseReport::circular_mean)
      .def_readonly("circular_variance", &heterodyne::PhaseReport::circular_variance)
      .def("to_csv", &heterodyne::phase_to_csv);
  m.def("feasible_phase",
        [](const OutcomeGrid& grid, int bins) { return heterodyne::feasible_phase(grid, bins); },
        py::arg("grid"), py::arg("bins") = 360);

  // --- fock oracle ---
  py::class_<fock::TruncationSpec>(m, "TruncationSpec")
      .def(py::init([](int n_max, int buffer) {
             fock::TruncationSpec t{n_max, buffer};
             t.validate();
             return t;
           }),
           py::arg("n_max") = 12, py::arg("buffer") = 3)
      .def_readonly("n_max", &fock::TruncationSpec::n_max)
      .def_readonly("buffer", &fock::TruncationSpec::buffer);
  m.def("heisenberg_check",
        [](double gamma, const fock::TruncationSpec& trunc) {
          auto u = fock::build_unitary(gamma, trunc);
          return py::make_tuple(u.heisenberg_deviation, u.unitarity_deviation);
        },
        py::arg("gamma"), py::arg("trunc"),
        "Returns (heisenberg_deviation, unitarity_deviation)");
  m.def("normality_deviation", &fock::normality_deviation, py::arg("gamma"), py::arg("trunc"));
  py::class_<fock::RelativeNumberReport>(m, "RelativeNumberReport")
      .def_readonly("gamma", &fock::RelativeNumberReport::gamma)
      .def_readonly("comm_tn_deviation", &fock::RelativeNumberReport::comm_tn_deviation)
      .def_readonly("normality", &fock::RelativeNumberReport::normality)
      .def_readonly("polar_computed", &fock::RelativeNumberReport::polar_computed)
      .def_readonly("polar_rank", &fock::RelativeNumberReport::polar_rank)
      .def_readonly("polar_isometry_deviation",
                    &fock::RelativeNumberReport::polar_isometry_deviation)
      .def_readonly("polar_comm_deviation",
                    &fock::RelativeNumberReport::polar_comm_deviation)
      .def_readonly("notice", &fock::RelativeNumberReport::notice);
  m.def("relative_number_checks", &fock::relative_number_checks, py::arg("gamma"),
        py::arg("trunc"), py::arg("with_polar") = true);
  m.def("identity_defect_deviation",
        [](double gamma, int n_max) { return fock::identity_defect_deviation(gamma, n_max); },
        py::arg("gamma"), py::arg("n_max"));
  m.def("joint_density_oracle",
        [](const std::string& r1, const std::string& r2, const std::string& s, double gamma,
           const GridSpec& grid, const fock::TruncationSpec& trunc) {
          return fock::joint_density_oracle(make_prep(r1, r2, s), gamma, grid, trunc);
        },
        py::arg("rho1"), py::arg("rho2"), py::arg("sigma"), py::arg("gamma"), py::arg("grid"),
        py::arg("trunc"));

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
