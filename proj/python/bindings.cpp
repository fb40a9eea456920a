#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "dimertrap/dimer.hpp"
#include "dimertrap/fock.hpp"
#include "dimertrap/gpe.hpp"
#include "dimertrap/normal.hpp"
#include "dimertrap/semiclassics.hpp"
#include "dimertrap/sweep.hpp"
#include "dimertrap/version.hpp"

namespace py = pybind11;
using namespace dimertrap;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<double> series_times(const TimeSeries& s) {
  py::array_t<double> out(static_cast<py::ssize_t>(s.size()));
  auto* data = out.mutable_data();
  for (std::size_t i = 0; i < s.size(); ++i) data[i] = s.time_at(i);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "double-well condensate self-trapping toolkit";
  m.attr("__version__") = version;

  py::register_exception<ValidationError>(m, "ValidationError",
                                          PyExc_ValueError);
  py::register_exception<IntegrationError>(m, "IntegrationError",
                                           PyExc_RuntimeError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);

  py::class_<DimerParams>(m, "DimerParams")
      .def(py::init([](double j, double u, int n, double eps_left,
                       double eps_right, double hbar) {
             DimerParams p{j, u, n, eps_left, eps_right, hbar};
             p.validate();
             return p;
           }),
           py::arg("j") = 1.0, py::arg("u") = 0.0, py::arg("n") = 1,
           py::arg("eps_left") = 0.0, py::arg("eps_right") = 0.0,
           py::arg("hbar") = 1.0)
      .def_readonly("j", &DimerParams::j)
      .def_readonly("u", &DimerParams::u)
      .def_readonly("n", &DimerParams::n_particles)
      .def_readonly("eps_left", &DimerParams::eps_left)
      .def_readonly("eps_right", &DimerParams::eps_right)
      .def_readonly("hbar", &DimerParams::hbar)
      .def("lambda_", &DimerParams::lambda)
      .def("t0", &DimerParams::t0)
      .def("rabi_frequency", &DimerParams::rabi_frequency)
      .def_static("from_lambda", &DimerParams::from_lambda, py::arg("lambda_"),
                  py::arg("n") = 2, py::arg("j") = 1.0)
      .def("__repr__", [](const DimerParams& p) {
        return "DimerParams(j=" + std::to_string(p.j) +
               ", u=" + std::to_string(p.u) +
               ", n=" + std::to_string(p.n_particles) + ")";
      });

  py::class_<MeanFieldState>(m, "MeanFieldState")
      .def(py::init<std::complex<double>, std::complex<double>>(),
           py::arg("c_left"), py::arg("c_right"))
      .def_static("all_left", &MeanFieldState::all_left)
      .def_property_readonly("c_left", &MeanFieldState::c_left)
      .def_property_readonly("c_right", &MeanFieldState::c_right)
      .def("p", &MeanFieldState::p)
      .def("z", &MeanFieldState::z)
      .def("theta", &MeanFieldState::theta);

  m.def("meanfield_energy_per_particle", &meanfield_energy_per_particle,
        py::arg("state"), py::arg("params"));

  // mean-field dynamics
  py::class_<GpeTrajectory>(m, "GpeTrajectory")
      .def_property_readonly(
          "t", [](const GpeTrajectory& g) { return series_times(g.z); })
      .def_property_readonly(
          "z", [](const GpeTrajectory& g) { return to_array(g.z.values); })
      .def_readonly("dt_used", &GpeTrajectory::dt_used)
      .def_readonly("halvings", &GpeTrajectory::halvings)
      .def_readonly("norm_drift", &GpeTrajectory::norm_drift)
      .def_readonly("energy_drift", &GpeTrajectory::energy_drift);

  m.def(
      "integrate_gpe",
      [](const MeanFieldState& initial, const DimerParams& params, double t_end,
         double dt, int sample_every) {
        return integrate_gpe(initial, params, {dt, t_end, sample_every});
      },
      py::arg("initial"), py::arg("params"), py::arg("t_end"),
      py::arg("dt") = 0.0, py::arg("sample_every") = 0);
  m.def("rabi_amplitude", &rabi_amplitude, py::arg("t"), py::arg("params"));
  m.def("rabi_population", &rabi_population, py::arg("t"), py::arg("params"));
  m.def(
      "meanfield_zbar",
      [](const DimerParams& params, double window_start, double window_end,
         double dt) {
        IntegratorConfig cfg;
        cfg.dt = dt;
        return meanfield_zbar(
            params, window_start,
            window_end < 0.0 ? 100.0 * params.t0() : window_end, cfg);
      },
      py::arg("params"), py::arg("window_start") = 0.0,
      py::arg("window_end") = -1.0, py::arg("dt") = 0.0);

  // exact dynamics
  py::class_<FockHamiltonian>(m, "FockHamiltonian")
      .def_property_readonly(
          "diag",
          [](const FockHamiltonian& h) {
            return to_array({h.diag.data(), h.diag.data() + h.diag.size()});
          })
      .def_property_readonly(
          "offdiag",
          [](const FockHamiltonian& h) {
            return to_array(
                {h.offdiag.data(), h.offdiag.data() + h.offdiag.size()});
          })
      .def_property_readonly("n", &FockHamiltonian::n_particles);
  m.def("build_hamiltonian", &build_hamiltonian, py::arg("params"),
        py::arg("particle_cap") = default_particle_cap);

  m.def(
      "exact_imbalance_trajectory",
      [](const DimerParams& params, py::array_t<double> times) {
        const SpectralPropagator prop(build_hamiltonian(params));
        const auto view = times.unchecked<1>();
        std::vector<double> grid(view.shape(0));
        for (py::ssize_t i = 0; i < view.shape(0); ++i) grid[i] = view(i);
        return to_array(prop.imbalance_trajectory(
            FockVector::all_left(params.n_particles), grid));
      },
      py::arg("params"), py::arg("times"),
      "z(t) of the all-left start propagated exactly");
  m.def("exact_zbar", &exact_zbar, py::arg("params"),
        py::arg("window_start") = 0.0, py::arg("window_end") = -1.0,
        py::arg("dt_sample") = 0.0);

  // closed forms and fluctuation model
  m.def("zbar_meanfield_closed", &zbar_meanfield_closed, py::arg("lambda_"));
  m.def("cubic_residual", &cubic_residual, py::arg("zbar"), py::arg("lambda_"));
  m.def("zbar_fluct", &zbar_fluct, py::arg("lambda_"), py::arg("delta_zbar"));
  m.def("zbar_closed_form", &zbar_closed_form, py::arg("lambda_"), py::arg("n"));
  m.def("zbar_closed_form_corrected", &zbar_closed_form_corrected,
        py::arg("lambda_"), py::arg("n"));
  m.def(
      "zbar_mc_average",
      [](double lambda, int n, std::size_t samples, std::uint64_t seed,
         bool corrected) {
        const McEstimate est = zbar_mc_average(
            lambda, n, samples, seed,
            corrected ? TailHandling::corrected : TailHandling::truncated);
        return py::make_tuple(est.mean, est.std_error);
      },
      py::arg("lambda_"), py::arg("n"), py::arg("samples") = 1000000,
      py::arg("seed") = 1, py::arg("corrected") = false,
      "returns (mean, standard error)");
  m.def(
      "lambda_critical",
      [](int n, double alpha) {
        const CriticalInteraction crit = lambda_critical(n, alpha);
        return py::make_tuple(crit.full, crit.asymptotic);
      },
      py::arg("n"), py::arg("alpha"), "returns (full, large-N asymptote)");
  m.def("number_fluctuation_std", &number_fluctuation_std, py::arg("n"),
        py::arg("p"));
  m.def("heuristic_p_amp", &heuristic_p_amp, py::arg("lambda_"),
        py::arg("p_bar"));
  m.def("heuristic_p_of_t", &heuristic_p_of_t, py::arg("t"), py::arg("lambda_"),
        py::arg("p_bar"), py::arg("params"));
  m.def("normal_cdf", &normal_cdf, py::arg("x"));
  m.def("normal_pdf", &normal_pdf, py::arg("x"));
  m.def("normal_quantile", &normal_quantile, py::arg("q"));

  // sweeps
  py::enum_<Method>(m, "Method")
      .value("meanfield_numeric", Method::meanfield_numeric)
      .value("meanfield_closed", Method::meanfield_closed)
      .value("exact_quantum", Method::exact_quantum)
      .value("semiclassical_closed", Method::semiclassical_closed)
      .value("semiclassical_mc", Method::semiclassical_mc);

  py::class_<SweepCell>(m, "SweepCell")
      .def_readonly("lambda_", &SweepCell::lambda)
      .def_readonly("n", &SweepCell::n_particles)
      .def_readonly("method", &SweepCell::method)
      .def_readonly("zbar", &SweepCell::zbar)
      .def_readonly("err", &SweepCell::err)
      .def_readonly("ok", &SweepCell::ok)
      .def_readonly("detail", &SweepCell::detail);

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("cells", &SweepResult::cells)
      .def("failed_cells", &SweepResult::failed_cells);

  m.def(
      "run_sweep",
      [](std::vector<double> lambda_grid, std::vector<int> n_list,
         std::vector<std::string> methods, double window_start_t0,
         double window_end_t0, std::size_t mc_samples, std::uint64_t seed) {
        SweepConfig cfg;
        cfg.lambda_grid = std::move(lambda_grid);
        cfg.n_list = std::move(n_list);
        for (const auto& name : methods)
          cfg.methods.push_back(method_from_string(name));
        cfg.window_start_t0 = window_start_t0;
        cfg.window_end_t0 = window_end_t0;
        cfg.mc_samples = mc_samples;
        cfg.seed = seed;
        return run_sweep(cfg);
      },
      py::arg("lambda_grid"), py::arg("n_list") = std::vector<int>{},
      py::arg("methods") = std::vector<std::string>{"meanfield-closed"},
      py::arg("window_start_t0") = 0.0, py::arg("window_end_t0") = 100.0,
      py::arg("mc_samples") = 100000, py::arg("seed") = 1);

  m.def(
      "reproduce_figure",
      [](const std::string& name, const std::filesystem::path& dir) {
        const ReproduceOutcome outcome = reproduce_figure(name, dir);
        return py::make_tuple(outcome.files, outcome.failed_cells);
      },
      py::arg("name"), py::arg("dir") = std::filesystem::path("."),
      "returns (written files, failed cell count)");
}
