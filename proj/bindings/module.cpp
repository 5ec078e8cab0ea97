// Python bindings for the core library.  Estimates come back as small
// objects with .value/.se; every stochastic routine takes an explicit Rng so
// results are reproducible from Python too.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ising/cavity.hpp"
#include "ising/degree_law.hpp"
#include "ising/errors.hpp"
#include "ising/exact.hpp"
#include "ising/fields.hpp"
#include "ising/graph.hpp"
#include "ising/mcmc.hpp"
#include "ising/rng.hpp"
#include "ising/thermo.hpp"
#include "ising/tree.hpp"
#include "ising/verify.hpp"

namespace py = pybind11;

namespace {

std::string estimate_repr(const ising::Estimate& e) {
  std::ostringstream os;
  os << "Estimate(value=" << e.value << ", se=" << e.se << ")";
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_pyising, m) {
  m.doc() =
      "Ferromagnetic Ising model on sparse random graphs: exact enumeration, "
      "cavity fixed points, thermodynamic limits, and Glauber dynamics";

  py::register_exception<ising::NotConvergedError>(m, "NotConverged");
  py::register_exception<ising::Error>(m, "IsingError");

  py::class_<ising::Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def_static("stream", &ising::Rng::stream, py::arg("seed"),
                  py::arg("stream_id"))
      .def("uniform", &ising::Rng::uniform);

  // ---- degree laws ----
  py::class_<ising::DegreeLaw>(m, "DegreeLaw")
      .def_static("regular", &ising::DegreeLaw::regular, py::arg("k"))
      .def_static("poisson", &ising::DegreeLaw::poisson, py::arg("mean"),
                  py::arg("k_max") = 0)
      .def_static("power_law", &ising::DegreeLaw::power_law, py::arg("tau"),
                  py::arg("k_min") = 1, py::arg("k_max") = 1000000)
      .def_static("from_pmf", &ising::DegreeLaw::from_pmf, py::arg("pmf"))
      .def_property_readonly("mean", &ising::DegreeLaw::mean)
      .def_property_readonly("pmf",
                             [](const ising::DegreeLaw& law) { return law.pmf(); })
      .def_property_readonly("max_degree", &ising::DegreeLaw::max_degree)
      .def("prob", &ising::DegreeLaw::prob, py::arg("k"))
      .def("sample",
           [](const ising::DegreeLaw& law, std::size_t n, ising::Rng& rng) {
             return law.sample(rng, n);
           },
           py::arg("n"), py::arg("rng"));
  m.def("size_biased", &ising::size_biased, py::arg("law"),
        "Offspring law rho_k = (k+1) P_{k+1} / mean(P)");
  m.def("tail_sum", &ising::tail_sum, py::arg("law"), py::arg("k"));
  py::class_<ising::TailBound>(m, "TailBound")
      .def_readonly("c", &ising::TailBound::c)
      .def_readonly("k_at_max", &ising::TailBound::k_at_max);
  m.def("verify_strongly_finite_mean", &ising::verify_strongly_finite_mean,
        py::arg("law"), py::arg("tau"),
        "Smallest c with tail(k) <= c k^{-(tau-1)} for all k >= 1");
  m.def("critical_beta", &ising::critical_beta, py::arg("offspring_mean"),
        "atanh(1/mean) for mean > 1, +inf otherwise");

  // ---- graphs ----
  py::class_<ising::MultiGraph>(m, "Graph")
      .def_static("from_edges", &ising::MultiGraph::from_edges, py::arg("n"),
                  py::arg("edges"))
      .def_readonly("n", &ising::MultiGraph::n)
      .def_readonly("edges", &ising::MultiGraph::edges)
      .def_readonly("degrees", &ising::MultiGraph::degree)
      .def_readonly("loops", &ising::MultiGraph::loops)
      .def("num_edges", &ising::MultiGraph::num_edges);
  m.def("configuration_model",
        [](const ising::DegreeLaw& law, std::uint32_t n, ising::Rng& rng) {
          return ising::configuration_model(law, n, rng);
        },
        py::arg("law"), py::arg("n"), py::arg("rng"));
  m.def("configuration_model_from_degrees",
        [](std::vector<std::uint32_t> degrees, ising::Rng& rng) {
          return ising::configuration_model(std::move(degrees), rng);
        },
        py::arg("degrees"), py::arg("rng"));
  m.def("erdos_renyi", &ising::erdos_renyi, py::arg("n"),
        py::arg("mean_degree"), py::arg("rng"));
  m.def("sparsity_profile", &ising::sparsity_profile, py::arg("graph"),
        py::arg("ell"));
  m.def("edge_density", &ising::edge_density, py::arg("graph"));

  // ---- exact enumeration ----
  py::class_<ising::IsingInstance>(m, "Instance")
      .def(py::init([](ising::MultiGraph g, double beta,
                       std::vector<double> fields,
                       std::vector<std::uint8_t> plus_clamped) {
             ising::IsingInstance inst;
             inst.graph = std::move(g);
             inst.beta = beta;
             inst.fields = std::move(fields);
             inst.plus_clamped = std::move(plus_clamped);
             return inst;
           }),
           py::arg("graph"), py::arg("beta"), py::arg("fields"),
           py::arg("plus_clamped") = std::vector<std::uint8_t>{})
      .def_readonly("graph", &ising::IsingInstance::graph)
      .def_readonly("beta", &ising::IsingInstance::beta)
      .def_readonly("fields", &ising::IsingInstance::fields);
  py::class_<ising::ExactSolution>(m, "ExactSolution")
      .def_readonly("log_z", &ising::ExactSolution::log_z)
      .def_readonly("pressure", &ising::ExactSolution::pressure)
      .def_readonly("magnetization", &ising::ExactSolution::magnetization)
      .def_readonly("edge_correlation", &ising::ExactSolution::edge_correlation)
      .def_readonly("susceptibility", &ising::ExactSolution::susceptibility);
  m.def("solve_exact", &ising::solve_exact, py::arg("instance"),
        "Full enumeration (n <= 24): ground truth for small graphs");
  m.def("susceptibility_exact", &ising::susceptibility_exact,
        py::arg("instance"));

  // ---- cavity fixed point ----
  py::class_<ising::FieldPopulation>(m, "FieldPopulation")
      .def_readonly("samples", &ising::FieldPopulation::samples)
      .def_readonly("beta", &ising::FieldPopulation::beta)
      .def_readonly("B", &ising::FieldPopulation::B)
      .def_readonly("iteration", &ising::FieldPopulation::iteration)
      .def("__len__", &ising::FieldPopulation::size);
  py::class_<ising::FixedPointResult>(m, "FixedPointResult")
      .def_readonly("population", &ising::FixedPointResult::population)
      .def_readonly("plus_population",
                    &ising::FixedPointResult::plus_population)
      .def_readonly("w1_residual", &ising::FixedPointResult::w1_residual)
      .def_readonly("bracket_gap", &ising::FixedPointResult::bracket_gap)
      .def_readonly("iterations", &ising::FixedPointResult::iterations)
      .def_readonly("converged", &ising::FixedPointResult::converged)
      .def_readonly("order_violations",
                    &ising::FixedPointResult::order_violations)
      .def_readonly("quantile_history",
                    &ising::FixedPointResult::quantile_history);
  m.def("solve",
        [](const ising::DegreeLaw& offspring, double beta, double B,
           std::size_t pool_size, std::uint32_t t_max, double tol,
           std::vector<double> track_quantiles, ising::Rng& rng) {
          ising::SolveOptions opt;
          opt.pool_size = pool_size;
          opt.t_max = t_max;
          opt.tol = tol;
          opt.track_quantiles = std::move(track_quantiles);
          return ising::solve(offspring, beta, B, opt, rng);
        },
        py::arg("offspring_law"), py::arg("beta"), py::arg("B"),
        py::arg("pool_size") = 100000, py::arg("t_max") = 2000,
        py::arg("tol") = 1e-3, py::arg("track_quantiles") = std::vector<double>{},
        py::arg("rng"),
        "Bracketing population-dynamics solve of the cavity fixed point");
  m.def("iterate", &ising::iterate, py::arg("population"),
        py::arg("offspring_law"), py::arg("rng"),
        "One fresh-randomness population-dynamics step");
  m.def("make_population",
        [](std::size_t n, double beta, double B, bool plus_start) {
          return ising::make_population(
              n, beta, B,
              plus_start ? ising::Boundary::plus_bc : ising::Boundary::free_bc);
        },
        py::arg("n"), py::arg("beta"), py::arg("B"),
        py::arg("plus_start") = false);
  m.def("scalar_bethe_fixed_point", &ising::scalar_bethe_fixed_point,
        py::arg("offspring"), py::arg("beta"), py::arg("B"),
        py::arg("tol") = 1e-13);
  m.def("w1_distance",
        [](const std::vector<double>& a, const std::vector<double>& b) {
          return ising::w1_distance(a, b);
        },
        py::arg("a"), py::arg("b"));

  // ---- limiting thermodynamics ----
  py::class_<ising::Estimate>(m, "Estimate")
      .def_readonly("value", &ising::Estimate::value)
      .def_readonly("se", &ising::Estimate::se)
      .def("__repr__", &estimate_repr);
  m.def("pressure", &ising::pressure, py::arg("population"),
        py::arg("root_law"), py::arg("beta"), py::arg("B"),
        py::arg("mc_samples"), py::arg("rng"));
  m.def("magnetization", &ising::magnetization, py::arg("population"),
        py::arg("root_law"), py::arg("beta"), py::arg("B"),
        py::arg("mc_samples"), py::arg("rng"));
  m.def("internal_energy", &ising::internal_energy, py::arg("population"),
        py::arg("degree_mean"), py::arg("beta"), py::arg("mc_samples"),
        py::arg("rng"));
  py::class_<ising::IdentityCheck>(m, "IdentityCheck")
      .def_readonly("lhs", &ising::IdentityCheck::lhs)
      .def_readonly("rhs", &ising::IdentityCheck::rhs)
      .def_readonly("diff", &ising::IdentityCheck::diff);
  m.def("fixed_point_identity_check", &ising::fixed_point_identity_check,
        py::arg("population"), py::arg("root_law"), py::arg("offspring_law"),
        py::arg("samples"), py::arg("rng"));
  py::class_<ising::BethePoint>(m, "BethePoint")
      .def_readonly("h", &ising::BethePoint::h)
      .def_readonly("phi", &ising::BethePoint::phi)
      .def_readonly("M", &ising::BethePoint::M)
      .def_readonly("U", &ising::BethePoint::U);
  m.def("bethe_regular_point", &ising::bethe_regular_point, py::arg("k"),
        py::arg("beta"), py::arg("B"), py::arg("tol") = 1e-13,
        "Deterministic limit values on the k-regular tree");
  m.def("bethe_susceptibility_fd", &ising::bethe_susceptibility_fd,
        py::arg("k"), py::arg("beta"), py::arg("B"), py::arg("delta"));

  // ---- Glauber dynamics ----
  py::class_<ising::PressurePoint>(m, "PressurePoint")
      .def_readonly("beta", &ising::PressurePoint::beta)
      .def_readonly("energy", &ising::PressurePoint::energy)
      .def_readonly("tau_int", &ising::PressurePoint::tau_int);
  py::class_<ising::PressureResult>(m, "PressureResult")
      .def_readonly("psi", &ising::PressureResult::psi)
      .def_readonly("se", &ising::PressureResult::se)
      .def_readonly("bias_estimate", &ising::PressureResult::bias_estimate)
      .def_readonly("points", &ising::PressureResult::points);
  m.def("pressure_by_integration",
        [](const ising::MultiGraph& g, double beta, double B,
           double grid_spacing, std::size_t sweeps_per_point, ising::Rng& rng) {
          ising::IntegrationOptions opt;
          opt.grid_spacing = grid_spacing;
          opt.sweeps_per_point = sweeps_per_point;
          return ising::pressure_by_integration(g, beta, B, opt, rng);
        },
        py::arg("graph"), py::arg("beta"), py::arg("B"),
        py::arg("grid_spacing") = 0.05, py::arg("sweeps_per_point") = 512,
        py::arg("rng"),
        "Finite-graph pressure by thermodynamic integration of Glauber "
        "edge-energy averages");

  // ---- verification suites ----
  py::class_<ising::SuiteReport>(m, "SuiteReport")
      .def_readonly("name", &ising::SuiteReport::name)
      .def_readonly("checks", &ising::SuiteReport::checks)
      .def_readonly("failures", &ising::SuiteReport::failures)
      .def_readonly("worst", &ising::SuiteReport::worst)
      .def_readonly("detail", &ising::SuiteReport::detail)
      .def_property_readonly("passed", &ising::SuiteReport::passed);
  m.def("run_verification",
        [](std::size_t instances, std::uint32_t max_n, std::size_t trees,
           std::size_t pool_size, ising::Rng& rng) {
          ising::VerifyOptions opt;
          opt.instances = instances;
          opt.max_n = max_n;
          opt.trees = trees;
          opt.pool_size = pool_size;
          return ising::run_verification(opt, rng);
        },
        py::arg("instances") = 100, py::arg("max_n") = 10,
        py::arg("trees") = 100, py::arg("pool_size") = 20000, py::arg("rng"));
}
