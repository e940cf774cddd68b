#include "qsl/bounds.hpp"
#include "qsl/dynamics.hpp"
#include "qsl/operators.hpp"
#include "qsl/optimizer.hpp"
#include "qsl/reference.hpp"
#include "qsl/states.hpp"
#include "qsl/version.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qsl;

namespace {

TargetSpec parse_target_name(const std::string& name) {
  if (name == "ghz") return {TargetKind::Ghz, 1};
  if (name == "w") return {TargetKind::W, 1};
  if (name == "ame52") return {TargetKind::Ame52, 1};
  if (name.rfind("dicke:", 0) == 0)
    return {TargetKind::Dicke, std::stoi(name.substr(6))};
  throw std::invalid_argument("target must be ghz | w | dicke:<k> | ame52");
}

py::dict report_to_dict(const VerifyReport& r) {
  py::dict d;
  d["fidelity_at_claimed_time"] = r.fidelity_at_claimed_time;
  d["best_fidelity_in_window"] = r.best_fidelity_in_window;
  d["best_time_in_window"] = r.best_time_in_window;
  d["spectrum_min"] = r.spectrum_min;
  d["spectrum_max"] = r.spectrum_max;
  d["prefactor_normalized"] = r.prefactor_normalized;
  d["delta_h_zero_state"] = r.delta_h_zero_state;
  d["distinct_levels"] = r.distinct_levels;
  d["active_levels"] = r.active_levels;
  d["claim_met"] = r.claim_met;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Symmetry-constrained two-body qubit Hamiltonians: state targets, "
      "bandwidth-normalized dynamics, minimal-time fidelity optimization "
      "and the catalog of fastest known generators.";
  m.attr("__version__") = kVersion;

  py::register_exception<ZeroBandwidthError>(m, "ZeroBandwidthError");
  py::register_exception<CombinationNotInCatalog>(m, "CombinationNotInCatalog");

  py::enum_<Axis>(m, "Axis").value("X", Axis::X).value("Y", Axis::Y).value(
      "Z", Axis::Z);

  py::class_<InteractionGraph>(m, "InteractionGraph")
      .def_static("complete", &InteractionGraph::complete, py::arg("n"))
      .def_static("chain", &InteractionGraph::chain, py::arg("n"))
      .def_static("ring", &InteractionGraph::ring, py::arg("n"), py::arg("range"))
      .def_static("from_edges", &InteractionGraph::from_edges, py::arg("n"),
                  py::arg("edges"))
      .def_readonly("n_sites", &InteractionGraph::n_sites)
      .def_readonly("edges", &InteractionGraph::edges)
      .def("has_edge", &InteractionGraph::has_edge);

  py::class_<SymmetryClass>(m, "SymmetryClass")
      .def_static("full_permutation", &SymmetryClass::full_permutation)
      .def_static("pair_swap_product", &SymmetryClass::pair_swap_product,
                  py::arg("swaps"), "0-based disjoint transpositions")
      .def_static("unconstrained", &SymmetryClass::unconstrained)
      .def_static("three_body_diagonal", &SymmetryClass::three_body_diagonal);

  py::class_<ParameterSpace>(m, "ParameterSpace")
      .def(py::init<InteractionGraph, SymmetryClass, bool>(), py::arg("graph"),
           py::arg("symmetry"), py::arg("symmetric_couplings") = false)
      .def_property_readonly("dim", &ParameterSpace::dim)
      .def_property_readonly("parameter_names", &ParameterSpace::parameter_names)
      .def("assemble",
           [](const ParameterSpace& s, const Eigen::VectorXd& p) {
             return s.assemble(p);
           },
           py::arg("params"));

  // states
  m.def("zero_state", &zero_state, py::arg("n"));
  m.def("ghz", &ghz, py::arg("n"));
  m.def("w_state", &w_state, py::arg("n"));
  m.def("dicke", &dicke, py::arg("n"), py::arg("k"));
  m.def("ame52", &ame52);
  m.def("is_invariant",
        [](const Vector& psi, const Permutation& perm, double tol) {
          const auto r = is_invariant(psi, perm, tol);
          return py::make_tuple(r.invariant, r.residual);
        },
        py::arg("state"), py::arg("permutation"), py::arg("tol") = 1e-10,
        "permutation maps site i (0-based) to permutation[i]");

  // operators
  m.def("pauli_embed", &pauli_embed, py::arg("n"), py::arg("site"), py::arg("axis"));
  m.def("swap_operator", &swap_operator, py::arg("n"), py::arg("i"), py::arg("j"));
  m.def("three_body_hamiltonian", &three_body_hamiltonian, py::arg("h"));
  m.def("parameter_count", &parameter_count, py::arg("graph"), py::arg("symmetry"),
        py::arg("symmetric_couplings") = false);

  // dynamics
  m.def("eigendecompose",
        [](const Matrix& h) {
          const Spectrum s = eigendecompose(h);
          return py::make_tuple(s.eigenvalues, s.eigenvectors);
        },
        py::arg("hamiltonian"));
  m.def("normalize_bandwidth",
        py::overload_cast<const Matrix&>(&normalize_bandwidth),
        py::arg("hamiltonian"));
  m.def("evolve", py::overload_cast<const Matrix&, double, const Vector&>(&evolve),
        py::arg("hamiltonian"), py::arg("t"), py::arg("psi0"));
  m.def("fidelity", &fidelity, py::arg("a"), py::arg("b"));
  m.def("energy_stddev",
        py::overload_cast<const Matrix&, const Vector&>(&energy_stddev),
        py::arg("hamiltonian"), py::arg("psi"));
  m.def("component_fidelities", &component_fidelities, py::arg("psi"),
        py::arg("basis"));

  // bounds
  m.def("mt_bound", &mt_bound, py::arg("overlap"), py::arg("delta_h"));
  m.def("two_level_time", &two_level_time, py::arg("p1"), py::arg("overlap"));
  m.def("symmetric3_spectrum", &symmetric3_spectrum, py::arg("h"));
  m.def("two_eigenvalue_hxx",
        [](double hyy, double hzz, double hxy, double hyz, double hxz) {
          const auto c = two_eigenvalue_hxx(hyy, hzz, hxy, hyz, hxz);
          return py::make_tuple(c.h_xx, c.eta);
        },
        py::arg("h_yy"), py::arg("h_zz"), py::arg("h_xy"), py::arg("h_yz"),
        py::arg("h_xz"));
  m.def("ghz_two_body_time", &ghz_two_body_time, py::arg("n"));
  m.def("sequential_ghz_time", &sequential_ghz_time, py::arg("n"));
  m.def("energy_for_deadline", &energy_for_deadline,
        py::arg("t_min_at_unit_bandwidth"), py::arg("t"));
  m.def("hadamard_hamiltonian", &hadamard_hamiltonian);

  // reference catalog
  py::class_<ReferenceEntry>(m, "ReferenceEntry")
      .def_readonly("label", &ReferenceEntry::label)
      .def_readonly("n_sites", &ReferenceEntry::n_sites)
      .def_readonly("hamiltonian", &ReferenceEntry::hamiltonian)
      .def_readonly("claimed_time", &ReferenceEntry::claimed_time)
      .def_readonly("exact", &ReferenceEntry::exact)
      .def_readonly("expression", &ReferenceEntry::expression);
  m.def("reference_hamiltonian",
        [](const std::string& family, int n, const std::string& graph) {
          const Family f = family == "W" || family == "w" ? Family::W : Family::Ghz;
          const GraphKind g =
              graph == "chain" ? GraphKind::Chain : GraphKind::Complete;
          return reference_hamiltonian(f, n, g);
        },
        py::arg("family"), py::arg("n"), py::arg("graph") = "complete");
  m.def("reference_catalog", [] { return reference_catalog(); });
  m.def("verify_entry",
        [](const ReferenceEntry& e) { return report_to_dict(verify_entry(e)); },
        py::arg("entry"));
  m.def("unnormalized_family",
        [](const std::string& family, int n) {
          return unnormalized_family(
              family == "W" || family == "w" ? Family::W : Family::Ghz, n);
        },
        py::arg("family"), py::arg("n"));

  // optimizer
  py::class_<OptimizeConfig>(m, "OptimizeConfig")
      .def(py::init([](const std::string& target, int n_sites,
                       const InteractionGraph& graph, const SymmetryClass& sym,
                       const std::vector<std::tuple<double, double, double>>& grid,
                       int restarts, std::uint64_t seed, bool symmetric_couplings,
                       bool warm_start, bool refine, bool allow_wide_steps,
                       int threads, const std::string& method) {
             OptimizeConfig cfg;
             cfg.target = parse_target_name(target);
             cfg.n_sites = n_sites;
             cfg.graph = graph;
             cfg.symmetry = sym;
             for (const auto& [s, e, dt] : grid) cfg.grid.push_back({s, e, dt});
             cfg.restarts = restarts;
             cfg.seed = seed;
             cfg.symmetric_couplings = symmetric_couplings;
             cfg.warm_start = warm_start;
             cfg.refine = refine;
             cfg.allow_wide_steps = allow_wide_steps;
             cfg.threads = threads;
             if (method == "quasi_newton") cfg.method = LocalMethod::QuasiNewton;
             cfg.validate();
             return cfg;
           }),
           py::arg("target"), py::arg("n_sites"), py::arg("graph"),
           py::arg("symmetry"), py::arg("grid"), py::arg("restarts") = 200,
           py::arg("seed") = 0, py::arg("symmetric_couplings") = false,
           py::arg("warm_start") = true, py::arg("refine") = true,
           py::arg("allow_wide_steps") = false, py::arg("threads") = 0,
           py::arg("method") = "nelder_mead");

  py::class_<FidelityCurve>(m, "FidelityCurve")
      .def_readonly("times", &FidelityCurve::times)
      .def_readonly("fidelities", &FidelityCurve::fidelities)
      .def_readonly("best_params", &FidelityCurve::best_params)
      .def_readonly("evaluations", &FidelityCurve::evaluations);

  m.def("sweep", &sweep, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("maximize_at_time",
        [](double t, const OptimizeConfig& cfg) {
          py::gil_scoped_release release;
          const auto r = maximize_at_time(t, cfg);
          return std::make_tuple(r.fidelity, r.params, r.evaluations);
        },
        py::arg("t"), py::arg("config"));
  m.def("minimal_time",
        [](const FidelityCurve& c, double eps) -> py::object {
          const auto t = minimal_time(c, eps);
          return t ? py::cast(*t) : py::none();
        },
        py::arg("curve"), py::arg("epsilon") = 1e-6);
  m.def("threshold_time",
        [](const FidelityCurve& c, double level) -> py::object {
          const auto t = threshold_time(c, level);
          return t ? py::cast(*t) : py::none();
        },
        py::arg("curve"), py::arg("level") = 0.99);
  m.def("objective",
        [](const Eigen::VectorXd& p, double t, const ParameterSpace& space,
           const Vector& target) { return objective(p, t, space, target); },
        py::arg("params"), py::arg("t"), py::arg("space"), py::arg("target"));
}
