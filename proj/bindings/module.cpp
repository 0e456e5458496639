#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mlnsocp/complexity.hpp"
#include "mlnsocp/errors.hpp"
#include "mlnsocp/crlb.hpp"
#include "mlnsocp/harness.hpp"
#include "mlnsocp/measurement.hpp"
#include "mlnsocp/net_model.hpp"
#include "mlnsocp/oracle.hpp"
#include "mlnsocp/run_config.hpp"
#include "mlnsocp/socp_solver.hpp"

namespace py = pybind11;
using namespace mlnsocp;

PYBIND11_MODULE(_mlnsocp, m) {
  m.doc() = "Range-based sensor localization under mixed LOS/NLOS conditions";

  py::enum_<LinkKind>(m, "LinkKind")
      .value("LOS", LinkKind::Los)
      .value("NLOS", LinkKind::Nlos);

  py::enum_<AnchorPlacement>(m, "AnchorPlacement")
      .value("RANDOM_UNIFORM", AnchorPlacement::RandomUniform)
      .value("BOUNDARY", AnchorPlacement::Boundary);

  py::enum_<Method>(m, "Method")
      .value("MLN_SOCP", Method::MlnSocp)
      .value("D_SOCP", Method::DSocp);

  py::enum_<SolveStatus>(m, "SolveStatus")
      .value("OPTIMAL", SolveStatus::Optimal)
      .value("MAX_ITER", SolveStatus::MaxIter)
      .value("INFEASIBLE", SolveStatus::Infeasible)
      .value("NUMERICAL_FAILURE", SolveStatus::NumericalFailure);

  py::class_<NetworkConfig>(m, "NetworkConfig")
      .def(py::init<>())
      .def_readwrite("dimension", &NetworkConfig::dimension)
      .def_readwrite("side", &NetworkConfig::side)
      .def_readwrite("node_count", &NetworkConfig::node_count)
      .def_readwrite("anchor_fraction", &NetworkConfig::anchor_fraction)
      .def_readwrite("range", &NetworkConfig::range)
      .def_readwrite("los_probability", &NetworkConfig::los_probability)
      .def_readwrite("eta_los", &NetworkConfig::eta_los)
      .def_readwrite("eta_nlos", &NetworkConfig::eta_nlos)
      .def_readwrite("placement", &NetworkConfig::placement)
      .def_readwrite("max_anchors", &NetworkConfig::max_anchors)
      .def("anchor_count", &NetworkConfig::anchor_count)
      .def("validate", &NetworkConfig::validate);

  py::class_<Edge>(m, "Edge")
      .def_readonly("r", &Edge::r)
      .def_readonly("t", &Edge::t)
      .def_readonly("kind", &Edge::kind)
      .def_readonly("true_distance", &Edge::true_distance);

  py::class_<Topology>(m, "Topology")
      .def_readonly("dimension", &Topology::dimension)
      .def_readonly("side", &Topology::side)
      .def_readonly("unknown_count", &Topology::unknown_count)
      .def_readonly("edges", &Topology::edges)
      .def("node_count", &Topology::node_count)
      .def("anchor_count", &Topology::anchor_count)
      .def("is_anchor", &Topology::is_anchor)
      .def("position",
           [](const Topology& t, int i) { return Eigen::VectorXd(t.position(i)); })
      .def("to_json", [](const Topology& t) { return topology_to_json(t); });

  py::class_<Measurement>(m, "Measurement")
      .def_readonly("r", &Measurement::r)
      .def_readonly("t", &Measurement::t)
      .def_readonly("kind", &Measurement::kind)
      .def_readonly("raw", &Measurement::raw)
      .def_readonly("corrected", &Measurement::corrected)
      .def_readonly("mu", &Measurement::mu)
      .def_readonly("sigma_sq", &Measurement::sigma_sq)
      .def_readonly("gamma_sq", &Measurement::gamma_sq)
      .def_readonly("floored", &Measurement::floored);

  py::class_<MeasurementSet>(m, "MeasurementSet")
      .def_readonly("seed", &MeasurementSet::seed)
      .def_readonly("values", &MeasurementSet::values)
      .def_readonly("floored_count", &MeasurementSet::floored_count);

  py::class_<VarLayout>(m, "VarLayout")
      .def_readonly("p", &VarLayout::p)
      .def("q", &VarLayout::q)
      .def("z", &VarLayout::z)
      .def("range_bound", &VarLayout::range_bound)
      .def("epigraph", &VarLayout::epigraph);

  py::class_<ConicProgram>(m, "ConicProgram")
      .def_readonly("n_vars", &ConicProgram::n_vars)
      .def_readonly("p_i", &ConicProgram::p_i)
      .def_readonly("A", &ConicProgram::A)
      .def_readonly("c_obj", &ConicProgram::c_obj)
      .def_readonly("offset", &ConicProgram::offset)
      .def_readonly("cones", &ConicProgram::cones)
      .def_readonly("layout", &ConicProgram::layout)
      .def("total_cone_dim", &ConicProgram::total_cone_dim)
      .def("dump", [](const ConicProgram& p) { return dump_program(p); });

  py::class_<SolverSettings>(m, "SolverSettings")
      .def(py::init<>())
      .def_readwrite("gap_tol", &SolverSettings::gap_tol)
      .def_readwrite("feas_tol", &SolverSettings::feas_tol)
      .def_readwrite("max_iterations", &SolverSettings::max_iterations)
      .def_readwrite("step_fraction", &SolverSettings::step_fraction)
      .def_readwrite("record_trace", &SolverSettings::record_trace);

  py::class_<ConicSolution>(m, "ConicSolution")
      .def_readonly("x", &ConicSolution::x)
      .def_readonly("status", &ConicSolution::status)
      .def_readonly("gap", &ConicSolution::gap)
      .def_readonly("primal_residual", &ConicSolution::primal_residual)
      .def_readonly("dual_residual", &ConicSolution::dual_residual)
      .def_readonly("iterations", &ConicSolution::iterations)
      .def_readonly("objective", &ConicSolution::objective);

  py::class_<NodeResult>(m, "NodeResult")
      .def_readonly("node", &NodeResult::node)
      .def_readonly("true_x", &NodeResult::true_x)
      .def_readonly("true_y", &NodeResult::true_y)
      .def_readonly("est_x", &NodeResult::est_x)
      .def_readonly("est_y", &NodeResult::est_y)
      .def_readonly("error", &NodeResult::error)
      .def_readonly("p_i", &NodeResult::p_i)
      .def_readonly("status", &NodeResult::status)
      .def_readonly("iterations", &NodeResult::iterations);

  py::class_<TrialResult>(m, "TrialResult")
      .def_readonly("seed", &TrialResult::seed)
      .def_readonly("nodes", &TrialResult::nodes)
      .def_readonly("unlocalizable", &TrialResult::unlocalizable)
      .def_readonly("solver_failures", &TrialResult::solver_failures)
      .def("empty", &TrialResult::empty);

  py::class_<LinkParams>(m, "LinkParams")
      .def(py::init<>())
      .def_readwrite("eta_los", &LinkParams::eta_los)
      .def_readwrite("eta_nlos", &LinkParams::eta_nlos)
      .def_readwrite("los_probability", &LinkParams::los_probability);

  py::class_<CrlbGrid>(m, "CrlbGrid")
      .def_readonly("spacing", &CrlbGrid::spacing)
      .def_readonly("side", &CrlbGrid::side)
      .def_readonly("points_per_axis", &CrlbGrid::points_per_axis)
      .def_readonly("values", &CrlbGrid::values)
      .def_readonly("min_value", &CrlbGrid::min_value)
      .def_readonly("min_ix", &CrlbGrid::min_ix)
      .def_readonly("min_iy", &CrlbGrid::min_iy)
      .def("at", &CrlbGrid::at);

  m.def("deploy_uniform", &deploy_uniform, py::arg("config"), py::arg("seed"));
  m.def("neighbor_anchors", [](const Topology& t, int r) {
    std::vector<std::pair<int, Edge>> out = neighbor_anchors(t, r);
    return out;
  });
  m.def("measure_all", &measure_all, py::arg("topology"), py::arg("config"), py::arg("seed"));
  m.def(
      "build_node_problem",
      [](const Eigen::MatrixXd& anchors, const std::vector<Measurement>& measurements,
         double g, Method method) {
        if (anchors.rows() != static_cast<Eigen::Index>(measurements.size()) ||
            anchors.cols() != 2)
          throw UsageError("anchors must be k x 2 with one measurement per row");
        std::vector<AnchorObservation> obs;
        obs.reserve(measurements.size());
        for (std::size_t k = 0; k < measurements.size(); ++k)
          obs.push_back({make_position(anchors(static_cast<Eigen::Index>(k), 0),
                                       anchors(static_cast<Eigen::Index>(k), 1)),
                         measurements[k]});
        return build_node_problem(obs, g, method);
      },
      py::arg("anchors"), py::arg("measurements"), py::arg("g"), py::arg("method"));
  m.def("solve",
        [](const ConicProgram& p, const SolverSettings& s) { return solve(p, s); },
        py::arg("program"), py::arg("settings") = SolverSettings{});
  m.def("extract_position",
        [](const ConicProgram& p, const Eigen::VectorXd& x) {
          return Eigen::VectorXd(extract_position(p, x));
        });
  m.def("run_trial", &run_trial, py::arg("config"), py::arg("seed"), py::arg("method"));
  m.def("crlb_at", [](const Eigen::Vector2d& x, const std::vector<Eigen::Vector2d>& anchors,
                      const LinkParams& params) {
    std::vector<Position> as;
    as.reserve(anchors.size());
    for (const auto& a : anchors) as.push_back(make_position(a[0], a[1]));
    return crlb_at(make_position(x[0], x[1]), as, params);
  });
  m.def("fim", [](const Eigen::Vector2d& x, const std::vector<Eigen::Vector2d>& anchors,
                  const LinkParams& params) {
    std::vector<Position> as;
    as.reserve(anchors.size());
    for (const auto& a : anchors) as.push_back(make_position(a[0], a[1]));
    return fim(make_position(x[0], x[1]), as, params);
  });
  m.def("crlb_surface", &crlb_surface, py::arg("config"), py::arg("grid_spacing") = 1.0);
  m.def(
      "oracle_localize",
      [](const std::vector<std::tuple<Eigen::Vector2d, double, double>>& obs, double x_min,
         double x_max, double y_min, double y_max, double resolution, bool relaxed) {
        std::vector<RangeObservation> ro;
        ro.reserve(obs.size());
        for (const auto& [a, d, w] : obs)
          ro.push_back({make_position(a[0], a[1]), d, w});
        return Eigen::VectorXd(oracle_localize(
            ro, {x_min, x_max, y_min, y_max}, resolution,
            relaxed ? RangeLoss::Relaxed : RangeLoss::TwoSided));
      },
      py::arg("observations"), py::arg("x_min"), py::arg("x_max"), py::arg("y_min"),
      py::arg("y_max"), py::arg("resolution"), py::arg("relaxed") = false);
}
