#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <vector>

#include "mlnsocp/conic.hpp"

namespace mlnsocp {

enum class SolveStatus { Optimal, MaxIter, Infeasible, NumericalFailure };

const char* to_string(SolveStatus status);

struct SolverSettings {
  double gap_tol = 1e-8;    // relative complementarity gap
  double feas_tol = 1e-8;   // normalized primal/dual residuals
  int max_iterations = 100;
  double step_fraction = 0.99;  // fraction of the step to the cone boundary
  bool record_trace = false;
};

struct TraceRow {
  int iteration = 0;
  double gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double mu = 0.0;
  double step = 0.0;
  double sigma = 0.0;
};

struct ConicSolution {
  Eigen::VectorXd x;
  SolveStatus status = SolveStatus::NumericalFailure;
  double gap = 0.0;             // s'z / max(1, |pobj|, |dobj|)
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  double objective = 0.0;       // epigraph value V = -c_obj' x
  std::vector<TraceRow> trace;
};

// Primal-dual interior-point method with Nesterov-Todd scaling and a
// Mehrotra predictor-corrector step. Works on the standard form only; the
// per-iteration normal equations are solved with a sparse LDL'
// factorization, splitting W^-2 of any wide cone into its diagonal plus
// rank-2 part (Woodbury update). Variables that appear in no constraint
// and carry no objective weight are fixed to zero up front.
//
// Start is the unit interior point of each cone (first slack coordinate 1,
// rest 0) with x = 0, so iterate sequences are reproducible.
ConicSolution solve(const ConicProgram& program, const SolverSettings& settings = {});

struct ResidualReport {
  double primal = 0.0;          // equality residual; the form carries none
  double cone_violation = 0.0;  // max_k ( ||A_k'x + c_k|| - (b_k'x + d_k) )+
  double objective = 0.0;
};

ResidualReport residuals(const ConicProgram& program, const Eigen::VectorXd& x);

// columns: iteration,gap,primal_residual,dual_residual,mu,step,sigma
void write_trace_csv(const ConicSolution& solution, std::ostream& out);

}  // namespace mlnsocp
