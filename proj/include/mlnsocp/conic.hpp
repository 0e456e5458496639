#pragma once

#include <Eigen/Core>
#include <span>
#include <string>
#include <vector>

#include "mlnsocp/geometry.hpp"
#include "mlnsocp/measurement.hpp"

namespace mlnsocp {

enum class Method { MlnSocp, DSocp };

// Slot map for the stacked variable vector (d = 2)
//
//   [ x_r  y_r | a_1x a_1y ... a_px a_py | q_1..q_p | z_1..z_p | y_1..y_p | V ]
//
// The anchor-coordinate slots are vestigial: anchors enter the constraints
// as constants, so their columns stay identically zero.
struct VarLayout {
  int p = 0;

  int x() const { return 0; }
  int y() const { return 1; }
  int anchor_coord(int k, int axis) const { return 2 + 2 * k + axis; }
  int q(int k) const { return 2 * p + 2 + k; }
  int z(int k) const { return 3 * p + 2 + k; }
  int range_bound(int k) const { return 4 * p + 2 + k; }  // y_{r,t}
  int epigraph() const { return 5 * p + 2; }              // V
  int n_vars() const { return 5 * p + 3; }
};

// Conic program in the standard form
//
//   maximize c_obj' x   subject to   offset - A' x  in  K
//
// where K is the Cartesian product of second-order cones with the
// dimensions listed in `cones`, so that the slack block of cone k is
// [ b_k' x + d_k ; A_k' x + c_k ]. A is stored n_vars x total cone
// dimension: column j of A carries the coefficients of slack row j, i.e.
// A' acts on the variable vector. c_obj selects -V, so the maximization
// minimizes the epigraph variable. There are no equality constraints.
struct ConicProgram {
  int n_vars = 0;
  int p_i = 0;
  Eigen::MatrixXd A;
  Eigen::VectorXd c_obj;
  Eigen::VectorXd offset;
  std::vector<int> cones;
  VarLayout layout;

  int total_cone_dim() const;
};

struct AnchorObservation {
  Position anchor;
  Measurement meas;
};

// Assembles the per-node epigraph program for one unknown node against its
// in-range anchors. Cone order: one cone of dimension 2p+1 bounding the
// stacked residual vector by V, then p LOS cones of dimension 2, then p
// NLOS cones of dimension 2, then p range cones of dimension 3.
//
// MlnSocp: a LOS link k contributes |y_k - c_k| <= (sigma_k/sqrt(g)) q_k in
// the LOS family and a vacuous z_k >= 0 cone in the NLOS family; an NLOS
// link contributes the mirrored |y_k - c_k| <= (gamma_k/sqrt(1-g)) z_k and
// a vacuous q_k >= 0 cone, with c_k the bias-corrected range. Degenerate
// weights (g = 0 for LOS, g = 1 for NLOS, zero variance) fall back to the
// vacuous/unit-coefficient form; see the .cpp notes.
//
// DSocp: every link is treated as LOS with unit weight and the raw
// (uncorrected) range; the NLOS family is all-vacuous.
ConicProgram build_node_problem(std::span<const AnchorObservation> anchors,
                                double g, Method method);

// First d entries of the solution vector.
Position extract_position(const ConicProgram& program, const Eigen::VectorXd& solution);

struct AssemblyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct AssemblyReport {
  bool pass = false;
  std::vector<AssemblyCheck> checks;
};

// Structural checks: dimension identities, cone-dimension pattern, zero
// equality-constraint count, vestigial zero columns, one nonzero per
// indicator slot in each constraint family.
AssemblyReport validate_assembly(const ConicProgram& program);

// Text dump (dense rows of A, objective, offsets, cone list) used for
// golden-file comparison.
std::string dump_program(const ConicProgram& program);

// Completion of a candidate position into a full variable vector with every
// range bound tight (y_k = |x - a_k|) and every residual cone tight. Its
// epigraph value is feasible for the program, hence an upper bound on the
// optimum.
Eigen::VectorXd tight_completion(const ConicProgram& program, const Position& x);
double feasible_value_at(const ConicProgram& program, const Position& x);

}  // namespace mlnsocp
