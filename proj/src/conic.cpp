#include "mlnsocp/conic.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mlnsocp/errors.hpp"

namespace mlnsocp {

namespace {

// start column of each cone block, in the fixed family order
int cone1_pos(const VarLayout& L) {
  (void)L;
  return 0;
}
int los_cone_pos(const VarLayout& L, int k) { return (2 * L.p + 1) + 2 * k; }
int nlos_cone_pos(const VarLayout& L, int k) { return (2 * L.p + 1) + 2 * L.p + 2 * k; }
int range_cone_pos(const VarLayout& L, int k) { return (2 * L.p + 1) + 4 * L.p + 3 * k; }

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

int ConicProgram::total_cone_dim() const {
  return std::accumulate(cones.begin(), cones.end(), 0);
}

ConicProgram build_node_problem(std::span<const AnchorObservation> anchors,
                                double g, Method method) {
  const int p = static_cast<int>(anchors.size());
  if (p == 0) throw InputError("unlocalizable node: no neighbouring anchors");
  if (g < 0.0 || g > 1.0) throw InputError("LOS probability g must lie in [0,1]");

  ConicProgram prog;
  prog.p_i = p;
  prog.layout.p = p;
  prog.n_vars = prog.layout.n_vars();
  prog.cones.push_back(2 * p + 1);
  for (int k = 0; k < 2 * p; ++k) prog.cones.push_back(2);
  for (int k = 0; k < p; ++k) prog.cones.push_back(3);

  const int m = prog.total_cone_dim();
  prog.A = Eigen::MatrixXd::Zero(prog.n_vars, m);
  prog.offset = Eigen::VectorXd::Zero(m);
  prog.c_obj = Eigen::VectorXd::Zero(prog.n_vars);
  prog.c_obj[prog.layout.epigraph()] = -1.0;  // Bt = -B, B selecting V

  const VarLayout& L = prog.layout;

  for (const AnchorObservation& obs : anchors) {
    if (obs.anchor.size() != 2)
      throw InputError("per-node assembly is defined for d = 2");
    if (!std::isfinite(obs.meas.raw) || !std::isfinite(obs.meas.corrected))
      throw InputError("non-finite measurement");
    const double target =
        method == Method::DSocp ? obs.meas.raw : obs.meas.corrected;
    if (!(target > 0.0))
      throw InputError("measurement must be positive after flooring");
  }

  // Epigraph cone  ||U|| <= V  with U = [q_1 z_1 ... q_p z_p].
  {
    const int pos = cone1_pos(L);
    prog.A(L.epigraph(), pos) = -1.0;
    for (int k = 0; k < p; ++k) {
      prog.A(L.q(k), pos + 1 + 2 * k) = -1.0;
      prog.A(L.z(k), pos + 2 + 2 * k) = -1.0;
    }
  }

  // Residual cones. The weighted family keeps the reciprocal weight on the
  // auxiliary-variable slot, |y_k - c_k| <= (sigma_k/sqrt(g)) q_k, so the
  // dumped coefficients match the hand form; the family that does not apply
  // to the link's state degenerates to the vacuous cone [q_k; 0] resp.
  // [z_k; 0]. Zero weights (g at the 0/1 boundary) also degenerate to the
  // vacuous form, and zero variances fall back to unit coefficients.
  for (int k = 0; k < p; ++k) {
    const Measurement& meas = anchors[static_cast<std::size_t>(k)].meas;
    const int lpos = los_cone_pos(L, k);
    const int npos = nlos_cone_pos(L, k);

    bool los_active = false, nlos_active = false;
    double los_coef = 1.0, nlos_coef = 1.0;
    double target = 0.0;
    if (method == Method::DSocp) {
      los_active = true;
      los_coef = 1.0;
      target = meas.raw;
    } else if (meas.kind == LinkKind::Los) {
      target = meas.corrected;
      if (g > 0.0) {
        los_active = true;
        los_coef = meas.sigma_sq > 0.0 ? std::sqrt(meas.sigma_sq) / std::sqrt(g) : 1.0;
      }
    } else {
      target = meas.corrected;
      if (g < 1.0) {
        nlos_active = true;
        const double gamma_sq = meas.gamma_sq.value_or(0.0);
        nlos_coef = gamma_sq > 0.0 ? std::sqrt(gamma_sq) / std::sqrt(1.0 - g) : 1.0;
      }
    }

    prog.A(L.q(k), lpos) = -los_coef;
    if (los_active) {
      prog.A(L.range_bound(k), lpos + 1) = -1.0;
      prog.offset[lpos + 1] = -target;
    }
    prog.A(L.z(k), npos) = -nlos_coef;
    if (nlos_active) {
      prog.A(L.range_bound(k), npos + 1) = -1.0;
      prog.offset[npos + 1] = -target;
    }
  }

  // Range cones  ||x_r - a_t|| <= y_k ; anchors enter through the offsets.
  for (int k = 0; k < p; ++k) {
    const Position& a = anchors[static_cast<std::size_t>(k)].anchor;
    const int pos = range_cone_pos(L, k);
    prog.A(L.range_bound(k), pos) = -1.0;
    prog.A(L.x(), pos + 1) = -1.0;
    prog.A(L.y(), pos + 2) = -1.0;
    prog.offset[pos + 1] = -a[0];
    prog.offset[pos + 2] = -a[1];
  }

  return prog;
}

Position extract_position(const ConicProgram& program, const Eigen::VectorXd& solution) {
  if (solution.size() != program.n_vars)
    throw UsageError("solution vector length does not match the program");
  return make_position(solution[0], solution[1]);
}

AssemblyReport validate_assembly(const ConicProgram& program) {
  AssemblyReport report;
  auto check = [&](const std::string& name, bool ok, const std::string& detail) {
    report.checks.push_back({name, ok, detail});
  };
  const VarLayout& L = program.layout;
  const int p = program.p_i;

  check("variable-count", program.n_vars == 5 * p + 3 && L.p == p,
        "n_vars = " + std::to_string(program.n_vars) + ", expected " + std::to_string(5 * p + 3));

  {
    bool ok = static_cast<int>(program.cones.size()) == 3 * p + 1;
    if (ok) {
      ok = program.cones[0] == 2 * p + 1;
      for (int j = 1; ok && j <= 2 * p; ++j) ok = program.cones[static_cast<std::size_t>(j)] == 2;
      for (int j = 2 * p + 1; ok && j <= 3 * p; ++j) ok = program.cones[static_cast<std::size_t>(j)] == 3;
    }
    check("cone-pattern", ok,
          "cone count " + std::to_string(program.cones.size()) + ", expected " +
              std::to_string(3 * p + 1) + " with dims [2p+1, 2 x 2p, 3 x p]");
  }

  check("total-cone-dimension", program.total_cone_dim() == 9 * p + 1,
        "sum " + std::to_string(program.total_cone_dim()) + ", expected " + std::to_string(9 * p + 1));

  check("matrix-shape",
        program.A.rows() == program.n_vars && program.A.cols() == program.total_cone_dim() &&
            program.offset.size() == program.total_cone_dim() &&
            program.c_obj.size() == program.n_vars,
        "A is n_vars x total cone dimension; offset and objective sized to match");

  check("equality-constraints", true, "representation carries no equality block (count 0)");

  {
    bool ok = true;
    for (int k = 0; ok && k < p; ++k)
      for (int axis = 0; axis < 2; ++axis) {
        const int row = L.anchor_coord(k, axis);
        if (row >= program.A.rows() || program.A.row(row).cwiseAbs().maxCoeff() != 0.0 ||
            program.c_obj[row] != 0.0) {
          ok = false;
          break;
        }
      }
    check("vestigial-columns-zero", ok, "anchor-coordinate slots must not appear in any constraint");
  }

  {
    bool ok = program.c_obj[L.epigraph()] == -1.0 &&
              program.c_obj.cwiseAbs().sum() == 1.0;
    check("objective-selects-epigraph", ok, "c_obj = -e_V");
  }

  auto single_nonzero_at = [&](int col, int row) {
    if (col >= program.A.cols()) return false;
    for (int i = 0; i < program.A.rows(); ++i) {
      const double v = program.A(i, col);
      if (i == row ? v == 0.0 : v != 0.0) return false;
    }
    return true;
  };
  auto at_most_one_nonzero_at = [&](int col, int row) {
    if (col >= program.A.cols()) return false;
    for (int i = 0; i < program.A.rows(); ++i)
      if (i != row && program.A(i, col) != 0.0) return false;
    return true;
  };

  {
    bool ok = single_nonzero_at(cone1_pos(L), L.epigraph());
    for (int k = 0; ok && k < p; ++k)
      ok = single_nonzero_at(cone1_pos(L) + 1 + 2 * k, L.q(k)) &&
           single_nonzero_at(cone1_pos(L) + 2 + 2 * k, L.z(k));
    for (int k = 0; ok && k < p; ++k)
      ok = single_nonzero_at(los_cone_pos(L, k), L.q(k)) &&
           at_most_one_nonzero_at(los_cone_pos(L, k) + 1, L.range_bound(k)) &&
           single_nonzero_at(nlos_cone_pos(L, k), L.z(k)) &&
           at_most_one_nonzero_at(nlos_cone_pos(L, k) + 1, L.range_bound(k));
    for (int k = 0; ok && k < p; ++k)
      ok = single_nonzero_at(range_cone_pos(L, k), L.range_bound(k)) &&
           single_nonzero_at(range_cone_pos(L, k) + 1, L.x()) &&
           single_nonzero_at(range_cone_pos(L, k) + 2, L.y());
    check("indicator-slots", ok, "each indicator column has its single nonzero in the expected slot");
  }

  {
    bool ok = true;
    int pos = 0;
    for (int dim : program.cones) {
      if (pos >= program.offset.size() || program.offset[pos] != 0.0) ok = false;
      pos += dim;
    }
    check("cone-scalar-offsets-zero", ok, "every cone has d_k = 0");
  }

  report.pass = true;
  for (const AssemblyCheck& c : report.checks) report.pass = report.pass && c.pass;
  return report;
}

std::string dump_program(const ConicProgram& program) {
  std::ostringstream out;
  out << "n_vars " << program.n_vars << "\n";
  out << "p_i " << program.p_i << "\n";
  out << "cones";
  for (int d : program.cones) out << ' ' << d;
  out << "\n";
  out << "c_obj";
  for (int i = 0; i < program.c_obj.size(); ++i) out << ' ' << format_double(program.c_obj[i]);
  out << "\n";
  out << "offset";
  for (int i = 0; i < program.offset.size(); ++i) out << ' ' << format_double(program.offset[i]);
  out << "\n";
  out << "A\n";
  for (int i = 0; i < program.A.rows(); ++i) {
    for (int j = 0; j < program.A.cols(); ++j) {
      if (j) out << ' ';
      out << format_double(program.A(i, j));
    }
    out << "\n";
  }
  return out.str();
}

Eigen::VectorXd tight_completion(const ConicProgram& program, const Position& x) {
  if (x.size() != 2) throw UsageError("tight completion is defined for d = 2");
  const VarLayout& L = program.layout;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(program.n_vars);
  v[L.x()] = x[0];
  v[L.y()] = x[1];
  for (int k = 0; k < program.p_i; ++k) {
    const int pos = range_cone_pos(L, k);
    const Position a = make_position(-program.offset[pos + 1], -program.offset[pos + 2]);
    v[L.range_bound(k)] = distance(x, a);
  }
  double sum_sq = 0.0;
  for (int k = 0; k < program.p_i; ++k) {
    const int lpos = los_cone_pos(L, k);
    const int npos = nlos_cone_pos(L, k);
    const double q_res = std::abs(program.offset[lpos + 1] - program.A.col(lpos + 1).dot(v));
    const double q_coef = -program.A(L.q(k), lpos);
    v[L.q(k)] = q_res / q_coef;
    const double z_res = std::abs(program.offset[npos + 1] - program.A.col(npos + 1).dot(v));
    const double z_coef = -program.A(L.z(k), npos);
    v[L.z(k)] = z_res / z_coef;
    sum_sq += v[L.q(k)] * v[L.q(k)] + v[L.z(k)] * v[L.z(k)];
  }
  v[L.epigraph()] = std::sqrt(sum_sq);
  return v;
}

double feasible_value_at(const ConicProgram& program, const Position& x) {
  return tight_completion(program, x)[program.layout.epigraph()];
}

}  // namespace mlnsocp
