#include "mlnsocp/socp_solver.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "mlnsocp/errors.hpp"

namespace mlnsocp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kWideConeDim = 9;  // cones at least this wide use the rank-2 split

struct ConeBlock {
  int pos = 0;
  int dim = 0;
  std::vector<int> vars;    // reduced variable indices touched by this cone
  Eigen::MatrixXd Gk;       // dim x vars.size(), rows of G restricted to vars
  bool wide = false;

  // nonzeros of Gk'Gk in reduced indices, fixed across iterations
  std::vector<Eigen::Triplet<double>> gtg;

  // NT scaling state
  double beta = 1.0;        // W = beta (2 wb wb' - J)
  Eigen::VectorXd wb;       // scaling point, wb' J wb = 1
  Eigen::VectorXd jwb;      // J wb
  double wb_sq = 1.0;       // wb' wb
};

double jdot(const Eigen::VectorXd& v) {
  return v[0] * v[0] - v.tail(v.size() - 1).squaredNorm();
}

Eigen::VectorXd jmul(const Eigen::VectorXd& v) {
  Eigen::VectorXd r = -v;
  r[0] = v[0];
  return r;
}

// W u = beta (2 wb (wb'u) - J u)
Eigen::VectorXd apply_w(const ConeBlock& c, const Eigen::VectorXd& u) {
  Eigen::VectorXd r = -jmul(u);
  r += 2.0 * c.wb.dot(u) * c.wb;
  return c.beta * r;
}

// W^-1 u = (1/beta) (2 (Jwb) ((Jwb)'u) - J u)
Eigen::VectorXd apply_winv(const ConeBlock& c, const Eigen::VectorXd& u) {
  Eigen::VectorXd r = -jmul(u);
  r += 2.0 * c.jwb.dot(u) * c.jwb;
  return r / c.beta;
}

Eigen::VectorXd jordan_product(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd r(a.size());
  r[0] = a.dot(b);
  r.tail(r.size() - 1) = a[0] * b.tail(b.size() - 1) + b[0] * a.tail(a.size() - 1);
  return r;
}

Eigen::VectorXd jordan_solve(const Eigen::VectorXd& lam, const Eigen::VectorXd& d) {
  const auto lam1 = lam.tail(lam.size() - 1);
  const auto d1 = d.tail(d.size() - 1);
  const double det = lam[0] * lam[0] - lam1.squaredNorm();
  Eigen::VectorXd u(d.size());
  u[0] = (lam[0] * d[0] - lam1.dot(d1)) / det;
  u.tail(u.size() - 1) = (d1 - u[0] * lam1) / lam[0];
  return u;
}

// largest step t with v + t dv staying in the cone (v strictly interior)
double max_step(const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
  const auto v1 = v.tail(v.size() - 1);
  const auto d1 = dv.tail(dv.size() - 1);
  const double c2 = dv[0] * dv[0] - d1.squaredNorm();
  const double c1 = 2.0 * (v[0] * dv[0] - v1.dot(d1));
  const double c0 = v[0] * v[0] - v1.squaredNorm();

  double bound = kInf;
  if (dv[0] < 0.0) bound = -v[0] / dv[0];

  if (std::abs(c2) < 1e-300) {
    if (c1 < 0.0) bound = std::min(bound, -c0 / c1);
    return bound;
  }
  const double disc = c1 * c1 - 4.0 * c2 * c0;
  if (disc < 0.0) return bound;
  const double sq = std::sqrt(disc);
  const double qq = -0.5 * (c1 + (c1 >= 0.0 ? sq : -sq));
  double roots[2] = {kInf, kInf};
  int nr = 0;
  if (qq != 0.0) roots[nr++] = c0 / qq;
  if (c2 != 0.0) roots[nr++] = qq / c2;
  for (int i = 0; i < nr; ++i)
    if (roots[i] > 0.0) bound = std::min(bound, roots[i]);
  return bound;
}

struct Workspace {
  int n = 0;  // reduced variable count
  int m = 0;  // total cone dimension
  std::vector<int> keep;           // reduced -> original variable index
  Eigen::SparseMatrix<double> G;   // m x n
  Eigen::SparseMatrix<double> Gt;  // n x m
  Eigen::VectorXd c, h;
  std::vector<ConeBlock> cones;
};

Eigen::VectorXd apply_G(const Workspace& w, const Eigen::VectorXd& x) {
  return w.G * x;
}

Eigen::VectorXd apply_Gt(const Workspace& w, const Eigen::VectorXd& y) {
  return w.Gt * y;
}

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::MaxIter: return "max-iterations";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

ConicSolution solve(const ConicProgram& program, const SolverSettings& settings) {
  ConicSolution sol;
  sol.x = Eigen::VectorXd::Zero(program.n_vars);

  if (program.A.rows() != program.n_vars || program.A.cols() != program.total_cone_dim() ||
      program.offset.size() != program.total_cone_dim() || program.c_obj.size() != program.n_vars)
    throw UsageError("conic program dimensions are inconsistent");
  if (settings.gap_tol <= 0.0 || settings.feas_tol <= 0.0 || settings.max_iterations < 1 ||
      settings.step_fraction <= 0.0 || settings.step_fraction >= 1.0)
    throw UsageError("invalid solver settings");

  Workspace w;

  // Fix variables that no constraint touches; a cost on such a variable
  // would make the problem unbounded.
  std::vector<char> used(static_cast<std::size_t>(program.n_vars), 0);
  for (int i = 0; i < program.n_vars; ++i)
    if (program.A.row(i).cwiseAbs().maxCoeff() != 0.0) used[static_cast<std::size_t>(i)] = 1;
  std::vector<int> to_reduced(static_cast<std::size_t>(program.n_vars), -1);
  for (int i = 0; i < program.n_vars; ++i) {
    if (used[static_cast<std::size_t>(i)]) {
      to_reduced[static_cast<std::size_t>(i)] = static_cast<int>(w.keep.size());
      w.keep.push_back(i);
    } else if (program.c_obj[i] != 0.0) {
      sol.status = SolveStatus::NumericalFailure;  // unbounded free variable
      return sol;
    }
  }

  w.n = static_cast<int>(w.keep.size());
  w.m = program.total_cone_dim();
  w.c.resize(w.n);
  for (int j = 0; j < w.n; ++j) w.c[j] = -program.c_obj[w.keep[static_cast<std::size_t>(j)]];
  w.h = program.offset;

  {
    std::vector<Eigen::Triplet<double>> trips;
    int pos = 0;
    for (int dim : program.cones) {
      ConeBlock blk;
      blk.pos = pos;
      blk.dim = dim;
      blk.wide = dim >= kWideConeDim;
      std::vector<char> seen(static_cast<std::size_t>(w.n), 0);
      for (int i = 0; i < program.n_vars; ++i) {
        if (!used[static_cast<std::size_t>(i)]) continue;
        for (int j = 0; j < dim; ++j) {
          const double v = program.A(i, pos + j);
          if (v == 0.0) continue;
          const int rj = to_reduced[static_cast<std::size_t>(i)];
          if (!seen[static_cast<std::size_t>(rj)]) {
            seen[static_cast<std::size_t>(rj)] = 1;
            blk.vars.push_back(rj);
          }
        }
      }
      std::sort(blk.vars.begin(), blk.vars.end());
      blk.Gk = Eigen::MatrixXd::Zero(dim, static_cast<Eigen::Index>(blk.vars.size()));
      for (std::size_t jl = 0; jl < blk.vars.size(); ++jl) {
        const int orig = w.keep[static_cast<std::size_t>(blk.vars[jl])];
        for (int j = 0; j < dim; ++j) {
          // G = A': slack row pos+j carries -A(orig, pos+j) on variable orig
          const double v = program.A(orig, pos + j);
          if (v != 0.0) {
            blk.Gk(j, static_cast<Eigen::Index>(jl)) = v;
            trips.emplace_back(pos + j, blk.vars[jl], v);
          }
        }
      }
      if (blk.wide) {
        const Eigen::MatrixXd gtg = blk.Gk.transpose() * blk.Gk;
        for (std::size_t a = 0; a < blk.vars.size(); ++a)
          for (std::size_t b = 0; b < blk.vars.size(); ++b) {
            const double v = gtg(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            if (v != 0.0) blk.gtg.emplace_back(blk.vars[a], blk.vars[b], v);
          }
      }
      w.cones.push_back(std::move(blk));
      pos += dim;
    }
    w.G.resize(w.m, w.n);
    w.G.setFromTriplets(trips.begin(), trips.end());
    w.Gt = w.G.transpose();
  }

  const int ncones = static_cast<int>(w.cones.size());

  // unit interior start
  Eigen::VectorXd x = Eigen::VectorXd::Zero(w.n);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(w.m);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(w.m);
  for (const ConeBlock& c : w.cones) {
    s[c.pos] = 1.0;
    z[c.pos] = 1.0;
  }

  const double hnorm = std::max(1.0, w.h.norm());
  const double cnorm = std::max(1.0, w.c.norm());

  Eigen::SparseMatrix<double> S(w.n, w.n);
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower,
                        Eigen::AMDOrdering<int>>
      ldlt;
  bool pattern_analyzed = false;

  // Woodbury data for wide cones
  std::vector<const ConeBlock*> wide;
  for (const ConeBlock& c : w.cones)
    if (c.wide) wide.push_back(&c);
  const int nw = static_cast<int>(wide.size());
  Eigen::MatrixXd U(w.n, 2 * nw);
  Eigen::MatrixXd Lam = Eigen::MatrixXd::Zero(2 * nw, 2 * nw);
  Eigen::MatrixXd Y;
  Eigen::PartialPivLU<Eigen::MatrixXd> cap;

  auto fold_dense = [&](std::vector<Eigen::Triplet<double>>& trips, const ConeBlock& c,
                        const Eigen::MatrixXd& M) {
    const Eigen::MatrixXd local = c.Gk.transpose() * M * c.Gk;
    for (std::size_t a = 0; a < c.vars.size(); ++a)
      for (std::size_t b = 0; b < c.vars.size(); ++b)
        trips.emplace_back(c.vars[a], c.vars[b], local(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)));
  };

  auto solve_H = [&](const Eigen::VectorXd& rhs) -> Eigen::VectorXd {
    Eigen::VectorXd v = ldlt.solve(rhs);
    if (nw > 0) v -= Y * cap.solve(U.transpose() * v);
    return v;
  };
  auto apply_H = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    Eigen::VectorXd r = S * v;
    if (nw > 0) r += U * (Lam * (U.transpose() * v));
    return r;
  };
  auto refined_solve = [&](const Eigen::VectorXd& rhs) -> Eigen::VectorXd {
    Eigen::VectorXd v = solve_H(rhs);
    for (int pass = 0; pass < 2; ++pass) {
      Eigen::VectorXd err = rhs - apply_H(v);
      if (err.norm() <= 1e-13 * std::max(1.0, rhs.norm())) break;
      v += solve_H(err);
    }
    return v;
  };

  double pres = 0.0, dres = 0.0, relgap = 0.0;
  int iter = 0;
  for (; iter < settings.max_iterations; ++iter) {
    const Eigen::VectorXd r_p = apply_G(w, x) + s - w.h;
    const Eigen::VectorXd r_d = apply_Gt(w, z) + w.c;
    const double gap = s.dot(z);
    const double pobj = w.c.dot(x);
    const double dobj = -w.h.dot(z);
    pres = r_p.norm() / hnorm;
    dres = r_d.norm() / cnorm;
    relgap = gap / std::max({1.0, std::abs(pobj), std::abs(dobj)});
    const double mu = gap / ncones;

    if (settings.record_trace)
      sol.trace.push_back({iter, relgap, pres, dres, mu, 0.0, 0.0});

    if (pres <= settings.feas_tol && dres <= settings.feas_tol && relgap <= settings.gap_tol) {
      sol.status = SolveStatus::Optimal;
      break;
    }

    // Farkas-style certificate: z in K, G'z ~ 0, h'z < 0
    {
      const double hz = w.h.dot(z);
      if (hz < -settings.feas_tol && apply_Gt(w, z).norm() <= settings.feas_tol * (-hz)) {
        sol.status = SolveStatus::Infeasible;
        break;
      }
    }

    // NT scaling per cone
    bool scaling_ok = true;
    for (ConeBlock& c : w.cones) {
      const Eigen::VectorXd sb = s.segment(c.pos, c.dim);
      const Eigen::VectorXd zb = z.segment(c.pos, c.dim);
      const double rho_s = jdot(sb);
      const double rho_z = jdot(zb);
      if (!(rho_s > 0.0) || !(rho_z > 0.0)) {
        scaling_ok = false;
        break;
      }
      const Eigen::VectorXd sn = sb / std::sqrt(rho_s);
      const Eigen::VectorXd zn = zb / std::sqrt(rho_z);
      const double gamma = std::sqrt((1.0 + sn.dot(zn)) / 2.0);
      Eigen::VectorXd wbar = (sn + jmul(zn)) / (2.0 * gamma);
      // Jordan square root of the scaling point, so that W^2 z = s
      wbar[0] += 1.0;
      c.wb = wbar / std::sqrt(2.0 * wbar[0]);
      c.jwb = jmul(c.wb);
      c.wb_sq = c.wb.squaredNorm();
      c.beta = std::pow(rho_s / rho_z, 0.25);
    }
    if (!scaling_ok) {
      sol.status = SolveStatus::NumericalFailure;
      break;
    }

    Eigen::VectorXd lambda(w.m);
    for (const ConeBlock& c : w.cones)
      lambda.segment(c.pos, c.dim) = apply_w(c, z.segment(c.pos, c.dim));

    // Normal-equations matrix H = G' W^-2 G = S + U Lam U'. Narrow cones
    // fold their full W^-2 into S; wide cones contribute the diagonal part
    // (1/beta^2) G'G plus a rank-2 term carried by U.
    {
      std::vector<Eigen::Triplet<double>> trips;
      int wi = 0;
      for (const ConeBlock& c : w.cones) {
        const double ib2 = 1.0 / (c.beta * c.beta);
        if (!c.wide) {
          Eigen::MatrixXd M = Eigen::MatrixXd::Identity(c.dim, c.dim);
          M += 4.0 * c.wb_sq * (c.jwb * c.jwb.transpose());
          M -= 2.0 * (c.jwb * c.wb.transpose() + c.wb * c.jwb.transpose());
          fold_dense(trips, c, M * ib2);
        } else {
          for (const Eigen::Triplet<double>& t : c.gtg)
            trips.emplace_back(t.row(), t.col(), ib2 * t.value());
          Eigen::VectorXd u1 = Eigen::VectorXd::Zero(w.n);
          Eigen::VectorXd u2 = Eigen::VectorXd::Zero(w.n);
          const Eigen::VectorXd g1 = c.Gk.transpose() * c.jwb;
          const Eigen::VectorXd g2 = c.Gk.transpose() * c.wb;
          for (std::size_t j = 0; j < c.vars.size(); ++j) {
            u1[c.vars[j]] = g1[static_cast<Eigen::Index>(j)];
            u2[c.vars[j]] = g2[static_cast<Eigen::Index>(j)];
          }
          U.col(2 * wi) = u1;
          U.col(2 * wi + 1) = u2;
          Lam(2 * wi, 2 * wi) = ib2 * 4.0 * c.wb_sq;
          Lam(2 * wi, 2 * wi + 1) = -2.0 * ib2;
          Lam(2 * wi + 1, 2 * wi) = -2.0 * ib2;
          Lam(2 * wi + 1, 2 * wi + 1) = 0.0;
          ++wi;
        }
      }
      S.setFromTriplets(trips.begin(), trips.end());
    }

    if (!pattern_analyzed) {
      // pad the pattern with an explicit diagonal so a later regularized
      // retry cannot change it
      Eigen::SparseMatrix<double> pattern = S;
      Eigen::SparseMatrix<double> eye(w.n, w.n);
      eye.setIdentity();
      pattern += eye;
      ldlt.analyzePattern(pattern);
      pattern_analyzed = true;
    }
    ldlt.factorize(S);
    if (ldlt.info() != Eigen::Success) {
      Eigen::SparseMatrix<double> eye(w.n, w.n);
      eye.setIdentity();
      double maxdiag = 0.0;
      for (int j = 0; j < w.n; ++j) maxdiag = std::max(maxdiag, S.coeff(j, j));
      const Eigen::SparseMatrix<double> Sreg = S + (1e-12 * std::max(1.0, maxdiag)) * eye;
      ldlt.factorize(Sreg);
      if (ldlt.info() != Eigen::Success) {
        sol.status = SolveStatus::NumericalFailure;
        break;
      }
    }
    if (nw > 0) {
      Y = ldlt.solve(U);
      Eigen::MatrixXd capm = U.transpose() * Y;
      // Lam^-1 for the 2x2 blocks [[4s/b^2, -2/b^2], [-2/b^2, 0]]
      for (int k = 0; k < nw; ++k) {
        const double b2 = wide[static_cast<std::size_t>(k)]->beta * wide[static_cast<std::size_t>(k)]->beta;
        const double sw = wide[static_cast<std::size_t>(k)]->wb_sq;
        capm(2 * k, 2 * k + 1) += -0.5 * b2;
        capm(2 * k + 1, 2 * k) += -0.5 * b2;
        capm(2 * k + 1, 2 * k + 1) += -sw * b2;
      }
      cap.compute(capm);
    }

    auto winv2 = [&](const Eigen::VectorXd& v) {
      Eigen::VectorXd r(w.m);
      for (const ConeBlock& c : w.cones)
        r.segment(c.pos, c.dim) = apply_winv(c, apply_winv(c, v.segment(c.pos, c.dim)));
      return r;
    };

    // predictor
    const Eigen::VectorXd rhs_aff = -r_d - apply_Gt(w, winv2(r_p - s));
    const Eigen::VectorXd dx_a = refined_solve(rhs_aff);
    const Eigen::VectorXd Gdx_a = apply_G(w, dx_a);
    const Eigen::VectorXd dz_a = winv2(Gdx_a + r_p - s);
    const Eigen::VectorXd ds_a = -r_p - Gdx_a;

    double alpha_aff = 1.0;
    for (const ConeBlock& c : w.cones) {
      alpha_aff = std::min(alpha_aff, max_step(s.segment(c.pos, c.dim), ds_a.segment(c.pos, c.dim)));
      alpha_aff = std::min(alpha_aff, max_step(z.segment(c.pos, c.dim), dz_a.segment(c.pos, c.dim)));
    }
    const double gap_aff = (s + alpha_aff * ds_a).dot(z + alpha_aff * dz_a);
    double sigma = std::pow(std::max(0.0, gap_aff / gap), 3.0);
    sigma = std::clamp(sigma, 0.0, 1.0);

    // corrector
    Eigen::VectorXd u(w.m);
    for (const ConeBlock& c : w.cones) {
      const Eigen::VectorXd lam = lambda.segment(c.pos, c.dim);
      const Eigen::VectorXd dsw = apply_winv(c, ds_a.segment(c.pos, c.dim));
      const Eigen::VectorXd dzw = apply_w(c, dz_a.segment(c.pos, c.dim));
      Eigen::VectorXd dcb = -jordan_product(lam, lam) - jordan_product(dsw, dzw);
      dcb[0] += sigma * mu;
      u.segment(c.pos, c.dim) = jordan_solve(lam, dcb);
    }
    Eigen::VectorXd winv_u(w.m);
    for (const ConeBlock& c : w.cones)
      winv_u.segment(c.pos, c.dim) = apply_winv(c, u.segment(c.pos, c.dim));

    const Eigen::VectorXd rhs = -r_d - apply_Gt(w, winv2(r_p)) - apply_Gt(w, winv_u);
    const Eigen::VectorXd dx = refined_solve(rhs);
    const Eigen::VectorXd Gdx = apply_G(w, dx);
    const Eigen::VectorXd dz = winv2(Gdx + r_p) + winv_u;
    const Eigen::VectorXd ds = -r_p - Gdx;

    double alpha = kInf;
    for (const ConeBlock& c : w.cones) {
      alpha = std::min(alpha, max_step(s.segment(c.pos, c.dim), ds.segment(c.pos, c.dim)));
      alpha = std::min(alpha, max_step(z.segment(c.pos, c.dim), dz.segment(c.pos, c.dim)));
    }
    alpha = std::min(1.0, settings.step_fraction * alpha);
    if (!(alpha > 1e-14)) {
      sol.status = SolveStatus::MaxIter;  // stalled
      break;
    }

    if (settings.record_trace) {
      sol.trace.back().step = alpha;
      sol.trace.back().sigma = sigma;
    }

    x += alpha * dx;
    s += alpha * ds;
    z += alpha * dz;
  }

  if (iter == settings.max_iterations) sol.status = SolveStatus::MaxIter;
  sol.iterations = iter;
  sol.gap = relgap;
  sol.primal_residual = pres;
  sol.dual_residual = dres;
  for (int j = 0; j < w.n; ++j) sol.x[w.keep[static_cast<std::size_t>(j)]] = x[j];
  sol.objective = -program.c_obj.dot(sol.x);
  return sol;
}

ResidualReport residuals(const ConicProgram& program, const Eigen::VectorXd& x) {
  if (x.size() != program.n_vars)
    throw UsageError("solution vector length does not match the program");
  ResidualReport rep;
  const Eigen::VectorXd slack = program.offset - program.A.transpose() * x;
  int pos = 0;
  for (int dim : program.cones) {
    const double violation = slack.segment(pos + 1, dim - 1).norm() - slack[pos];
    rep.cone_violation = std::max(rep.cone_violation, std::max(0.0, violation));
    pos += dim;
  }
  rep.objective = -program.c_obj.dot(x);
  return rep;
}

void write_trace_csv(const ConicSolution& solution, std::ostream& out) {
  auto fmt = [&](double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, res.ptr - buf);
  };
  out << "iteration,gap,primal_residual,dual_residual,mu,step,sigma\n";
  for (const TraceRow& row : solution.trace) {
    out << row.iteration << ',';
    fmt(row.gap); out << ',';
    fmt(row.primal_residual); out << ',';
    fmt(row.dual_residual); out << ',';
    fmt(row.mu); out << ',';
    fmt(row.step); out << ',';
    fmt(row.sigma); out << '\n';
  }
}

}  // namespace mlnsocp
