#include "cgs/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace cgs {

namespace {

constexpr double kMinStep = 1e-12;
constexpr double kPenaltyCap = 1e12;

struct NewVarLayout {
  std::vector<int> vars;   // ascending
  std::vector<int> x_pos;  // per stacked dim, index into x_full
  std::vector<double> lo, hi;
  int dim = 0;
};

NewVarLayout layout_new_vars(const ConstraintGraph& g, StateMask new_vars) {
  NewVarLayout l;
  for (int v = 0; v < g.var_count(); ++v) {
    if (!(new_vars & (1u << v))) continue;
    l.vars.push_back(v);
    const auto& spec = g.variable(v);
    for (int k = 0; k < spec.dim; ++k) {
      l.x_pos.push_back(g.var_offset(v) + k);
      l.lo.push_back(spec.lower[k]);
      l.hi.push_back(spec.upper[k]);
    }
  }
  l.dim = static_cast<int>(l.x_pos.size());
  return l;
}

struct ActiveSet {
  ResidualStack stack;
  std::vector<bool> row_is_eq;
};

// Raw residuals of the active set; returns max |eq| and max ineq.
void eval_active(const ConstraintGraph& g, const ActiveSet& act, std::span<const double> x,
                 Eigen::VectorXd& out) {
  for (const auto& e : act.stack.entries) {
    const int rows = g.constraint(e.constraint).codim;
    eval_residual(g, e.constraint, x, {out.data() + e.row_offset, static_cast<std::size_t>(rows)});
  }
}

double merit_of(const ActiveSet& act, const Eigen::VectorXd& r, double mu) {
  double m = 0;
  for (int i = 0; i < r.size(); ++i) {
    if (act.row_is_eq[i]) {
      m += r[i] * r[i];
    } else {
      double h = std::max(0.0, r[i]);
      m += mu * h * h;
    }
  }
  return m;
}

void violations_of(const ActiveSet& act, const Eigen::VectorXd& r, double& max_eq,
                   double& max_ineq) {
  max_eq = 0;
  max_ineq = 0;
  for (int i = 0; i < r.size(); ++i) {
    if (act.row_is_eq[i])
      max_eq = std::max(max_eq, std::abs(r[i]));
    else
      max_ineq = std::max(max_ineq, r[i]);
  }
}

}  // namespace

ResidualStack residual_stack(const ConstraintGraph& g, StateMask to, StateMask from) {
  ResidualStack s;
  for (int c = 0; c < static_cast<int>(g.constraints().size()); ++c) {
    const std::uint32_t m = g.scope_mask(c);
    if ((m & ~to) != 0) continue;   // not contained in to
    if ((m & ~from) == 0) continue; // already active before
    s.entries.push_back({c, s.rows});
    s.rows += g.constraint(c).codim;
  }
  return s;
}

void apply_values(const ConstraintGraph& g, StateMask new_vars, std::span<const double> values,
                  std::span<double> x_full) {
  std::size_t k = 0;
  for (int v = 0; v < g.var_count(); ++v) {
    if (!(new_vars & (1u << v))) continue;
    for (int d = 0; d < g.variable(v).dim; ++d) x_full[g.var_offset(v) + d] = values[k++];
  }
  if (k != values.size()) throw std::logic_error("apply_values: value length mismatch");
}

SampleAttemptResult project_from(const ConstraintGraph& g, StateMask assigned,
                                 std::span<const double> x_full, StateMask new_vars,
                                 std::span<const double> init, const SolverConfig& cfg,
                                 SolveTrace* trace) {
  const auto t0 = std::chrono::steady_clock::now();
  if ((assigned & new_vars) != 0)
    throw std::logic_error("conditional_sample: new_vars overlaps assigned");
  if (new_vars == 0) throw std::logic_error("conditional_sample: new_vars is empty");

  const StateMask to = assigned | new_vars;
  const NewVarLayout layout = layout_new_vars(g, new_vars);
  if (static_cast<int>(init.size()) != layout.dim)
    throw std::logic_error("conditional_sample: init length mismatch");

  std::vector<double> x(x_full.begin(), x_full.end());
  x.resize(g.ambient_dim(), 0.0);
  for (int k = 0; k < layout.dim; ++k)
    x[layout.x_pos[k]] = std::clamp(init[k], layout.lo[k], layout.hi[k]);

  ActiveSet act;
  act.stack = residual_stack(g, to, assigned);
  act.row_is_eq.resize(act.stack.rows);
  for (const auto& e : act.stack.entries) {
    const auto& c = g.constraint(e.constraint);
    for (int r = 0; r < c.codim; ++r)
      act.row_is_eq[e.row_offset + r] = (c.kind == ConstraintKind::Eq);
  }

  SampleAttemptResult result;
  const int rows = act.stack.rows;
  int iters = 0;

  if (rows > 0) {
    // Per new variable, the active entries whose scope contains it. A
    // perturbation of any other variable leaves a constraint's residual
    // unchanged, so those Jacobian entries are exactly zero and the
    // finite-difference probe can skip re-evaluating the constraint.
    std::vector<std::vector<int>> touching(layout.vars.size());
    for (std::size_t vi = 0; vi < layout.vars.size(); ++vi) {
      const StateMask bit = 1u << layout.vars[vi];
      for (std::size_t ei = 0; ei < act.stack.entries.size(); ++ei)
        if (g.scope_mask(act.stack.entries[ei].constraint) & bit)
          touching[vi].push_back(static_cast<int>(ei));
    }
    std::vector<int> var_index_of_dim(layout.dim);
    for (std::size_t vi = 0, k = 0; vi < layout.vars.size(); ++vi)
      for (int d = 0; d < g.variable(layout.vars[vi]).dim; ++d)
        var_index_of_dim[k++] = static_cast<int>(vi);

    Eigen::VectorXd r(rows), r_try(rows), r_w(rows);
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(rows, layout.dim);
    Eigen::VectorXd r_plus(rows), r_minus(rows);
    std::vector<double> x_try(x.size());
    double mu = cfg.penalty_init;

    while (true) {
      eval_active(g, act, x, r);
      double max_eq, max_ineq;
      violations_of(act, r, max_eq, max_ineq);
      if (max_eq <= cfg.tol_eq && max_ineq <= cfg.tol_ineq) break;
      if (iters >= cfg.max_iters) break;
      if (max_eq <= cfg.tol_eq && max_ineq > cfg.tol_ineq && mu < kPenaltyCap) mu *= cfg.penalty_growth;

      ++iters;
      // central finite differences over the new variables only
      for (int k = 0; k < layout.dim; ++k) {
        const int xi = layout.x_pos[k];
        const double saved = x[xi];
        const auto& touched = touching[var_index_of_dim[k]];
        x[xi] = saved + cfg.fd_step;
        for (int ei : touched) {
          const auto& e = act.stack.entries[ei];
          const int n = g.constraint(e.constraint).codim;
          eval_residual(g, e.constraint, x,
                        {r_plus.data() + e.row_offset, static_cast<std::size_t>(n)});
        }
        x[xi] = saved - cfg.fd_step;
        for (int ei : touched) {
          const auto& e = act.stack.entries[ei];
          const int n = g.constraint(e.constraint).codim;
          eval_residual(g, e.constraint, x,
                        {r_minus.data() + e.row_offset, static_cast<std::size_t>(n)});
        }
        x[xi] = saved;
        for (int ei : touched) {
          const auto& e = act.stack.entries[ei];
          const int end = e.row_offset + g.constraint(e.constraint).codim;
          for (int i = e.row_offset; i < end; ++i) {
            double hi_v = act.row_is_eq[i] ? r_plus[i] : std::max(0.0, r_plus[i]);
            double lo_v = act.row_is_eq[i] ? r_minus[i] : std::max(0.0, r_minus[i]);
            jac(i, k) = (hi_v - lo_v) / (2.0 * cfg.fd_step);
          }
        }
      }
      const double sqrt_mu = std::sqrt(mu);
      for (int i = 0; i < rows; ++i) {
        if (act.row_is_eq[i]) {
          r_w[i] = r[i];
        } else {
          r_w[i] = sqrt_mu * std::max(0.0, r[i]);
          jac.row(i) *= sqrt_mu;
        }
      }

      Eigen::MatrixXd h = jac.transpose() * jac;
      h.diagonal().array() += cfg.step_damping;
      Eigen::VectorXd delta = h.ldlt().solve(-(jac.transpose() * r_w));

      const double merit0 = merit_of(act, r, mu);
      double alpha = 1.0;
      bool accepted = false;
      const double delta_inf = delta.lpNorm<Eigen::Infinity>();
      while (alpha * delta_inf > kMinStep) {
        std::copy(x.begin(), x.end(), x_try.begin());
        for (int k = 0; k < layout.dim; ++k) {
          const int xi = layout.x_pos[k];
          x_try[xi] = std::clamp(x[xi] + alpha * delta[k], layout.lo[k], layout.hi[k]);
        }
        eval_active(g, act, x_try, r_try);
        if (merit_of(act, r_try, mu) < merit0) {
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted) {
        // no descent at this weighting; escalate the penalty if inequalities
        // are the blocker, otherwise give up
        if (max_ineq > cfg.tol_ineq && mu < kPenaltyCap) {
          mu *= cfg.penalty_growth;
          continue;
        }
        break;
      }
      x.swap(x_try);
      if (trace) {
        eval_active(g, act, x, r);
        trace->merits.push_back(merit_of(act, r, mu));
      }
    }
  }

  FeasReport rep = evaluate_feasibility(g, x, to);
  result.feasible = rep.feasible(cfg.tol_eq, cfg.tol_ineq);
  result.residual_norm = std::max(rep.max_eq, std::max(0.0, rep.max_ineq));
  result.iters = iters;
  result.cost_proxy = static_cast<std::int64_t>(iters) * rows;
  if (result.feasible) {
    result.values.reserve(layout.dim);
    for (int k = 0; k < layout.dim; ++k) result.values.push_back(x[layout.x_pos[k]]);
  }
  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

SampleAttemptResult conditional_sample(const ConstraintGraph& g, StateMask assigned,
                                       std::span<const double> x_full, StateMask new_vars,
                                       const SolverConfig& cfg, Rng& rng, SolveTrace* trace) {
  const NewVarLayout layout = layout_new_vars(g, new_vars);
  std::vector<double> init(layout.dim);
  for (int k = 0; k < layout.dim; ++k) init[k] = rng.uniform(layout.lo[k], layout.hi[k]);
  return project_from(g, assigned, x_full, new_vars, init, cfg, trace);
}

}  // namespace cgs
