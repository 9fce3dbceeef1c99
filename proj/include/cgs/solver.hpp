#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cgs/graph.hpp"
#include "cgs/rng.hpp"
#include "cgs/states.hpp"

namespace cgs {

struct SolverConfig {
  double tol_eq = 1e-6;
  double tol_ineq = 1e-8;
  int max_iters = 100;
  double penalty_init = 1.0;
  double penalty_growth = 10.0;
  double step_damping = 1e-6;
  double fd_step = 1e-6;
  std::uint64_t rng_seed = 0;  // master seed for harnesses; ops take a stream
};

struct ActiveEntry {
  int constraint = 0;
  int row_offset = 0;
};

// Constraints with scope ⊆ to and scope ⊄ from, in declaration order.
struct ResidualStack {
  std::vector<ActiveEntry> entries;
  int rows = 0;
};

ResidualStack residual_stack(const ConstraintGraph& g, StateMask to, StateMask from);

struct SampleAttemptResult {
  bool feasible = false;
  std::vector<double> values;  // stacked new-variable values, ascending variable index
  double residual_norm = 0;    // final max violation over constraints with scope ⊆ to
  int iters = 0;
  double elapsed_seconds = 0;
  std::int64_t cost_proxy = 0;  // iters * active rows
};

struct SolveTrace {
  std::vector<double> merits;  // merit after each accepted step
};

// Damped Gauss-Newton projection of the new variables onto the active
// constraint set, from a caller-supplied initialization (stacked ascending).
// x_full provides the assigned values; entries outside `assigned` are ignored.
SampleAttemptResult project_from(const ConstraintGraph& g, StateMask assigned,
                                 std::span<const double> x_full, StateMask new_vars,
                                 std::span<const double> init, const SolverConfig& cfg,
                                 SolveTrace* trace = nullptr);

// Uniform draw of the new variables inside their boxes, then projection.
SampleAttemptResult conditional_sample(const ConstraintGraph& g, StateMask assigned,
                                       std::span<const double> x_full, StateMask new_vars,
                                       const SolverConfig& cfg, Rng& rng,
                                       SolveTrace* trace = nullptr);

// Scatter stacked new-variable values into the full vector.
void apply_values(const ConstraintGraph& g, StateMask new_vars, std::span<const double> values,
                  std::span<double> x_full);

}  // namespace cgs
