#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cgs/se2.hpp"

namespace cgs {

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : GraphError {
  int line;
  ParseError(int line_, const std::string& what)
      : GraphError("line " + std::to_string(line_) + ": " + what), line(line_) {}
  // Pre-formatted message, used when wrapping with file context.
  explicit ParseError(const std::string& what, int line_) : GraphError(what), line(line_) {}
};

enum class ConstraintKind { Eq, Ineq };

// Planar kinematic chain. Empty links means a free-flying body whose
// configuration variable is itself an Se2 pose.
struct ArmGeom {
  std::vector<double> links;
  Se2 base{};
};

// Role of each scope variable in a planar_fk factor.
enum class FkRole : std::uint8_t { Joints, Target, Mount };

// Matches the chain's end-effector pose against a target frame:
//   world_ee = base * mounts... * mount_offset * chain(q) * ee_offset
//   world_target = target_base * targets... * target_offset
// Mount and target pose variables compose in reverse scope order, so a scope
// (t_b, q, t_x, p) with roles (target, joints, mount, mount) reads
// world = base * p * t_x * mount_offset * chain(q) and target = target_base * t_b.
// Empty links treats the joints variable (dim 3) as a pose directly.
struct PlanarFk {
  std::vector<FkRole> roles;
  std::vector<double> links;
  Se2 base{};
  Se2 mount_offset{};
  Se2 ee_offset{};
  Se2 target_base{};
  Se2 target_offset{};
};

// Selected components of pose_diff(a * offset, b) for scope (a, b).
struct RelativePose {
  Se2 offset{};
  std::vector<int> comps{0, 1, 2};
};

// Selected components of pose_diff(a, target) for scope (a).
struct FixedPose {
  Se2 target{};
  std::vector<int> comps{0, 1, 2};
};

// |a.xy - center| - radius <= 0.
struct PositionRegion {
  double cx = 0, cy = 0, radius = 1;
};

// Unary form: per arm point p_i, radius - |p_i - center| <= 0.
// Pairwise form (two scope vars): per point pair, radius - |p_i^a - p_j^b| <= 0,
// radius acting as the required separation.
struct CircleClearance {
  double cx = 0, cy = 0, radius = 0;
  ArmGeom arm_a{};
  ArmGeom arm_b{};
  bool pairwise = false;
};

// Two-sided bounds on the first lo.size() components of the stacked scope
// vector: lo[k] - x[k] <= 0 and x[k] - hi[k] <= 0.
struct BoxMembership {
  std::vector<double> lo, hi;
};

// r = A * x_stacked + b, A row-major rows x (stacked scope dim).
struct CustomAffine {
  int rows = 0;
  std::vector<double> a;
  std::vector<double> b;
};

using ResidualKind = std::variant<PlanarFk, RelativePose, FixedPose, PositionRegion,
                                  CircleClearance, BoxMembership, CustomAffine>;

std::string_view residual_tag(const ResidualKind& r);

struct VariableSpec {
  std::string id;
  int dim = 0;
  std::vector<double> lower, upper;
};

struct ConstraintSpec {
  std::string id;
  ConstraintKind kind = ConstraintKind::Eq;
  std::vector<int> scope;
  int codim = 0;
  ResidualKind residual;
};

class GraphBuilder;

class ConstraintGraph {
 public:
  const std::string& name() const { return name_; }
  int var_count() const { return static_cast<int>(vars_.size()); }
  const std::vector<VariableSpec>& variables() const { return vars_; }
  const VariableSpec& variable(int v) const { return vars_[v]; }
  const std::vector<ConstraintSpec>& constraints() const { return cons_; }
  const ConstraintSpec& constraint(int c) const { return cons_[c]; }

  // -1 when absent.
  int variable_index(std::string_view id) const;
  int constraint_index(std::string_view id) const;

  int ambient_dim() const { return ambient_dim_; }
  int var_offset(int v) const { return offsets_[v]; }
  std::uint32_t scope_mask(int c) const { return scope_masks_[c]; }
  std::uint32_t full_mask() const {
    return var_count() == 32 ? ~0u : (1u << var_count()) - 1u;
  }

  bool has_witness() const { return !witness_.empty(); }
  const std::vector<double>& witness() const { return witness_; }

 private:
  friend class GraphBuilder;
  std::string name_;
  std::vector<VariableSpec> vars_;
  std::vector<ConstraintSpec> cons_;
  std::vector<int> offsets_;
  std::vector<std::uint32_t> scope_masks_;
  std::vector<double> witness_;
  int ambient_dim_ = 0;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(std::string name) : name_(std::move(name)) {}

  GraphBuilder& variable(std::string id, int dim, std::vector<double> lo, std::vector<double> hi);
  GraphBuilder& variable(std::string id, int dim, double lo, double hi);
  // x/y in [lo, hi], angle in [-pi, pi].
  GraphBuilder& pose_variable(std::string id, double lo, double hi);

  GraphBuilder& constraint(std::string id, ConstraintKind kind,
                           std::vector<std::string> scope, ResidualKind residual);
  GraphBuilder& witness(const std::string& var_id, std::vector<double> values);

  // Validates all graph invariants; throws GraphError on violation.
  ConstraintGraph build() &&;

 private:
  std::string name_;
  std::vector<VariableSpec> vars_;
  struct PendingCon {
    std::string id;
    ConstraintKind kind;
    std::vector<std::string> scope;
    ResidualKind residual;
  };
  std::vector<PendingCon> cons_;
  std::vector<std::pair<std::string, std::vector<double>>> witness_;
};

// Number of residual rows the descriptor produces given the scope dims.
int residual_rows(const ResidualKind& r, std::span<const int> scope_dims);

// Positions of the chain joints' distal endpoints (one per link); for an
// empty chain, the body position itself.
std::vector<std::pair<double, double>> arm_points(const ArmGeom& arm, std::span<const double> q);

void eval_residual(const ConstraintGraph& g, int c, std::span<const double> x_full,
                   std::span<double> out);
std::vector<double> eval_residual(const ConstraintGraph& g, std::string_view cid,
                                  std::span<const double> x_full);

struct FeasReport {
  double max_eq = 0;    // ∞-norm over equality rows
  double max_ineq = 0;  // largest signed violation over inequality rows (<=0 feasible)
  bool feasible(double tol_eq, double tol_ineq) const {
    return max_eq <= tol_eq && max_ineq <= tol_ineq;
  }
};

// Over constraints whose scope is contained in var_mask.
FeasReport evaluate_feasibility(const ConstraintGraph& g, std::span<const double> x_full,
                                std::uint32_t var_mask);

// Connected components of the candidate variables, connecting two candidates
// when a constraint with scope inside assigned|candidate touches both
// (assigned variables are deleted from paths). Components are listed by
// smallest member index, members ascending.
std::vector<std::vector<int>> conditional_independence_components(const ConstraintGraph& g,
                                                                  std::uint32_t assigned_mask,
                                                                  std::uint32_t candidate_mask);

ConstraintGraph parse_graph(std::string_view text);
ConstraintGraph load_graph_file(const std::string& path);
std::string serialize_graph(const ConstraintGraph& g);

}  // namespace cgs
