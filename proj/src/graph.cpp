#include "cgs/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

namespace cgs {

std::string_view residual_tag(const ResidualKind& r) {
  switch (r.index()) {
    case 0: return "planar_fk";
    case 1: return "relative_pose";
    case 2: return "fixed_pose";
    case 3: return "position_region";
    case 4: return "circle_clearance";
    case 5: return "box_membership";
    default: return "custom_affine";
  }
}

int ConstraintGraph::variable_index(std::string_view id) const {
  for (int i = 0; i < var_count(); ++i)
    if (vars_[i].id == id) return i;
  return -1;
}

int ConstraintGraph::constraint_index(std::string_view id) const {
  for (int i = 0; i < static_cast<int>(cons_.size()); ++i)
    if (cons_[i].id == id) return i;
  return -1;
}

GraphBuilder& GraphBuilder::variable(std::string id, int dim, std::vector<double> lo,
                                     std::vector<double> hi) {
  vars_.push_back({std::move(id), dim, std::move(lo), std::move(hi)});
  return *this;
}

GraphBuilder& GraphBuilder::variable(std::string id, int dim, double lo, double hi) {
  return variable(std::move(id), dim, std::vector<double>(dim, lo), std::vector<double>(dim, hi));
}

GraphBuilder& GraphBuilder::pose_variable(std::string id, double lo, double hi) {
  return variable(std::move(id), 3, {lo, lo, -kPi}, {hi, hi, kPi});
}

GraphBuilder& GraphBuilder::constraint(std::string id, ConstraintKind kind,
                                       std::vector<std::string> scope, ResidualKind residual) {
  cons_.push_back({std::move(id), kind, std::move(scope), std::move(residual)});
  return *this;
}

GraphBuilder& GraphBuilder::witness(const std::string& var_id, std::vector<double> values) {
  witness_.emplace_back(var_id, std::move(values));
  return *this;
}

int residual_rows(const ResidualKind& r, std::span<const int> scope_dims) {
  struct Visitor {
    std::span<const int> dims;
    int operator()(const PlanarFk&) const { return 3; }
    int operator()(const RelativePose& p) const { return static_cast<int>(p.comps.size()); }
    int operator()(const FixedPose& p) const { return static_cast<int>(p.comps.size()); }
    int operator()(const PositionRegion&) const { return 1; }
    int operator()(const CircleClearance& p) const {
      int na = p.arm_a.links.empty() ? 1 : static_cast<int>(p.arm_a.links.size());
      if (!p.pairwise) return na;
      int nb = p.arm_b.links.empty() ? 1 : static_cast<int>(p.arm_b.links.size());
      return na * nb;
    }
    int operator()(const BoxMembership& p) const { return 2 * static_cast<int>(p.lo.size()); }
    int operator()(const CustomAffine& p) const { return p.rows; }
  };
  return std::visit(Visitor{scope_dims}, r);
}

std::vector<std::pair<double, double>> arm_points(const ArmGeom& arm, std::span<const double> q) {
  std::vector<std::pair<double, double>> pts;
  if (arm.links.empty()) {
    Se2 body = compose(arm.base, {q[0], q[1], q[2]});
    pts.emplace_back(body.x, body.y);
    return pts;
  }
  double x = arm.base.x, y = arm.base.y, a = arm.base.theta;
  for (std::size_t i = 0; i < arm.links.size(); ++i) {
    a += q[i];
    x += arm.links[i] * std::cos(a);
    y += arm.links[i] * std::sin(a);
    pts.emplace_back(x, y);
  }
  return pts;
}

namespace {

// Stack buffer size for collision point evaluation.
constexpr int kMaxLinks = 8;

Se2 chain_pose(const ArmGeom& arm, std::span<const double> q) {
  if (arm.links.empty()) return compose(arm.base, {q[0], q[1], q[2]});
  double x = arm.base.x, y = arm.base.y, a = arm.base.theta;
  for (std::size_t i = 0; i < arm.links.size(); ++i) {
    a += q[i];
    x += arm.links[i] * std::cos(a);
    y += arm.links[i] * std::sin(a);
  }
  return {x, y, wrap_angle(a)};
}

Se2 read_pose(std::span<const double> x_full, int offset) {
  return {x_full[offset], x_full[offset + 1], x_full[offset + 2]};
}

struct EvalVisitor {
  const ConstraintGraph& g;
  const ConstraintSpec& c;
  std::span<const double> x;
  std::span<double> out;

  std::span<const double> slice(int scope_pos) const {
    int v = c.scope[scope_pos];
    return x.subspan(g.var_offset(v), g.variable(v).dim);
  }

  void operator()(const PlanarFk& p) const {
    Se2 world = p.base;
    Se2 target = p.target_base;
    // mounts/targets compose in reverse scope order
    for (int i = static_cast<int>(c.scope.size()) - 1; i >= 0; --i) {
      if (p.roles[i] == FkRole::Mount)
        world = compose(world, read_pose(x, g.var_offset(c.scope[i])));
      else if (p.roles[i] == FkRole::Target)
        target = compose(target, read_pose(x, g.var_offset(c.scope[i])));
    }
    world = compose(world, p.mount_offset);
    int joints_pos = 0;
    for (std::size_t i = 0; i < p.roles.size(); ++i)
      if (p.roles[i] == FkRole::Joints) joints_pos = static_cast<int>(i);
    ArmGeom arm{p.links, world};
    Se2 ee = compose(chain_pose(arm, slice(joints_pos)), p.ee_offset);
    target = compose(target, p.target_offset);
    Se2 d = pose_diff(ee, target);
    out[0] = d.x;
    out[1] = d.y;
    out[2] = d.theta;
  }

  void operator()(const RelativePose& p) const {
    Se2 a = read_pose(x, g.var_offset(c.scope[0]));
    Se2 b = read_pose(x, g.var_offset(c.scope[1]));
    Se2 d = pose_diff(compose(a, p.offset), b);
    const double comps[3] = {d.x, d.y, d.theta};
    for (std::size_t k = 0; k < p.comps.size(); ++k) out[k] = comps[p.comps[k]];
  }

  void operator()(const FixedPose& p) const {
    Se2 a = read_pose(x, g.var_offset(c.scope[0]));
    Se2 d = pose_diff(a, p.target);
    const double comps[3] = {d.x, d.y, d.theta};
    for (std::size_t k = 0; k < p.comps.size(); ++k) out[k] = comps[p.comps[k]];
  }

  void operator()(const PositionRegion& p) const {
    auto v = slice(0);
    out[0] = std::hypot(v[0] - p.cx, v[1] - p.cy) - p.radius;
  }

  // arm_points without the heap allocation; this sits on the solver's
  // finite-difference hot path.
  static int points_into(const ArmGeom& arm, std::span<const double> q,
                         std::pair<double, double>* pts) {
    if (arm.links.empty()) {
      Se2 body = compose(arm.base, {q[0], q[1], q[2]});
      pts[0] = {body.x, body.y};
      return 1;
    }
    double x = arm.base.x, y = arm.base.y, a = arm.base.theta;
    for (std::size_t i = 0; i < arm.links.size(); ++i) {
      a += q[i];
      x += arm.links[i] * std::cos(a);
      y += arm.links[i] * std::sin(a);
      pts[i] = {x, y};
    }
    return static_cast<int>(arm.links.size());
  }

  void operator()(const CircleClearance& p) const {
    std::pair<double, double> pa[kMaxLinks], pb[kMaxLinks];
    const int na = points_into(p.arm_a, slice(0), pa);
    if (!p.pairwise) {
      for (int i = 0; i < na; ++i)
        out[i] = p.radius - std::hypot(pa[i].first - p.cx, pa[i].second - p.cy);
      return;
    }
    const int nb = points_into(p.arm_b, slice(1), pb);
    int k = 0;
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < nb; ++j)
        out[k++] = p.radius - std::hypot(pa[i].first - pb[j].first, pa[i].second - pb[j].second);
  }

  void operator()(const BoxMembership& p) const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < c.scope.size() && k < p.lo.size(); ++i) {
      for (double v : slice(static_cast<int>(i))) {
        if (k >= p.lo.size()) break;
        out[2 * k] = p.lo[k] - v;
        out[2 * k + 1] = v - p.hi[k];
        ++k;
      }
    }
  }

  void operator()(const CustomAffine& p) const {
    int stacked = 0;
    for (int v : c.scope) stacked += g.variable(v).dim;
    for (int r = 0; r < p.rows; ++r) out[r] = p.b[r];
    int k = 0;
    for (std::size_t i = 0; i < c.scope.size(); ++i) {
      for (double v : slice(static_cast<int>(i))) {
        for (int r = 0; r < p.rows; ++r) out[r] += p.a[r * stacked + k] * v;
        ++k;
      }
    }
  }
};

void validate_residual(const std::string& cid, const ResidualKind& r,
                       const std::vector<const VariableSpec*>& scope_vars) {
  auto fail = [&](const std::string& msg) { throw GraphError("constraint " + cid + ": " + msg); };
  std::size_t arity = scope_vars.size();
  auto check_comps = (const std::vector<int>*)nullptr;
  if (const auto* p = std::get_if<PlanarFk>(&r)) {
    if (p->roles.size() != arity) fail("planar_fk roles must match scope arity");
    int joints = 0, targets = 0;
    for (auto role : p->roles) {
      if (role == FkRole::Joints) ++joints;
      if (role == FkRole::Target) ++targets;
    }
    if (joints != 1) fail("planar_fk needs exactly one joints entry");
    for (std::size_t i = 0; i < arity; ++i) {
      if (p->roles[i] == FkRole::Joints) {
        int dim = scope_vars[i]->dim;
        if (p->links.empty() ? dim != 3 : dim != static_cast<int>(p->links.size()))
          fail("joints variable dim must match link count (or 3 for a free body)");
      } else if (scope_vars[i]->dim != 3) {
        fail("pose variables must have dim 3");
      }
    }
    (void)targets;
  } else if (const auto* p = std::get_if<RelativePose>(&r)) {
    if (arity != 2 || scope_vars[0]->dim != 3 || scope_vars[1]->dim != 3)
      fail("relative_pose needs two dim-3 variables");
    check_comps = &p->comps;
  } else if (const auto* p = std::get_if<FixedPose>(&r)) {
    if (arity != 1 || scope_vars[0]->dim != 3) fail("fixed_pose needs one dim-3 variable");
    check_comps = &p->comps;
  } else if (std::get_if<PositionRegion>(&r)) {
    if (arity != 1 || scope_vars[0]->dim < 2) fail("position_region needs one variable of dim >= 2");
  } else if (const auto* p = std::get_if<CircleClearance>(&r)) {
    if (p->pairwise ? arity != 2 : arity != 1)
      fail("circle_clearance arity must match unary/pairwise form");
    auto check_arm = [&](const ArmGeom& arm, const VariableSpec& v) {
      if (arm.links.empty() ? v.dim != 3 : v.dim != static_cast<int>(arm.links.size()))
        fail("arm link count must match variable dim (or 3 for a free body)");
      if (arm.links.size() > static_cast<std::size_t>(kMaxLinks))
        fail("circle_clearance supports at most 8 links per arm");
    };
    check_arm(p->arm_a, *scope_vars[0]);
    if (p->pairwise) check_arm(p->arm_b, *scope_vars[1]);
  } else if (const auto* p = std::get_if<BoxMembership>(&r)) {
    int stacked = 0;
    for (const auto* v : scope_vars) stacked += v->dim;
    if (p->lo.size() != p->hi.size() || p->lo.empty() ||
        p->lo.size() > static_cast<std::size_t>(stacked))
      fail("box_membership bounds must be nonempty, equal length, and fit the stacked scope");
  } else if (const auto* p = std::get_if<CustomAffine>(&r)) {
    int stacked = 0;
    for (const auto* v : scope_vars) stacked += v->dim;
    if (p->rows < 1) fail("custom_affine needs rows >= 1");
    if (p->a.size() != static_cast<std::size_t>(p->rows * stacked) ||
        p->b.size() != static_cast<std::size_t>(p->rows))
      fail("custom_affine matrix/offset sizes must match rows x stacked scope dim");
  }
  if (check_comps) {
    if (check_comps->empty() || check_comps->size() > 3) fail("comps must select 1..3 components");
    int prev = -1;
    for (int k : *check_comps) {
      if (k < 0 || k > 2 || k <= prev) fail("comps must be ascending within 0..2");
      prev = k;
    }
  }
}

}  // namespace

ConstraintGraph GraphBuilder::build() && {
  ConstraintGraph g;
  g.name_ = std::move(name_);
  if (g.name_.empty()) throw GraphError("graph name must be nonempty");

  std::unordered_set<std::string> seen;
  for (auto& v : vars_) {
    if (v.id.empty()) throw GraphError("variable id must be nonempty");
    if (!seen.insert(v.id).second) throw GraphError("duplicate variable id: " + v.id);
    if (v.dim < 1) throw GraphError("variable " + v.id + ": dim must be >= 1");
    if (v.lower.size() != static_cast<std::size_t>(v.dim) ||
        v.upper.size() != static_cast<std::size_t>(v.dim))
      throw GraphError("variable " + v.id + ": bounds length must equal dim");
    for (int k = 0; k < v.dim; ++k)
      if (!(v.lower[k] < v.upper[k]))
        throw GraphError("variable " + v.id + ": lower bound must be < upper bound");
  }
  if (vars_.size() > 32) throw GraphError("at most 32 variables supported");
  g.vars_ = std::move(vars_);

  g.offsets_.resize(g.vars_.size());
  int off = 0;
  for (std::size_t i = 0; i < g.vars_.size(); ++i) {
    g.offsets_[i] = off;
    off += g.vars_[i].dim;
  }
  g.ambient_dim_ = off;

  std::unordered_set<std::string> seen_c;
  for (auto& pc : cons_) {
    if (pc.id.empty()) throw GraphError("constraint id must be nonempty");
    if (!seen_c.insert(pc.id).second) throw GraphError("duplicate constraint id: " + pc.id);
    if (pc.scope.empty()) throw GraphError("constraint " + pc.id + ": scope must be nonempty");
    ConstraintSpec c;
    c.id = pc.id;
    c.kind = pc.kind;
    c.residual = std::move(pc.residual);
    std::uint32_t mask = 0;
    std::vector<const VariableSpec*> scope_vars;
    std::vector<int> dims;
    for (const auto& vid : pc.scope) {
      int v = g.variable_index(vid);
      if (v < 0) throw GraphError("constraint " + pc.id + ": unknown variable " + vid);
      if (mask & (1u << v)) throw GraphError("constraint " + pc.id + ": duplicate scope variable " + vid);
      mask |= 1u << v;
      c.scope.push_back(v);
      scope_vars.push_back(&g.vars_[v]);
      dims.push_back(g.vars_[v].dim);
    }
    validate_residual(c.id, c.residual, scope_vars);
    c.codim = residual_rows(c.residual, dims);
    if (c.codim < 1) throw GraphError("constraint " + pc.id + ": codim must be >= 1");
    g.scope_masks_.push_back(mask);
    g.cons_.push_back(std::move(c));
  }

  if (!witness_.empty()) {
    std::vector<bool> covered(g.vars_.size(), false);
    g.witness_.assign(g.ambient_dim_, 0.0);
    for (auto& [vid, vals] : witness_) {
      int v = g.variable_index(vid);
      if (v < 0) throw GraphError("witness references unknown variable " + vid);
      if (vals.size() != static_cast<std::size_t>(g.vars_[v].dim))
        throw GraphError("witness for " + vid + " has wrong length");
      std::copy(vals.begin(), vals.end(), g.witness_.begin() + g.offsets_[v]);
      covered[v] = true;
    }
    for (std::size_t v = 0; v < covered.size(); ++v)
      if (!covered[v]) throw GraphError("witness missing variable " + g.vars_[v].id);
    FeasReport rep = evaluate_feasibility(g, g.witness_, g.full_mask());
    if (!rep.feasible(1e-6, 1e-8))
      throw GraphError("witness for graph " + g.name_ + " fails feasibility check (max eq " +
                       std::to_string(rep.max_eq) + ", max ineq " + std::to_string(rep.max_ineq) +
                       ")");
  }
  return g;
}

void eval_residual(const ConstraintGraph& g, int c, std::span<const double> x_full,
                   std::span<double> out) {
  const ConstraintSpec& spec = g.constraint(c);
  std::visit(EvalVisitor{g, spec, x_full, out}, spec.residual);
}

std::vector<double> eval_residual(const ConstraintGraph& g, std::string_view cid,
                                  std::span<const double> x_full) {
  int c = g.constraint_index(cid);
  if (c < 0) throw GraphError("unknown constraint id: " + std::string(cid));
  std::vector<double> out(g.constraint(c).codim);
  eval_residual(g, c, x_full, out);
  return out;
}

FeasReport evaluate_feasibility(const ConstraintGraph& g, std::span<const double> x_full,
                                std::uint32_t var_mask) {
  FeasReport rep;
  rep.max_ineq = -std::numeric_limits<double>::infinity();
  bool any_ineq = false;
  std::vector<double> buf;
  for (int c = 0; c < static_cast<int>(g.constraints().size()); ++c) {
    if ((g.scope_mask(c) & ~var_mask) != 0) continue;
    buf.resize(g.constraint(c).codim);
    eval_residual(g, c, x_full, buf);
    if (g.constraint(c).kind == ConstraintKind::Eq) {
      for (double r : buf) rep.max_eq = std::max(rep.max_eq, std::abs(r));
    } else {
      any_ineq = true;
      for (double r : buf) rep.max_ineq = std::max(rep.max_ineq, r);
    }
  }
  if (!any_ineq) rep.max_ineq = 0.0;
  return rep;
}

std::vector<std::vector<int>> conditional_independence_components(const ConstraintGraph& g,
                                                                  std::uint32_t assigned_mask,
                                                                  std::uint32_t candidate_mask) {
  std::vector<int> parent(g.var_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::uint32_t allowed = assigned_mask | candidate_mask;
  for (int c = 0; c < static_cast<int>(g.constraints().size()); ++c) {
    std::uint32_t m = g.scope_mask(c);
    if ((m & ~allowed) != 0) continue;
    int first = -1;
    for (int v : g.constraint(c).scope) {
      if (!(candidate_mask & (1u << v))) continue;
      if (first < 0)
        first = v;
      else
        parent[find(v)] = find(first);
    }
  }
  std::vector<std::vector<int>> comps;
  std::vector<int> root_to_comp(g.var_count(), -1);
  for (int v = 0; v < g.var_count(); ++v) {
    if (!(candidate_mask & (1u << v))) continue;
    int r = find(v);
    if (root_to_comp[r] < 0) {
      root_to_comp[r] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[root_to_comp[r]].push_back(v);
  }
  return comps;
}

}  // namespace cgs
