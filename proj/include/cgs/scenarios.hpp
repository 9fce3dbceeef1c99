#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cgs/graph.hpp"

namespace cgs {

enum class Family { PickPlace, Handover, Banana };

inline constexpr int kInstancesPerFamily = 8;

Family family_from_string(std::string_view name);
std::string_view family_name(Family f);

// Executable planar instance with obstacle/pose variation per index. The
// factor row dimensions equal the canonical counting dimensions, so the
// pruned transition table of an instance matches its counting graph.
ConstraintGraph build_scenario(Family f, int instance);

// Topology-only graph carrying just kinds, scopes, and equality row counts;
// used for pruning-count reports and the row-assignment sensitivity sweep.
ConstraintGraph build_counting_graph(Family f, int grasp_rows = 2, int position_rows = 2,
                                     int kin_rows = 3);

// Fixed baseline sampling orders; steps are variable-id tuples added jointly.
std::vector<std::string> builtin_expert_names(Family f);
std::vector<std::vector<std::string>> builtin_expert_steps(Family f, int which);

// Two-link arm whose end-effector is pinned to a vertical line: the feasible
// set projects to a one-parameter curve in joint space with an analytic
// parameterization, used by coverage tests.
ConstraintGraph build_two_link_ik();

}  // namespace cgs
