#include "cgs/scenarios.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace cgs {
namespace {

const std::vector<double> kArmLinks{0.65, 0.55, 0.45};   // ground arm, reach 1.65
const std::vector<double> kHandLinks{0.35, 0.30, 0.25};  // climber hand, reach 0.9

void check_instance(int instance) {
  if (instance < 0 || instance >= kInstancesPerFamily)
    throw GraphError("instance index out of range: " + std::to_string(instance));
}

std::string inst_name(std::string_view family, int instance) {
  return std::string(family) + "_" + std::to_string(instance);
}

// Witness values per variable, in declaration order. Filled in from solver
// runs; an empty list means the instance ships without a witness (not allowed
// for release graphs, the test suite checks presence).
std::vector<std::pair<std::string, std::vector<double>>> witness_rows(Family f, int instance);

void apply_witness(GraphBuilder& b, Family f, int instance) {
  for (auto& [id, vals] : witness_rows(f, instance)) b.witness(id, std::move(vals));
}

ConstraintGraph build_pick_place(int i) {
  // Object angles stay within the wrist-reachability cone of the slot
  // direction; obstacles sit off the wrist bands so they cut branches
  // without emptying the feasible set.
  const Se2 start{0.9, 0.4, -0.6 + 0.3 * i};
  const Se2 goal{0.9, -0.45, 0.44 - 0.3 * i};
  const bool even = i % 2 == 0;
  const double obs_x = 0.15;
  const double obs_y = even ? -0.45 : 0.5;
  const double obs_r = 0.15 + 0.01 * i;

  ArmGeom arm{kArmLinks, Se2{0, 0, 0}};

  PlanarFk kin1;
  kin1.roles = {FkRole::Target, FkRole::Joints};
  kin1.links = kArmLinks;
  kin1.target_base = start;
  PlanarFk kin2 = kin1;
  kin2.target_base = goal;

  GraphBuilder b(inst_name("pick_place", i));
  b.pose_variable("t", -0.12, 0.12)
      .variable("q1", 3, -kPi, kPi)
      .variable("q2", 3, -kPi, kPi)
      .constraint("grasp", ConstraintKind::Eq, {"t"},
                  FixedPose{Se2{0, 0, 0}, {1, 2}})
      .constraint("kin1", ConstraintKind::Eq, {"t", "q1"}, kin1)
      .constraint("kin2", ConstraintKind::Eq, {"t", "q2"}, kin2)
      .constraint("coll_q1", ConstraintKind::Ineq, {"q1"},
                  CircleClearance{obs_x, obs_y, obs_r, arm, {}, false})
      .constraint("coll_q2", ConstraintKind::Ineq, {"q2"},
                  CircleClearance{obs_x, obs_y, obs_r, arm, {}, false});
  apply_witness(b, Family::PickPlace, i);
  return std::move(b).build();
}

ConstraintGraph build_handover(int i) {
  const Se2 base_a{-1.0, 0, 0};
  const Se2 base_b{1.0, 0, kPi};
  // Arm a grasps the +x slot (end-effector along the object axis), arm b the
  // -x slot; start angles center on a's bearing to the object, goal angles
  // put theta+pi near b's bearing.
  const Se2 start{-1.5, 0.35, wrap_angle(2.0 + 0.25 * i)};
  const Se2 goal{1.5, 0.35, wrap_angle(-2.53 + 0.2 * i)};
  const bool even = i % 2 == 0;
  const double obs_x = even ? -1.3 : 0.0;
  const double obs_y = even ? -0.5 : -0.1;
  const double obs_r = (even ? 0.16 : 0.18) + 0.01 * i;

  ArmGeom arm_a{kArmLinks, base_a};
  ArmGeom arm_b{kArmLinks, base_b};

  auto kin = [](const ArmGeom& arm, Se2 target_base) {
    PlanarFk k;
    k.roles = {FkRole::Target, FkRole::Joints};
    k.links = arm.links;
    k.base = arm.base;
    k.target_base = target_base;
    return k;
  };
  // Chain end-effector against the object frame held at the exchange pose.
  auto kin_at = [](const ArmGeom& arm) {
    PlanarFk k;
    k.roles = {FkRole::Target, FkRole::Joints, FkRole::Target};
    k.links = arm.links;
    k.base = arm.base;
    return k;
  };

  GraphBuilder b(inst_name("handover", i));
  b.variable("p", 3, {-0.35, -1.0, -kPi}, {0.35, 1.0, kPi})
      .pose_variable("ta", -0.12, 0.12)
      .pose_variable("tb", -0.12, 0.12)
      .variable("qa1", 3, -kPi, kPi)
      .variable("qa2", 3, -kPi, kPi)
      .variable("qb1", 3, -kPi, kPi)
      .variable("qb2", 3, -kPi, kPi)
      .constraint("grasp_a", ConstraintKind::Eq, {"ta"}, FixedPose{Se2{0, 0, 0}, {1, 2}})
      .constraint("grasp_b", ConstraintKind::Eq, {"tb"},
                  FixedPose{Se2{0, 0, kPi}, {1, 2}})
      .constraint("position", ConstraintKind::Eq, {"p"},
                  FixedPose{Se2{0, 0.3, 0}, {1, 2}})
      .constraint("kin_a1", ConstraintKind::Eq, {"ta", "qa1"}, kin(arm_a, start))
      .constraint("kin_a2", ConstraintKind::Eq, {"ta", "qa2", "p"}, kin_at(arm_a))
      .constraint("kin_b2", ConstraintKind::Eq, {"tb", "qb2", "p"}, kin_at(arm_b))
      .constraint("kin_b1", ConstraintKind::Eq, {"tb", "qb1"}, kin(arm_b, goal))
      .constraint("coll_qa1", ConstraintKind::Ineq, {"qa1"},
                  CircleClearance{obs_x, obs_y, obs_r, arm_a, {}, false})
      .constraint("coll_qa2", ConstraintKind::Ineq, {"qa2"},
                  CircleClearance{obs_x, obs_y, obs_r, arm_a, {}, false})
      .constraint("coll_qb1", ConstraintKind::Ineq, {"qb1"},
                  CircleClearance{obs_x, obs_y, obs_r, arm_b, {}, false})
      .constraint("coll_qb2", ConstraintKind::Ineq, {"qb2"},
                  CircleClearance{obs_x, obs_y, obs_r, arm_b, {}, false})
      .constraint("coll_pair", ConstraintKind::Ineq, {"qa2", "qb2"},
                  CircleClearance{0, 0, 0.05, arm_a, arm_b, true});
  apply_witness(b, Family::Handover, i);
  return std::move(b).build();
}

ConstraintGraph build_banana(int i) {
  const Se2 box_start{-0.9, 0.15, 0};
  const Se2 banana{1.25 + 0.02 * (i % 4), 1.02 + 0.03 * (i / 4), kPi / 2};
  const bool even = i % 2 == 0;
  const double obs_x = even ? 0.35 : 0.85 + 0.04 * (i / 2);
  const double obs_y = even ? 0.62 : 0.45;
  const double obs_r = even ? 0.15 + 0.01 * i : 0.15;

  ArmGeom arm{kArmLinks, Se2{0, 0, 0}};
  ArmGeom flyer{{}, Se2{0, 0, 0}};

  // Ground arm reaching the object slot at the box start pose.
  PlanarFk kin_a1;
  kin_a1.roles = {FkRole::Target, FkRole::Joints};
  kin_a1.links = kArmLinks;
  kin_a1.target_base = box_start;
  // Ground arm reaching the slot once the box sits at the placement.
  PlanarFk kin_a2;
  kin_a2.roles = {FkRole::Target, FkRole::Joints, FkRole::Target};
  kin_a2.links = kArmLinks;
  // Free body standing on the placed box.
  PlanarFk kin_x;
  kin_x.roles = {FkRole::Target, FkRole::Joints, FkRole::Target};
  // Climber hands, mounted on the standing body, touching the goal object.
  auto hand = [&](double mount_x, double touch_x) {
    PlanarFk k;
    k.roles = {FkRole::Target, FkRole::Joints, FkRole::Mount, FkRole::Mount};
    k.links = kHandLinks;
    k.mount_offset = Se2{mount_x, 0.25, kPi / 2};
    k.target_base = banana;
    k.target_offset = Se2{touch_x, 0, 0};
    return k;
  };

  GraphBuilder b(inst_name("banana", i));
  b.variable("p", 3, {0.55, -1.0, -kPi}, {1.40, 1.0, kPi})
      .variable("ta", 3, {-0.15, 0.05, 1.6 - kPi}, {0.15, 0.35, 1.6 + kPi})
      .pose_variable("tb", -0.30, 0.30)
      .variable("tx", 3, {-0.22, 0.30, -kPi}, {0.22, 0.55, kPi})
      .variable("qa1", 3, -kPi, kPi)
      .variable("qa2", 3, -kPi, kPi)
      .variable("qx", 3, {-0.5, -0.5, -kPi}, {2.0, 1.5, kPi})
      .variable("qb1", 3, -kPi, kPi)
      .variable("qb2", 3, -kPi, kPi)
      .constraint("position", ConstraintKind::Eq, {"p"},
                  FixedPose{Se2{0, 0.15, 0}, {1, 2}})
      .constraint("grasp_a", ConstraintKind::Eq, {"ta"},
                  FixedPose{Se2{0, 0.2, 1.6}, {1, 2}})
      .constraint("grasp_b", ConstraintKind::Eq, {"tb"},
                  FixedPose{Se2{0, -0.06, 0}, {0, 1}})
      .constraint("grasp_x", ConstraintKind::Eq, {"tx"},
                  FixedPose{Se2{0, 0.42, 0}, {1, 2}})
      .constraint("kin_a1", ConstraintKind::Eq, {"ta", "qa1"}, kin_a1)
      .constraint("kin_a2", ConstraintKind::Eq, {"ta", "qa2", "p"}, kin_a2)
      .constraint("kin_x", ConstraintKind::Eq, {"tx", "qx", "p"}, kin_x)
      .constraint("kin_b1", ConstraintKind::Eq, {"tb", "qb1", "tx", "p"},
                  hand(-0.12, -0.06))
      .constraint("kin_b2", ConstraintKind::Eq, {"tb", "qb2", "tx", "p"},
                  hand(0.12, 0.06))
      .constraint("coll_qa1", ConstraintKind::Ineq, {"qa1"},
                  CircleClearance{obs_x, obs_y, obs_r, arm, {}, false})
      .constraint("coll_qa2", ConstraintKind::Ineq, {"qa2"},
                  CircleClearance{obs_x, obs_y, obs_r, arm, {}, false})
      .constraint("coll_qx", ConstraintKind::Ineq, {"qx"},
                  CircleClearance{obs_x, obs_y, obs_r, flyer, {}, false});
  apply_witness(b, Family::Banana, i);
  return std::move(b).build();
}

CustomAffine eq_stub(int rows, int stacked_dim) {
  CustomAffine c;
  c.rows = rows;
  c.a.assign(static_cast<std::size_t>(rows) * stacked_dim, 0.0);
  c.b.assign(rows, 0.0);
  return c;
}

}  // namespace

Family family_from_string(std::string_view name) {
  if (name == "pick_place") return Family::PickPlace;
  if (name == "handover") return Family::Handover;
  if (name == "banana") return Family::Banana;
  throw GraphError("unknown scenario family: " + std::string(name));
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::PickPlace: return "pick_place";
    case Family::Handover: return "handover";
    case Family::Banana: return "banana";
  }
  throw GraphError("bad family enum");
}

ConstraintGraph build_scenario(Family f, int instance) {
  check_instance(instance);
  switch (f) {
    case Family::PickPlace: return build_pick_place(instance);
    case Family::Handover: return build_handover(instance);
    case Family::Banana: return build_banana(instance);
  }
  throw GraphError("bad family enum");
}

ConstraintGraph build_counting_graph(Family f, int grasp_rows, int position_rows,
                                     int kin_rows) {
  if (grasp_rows < 1 || position_rows < 1 || kin_rows < 1)
    throw GraphError("row counts must be positive");
  GraphBuilder b(std::string(family_name(f)) + "_counting");
  auto eq = [&](std::string id, std::vector<std::string> scope, int rows) {
    b.constraint(std::move(id), ConstraintKind::Eq, std::move(scope),
                 eq_stub(rows, 3 * static_cast<int>(scope.size())));
  };
  auto ineq = [&](std::string id, std::vector<std::string> scope) {
    b.constraint(std::move(id), ConstraintKind::Ineq, std::move(scope),
                 eq_stub(1, 3 * static_cast<int>(scope.size())));
  };
  switch (f) {
    case Family::PickPlace:
      for (auto v : {"t", "q1", "q2"}) b.variable(v, 3, -1.0, 1.0);
      eq("grasp", {"t"}, grasp_rows);
      eq("kin1", {"t", "q1"}, kin_rows);
      eq("kin2", {"t", "q2"}, kin_rows);
      ineq("coll_q1", {"q1"});
      ineq("coll_q2", {"q2"});
      break;
    case Family::Handover:
      for (auto v : {"p", "ta", "tb", "qa1", "qa2", "qb1", "qb2"})
        b.variable(v, 3, -1.0, 1.0);
      eq("grasp_a", {"ta"}, grasp_rows);
      eq("grasp_b", {"tb"}, grasp_rows);
      eq("position", {"p"}, position_rows);
      eq("kin_a1", {"ta", "qa1"}, kin_rows);
      eq("kin_a2", {"ta", "qa2", "p"}, kin_rows);
      eq("kin_b2", {"tb", "qb2", "p"}, kin_rows);
      eq("kin_b1", {"tb", "qb1"}, kin_rows);
      ineq("coll_qa1", {"qa1"});
      ineq("coll_qa2", {"qa2"});
      ineq("coll_qb1", {"qb1"});
      ineq("coll_qb2", {"qb2"});
      ineq("coll_pair", {"qa2", "qb2"});
      break;
    case Family::Banana:
      for (auto v : {"p", "ta", "tb", "tx", "qa1", "qa2", "qx", "qb1", "qb2"})
        b.variable(v, 3, -1.0, 1.0);
      eq("position", {"p"}, position_rows);
      eq("grasp_a", {"ta"}, grasp_rows);
      eq("grasp_b", {"tb"}, grasp_rows);
      eq("grasp_x", {"tx"}, grasp_rows);
      eq("kin_a1", {"ta", "qa1"}, kin_rows);
      eq("kin_a2", {"ta", "qa2", "p"}, kin_rows);
      eq("kin_x", {"tx", "qx", "p"}, kin_rows);
      eq("kin_b1", {"tb", "qb1", "tx", "p"}, kin_rows);
      eq("kin_b2", {"tb", "qb2", "tx", "p"}, kin_rows);
      ineq("coll_qa1", {"qa1"});
      ineq("coll_qa2", {"qa2"});
      ineq("coll_qx", {"qx"});
      break;
  }
  return std::move(b).build();
}

std::vector<std::string> builtin_expert_names(Family) {
  return {"expert1", "expert2", "expert3"};
}

std::vector<std::vector<std::string>> builtin_expert_steps(Family f, int which) {
  using Steps = std::vector<std::vector<std::string>>;
  switch (f) {
    case Family::PickPlace:
      switch (which) {
        case 0: return Steps{{"t", "q1", "q2"}};
        case 1: return Steps{{"t"}, {"q1"}, {"q2"}};
        case 2: return Steps{{"t", "q1"}, {"q2"}};
      }
      break;
    case Family::Handover:
      switch (which) {
        case 0: return Steps{{"p", "ta", "tb", "qa1", "qa2", "qb1", "qb2"}};
        case 1: return Steps{{"p"}, {"ta"}, {"tb"}, {"qa1"}, {"qa2"}, {"qb2"}, {"qb1"}};
        case 2: return Steps{{"qa1", "ta"}, {"qa2", "p", "qb2", "tb"}, {"qb1"}};
      }
      break;
    case Family::Banana:
      switch (which) {
        case 0:
          return Steps{{"p", "ta", "tb", "tx", "qa1", "qa2", "qx", "qb1", "qb2"}};
        case 1:
          return Steps{{"p"}, {"ta"}, {"tb"}, {"tx"}, {"qa1"},
                       {"qa2"}, {"qx"}, {"qb1"}, {"qb2"}};
        case 2:
          return Steps{{"qa1", "ta"}, {"qa2", "p"}, {"qx", "tx"}, {"qb1", "tb"}, {"qb2"}};
      }
      break;
  }
  throw GraphError("unknown builtin expert index: " + std::to_string(which));
}

ConstraintGraph build_two_link_ik() {
  PlanarFk fk;
  fk.roles = {FkRole::Joints, FkRole::Target};
  fk.links = {1.0, 0.7};

  GraphBuilder b("two_link_ik");
  b.variable("q", 2, -kPi, kPi)
      .variable("e", 3, {-2.0, -2.0, -kPi}, {2.0, 2.0, kPi})
      .constraint("fk", ConstraintKind::Eq, {"q", "e"}, fk)
      .constraint("pin", ConstraintKind::Eq, {"e"}, FixedPose{Se2{0.9, 0, 0}, {0}})
      .witness("q", {-1.0381555428334377, 2.0142387199304133})
      .witness("e", {0.89999999884198167, -0.28165277016689155, 0.976083177013498});
  return std::move(b).build();
}

namespace {

std::vector<std::pair<std::string, std::vector<double>>> witness_rows(Family f, int instance) {
  // Solver-produced feasible assignments, one per instance; build() re-checks
  // them at tol_eq 1e-6 / tol_ineq 1e-8 so regressions in the residuals or
  // the instance geometry fail fast.
  if (f == Family::PickPlace && instance == 0)
    return {{"t", {0.06123732790908934, 3.3367501159714548e-14, 1.5841415193286896e-12}},
            {"q1", {0.11342651795860086, 1.5789103650228187, -2.2923368829778394}},
            {"q2", {-0.11455136345725761, -1.6344109328841039, 2.1889622963185675}}};
  if (f == Family::PickPlace && instance == 1)
    return {{"t", {-0.11326186016936096, -4.8399791519592052e-14, -2.9439721060259272e-12}},
            {"q1", {0.14486359814522431, 1.9628014307362889, -2.4076650287755643}},
            {"q2", {-1.8841771672050864, 2.0480801989358395, -0.023903031931516355}}};
  if (f == Family::PickPlace && instance == 2)
    return {{"t", {0.099170067076542884, -1.8163618506385883e-15, 1.7940351581632766e-12}},
            {"q1", {-0.22247984246823591, 1.948093167413701, -1.7256133243886187}},
            {"q2", {0.23322629352989269, -1.9476997886260943, 1.5544734938797014}}};
  if (f == Family::PickPlace && instance == 3)
    return {{"t", {-0.10644407347177556, -8.0754607463938912e-14, -1.3792451366548866e-12}},
            {"q1", {-0.42257978605555097, 2.4136651834433014, -1.6910853971290289}},
            {"q2", {-1.4551333445197601, 2.3906228491571748, -1.395489504661235}}};
  if (f == Family::PickPlace && instance == 4)
    return {{"t", {0.078684978346793694, -2.2656150254720359e-14, 1.5733038181071403e-12}},
            {"q1", {-0.58205165763004063, 2.0607693032422061, -0.87871764563093702}},
            {"q2", {0.56775786699845487, -1.9873665383426866, 0.65960867131720557}}};
  if (f == Family::PickPlace && instance == 5)
    return {{"t", {-0.060894682362671745, 3.6206455967623317e-14, -1.5273746000367546e-12}},
            {"q1", {0.91879761686924244, -2.140707884731945, 2.121910267866443}},
            {"q2", {0.86685480500639467, -2.0071286867636111, 0.080273881798407526}}};
  if (f == Family::PickPlace && instance == 6)
    return {{"t", {-0.0029741065094779917, -4.0579845661364308e-14, 2.4058666986591045e-12}},
            {"q1", {0.77682553034782975, -1.8296432621440004, 2.2528177317782854}},
            {"q2", {-0.75527899306171831, 1.6780937325770577, -2.2828147395088534}}};
  if (f == Family::PickPlace && instance == 7)
    return {{"t", {-0.032532726560662681, -6.3295993430260617e-14, -1.5263249981013733e-12}},
            {"q1", {0.59023941074986108, -1.526951818256201, 2.436712405919633}},
            {"q2", {-0.57062452403875508, 1.3376967350842894, -2.4270722106906404}}};
  if (f == Family::Handover && instance == 0)
    return {{"p", {-0.24187226401797968, 0.29999999999880528, -1.8920635419575587e-12}},
            {"ta", {0.019213714274664312, 3.2520159461146836e-08, 8.872925761904682e-07}},
            {"tb", {-0.032762433627634868, -9.2230433026521775e-14, 3.1415926535885244}},
            {"qa1", {2.2636809812606309, 2.6213169965492815, -2.8849970903877247}},
            {"qa2", {-0.24725543226868427, 2.4012666103686335, -2.1540102911893677}},
            {"qb1", {-1.6391065298809828, -2.8644476996868407, 1.9735542294270823}},
            {"qb2", {-1.0247247237216879, 1.5077876995425574, -0.48306297798206643}}};
  if (f == Family::Handover && instance == 1)
    return {{"p", {-0.25645901270161248, 0.30000018615725643, -1.4415667792810893e-07}},
            {"ta", {0.050760819185341727, -6.0092742516788987e-14, 1.1360222372533906e-12}},
            {"tb", {-0.096232195735781512, -8.2083878357096163e-14, 3.1415926535875407}},
            {"qa1", {-2.3217666150719243, -2.7517243838532002, 1.0403057023369078}},
            {"qa2", {1.7010841840249689, -2.3779421144929107, 0.67685778643257688}},
            {"qb1", {-1.801773522468491, -2.7135566485884626, 2.1853301725486522}},
            {"qb2", {0.27305159950641034, -1.3165246627234179, 1.0434729190566014}}};
  if (f == Family::Handover && instance == 2)
    return {{"p", {-0.0031041516177922057, 0.2999999999996209, 1.7440551314423146e-12}},
            {"ta", {0.0028864894735049634, -2.5047111245959182e-14, -2.3155922365760719e-12}},
            {"tb", {0.098144576424364749, -5.835558370859226e-14, -3.1415926535878058}},
            {"qa1", {1.8043880032362776, 2.9237464923240704, -2.2281344955532032}},
            {"qa2", {-0.39081271469153278, 2.0548486493493958, -1.6640359346807947}},
            {"qb1", {1.6765131003291758, 2.7773415853438657, -0.30066937859194071}},
            {"qb2", {-1.5244405874495499, 2.2125709049237479, -0.68813031762761012}}};
  if (f == Family::Handover && instance == 3)
    return {{"p", {-0.006887778796163424, 0.30000000000065141, 1.4424457870242829e-12}},
            {"ta", {0.098647783671666656, 6.0243328153265865e-14, 2.1063547126388017e-12}},
            {"tb", {0.01133738585449523, 4.9278640003727069e-14, -3.1415926535870313}},
            {"qa1", {-3.0371807104973416, -2.7041544898681709, 2.208149893396123}},
            {"qa2", {-0.39222688272942619, 1.8881880726698475, -1.495961190006988}},
            {"qb1", {1.8950448458591838, 2.5773396657558552, -0.11919920398061162}},
            {"qb2", {-1.3956350443245642, 2.0621874108220624, -0.66655236693748143}}};
  if (f == Family::Handover && instance == 4)
    return {{"p", {-0.074132531856008821, 0.29999999999899446, -7.5066938638905577e-13}},
            {"ta", {-0.0062706227497934808, 1.0963489764648227e-07, -9.5310251002622692e-07}},
            {"tb", {-0.069551624000958739, -2.4542361248813356e-14, -3.1415926535875625}},
            {"qa1", {2.7368967455758901, -2.682906912455814, 2.9460092140652372}},
            {"qa2", {-0.36590664335403095, 2.189144768932286, -1.8232390782630334}},
            {"qb1", {2.0929780455929285, 2.4078645208604073, 0.052342737382602936}},
            {"qb2", {0.3822998134751624, -1.7875997814706097, 1.4052999698729911}}};
  if (f == Family::Handover && instance == 5)
    return {{"p", {-0.34250976251576237, 0.29999999999889854, 1.5214326675116557e-12}},
            {"ta", {0.066941531210407607, 1.0684420086682791e-13, 1.2936106136954869e-12}},
            {"tb", {-0.0051195700387725168, 1.0878989745948552e-13, 3.1415926535881886}},
            {"qa1", {2.8663112570481917, -2.4651592664976119, 2.8488480094547004}},
            {"qa2", {-0.17072967867928188, 2.4699158722576198, -2.2991861935705775}},
            {"qb1", {-2.370442423425497, -2.2472172395369872, 3.0876596621554553}},
            {"qb2", {-0.92214763795023813, 1.3296719273187234, -0.40752428989943756}}};
  if (f == Family::Handover && instance == 6)
    return {{"p", {0.27726467919071829, 0.29999999999924543, 1.622809137283033e-12}},
            {"ta", {0.11176276123382123, 1.1977571921340721e-13, 1.566302552932162e-12}},
            {"tb", {-0.03880190950068646, 7.6967833316407418e-14, -3.1415926535875349}},
            {"qa1", {2.9072043761366579, -2.2914039445719641, 2.8841995684748851}},
            {"qa2", {-0.24189600809822859, 1.21841226077375, -0.97651625279316667}},
            {"qb1", {-2.3160341681675591, -2.1063703055454761, 3.0924044733522531}},
            {"qb2", {0.2265360472097506, -2.4224490179634186, 2.1959129693319706}}};
  if (f == Family::Handover && instance == 7)
    return {{"p", {0.090954355154876931, 0.29999999999999394, -2.0443668950770192e-12}},
            {"ta", {-0.10303794631061611, 2.3670638263910993e-14, -1.8871458548012904e-12}},
            {"tb", {-0.034470077330250981, -3.2861246190162243e-14, 3.1415926535883778}},
            {"qa1", {0.77928249089889889, 1.9719336420027438, 0.99878386708948708}},
            {"qa2", {-0.38864803100918482, 2.0753546981976987, -1.6867066672025268}},
            {"qb1", {2.2502828888556201, 1.9514055467961502, 0.9514968691865251}},
            {"qb2", {-1.4683651676842318, 2.1501362110699929, -0.6817710436123362}}};
  if (f == Family::Banana && instance == 0)
    return {{"p", {0.7369598477239212, 0.15000000000033334, -1.4943570935459726e-12}},
            {"ta", {-0.11543379291150688, 0.19999985440835749, 1.6000000489376947}},
            {"tb", {2.7764797300156019e-07, -0.05999973269053932, -1.5005671243917991}},
            {"tx", {0.12752878685873273, 0.41999990646589364, 5.15207772888715e-07}},
            {"qa1", {2.7180998599247355, 1.1538482055466217, -2.2719480165213581}},
            {"qa2", {0.72306811005767568, -2.0227188720428848, 2.899650810911087}},
            {"qx", {0.86448771695908155, 0.56999929982192454, 7.1237809615154468e-07}},
            {"qb1", {-1.8970002360327909, 2.1506032527454764, -1.7541706527537375}},
            {"qb2", {0.38149359706030261, -2.4309260599221334, 0.54886482351704069}}};
  if (f == Family::Banana && instance == 1)
    return {{"p", {1.1184711608911577, 0.15000000000069347, -2.1110693979731069e-12}},
            {"ta", {-0.067330881045379889, 0.20000000000008697, 1.6000000000015973}},
            {"tb", {-1.8398315279610777e-07, -0.059999884794401534, -0.25815790299146091}},
            {"tx", {-0.057894218393695657, 0.42000008175154357, -8.4640748743147753e-07}},
            {"qa1", {2.6617190783055253, 1.2939266496838924, -2.3556457279410061}},
            {"qa2", {0.33731567800539747, -0.94698724220269648, 2.2096715640460345}},
            {"qx", {1.0605771324822408, 0.57000084098129455, -7.373064973004162e-07}},
            {"qb1", {-0.96457998680305146, -2.1014526528555253, 2.807875583046759}},
            {"qb2", {-2.3377134581781105, 2.865562689166171, -0.78600628765901304}}};
  if (f == Family::Banana && instance == 2)
    return {{"p", {1.0173676042844506, 0.14999912548936511, -6.0298155538096587e-08}},
            {"ta", {-0.12508993332813617, 0.20000006644557028, 1.5999994787945453}},
            {"tb", {1.6883386291799418e-07, -0.059999707396744761, 2.3100082399189237}},
            {"tx", {0.18601904696061147, 0.41999999999991944, -2.597653941619892e-12}},
            {"qa1", {-2.533758441419415, -1.123893372229519, -1.0255340118534992}},
            {"qa2", {0.53031769699165743, -1.4237750287812037, 2.4934567490948574}},
            {"qx", {1.203386676568857, 0.56999911427292027, -6.0299424777815644e-08}},
            {"qb1", {-0.74096912921631586, -0.30386086024589992, -2.9283470173823249}},
            {"qb2", {0.38963334966325824, -1.9463018703702468, -2.4165084864688633}}};
  if (f == Family::Banana && instance == 3)
    return {{"p", {1.2640796057727899, 0.14999999999922686, -2.0162482946927242e-12}},
            {"ta", {-0.10505241697945847, 0.1999999410931742, 1.6000002061724019}},
            {"tb", {-1.1728810660194267e-07, -0.059999720650165955, -2.4186603920856302}},
            {"tx", {0.10416047890816169, 0.41999999999996923, 2.1208848936929208e-12}},
            {"qa1", {-2.5047151682907915, -1.1853022467700958, -0.99316768590786797}},
            {"qa2", {0.097543507830102905, -0.39863773412461784, 1.9010944321506202}},
            {"qx", {1.3682400846801299, 0.56999999999991502, -2.8435123505789683e-12}},
            {"qb1", {-0.55538225694713772, 1.6591724055467796, 2.7607347667132971}},
            {"qb2", {1.3986700103618379, -1.7416419077070968, -2.0756884947322773}}};
  if (f == Family::Banana && instance == 4)
    return {{"p", {0.78905561359771248, 0.14999999999983996, -3.081670242830603e-12}},
            {"ta", {0.1094361225623002, 0.20000000000014256, 1.6000000000017709}},
            {"tb", {1.8935553319776588e-07, -0.059999780443576289, -0.40207211785603958}},
            {"tx", {-0.016874541738157722, 0.42000008189269267, -1.2938049448463218e-07}},
            {"qa1", {2.5032842825402826, 1.7261776520519783, -2.6294619337434937}},
            {"qa2", {-0.74231416791917604, 1.4077905340465662, 0.93452363384130444}},
            {"qx", {0.77218181856085233, 0.57000017032268135, 7.9742013148198509e-07}},
            {"qb1", {-1.1312751331686295, -1.1882169491803967, 1.9174200938124268}},
            {"qb2", {-2.3002866377762623, 2.0215704614554268, -0.12335581846048362}}};
  if (f == Family::Banana && instance == 5)
    return {{"p", {0.6982832763894028, 0.15000037672342181, 3.1704388858688759e-07}},
            {"ta", {-0.090376355124085705, 0.20000000000004048, 1.6000000000014913}},
            {"tb", {4.0197135488251323e-08, -0.060000036320746311, -0.43629461778807599}},
            {"tx", {0.13266661820436695, 0.41999999999992232, -1.4177578877638353e-12}},
            {"qa1", {-2.4842425934700407, -1.2285557567577743, -0.97038695667875274}},
            {"qa2", {0.72911400551476468, -2.0494836102527612, 2.9203699217787351}},
            {"qx", {0.83094976143403676, 0.57000041878528995, 3.1703949271900031e-07}},
            {"qb1", {-2.3256022316820855, 1.435675580570035, 0.45363171575341205}},
            {"qb2", {-0.43660502149566743, -2.1784746494563021, 2.1787847363707069}}};
  if (f == Family::Banana && instance == 6)
    return {{"p", {0.76238844083756541, 0.14999999999941588, 3.0113071515276842e-12}},
            {"ta", {-0.051210524784449152, 0.20000014054573928, 1.5999996409144062}},
            {"tb", {2.0898863244134258e-08, -0.059999714979707686, -1.2156094417861825}},
            {"tx", {-0.094333899356421752, 0.42000000000008103, 2.8142558821322322e-12}},
            {"qa1", {-2.4323778696984308, -1.3380163325373242, -0.91279146400809241}},
            {"qa2", {-0.94806279192059162, 1.8403457517662174, 0.70771668099909935}},
            {"qx", {0.6680536159760645, 0.56999903982119138, 3.7627385940375291e-07}},
            {"qb1", {-1.9109945453312258, 1.2618401149873906, -0.56645501151698285}},
            {"qb2", {-0.38223935482241894, -1.7543139446243039, 0.92094385889081987}}};
  if (f == Family::Banana && instance == 7)
    return {{"p", {0.70557234013458714, 0.14999999999967237, 1.971535685291073e-12}},
            {"ta", {-0.030536855821114053, 0.19999999999991533, 1.6000000000019345}},
            {"tb", {-9.8310302135140581e-08, -0.059999914243943256, -1.2748748295136045}},
            {"tx", {-0.014393215256348735, 0.41999995447842464, 4.6258835822987621e-07}},
            {"qa1", {-2.4063799884594834, -1.3928251245644383, -0.88398019138315731}},
            {"qa2", {0.69572205638754192, -1.9152658837871337, 2.8195438268776081}},
            {"qx", {0.69117912487843791, 0.56999995447787499, 4.6259140336217273e-07}},
            {"qb1", {-0.71491231995269044, -1.2845804057794363, 0.72461743360147501}},
            {"qb2", {-1.9250475650458354, 1.7616134900706444, -1.111441218908823}}};
  return {};
}

}  // namespace

}  // namespace cgs
