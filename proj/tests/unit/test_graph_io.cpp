#include <cstdio>
#include <fstream>
#include <string>

#include "cgs/graph.hpp"
#include "cgs/se2.hpp"
#include "doctest.h"

using namespace cgs;

namespace {

ConstraintGraph kitchen_sink() {
  GraphBuilder b("kitchen_sink");
  b.variable("q", 2, -kPi, kPi);
  b.pose_variable("p", -2.0, 2.0);
  b.pose_variable("t", -1.5, 1.5);
  b.variable("v", 2, std::vector<double>{0.0, -1.0}, std::vector<double>{1.0, 1.0});

  PlanarFk fk;
  fk.roles = {FkRole::Joints, FkRole::Mount, FkRole::Target};
  fk.links = {1.0, 0.7};
  fk.base = {0.1, 0.0, 0.0};
  fk.mount_offset = {0.0, 0.05, 0.1};
  fk.ee_offset = {0.02, 0.0, 0.0};
  fk.target_base = {0.3, 0.2, 0.1};
  fk.target_offset = {0.0, 0.0, -0.2};
  b.constraint("fk", ConstraintKind::Eq, {"q", "p", "t"}, fk);

  b.constraint("rel", ConstraintKind::Eq, {"p", "t"}, RelativePose{{0.1, 0.0, 0.0}, {0, 1}});
  b.constraint("fix", ConstraintKind::Eq, {"t"}, FixedPose{{0.25, -0.5, 0.75}, {0, 1, 2}});
  b.constraint("reg", ConstraintKind::Ineq, {"p"}, PositionRegion{0.1, 0.2, 1.5});

  CircleClearance cc;
  cc.cx = -0.3;
  cc.cy = 0.4;
  cc.radius = 0.2;
  cc.arm_a.links = {1.0, 0.7};
  cc.arm_a.base = {0.1, 0.0, 0.0};
  b.constraint("keepout", ConstraintKind::Ineq, {"q"}, cc);

  CircleClearance sep;
  sep.radius = 0.15;
  sep.arm_a.links = {1.0, 0.7};
  sep.pairwise = true;
  b.constraint("apart", ConstraintKind::Ineq, {"q", "p"}, sep);

  BoxMembership box;
  box.lo = {0.1, -0.5};
  box.hi = {0.9, 0.5};
  b.constraint("box", ConstraintKind::Ineq, {"v"}, box);

  CustomAffine aff;
  aff.rows = 1;
  aff.a = {1.0, -1.0};
  aff.b = {0.0};
  b.constraint("flat", ConstraintKind::Eq, {"v"}, aff);
  return std::move(b).build();
}

}  // namespace

TEST_CASE("serialize and parse round trip every residual kind") {
  ConstraintGraph g = kitchen_sink();
  std::string text = serialize_graph(g);
  ConstraintGraph g2 = parse_graph(text);

  CHECK(g2.name() == g.name());
  REQUIRE(g2.var_count() == g.var_count());
  for (int v = 0; v < g.var_count(); ++v) {
    CHECK(g2.variable(v).id == g.variable(v).id);
    CHECK(g2.variable(v).dim == g.variable(v).dim);
    CHECK(g2.variable(v).lower == g.variable(v).lower);
    CHECK(g2.variable(v).upper == g.variable(v).upper);
  }
  REQUIRE(g2.constraints().size() == g.constraints().size());
  for (std::size_t c = 0; c < g.constraints().size(); ++c) {
    CHECK(g2.constraint(c).id == g.constraint(c).id);
    CHECK(g2.constraint(c).kind == g.constraint(c).kind);
    CHECK(g2.constraint(c).scope == g.constraint(c).scope);
    CHECK(g2.constraint(c).codim == g.constraint(c).codim);
    CHECK(residual_tag(g2.constraint(c).residual) == residual_tag(g.constraint(c).residual));
  }
  // Fixpoint: a second round trip reproduces the text exactly.
  CHECK(serialize_graph(g2) == text);
}

TEST_CASE("round trip preserves residual values exactly") {
  ConstraintGraph g = kitchen_sink();
  ConstraintGraph g2 = parse_graph(serialize_graph(g));
  // Shortest round-trip number formatting must keep evaluation bitwise equal.
  std::vector<double> x(g.ambient_dim());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.05 + 0.083 * static_cast<double>(i);
  for (const auto& con : g.constraints()) {
    auto r1 = eval_residual(g, con.id, x);
    auto r2 = eval_residual(g2, con.id, x);
    REQUIRE(r1.size() == r2.size());
    for (std::size_t k = 0; k < r1.size(); ++k) CHECK(r1[k] == r2[k]);
  }
}

TEST_CASE("witness lines survive the round trip") {
  GraphBuilder b("wit_io");
  b.variable("a", 2, 0.0, 1.0);
  BoxMembership box;
  box.lo = {0.25};
  box.hi = {0.75};
  b.constraint("c", ConstraintKind::Ineq, {"a"}, box);
  b.witness("a", {0.3125, 0.7});
  ConstraintGraph g = std::move(b).build();

  ConstraintGraph g2 = parse_graph(serialize_graph(g));
  REQUIRE(g2.has_witness());
  CHECK(g2.witness() == g.witness());
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_graph("# name t\nvar a dim=1 lo=0 hi=1\nwhatnow a\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }

  try {
    parse_graph("var a dim=1 lo=0 hi=1 extra=2\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
  }

  CHECK_THROWS_AS(parse_graph("con c kind=eq scope=a residual=custom_affine(rows=1,a=1,b=0)\n"),
                  GraphError);  // unknown scope variable
  CHECK_THROWS_AS(parse_graph("var a dim=1 lo=zero hi=1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("var a dim=1 lo=0 hi=1\ncon c kind=maybe scope=a "
                              "residual=custom_affine(rows=1,a=1,b=0)\n"),
                  ParseError);
}

TEST_CASE("file IO preserves content and reports the path on failure") {
  ConstraintGraph g = kitchen_sink();
  std::string path = "io_roundtrip_tmp.graph";
  {
    std::ofstream out(path);
    out << serialize_graph(g);
  }
  ConstraintGraph g2 = load_graph_file(path);
  CHECK(serialize_graph(g2) == serialize_graph(g));
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_graph_file("definitely_missing.graph"), GraphError);

  {
    std::ofstream out(path);
    out << "var broken\n";
  }
  try {
    load_graph_file(path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(path) != std::string::npos);
    CHECK(e.line == 1);
  }
  std::remove(path.c_str());
}
