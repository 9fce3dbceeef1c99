#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "cgs/graph.hpp"

namespace cgs {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_num(const std::string& tok, int line) {
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size() || tok.empty())
    throw ParseError(line, "expected a number, got '" + tok + "'");
  return v;
}

int parse_int(const std::string& tok, int line) {
  char* end = nullptr;
  long v = std::strtol(tok.c_str(), &end, 10);
  if (end != tok.c_str() + tok.size() || tok.empty())
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  return static_cast<int>(v);
}

std::vector<double> parse_num_list(const std::string& tok, char sep, int line) {
  std::vector<double> out;
  for (const auto& part : split(tok, sep)) out.push_back(parse_num(part, line));
  return out;
}

Se2 parse_pose(const std::string& tok, int line) {
  auto v = parse_num_list(tok, ':', line);
  if (v.size() != 3) throw ParseError(line, "pose needs 3 values x:y:theta");
  return {v[0], v[1], v[2]};
}

std::vector<int> parse_int_list(const std::string& tok, int line) {
  std::vector<int> out;
  for (const auto& part : split(tok, ':')) out.push_back(parse_int(part, line));
  return out;
}

using Params = std::map<std::string, std::string>;

class ParamReader {
 public:
  ParamReader(Params params, int line, std::string ctx)
      : params_(std::move(params)), line_(line), ctx_(std::move(ctx)) {}

  bool has(const std::string& key) const { return params_.count(key) > 0; }

  std::string take(const std::string& key) {
    auto it = params_.find(key);
    if (it == params_.end())
      throw ParseError(line_, ctx_ + ": missing required parameter '" + key + "'");
    std::string v = it->second;
    params_.erase(it);
    return v;
  }

  double num(const std::string& key) { return parse_num(take(key), line_); }
  int integer(const std::string& key) { return parse_int(take(key), line_); }
  Se2 pose(const std::string& key, Se2 dflt = {}) {
    return has(key) ? parse_pose(take(key), line_) : dflt;
  }
  std::vector<double> nums(const std::string& key) { return parse_num_list(take(key), ':', line_); }
  std::vector<double> nums_or(const std::string& key, std::vector<double> dflt) {
    return has(key) ? nums(key) : std::move(dflt);
  }
  std::vector<int> ints_or(const std::string& key, std::vector<int> dflt) {
    return has(key) ? parse_int_list(take(key), line_) : std::move(dflt);
  }

  void done() const {
    if (!params_.empty())
      throw ParseError(line_, ctx_ + ": unknown parameter '" + params_.begin()->first + "'");
  }

 private:
  Params params_;
  int line_;
  std::string ctx_;
};

ResidualKind parse_residual(const std::string& spec, int line, const std::string& cid) {
  auto open = spec.find('(');
  if (open == std::string::npos || spec.back() != ')')
    throw ParseError(line, "constraint " + cid + ": residual must look like tag(...)");
  std::string tag = spec.substr(0, open);
  std::string body = spec.substr(open + 1, spec.size() - open - 2);
  Params params;
  if (!body.empty()) {
    for (const auto& item : split(body, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos)
        throw ParseError(line, "constraint " + cid + ": residual parameter '" + item +
                                   "' is not key=value");
      params[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  ParamReader p(std::move(params), line, "constraint " + cid);

  if (tag == "planar_fk") {
    PlanarFk r;
    for (const auto& role : split(p.take("roles"), ':')) {
      if (role == "joints")
        r.roles.push_back(FkRole::Joints);
      else if (role == "target")
        r.roles.push_back(FkRole::Target);
      else if (role == "mount")
        r.roles.push_back(FkRole::Mount);
      else
        throw ParseError(line, "constraint " + cid + ": unknown fk role '" + role + "'");
    }
    r.links = p.nums_or("links", {});
    r.base = p.pose("base");
    r.mount_offset = p.pose("mount_offset");
    r.ee_offset = p.pose("ee_offset");
    r.target_base = p.pose("target_base");
    r.target_offset = p.pose("target_offset");
    p.done();
    return r;
  }
  if (tag == "relative_pose") {
    RelativePose r;
    r.offset = p.pose("offset");
    r.comps = p.ints_or("comps", {0, 1, 2});
    p.done();
    return r;
  }
  if (tag == "fixed_pose") {
    FixedPose r;
    r.target = p.pose("target");
    r.comps = p.ints_or("comps", {0, 1, 2});
    p.done();
    return r;
  }
  if (tag == "position_region") {
    PositionRegion r;
    auto c = parse_num_list(p.take("center"), ':', line);
    if (c.size() != 2) throw ParseError(line, "constraint " + cid + ": center needs x:y");
    r.cx = c[0];
    r.cy = c[1];
    r.radius = p.num("radius");
    p.done();
    return r;
  }
  if (tag == "circle_clearance") {
    CircleClearance r;
    r.pairwise = p.has("links_b") || p.has("base_b");
    if (p.has("center")) {
      auto c = parse_num_list(p.take("center"), ':', line);
      if (c.size() != 2) throw ParseError(line, "constraint " + cid + ": center needs x:y");
      r.cx = c[0];
      r.cy = c[1];
    }
    r.radius = p.num("radius");
    r.arm_a.links = p.nums_or("links_a", {});
    r.arm_a.base = p.pose("base_a");
    r.arm_b.links = p.nums_or("links_b", {});
    r.arm_b.base = p.pose("base_b");
    p.done();
    return r;
  }
  if (tag == "box_membership") {
    BoxMembership r;
    r.lo = p.nums("lo");
    r.hi = p.nums("hi");
    p.done();
    return r;
  }
  if (tag == "custom_affine") {
    CustomAffine r;
    r.rows = p.integer("rows");
    r.a = p.nums("a");
    r.b = p.nums("b");
    p.done();
    return r;
  }
  throw ParseError(line, "constraint " + cid + ": unknown residual tag '" + tag + "'");
}

// Shortest %.g representation that parses back to the same double.
std::string fmt_num(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string fmt_list(const std::vector<double>& vs, char sep) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += sep;
    out += fmt_num(vs[i]);
  }
  return out;
}

std::string fmt_pose(const Se2& p) {
  return fmt_num(p.x) + ":" + fmt_num(p.y) + ":" + fmt_num(p.theta);
}

bool is_identity(const Se2& p) { return p.x == 0 && p.y == 0 && p.theta == 0; }

void append_pose_param(std::string& out, const char* key, const Se2& p) {
  if (!is_identity(p)) out += std::string(",") + key + "=" + fmt_pose(p);
}

std::string serialize_residual(const ResidualKind& r) {
  struct Visitor {
    std::string operator()(const PlanarFk& p) const {
      std::string out = "planar_fk(roles=";
      for (std::size_t i = 0; i < p.roles.size(); ++i) {
        if (i) out += ':';
        out += p.roles[i] == FkRole::Joints ? "joints"
               : p.roles[i] == FkRole::Target ? "target"
                                              : "mount";
      }
      if (!p.links.empty()) out += ",links=" + fmt_list(p.links, ':');
      append_pose_param(out, "base", p.base);
      append_pose_param(out, "mount_offset", p.mount_offset);
      append_pose_param(out, "ee_offset", p.ee_offset);
      append_pose_param(out, "target_base", p.target_base);
      append_pose_param(out, "target_offset", p.target_offset);
      return out + ")";
    }
    std::string comps_suffix(const std::vector<int>& comps) const {
      if (comps == std::vector<int>{0, 1, 2}) return "";
      std::string out = ",comps=";
      for (std::size_t i = 0; i < comps.size(); ++i) {
        if (i) out += ':';
        out += std::to_string(comps[i]);
      }
      return out;
    }
    std::string operator()(const RelativePose& p) const {
      std::string out = "relative_pose(offset=" + fmt_pose(p.offset);
      return out + comps_suffix(p.comps) + ")";
    }
    std::string operator()(const FixedPose& p) const {
      std::string out = "fixed_pose(target=" + fmt_pose(p.target);
      return out + comps_suffix(p.comps) + ")";
    }
    std::string operator()(const PositionRegion& p) const {
      return "position_region(center=" + fmt_num(p.cx) + ":" + fmt_num(p.cy) +
             ",radius=" + fmt_num(p.radius) + ")";
    }
    std::string operator()(const CircleClearance& p) const {
      std::string out = "circle_clearance(";
      if (!p.pairwise) out += "center=" + fmt_num(p.cx) + ":" + fmt_num(p.cy) + ",";
      out += "radius=" + fmt_num(p.radius);
      if (!p.arm_a.links.empty()) out += ",links_a=" + fmt_list(p.arm_a.links, ':');
      append_pose_param(out, "base_a", p.arm_a.base);
      if (p.pairwise) {
        if (!p.arm_b.links.empty()) out += ",links_b=" + fmt_list(p.arm_b.links, ':');
        if (is_identity(p.arm_b.base))
          out += ",base_b=0:0:0";
        else
          append_pose_param(out, "base_b", p.arm_b.base);
      }
      return out + ")";
    }
    std::string operator()(const BoxMembership& p) const {
      return "box_membership(lo=" + fmt_list(p.lo, ':') + ",hi=" + fmt_list(p.hi, ':') + ")";
    }
    std::string operator()(const CustomAffine& p) const {
      return "custom_affine(rows=" + std::to_string(p.rows) + ",a=" + fmt_list(p.a, ':') +
             ",b=" + fmt_list(p.b, ':') + ")";
    }
  };
  return std::visit(Visitor{}, r);
}

}  // namespace

ConstraintGraph parse_graph(std::string_view text) {
  std::string name = "graph";
  struct Var {
    std::string id;
    int dim;
    std::vector<double> lo, hi;
  };
  struct Con {
    std::string id;
    ConstraintKind kind;
    std::vector<std::string> scope;
    ResidualKind residual;
  };
  std::vector<Var> vars;
  std::vector<Con> cons;
  std::vector<std::pair<std::string, std::vector<double>>> witness;

  std::istringstream stream{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(stream, raw)) {
    ++lineno;
    std::istringstream ls(raw);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;

    if (toks[0][0] == '#') {
      if (toks.size() >= 3 && toks[0] == "#" && toks[1] == "name") {
        name = toks[2];
      } else if (toks.size() >= 4 && toks[0] == "#" && toks[1] == "witness") {
        std::vector<double> vals;
        for (std::size_t i = 3; i < toks.size(); ++i) vals.push_back(parse_num(toks[i], lineno));
        witness.emplace_back(toks[2], std::move(vals));
      }
      continue;
    }

    // Re-join tokens whose value contains spaces inside residual parens.
    for (std::size_t i = 0; i < toks.size(); ++i) {
      while (toks[i].find('(') != std::string::npos &&
             std::count(toks[i].begin(), toks[i].end(), '(') >
                 std::count(toks[i].begin(), toks[i].end(), ')')) {
        if (i + 1 >= toks.size()) throw ParseError(lineno, "unbalanced parentheses");
        toks[i] += toks[i + 1];
        toks.erase(toks.begin() + i + 1);
      }
    }

    if (toks.size() < 2) throw ParseError(lineno, "directive needs an id");
    Params kv;
    for (std::size_t i = 2; i < toks.size(); ++i) {
      auto eq = toks[i].find('=');
      if (eq == std::string::npos)
        throw ParseError(lineno, "expected key=value, got '" + toks[i] + "'");
      kv[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
    }

    if (toks[0] == "var") {
      ParamReader p(std::move(kv), lineno, "var " + toks[1]);
      Var v;
      v.id = toks[1];
      v.dim = p.integer("dim");
      v.lo = parse_num_list(p.take("lo"), ',', lineno);
      v.hi = parse_num_list(p.take("hi"), ',', lineno);
      p.done();
      vars.push_back(std::move(v));
    } else if (toks[0] == "con") {
      ParamReader p(std::move(kv), lineno, "con " + toks[1]);
      Con c;
      c.id = toks[1];
      std::string kind = p.take("kind");
      if (kind == "eq")
        c.kind = ConstraintKind::Eq;
      else if (kind == "ineq")
        c.kind = ConstraintKind::Ineq;
      else
        throw ParseError(lineno, "constraint " + c.id + ": kind must be eq or ineq");
      for (const auto& s : split(p.take("scope"), ',')) c.scope.push_back(s);
      c.residual = parse_residual(p.take("residual"), lineno, c.id);
      p.done();
      cons.push_back(std::move(c));
    } else {
      throw ParseError(lineno, "unknown directive '" + toks[0] + "'");
    }
  }

  GraphBuilder b(name);
  for (auto& v : vars) b.variable(v.id, v.dim, std::move(v.lo), std::move(v.hi));
  for (auto& c : cons) b.constraint(c.id, c.kind, std::move(c.scope), std::move(c.residual));
  for (auto& [vid, vals] : witness) b.witness(vid, std::move(vals));
  return std::move(b).build();
}

ConstraintGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_graph(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line);
  } catch (const GraphError& e) {
    throw GraphError(path + ": " + e.what());
  }
}

std::string serialize_graph(const ConstraintGraph& g) {
  std::string out = "# name " + g.name() + "\n";
  for (const auto& v : g.variables()) {
    out += "var " + v.id + " dim=" + std::to_string(v.dim) + " lo=" + fmt_list(v.lower, ',') +
           " hi=" + fmt_list(v.upper, ',') + "\n";
  }
  for (const auto& c : g.constraints()) {
    out += "con " + c.id + " kind=" + (c.kind == ConstraintKind::Eq ? "eq" : "ineq") + " scope=";
    for (std::size_t i = 0; i < c.scope.size(); ++i) {
      if (i) out += ',';
      out += g.variable(c.scope[i]).id;
    }
    out += " residual=" + serialize_residual(c.residual) + "\n";
  }
  if (g.has_witness()) {
    for (int v = 0; v < g.var_count(); ++v) {
      out += "# witness " + g.variable(v).id;
      for (int k = 0; k < g.variable(v).dim; ++k)
        out += " " + fmt_num(g.witness()[g.var_offset(v) + k]);
      out += "\n";
    }
  }
  return out;
}

}  // namespace cgs
