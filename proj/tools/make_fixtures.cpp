// Regenerates the committed fixture files from the builtin scenarios.
// Usage: make_fixtures <output-dir>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cgs/graph.hpp"
#include "cgs/scenarios.hpp"

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  fs::path dir = argc > 1 ? argv[1] : "fixtures";
  fs::create_directories(dir);

  auto write = [&](const cgs::ConstraintGraph& g) {
    fs::path p = dir / (g.name() + ".graph");
    std::ofstream out(p);
    out << cgs::serialize_graph(g);
    std::printf("%s\n", p.c_str());
  };

  for (int fi = 0; fi < 3; ++fi)
    for (int i = 0; i < cgs::kInstancesPerFamily; ++i)
      write(cgs::build_scenario(static_cast<cgs::Family>(fi), i));
  write(cgs::build_two_link_ik());
  return 0;
}
