#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cgs/runtime.hpp"

namespace cgs {

// One generate() run. Graph and table are borrowed and must outlive the call;
// cfg.warmstart, when set, is only read (generate copies it internally).
struct BenchCell {
  const ConstraintGraph* graph = nullptr;
  const TransitionTable* table = nullptr;
  Strategy strategy;
  std::uint64_t seed = 0;
  GenerateConfig cfg;
};

struct BenchCellResult {
  bool ok = false;
  RunReport report;   // valid when ok
  std::string error;  // set when !ok
};

struct BenchResult {
  std::vector<BenchCellResult> cells;  // same order as the input cells
  int failure_count() const;
  // Merged run reports, failed cells skipped; one header plus a row per cell.
  std::string csv() const;
};

// Runs every cell, collecting per-cell errors instead of aborting the batch.
// workers > 1 runs cells on a small thread pool; results keep input order.
BenchResult run_bench(const std::vector<BenchCell>& cells, int workers = 1);

}  // namespace cgs
