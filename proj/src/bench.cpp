#include "cgs/bench.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace cgs {

int BenchResult::failure_count() const {
  int n = 0;
  for (const auto& c : cells)
    if (!c.ok) ++n;
  return n;
}

std::string BenchResult::csv() const {
  std::string out = report_csv_header();
  for (const auto& c : cells)
    if (c.ok) out += report_csv_row(c.report);
  return out;
}

namespace {

BenchCellResult run_cell(const BenchCell& cell) {
  BenchCellResult r;
  try {
    if (!cell.graph || !cell.table) throw std::runtime_error("cell missing graph or table");
    r.report = generate(*cell.graph, *cell.table, cell.strategy, cell.cfg, cell.seed);
    r.ok = true;
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

}  // namespace

BenchResult run_bench(const std::vector<BenchCell>& cells, int workers) {
  BenchResult result;
  result.cells.resize(cells.size());
  if (workers <= 1 || cells.size() <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) result.cells[i] = run_cell(cells[i]);
    return result;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      result.cells[i] = run_cell(cells[i]);
    }
  };
  std::vector<std::thread> pool;
  int n = std::min<int>(workers, static_cast<int>(cells.size()));
  pool.reserve(n);
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return result;
}

}  // namespace cgs
