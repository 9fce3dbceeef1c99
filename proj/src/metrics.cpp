#include "cgs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <unordered_set>

namespace cgs {

std::int64_t CoverageReport::occupied(std::string_view variable) const {
  for (const auto& v : per_variable)
    if (v.variable == variable) return v.occupied;
  return 0;
}

CoverageReport projected_coverage(std::span<const SampleRecord> samples, const ConstraintGraph& g,
                                  const CoverageConfig& cfg) {
  if (cfg.bins_per_dim < 1) throw GraphError("coverage: bins_per_dim must be >= 1");
  CoverageReport report;
  report.sample_count = static_cast<std::int64_t>(samples.size());
  const std::int64_t bins = cfg.bins_per_dim;
  for (int v = 0; v < g.var_count(); ++v) {
    const auto& spec = g.variable(v);
    std::unordered_set<std::int64_t> cells;
    std::int64_t oob = 0;
    for (const auto& rec : samples) {
      auto vals = rec.slice(g, v);
      std::int64_t cell = 0;
      bool clamped = false;
      for (int k = 0; k < spec.dim; ++k) {
        const double lo = spec.lower[k], hi = spec.upper[k];
        if (vals[k] < lo || vals[k] > hi) clamped = true;
        double t = (vals[k] - lo) / (hi - lo);
        auto b = static_cast<std::int64_t>(std::floor(t * static_cast<double>(bins)));
        b = std::clamp<std::int64_t>(b, 0, bins - 1);
        cell = cell * bins + b;
      }
      cells.insert(cell);
      if (clamped) ++oob;
    }
    report.per_variable.push_back(
        {spec.id, static_cast<std::int64_t>(cells.size()), oob});
  }
  return report;
}

std::vector<CoverageComparison> compare_coverage(std::span<const StrategyCoverage> reports,
                                                 const ConstraintGraph& g,
                                                 const CoverageConfig& cfg) {
  const CoverageReport* ref = nullptr;
  for (const auto& r : reports)
    if (r.strategy == cfg.normalize_against) ref = &r.report;
  std::vector<CoverageComparison> rows;
  for (const auto& r : reports) {
    for (int v = 0; v < g.var_count(); ++v) {
      CoverageComparison row;
      row.variable = g.variable(v).id;
      row.strategy = r.strategy;
      row.occupied = r.report.per_variable[v].occupied;
      double denom = ref ? static_cast<double>(ref->per_variable[v].occupied) : 0.0;
      if (denom > 0)
        row.normalized = static_cast<double>(row.occupied) / denom;
      else
        row.normalized = row.occupied == 0 ? 1.0 : std::numeric_limits<double>::infinity();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<std::pair<double, double>> rate_curve(const RunReport& report, double window) {
  if (window <= 0) throw GraphError("rate_curve: window must be positive");
  std::vector<double> times;
  times.reserve(report.samples.size());
  for (const auto& s : report.samples) times.push_back(s.completed_at);
  std::sort(times.begin(), times.end());
  std::vector<std::pair<double, double>> curve;
  const double end = std::max(report.wall_time, window);
  std::size_t i = 0;
  for (double t = window;; t += window) {
    while (i < times.size() && times[i] <= t) ++i;
    curve.emplace_back(t, static_cast<double>(i) / t);
    if (t >= end) break;
  }
  return curve;
}

namespace {
std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

std::string coverage_csv(std::span<const CoverageComparison> rows) {
  std::string out = "strategy,variable,occupied_cells,normalized\n";
  for (const auto& r : rows)
    out += r.strategy + "," + r.variable + "," + std::to_string(r.occupied) + "," +
           fmt_g17(r.normalized) + "\n";
  return out;
}

std::string rate_curve_csv(const RunReport& report, double window) {
  std::string out = "time,samples_per_unit\n";
  for (const auto& [t, rate] : rate_curve(report, window))
    out += fmt_g17(t) + "," + fmt_g17(rate) + "\n";
  return out;
}

}  // namespace cgs
