#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cgs/graph.hpp"
#include "cgs/runtime.hpp"

namespace cgs {

struct CoverageConfig {
  int bins_per_dim = 10;
  std::string normalize_against = "tree";
};

struct VariableCoverage {
  std::string variable;
  std::int64_t occupied = 0;
  std::int64_t out_of_bounds = 0;  // samples clamped to a boundary cell
};

struct CoverageReport {
  std::vector<VariableCoverage> per_variable;  // variable declaration order
  std::int64_t sample_count = 0;

  std::int64_t occupied(std::string_view variable) const;
};

// Distinct occupied grid cells per variable under uniform binning of the
// declared bounds. Out-of-bounds components are clamped to the boundary cell
// and counted.
CoverageReport projected_coverage(std::span<const SampleRecord> samples, const ConstraintGraph& g,
                                  const CoverageConfig& cfg);

// occupied(strategy) / occupied(reference), per variable. A zero reference
// count gives ratio 1 when the strategy count is also zero.
struct StrategyCoverage {
  std::string strategy;
  CoverageReport report;
};
struct CoverageComparison {
  std::string variable;
  std::string strategy;
  std::int64_t occupied = 0;
  double normalized = 0;
};
std::vector<CoverageComparison> compare_coverage(std::span<const StrategyCoverage> reports,
                                                 const ConstraintGraph& g,
                                                 const CoverageConfig& cfg);

// Cumulative samples / elapsed at each window boundary, covering the full run.
std::vector<std::pair<double, double>> rate_curve(const RunReport& report, double window);

std::string coverage_csv(std::span<const CoverageComparison> rows);  // includes header
std::string rate_curve_csv(const RunReport& report, double window);

}  // namespace cgs
