#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "arbx/instance.hpp"
#include "arbx/solver.hpp"

namespace arbx {

/// One result line of the benchmark harness, mirroring the usual table layout.
struct ReportRow {
  std::string name;
  int size = 0;
  double density = 0.0;
  std::string cost;        // "1531" or "[35,44]" when not solved to optimality
  long long cuts = 0;
  long long nodes = 0;
  double time_seconds = 0.0;
  double gap_percent = 0.0;
  std::string status;
  std::string formulation;
  std::string problem;     // mca | pcmca | pcmca-wt | relax
  std::string solved_over_total;  // filled on the averages row only

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct BenchmarkConfig {
  std::string problem = "pcmca";      // mca | pcmca | pcmca-wt
  std::string model = "exact";        // exact | set | da | aac (relaxation runs)
  bool relaxation = false;
  SolverLimits limits;
};

/// Solves every instance of the manifest and appends an averages row computed
/// over the optimally solved rows.
std::vector<ReportRow> run_benchmark(const std::vector<std::string>& instance_paths,
                                     const BenchmarkConfig& config);

ReportRow benchmark_one(const Instance& inst, const BenchmarkConfig& config);

/// RFC 4180 output, fixed header, deterministic field formatting. The time
/// column is wall-clock and excluded from any byte-level comparison.
void write_csv(const std::vector<ReportRow>& rows, std::ostream& out);
std::vector<ReportRow> parse_csv(std::istream& in);

/// Plain-text table for standard output.
void write_table(const std::vector<ReportRow>& rows, std::ostream& out);

}  // namespace arbx
