#include "arbx/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "arbx/cutting_plane.hpp"
#include "arbx/digraph.hpp"
#include "arbx/evaluation.hpp"
#include "arbx/log.hpp"

namespace arbx {

namespace {

std::string fixed3(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << v;
  return os.str();
}

// Rows carry the same 3-decimal values the CSV prints, so a written file
// parses back to the in-memory rows exactly.
double round3(double v) { return std::strtod(fixed3(v).c_str(), nullptr); }

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

const char* kHeader = "Name,Size,DensityOfP,Cost,Cuts,Nodes,TimeSeconds,GapPercent,Status,"
                      "Formulation,Problem,SolvedOverTotal";

}  // namespace

ReportRow benchmark_one(const Instance& inst, const BenchmarkConfig& config) {
  ReportRow row;
  row.name = inst.name();
  row.size = inst.n();
  row.density = round3(inst.n() >= 2 ? precedence_density(inst) : 0.0);
  row.problem = config.problem;
  row.formulation = config.relaxation ? config.model : "exact";

  try {
    if (config.relaxation) {
      CuttingPlaneOptions opt;
      auto lr = solve_lr_with_cuts(inst, config.model, opt);
      row.cuts = lr.cuts_added;
      row.status = to_string(lr.status);
      if (lr.status == LpStatus::Optimal) {
        std::ostringstream os;
        os << std::fixed << std::setprecision(2) << lr.value;
        row.cost = os.str();
      }
      return row;
    }
    if (config.problem == "mca") {
      DiGraph g(inst.n());
      for (const auto& arc : inst.arcs()) {
        g.add_arc(arc.from, arc.to, static_cast<double>(arc.cost));
      }
      auto mca = edmonds_mca(g, inst.root());
      row.status = mca.feasible ? "optimal" : "infeasible";
      if (mca.feasible) row.cost = std::to_string(llround(mca.cost));
      return row;
    }
    if (config.problem == "pcmca") {
      auto res = solve_pcmca(inst, config.limits);
      row.status = to_string(res.status);
      row.cuts = res.stats.cuts;
      row.nodes = res.stats.nodes;
      row.time_seconds = round3(res.stats.wall_seconds);
      if (res.status == SolveStatus::Optimal) {
        row.cost = std::to_string(res.stats.upper_bound);
      } else if (res.status == SolveStatus::Feasible) {
        row.cost = "[" + std::to_string(res.stats.lower_bound) + "," +
                   std::to_string(res.stats.upper_bound) + "]";
        row.gap_percent = round3(relative_gap(static_cast<double>(res.stats.upper_bound),
                                              static_cast<double>(res.stats.lower_bound)));
      }
      return row;
    }
    if (config.problem == "pcmca-wt") {
      auto res = solve_pcmcawt(inst, config.limits);
      row.status = to_string(res.status);
      row.cuts = res.stats.cuts;
      row.nodes = res.stats.nodes;
      row.time_seconds = round3(res.stats.wall_seconds);
      if (res.status == SolveStatus::Optimal) {
        row.cost = std::to_string(res.stats.upper_bound);
      } else if (res.status == SolveStatus::Feasible) {
        row.cost = "[" + std::to_string(res.stats.lower_bound) + "," +
                   std::to_string(res.stats.upper_bound) + "]";
        row.gap_percent = round3(relative_gap(static_cast<double>(res.stats.upper_bound),
                                              static_cast<double>(res.stats.lower_bound)));
      }
      return row;
    }
    throw DomainError("unknown problem '" + config.problem + "'");
  } catch (const std::exception& e) {
    ARBX_LOG_ERROR("benchmark " << inst.name() << ": " << e.what());
    row.status = "error";
    return row;
  }
}

std::vector<ReportRow> run_benchmark(const std::vector<std::string>& instance_paths,
                                     const BenchmarkConfig& config) {
  std::vector<ReportRow> rows;
  for (const auto& path : instance_paths) {
    try {
      Instance inst = parse_any_file(path);
      rows.push_back(benchmark_one(inst, config));
    } catch (const std::exception& e) {
      ARBX_LOG_ERROR("benchmark " << path << ": " << e.what());
      ReportRow row;
      row.name = path;
      row.status = "error";
      row.problem = config.problem;
      row.formulation = config.relaxation ? config.model : "exact";
      rows.push_back(std::move(row));
    }
  }

  ReportRow avg;
  avg.name = "Average";
  avg.problem = config.problem;
  avg.formulation = config.relaxation ? config.model : "exact";
  int solved = 0;
  double cost_sum = 0.0, time_sum = 0.0, gap_sum = 0.0;
  long long cuts_sum = 0, nodes_sum = 0;
  int size_sum = 0;
  double density_sum = 0.0;
  for (const auto& row : rows) {
    if (row.status != "optimal") continue;
    ++solved;
    cost_sum += std::strtod(row.cost.c_str(), nullptr);
    time_sum += row.time_seconds;
    gap_sum += row.gap_percent;
    cuts_sum += row.cuts;
    nodes_sum += row.nodes;
    size_sum += row.size;
    density_sum += row.density;
  }
  if (solved > 0) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << cost_sum / solved;
    avg.cost = os.str();
    avg.time_seconds = round3(time_sum / solved);
    avg.gap_percent = round3(gap_sum / solved);
    avg.cuts = cuts_sum / solved;
    avg.nodes = nodes_sum / solved;
    avg.size = size_sum / solved;
    avg.density = round3(density_sum / solved);
    avg.status = "optimal";
  } else {
    avg.status = "none";
  }
  avg.solved_over_total =
      std::to_string(solved) + "/" + std::to_string(static_cast<int>(rows.size()));
  rows.push_back(std::move(avg));
  return rows;
}

void write_csv(const std::vector<ReportRow>& rows, std::ostream& out) {
  out << kHeader << "\r\n";
  for (const auto& r : rows) {
    out << csv_quote(r.name) << "," << r.size << "," << fixed3(r.density) << ","
        << csv_quote(r.cost) << "," << r.cuts << "," << r.nodes << "," << fixed3(r.time_seconds)
        << "," << fixed3(r.gap_percent) << "," << csv_quote(r.status) << ","
        << csv_quote(r.formulation) << "," << csv_quote(r.problem) << ","
        << csv_quote(r.solved_over_total) << "\r\n";
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

std::vector<ReportRow> parse_csv(std::istream& in) {
  std::vector<ReportRow> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    if (header) {
      header = false;
      continue;
    }
    auto f = split_csv_line(line);
    if (f.size() != 12) throw DomainError("csv row with " + std::to_string(f.size()) + " fields");
    ReportRow r;
    r.name = f[0];
    r.size = std::stoi(f[1]);
    r.density = std::stod(f[2]);
    r.cost = f[3];
    r.cuts = std::stoll(f[4]);
    r.nodes = std::stoll(f[5]);
    r.time_seconds = std::stod(f[6]);
    r.gap_percent = std::stod(f[7]);
    r.status = f[8];
    r.formulation = f[9];
    r.problem = f[10];
    r.solved_over_total = f[11];
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_table(const std::vector<ReportRow>& rows, std::ostream& out) {
  out << std::left << std::setw(22) << "Name" << std::right << std::setw(6) << "Size"
      << std::setw(10) << "Density" << std::setw(14) << "Cost" << std::setw(8) << "Cuts"
      << std::setw(10) << "Nodes" << std::setw(10) << "Time" << std::setw(9) << "Gap%"
      << "  " << std::left << "Status" << "\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(22) << r.name << std::right << std::setw(6) << r.size
        << std::setw(10) << fixed3(r.density) << std::setw(14) << r.cost << std::setw(8) << r.cuts
        << std::setw(10) << r.nodes << std::setw(10) << fixed3(r.time_seconds) << std::setw(9)
        << fixed3(r.gap_percent) << "  " << std::left << r.status;
    if (!r.solved_over_total.empty()) out << "  solved " << r.solved_over_total;
    out << "\n";
  }
}

}  // namespace arbx
