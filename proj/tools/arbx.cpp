#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "arbx/cutting_plane.hpp"
#include "arbx/digraph.hpp"
#include "arbx/evaluation.hpp"
#include "arbx/instance.hpp"
#include "arbx/log.hpp"
#include "arbx/models.hpp"
#include "arbx/randomgen.hpp"
#include "arbx/reductions.hpp"
#include "arbx/report.hpp"
#include "arbx/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;
constexpr int kExitLimit = 3;

arbx::LinearModel build_model(const arbx::Instance& inst, const std::string& model,
                              bool valid_ineqs) {
  if (model == "set") return arbx::build_set_based(inst);
  if (model == "mcf") return arbx::build_mcf(inst);
  if (model == "da") return arbx::build_da(inst);
  if (model == "aac") return arbx::build_aac(inst, valid_ineqs);
  throw arbx::DomainError("unknown model '" + model + "'");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw arbx::DomainError("cannot write '" + path + "'");
  out << content;
}

int cmd_solve(const std::string& path, const std::string& problem, const arbx::SolverLimits& limits,
              const std::string& csv_path) {
  arbx::Instance inst = arbx::parse_any_file(path);
  arbx::BenchmarkConfig config;
  config.problem = problem;
  config.limits = limits;
  arbx::ReportRow row = arbx::benchmark_one(inst, config);

  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    arbx::write_csv({row}, out);
  }
  if (row.status == "optimal") {
    std::cout << "optimal " << row.cost << "\n";
    std::cout << "nodes " << row.nodes << " cuts " << row.cuts << " time " << std::fixed
              << std::setprecision(3) << row.time_seconds << "\n";
    return kExitOk;
  }
  if (row.status == "infeasible") {
    std::cout << "infeasible\n";
    return kExitInfeasible;
  }
  if (row.status == "feasible" || row.status == "limit") {
    std::cout << row.status << " " << row.cost << "\n";
    return kExitLimit;
  }
  std::cout << row.status << "\n";
  return kExitUsage;
}

int cmd_relax(const std::string& path, const std::string& model, const std::string& problem,
              bool valid_ineqs, double reference, const std::string& lp_out,
              const arbx::SolverLimits& limits) {
  arbx::Instance inst = arbx::parse_any_file(path);

  double value = 0.0;
  int cuts = 0;
  if (model == "mcf") {
    // Polynomially formulated; one plain LP solve, no separation.
    arbx::LinearModel m = build_model(inst, model, valid_ineqs);
    arbx::LpSolution sol = arbx::solve_lp(m);
    if (sol.status != arbx::LpStatus::Optimal) {
      std::cout << "LR " << to_string(sol.status) << "\n";
      return sol.status == arbx::LpStatus::Infeasible ? kExitInfeasible : kExitLimit;
    }
    value = sol.objective;
    if (!lp_out.empty()) {
      std::ostringstream os;
      arbx::export_lp(m, os);
      write_file(lp_out, os.str());
    }
  } else {
    arbx::CuttingPlaneOptions opt;
    opt.with_valid_ineqs = valid_ineqs;
    auto lr = arbx::solve_lr_with_cuts(inst, model, opt);
    if (lr.status != arbx::LpStatus::Optimal) {
      std::cout << "LR " << to_string(lr.status) << "\n";
      return lr.status == arbx::LpStatus::Infeasible ? kExitInfeasible : kExitLimit;
    }
    value = lr.value;
    cuts = lr.cuts_added;
    if (!lp_out.empty()) {
      std::ostringstream os;
      arbx::export_lp(lr.model, os);
      write_file(lp_out, os.str());
    }
  }

  // Gap against a reference optimum: either supplied or solved exactly here.
  double gap = std::numeric_limits<double>::quiet_NaN();
  if (reference > 0.0) {
    gap = arbx::relative_gap(reference, value);
  } else {
    arbx::BenchmarkConfig config;
    config.problem = model == "set" ? "pcmca" : "pcmca-wt";
    if (problem == "pcmca" || problem == "pcmca-wt") config.problem = problem;
    config.limits = limits;
    arbx::ReportRow row = arbx::benchmark_one(inst, config);
    if (row.status == "optimal") gap = arbx::relative_gap(std::strtod(row.cost.c_str(), nullptr), value);
  }

  std::cout << std::fixed << std::setprecision(2) << "LR " << value;
  if (std::isnan(gap)) {
    std::cout << " gap n/a";
  } else {
    std::cout << " gap " << std::setprecision(3) << gap;
  }
  std::cout << " cuts " << cuts << "\n";
  return kExitOk;
}

int cmd_export(const std::string& path, const std::string& model, bool valid_ineqs,
               const std::string& lp_out) {
  arbx::Instance inst = arbx::parse_any_file(path);
  arbx::LinearModel m = build_model(inst, model, valid_ineqs);
  std::ostringstream os;
  arbx::export_lp(m, os);
  if (lp_out.empty()) {
    std::cout << os.str();
  } else {
    write_file(lp_out, os.str());
    std::cout << "wrote " << lp_out << " (" << m.variables().size() << " variables, "
              << m.constraints().size() << " rows)\n";
  }
  return kExitOk;
}

int cmd_validate(const std::string& path) {
  arbx::Instance inst = arbx::parse_any_file(path);
  std::cout << "ok " << inst.name() << ": n=" << inst.n() << " arcs=" << inst.arcs().size()
            << " precedences=" << inst.precedences().size();
  if (inst.n() >= 2) {
    std::cout << " density=" << std::fixed << std::setprecision(3)
              << arbx::precedence_density(inst);
  }
  std::cout << "\n";
  return kExitOk;
}

int cmd_oracle(const std::string& path, const std::string& problem, int cap) {
  arbx::Instance inst = arbx::parse_any_file(path);
  arbx::SolverLimits limits;
  limits.brute_force_cap = cap;
  if (problem == "pcmca" || problem == "mca") {
    auto res = arbx::brute_force_pcmca(inst, limits);
    if (res.status != arbx::SolveStatus::Optimal) {
      std::cout << "infeasible\n";
      return kExitInfeasible;
    }
    std::cout << "optimal " << res.best->cost << "\n";
    return kExitOk;
  }
  auto res = arbx::brute_force_pcmcawt(inst, limits);
  if (res.status != arbx::SolveStatus::Optimal) {
    std::cout << "infeasible\n";
    return kExitInfeasible;
  }
  std::cout << "optimal " << res.best->objective << "\n";
  return kExitOk;
}

int cmd_bench(const std::string& manifest, const std::string& problem, const std::string& model,
              const arbx::SolverLimits& limits, const std::string& csv_path) {
  std::ifstream in(manifest);
  if (!in) throw arbx::DomainError("cannot open manifest '" + manifest + "'");
  std::vector<std::string> paths;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    paths.push_back(line.substr(b, e - b + 1));
  }
  arbx::BenchmarkConfig config;
  config.problem = problem;
  config.model = model;
  config.relaxation = model != "exact";
  config.limits = limits;
  auto rows = arbx::run_benchmark(paths, config);
  arbx::write_table(rows, std::cout);
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    arbx::write_csv(rows, out);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arbx: exact toolkit for precedence-constrained arborescences"};
  app.require_subcommand(1);

  std::string instance_path, cnf_path, points_path, out_path, csv_path, lp_out, manifest;
  std::string problem = "pcmca";
  std::string model = "set";
  std::string bench_model = "exact";
  double time_limit = 3600.0;
  long long node_limit = -1;
  double reference = 0.0;
  bool no_valid_ineqs = false;
  int cap = 8;
  std::uint64_t seed = 1;
  int rand_n = 6;

  auto add_limits = [&](CLI::App* cmd) {
    cmd->add_option("--time-limit", time_limit, "time limit in seconds");
    cmd->add_option("--node-limit", node_limit, "search node limit");
  };

  auto* solve = app.add_subcommand("solve", "solve an instance exactly");
  solve->add_option("instance", instance_path, "instance file (.sop or native)")->required();
  solve->add_option("--problem", problem, "mca | pcmca | pcmca-wt")
      ->check(CLI::IsMember({"mca", "pcmca", "pcmca-wt"}));
  solve->add_option("--csv", csv_path, "write the result row as CSV");
  add_limits(solve);

  auto* relax = app.add_subcommand("relax", "solve a linear relaxation with lazy cuts");
  relax->add_option("instance", instance_path)->required();
  relax->add_option("--model", model, "set | mcf | da | aac")
      ->check(CLI::IsMember({"set", "mcf", "da", "aac"}));
  relax->add_option("--problem", problem, "reference problem for the gap");
  relax->add_option("--reference", reference, "reference optimum for the gap column");
  relax->add_flag("--no-valid-ineqs", no_valid_ineqs, "drop the aac strengthening rows");
  relax->add_option("--lp-out", lp_out, "write the final model as an LP file");
  add_limits(relax);

  auto* exp = app.add_subcommand("export", "write a formulation as an LP file");
  exp->add_option("instance", instance_path)->required();
  exp->add_option("--model", model, "set | mcf | da | aac")
      ->check(CLI::IsMember({"set", "mcf", "da", "aac"}));
  exp->add_flag("--no-valid-ineqs", no_valid_ineqs);
  exp->add_option("--lp-out", lp_out, "output path (stdout when omitted)");

  auto* validate = app.add_subcommand("validate", "parse and validate an instance file");
  validate->add_option("instance", instance_path)->required();

  auto* oracle = app.add_subcommand("oracle", "brute-force reference solver (tiny instances)");
  oracle->add_option("instance", instance_path)->required();
  oracle->add_option("--problem", problem, "pcmca | pcmca-wt")
      ->check(CLI::IsMember({"mca", "pcmca", "pcmca-wt"}));
  oracle->add_option("--cap", cap, "vertex-count refusal cap");

  auto* bench = app.add_subcommand("bench", "run a manifest of instances and report a table");
  bench->add_option("manifest", manifest, "text file with one instance path per line")->required();
  bench->add_option("--problem", problem, "mca | pcmca | pcmca-wt")
      ->check(CLI::IsMember({"mca", "pcmca", "pcmca-wt"}));
  bench->add_option("--model", bench_model, "exact | set | da | aac")
      ->check(CLI::IsMember({"exact", "set", "da", "aac"}));
  bench->add_option("--csv", csv_path, "write the table as CSV");
  add_limits(bench);

  auto* gen = app.add_subcommand("generate", "emit instances from reductions or at random");
  gen->require_subcommand(1);
  auto* gen3sat = gen->add_subcommand("3sat", "reduce a 3-CNF formula");
  gen3sat->add_option("--cnf", cnf_path, "DIMACS CNF input")->required();
  gen3sat->add_option("-o,--out", out_path, "output instance path")->required();
  auto* genrsa = gen->add_subcommand("rsa", "reduce a rectilinear point set");
  genrsa->add_option("--points", points_path, "x y per line, first point the origin")->required();
  genrsa->add_option("-o,--out", out_path)->required();
  auto* genrand = gen->add_subcommand("random", "random normalized instance");
  genrand->add_option("--n", rand_n, "vertex count");
  genrand->add_option("--seed", seed, "rng seed");
  genrand->add_option("-o,--out", out_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  arbx::SolverLimits limits;
  limits.time_limit_s = time_limit;
  limits.node_limit = node_limit;

  try {
    if (solve->parsed()) return cmd_solve(instance_path, problem, limits, csv_path);
    if (relax->parsed()) {
      if (model == "set" && problem == "pcmca-wt") {
        std::cerr << "arbx: the set model relaxes pcmca, not pcmca-wt\n";
        return kExitUsage;
      }
      return cmd_relax(instance_path, model, problem, !no_valid_ineqs, reference, lp_out, limits);
    }
    if (exp->parsed()) return cmd_export(instance_path, model, !no_valid_ineqs, lp_out);
    if (validate->parsed()) return cmd_validate(instance_path);
    if (oracle->parsed()) return cmd_oracle(instance_path, problem, cap);
    if (bench->parsed()) return cmd_bench(manifest, problem, bench_model, limits, csv_path);
    if (gen->parsed()) {
      arbx::Instance inst;
      if (gen3sat->parsed()) {
        inst = arbx::from_3sat(arbx::read_dimacs_cnf_file(cnf_path));
      } else if (genrsa->parsed()) {
        inst = arbx::from_rsa(arbx::read_points_file(points_path)).instance;
      } else {
        std::mt19937_64 rng(seed);
        arbx::RandomInstanceParams params;
        params.min_n = params.max_n = rand_n;
        inst = arbx::random_instance(rng, params);
      }
      std::ofstream out(out_path);
      if (!out) throw arbx::DomainError("cannot write '" + out_path + "'");
      arbx::write_native(inst, out);
      std::cout << "wrote " << out_path << " (n=" << inst.n() << ", arcs=" << inst.arcs().size()
                << ", precedences=" << inst.precedences().size() << ")\n";
      return kExitOk;
    }
  } catch (const arbx::InfeasibleInstanceError& e) {
    std::cerr << "arbx: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "arbx: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
