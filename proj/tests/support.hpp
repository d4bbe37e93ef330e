#pragma once

#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "arbx/instance.hpp"
#include "arbx/separation.hpp"

namespace arbx::test {

/// 4-vertex instance whose plain minimum arborescence (cost 3) runs through a
/// forbidden vertex, so the precedence-feasible optimum costs 4.
inline Instance demo_precedence_instance() {
  return normalize(4, 0,
                   {{0, 1, 1}, {0, 2, 3}, {0, 3, 2}, {1, 2, 1}, {2, 1, 3}, {2, 3, 1},
                    {3, 1, 3}, {3, 2, 3}},
                   {{3, 1}}, "demo_prec");
}

/// 4-vertex instance where the cheapest precedence-feasible tree (cost 3)
/// needs one unit of waiting, so the waiting-time optimum is 4.
inline Instance demo_waiting_instance() {
  return normalize(4, 0,
                   {{0, 1, 1}, {0, 2, 3}, {0, 3, 1}, {1, 2, 1}, {1, 3, 4}, {2, 1, 2},
                    {2, 3, 3}, {3, 1, 2}},
                   {{2, 3}}, "demo_wait");
}

/// Fractional fixture whose min (root, s)-cut is exactly 1: a violating path
/// exists but no inequality is violated. Vertices: r=0 t=1 a=2 b=3 c=4 s=5.
struct FractionalFixture {
  Instance instance;
  FractionalSolution x;
};

inline FractionalFixture fractional_cut_value_one() {
  Instance inst = normalize(6, 0,
                            {{0, 1, 1}, {0, 3, 1}, {0, 4, 1}, {1, 2, 1}, {1, 3, 1},
                             {3, 2, 1}, {2, 5, 1}, {4, 5, 1}},
                            {{5, 1}}, "frac_one");
  FractionalSolution x = FractionalSolution::zeros(inst);
  auto set = [&](int i, int j, double v) { x.x[inst.arc_index(i, j)] = v; };
  set(0, 1, 1.0);
  set(0, 3, 0.5);
  set(0, 4, 1.0);
  set(1, 2, 0.5);
  set(1, 3, 0.5);
  set(3, 2, 0.5);
  set(2, 5, 0.5);
  set(4, 5, 0.5);
  return {std::move(inst), std::move(x)};
}

/// Fractional fixture with a violated inequality: the min (root, s)-cut in the
/// auxiliary graph is 0.5 with crossing set {(r, a)}. Vertices: r=0 t=1 b=2 a=3 s=4.
inline FractionalFixture fractional_cut_violated() {
  Instance inst = normalize(5, 0,
                            {{0, 1, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {3, 2, 1},
                             {3, 4, 1}, {2, 4, 1}},
                            {{4, 1}}, "frac_violated");
  FractionalSolution x = FractionalSolution::zeros(inst);
  auto set = [&](int i, int j, double v) { x.x[inst.arc_index(i, j)] = v; };
  set(0, 1, 1.0);
  set(0, 3, 0.5);
  set(1, 2, 0.5);
  set(1, 3, 0.5);
  set(3, 2, 0.5);
  set(3, 4, 0.5);
  set(2, 4, 0.5);
  return {std::move(inst), std::move(x)};
}

/// Minimal LP-format reader for round-trip checks; independent of export_lp.
struct ParsedLp {
  std::map<std::string, double> objective;
  struct Row {
    std::map<std::string, double> terms;
    std::string sense;
    double rhs = 0.0;
  };
  std::map<std::string, Row> rows;
  std::map<std::string, std::pair<double, double>> bounds;
  std::set<std::string> binaries;
};

inline ParsedLp parse_lp_text(const std::string& text) {
  ParsedLp lp;
  std::istringstream in(text);
  std::string line, section;
  std::vector<std::string> tokens;
  auto flush_tokens = [&]() {
    if (tokens.empty()) return;
    // tokens: name: [sign] coeff var ... [sense rhs]
    std::string name = tokens.front();
    if (name.back() == ':') name.pop_back();
    size_t i = 1;
    std::map<std::string, double> terms;
    std::string sense;
    double rhs = 0.0;
    double sign = 1.0;
    while (i < tokens.size()) {
      const std::string& tok = tokens[i];
      if (tok == "+") {
        sign = 1.0;
        ++i;
      } else if (tok == "-") {
        sign = -1.0;
        ++i;
      } else if (tok == "<=" || tok == ">=" || tok == "=") {
        sense = tok;
        rhs = std::stod(tokens.at(i + 1));
        i += 2;
      } else {
        double coeff = sign * std::stod(tok);
        terms[tokens.at(i + 1)] += coeff;
        sign = 1.0;
        i += 2;
      }
    }
    if (name == "obj") {
      lp.objective = std::move(terms);
    } else {
      lp.rows[name] = {std::move(terms), sense, rhs};
    }
    tokens.clear();
  };

  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '\\') continue;
    if (line == "Minimize" || line == "Subject To" || line == "Bounds" || line == "Binary" ||
        line == "End") {
      flush_tokens();
      section = line;
      continue;
    }
    std::istringstream row(line);
    if (section == "Minimize" || section == "Subject To") {
      std::string tok;
      std::vector<std::string> line_tokens;
      while (row >> tok) line_tokens.push_back(tok);
      if (!line_tokens.empty() && line_tokens.front().back() == ':') flush_tokens();
      for (auto& t : line_tokens) tokens.push_back(std::move(t));
    } else if (section == "Bounds") {
      std::vector<std::string> f;
      std::string tok;
      while (row >> tok) f.push_back(tok);
      if (f.size() == 5) {  // lo <= name <= hi
        lp.bounds[f[2]] = {std::stod(f[0]), std::stod(f[4])};
      } else if (f.size() == 3) {  // name >= lo
        lp.bounds[f[0]] = {std::stod(f[2]), std::numeric_limits<double>::infinity()};
      }
    } else if (section == "Binary") {
      std::string name;
      while (row >> name) lp.binaries.insert(name);
    }
  }
  flush_tokens();
  return lp;
}

}  // namespace arbx::test
