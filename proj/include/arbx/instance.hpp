#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arbx {

/// Error raised while reading an instance file; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + std::move(message)),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class InfeasibleInstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InstanceArc {
  int from = 0;
  int to = 0;
  std::int64_t cost = 0;

  friend bool operator==(const InstanceArc&, const InstanceArc&) = default;
};

/// A directed cost graph with a root and a set of precedence pairs (s, t),
/// each meaning "s must be entered before t". Immutable after construction.
class Instance {
 public:
  Instance() = default;
  Instance(int n, int root, std::vector<InstanceArc> arcs,
           std::vector<std::pair<int, int>> precedences, std::string name = "");

  int n() const { return n_; }
  int root() const { return root_; }
  const std::string& name() const { return name_; }
  const std::vector<InstanceArc>& arcs() const { return arcs_; }
  const std::vector<std::pair<int, int>>& precedences() const { return precedences_; }

  /// Arc index for (i,j), or -1 when absent.
  int arc_index(int i, int j) const;
  bool has_arc(int i, int j) const { return arc_index(i, j) >= 0; }
  std::int64_t arc_cost(int i, int j) const;
  bool has_precedence(int s, int t) const;

  /// Indices of arcs entering j.
  const std::vector<int>& in_arcs(int j) const { return in_arcs_[j]; }
  const std::vector<int>& out_arcs(int i) const { return out_arcs_[i]; }

  bool operator==(const Instance& other) const;

 private:
  friend Instance normalize(int n, int root, std::vector<InstanceArc> arcs,
                            std::vector<std::pair<int, int>> precedences, std::string name);

  void build_index();

  int n_ = 0;
  int root_ = 0;
  std::string name_;
  std::vector<InstanceArc> arcs_;
  std::vector<std::pair<int, int>> precedences_;
  std::vector<std::vector<int>> in_arcs_;
  std::vector<std::vector<int>> out_arcs_;
};

/// Builds a validated Instance from raw data. Drops arcs entering the root and,
/// for each (s,t) in R, the arc (t,s). Rejects precedences targeting the root,
/// self-loops, duplicate arcs and negative costs.
Instance normalize(int n, int root, std::vector<InstanceArc> arcs,
                   std::vector<std::pair<int, int>> precedences, std::string name = "");

/// Entries at least this large in a SOP matrix denote a missing arc. The ESC
/// and R benchmark families use 1000000 for unusable connections.
inline constexpr std::int64_t kSopMissingArc = 1000000;

/// Reads the SOP benchmark text format: TSPLIB-style headers followed by an
/// n x n cost matrix. Entry (i,j) is the cost of arc i->j; -1 records the
/// precedence (j,i) in R; the diagonal is ignored; vertex 0 is the root.
Instance parse_sop(std::istream& in, const std::string& name = "");
Instance parse_sop_file(const std::string& path);

/// Writes the SOP matrix format. Absent arcs are emitted as the missing-arc
/// sentinel, precedences (s,t) as -1 at position (t,s). Requires all costs
/// below the sentinel.
void write_sop(const Instance& inst, std::ostream& out);

/// Native sparse format: "arbx 1" header, "n <count> root <id>", then
/// "a <i> <j> <cost>" and "p <s> <t>" lines; '#' starts a comment.
Instance parse_native(std::istream& in, const std::string& name = "");
Instance parse_native_file(const std::string& path);
void write_native(const Instance& inst, std::ostream& out);

/// Reads either format, deciding by the file content ("arbx" header vs SOP).
Instance parse_any_file(const std::string& path);

/// 2|R| / (n(n-1)); requires n >= 2.
double precedence_density(const Instance& inst);

}  // namespace arbx
