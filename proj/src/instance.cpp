#include "arbx/instance.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace arbx {

namespace {

void check_vertex(int v, int n, const char* what) {
  if (v < 0 || v >= n) {
    throw DomainError(std::string(what) + " vertex " + std::to_string(v) + " out of range [0," +
                      std::to_string(n) + ")");
  }
}

}  // namespace

Instance::Instance(int n, int root, std::vector<InstanceArc> arcs,
                   std::vector<std::pair<int, int>> precedences, std::string name)
    : n_(n), root_(root), name_(std::move(name)), arcs_(std::move(arcs)),
      precedences_(std::move(precedences)) {
  build_index();
}

void Instance::build_index() {
  in_arcs_.assign(n_, {});
  out_arcs_.assign(n_, {});
  for (int a = 0; a < static_cast<int>(arcs_.size()); ++a) {
    in_arcs_[arcs_[a].to].push_back(a);
    out_arcs_[arcs_[a].from].push_back(a);
  }
}

int Instance::arc_index(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) return -1;
  for (int a : out_arcs_[i]) {
    if (arcs_[a].to == j) return a;
  }
  return -1;
}

std::int64_t Instance::arc_cost(int i, int j) const {
  int a = arc_index(i, j);
  if (a < 0) throw DomainError("no arc (" + std::to_string(i) + "," + std::to_string(j) + ")");
  return arcs_[a].cost;
}

bool Instance::has_precedence(int s, int t) const {
  return std::find(precedences_.begin(), precedences_.end(), std::make_pair(s, t)) !=
         precedences_.end();
}

bool Instance::operator==(const Instance& other) const {
  if (n_ != other.n_ || root_ != other.root_) return false;
  auto sorted_arcs = [](const Instance& x) {
    auto v = x.arcs_;
    std::sort(v.begin(), v.end(), [](const InstanceArc& a, const InstanceArc& b) {
      return std::tie(a.from, a.to, a.cost) < std::tie(b.from, b.to, b.cost);
    });
    return v;
  };
  auto sorted_prec = [](const Instance& x) {
    auto v = x.precedences_;
    std::sort(v.begin(), v.end());
    return v;
  };
  return sorted_arcs(*this) == sorted_arcs(other) && sorted_prec(*this) == sorted_prec(other);
}

Instance normalize(int n, int root, std::vector<InstanceArc> arcs,
                   std::vector<std::pair<int, int>> precedences, std::string name) {
  if (n <= 0) throw DomainError("vertex count must be positive");
  check_vertex(root, n, "root");

  std::set<std::pair<int, int>> prec_set;
  for (auto [s, t] : precedences) {
    check_vertex(s, n, "precedence source");
    check_vertex(t, n, "precedence target");
    if (t == root) {
      throw InfeasibleInstanceError("precedence (" + std::to_string(s) + "," +
                                    std::to_string(t) + ") targets the root");
    }
    if (s == t) throw DomainError("self-loop precedence at vertex " + std::to_string(s));
    prec_set.emplace(s, t);
  }

  std::set<std::pair<int, int>> seen;
  std::vector<InstanceArc> kept;
  kept.reserve(arcs.size());
  for (const auto& arc : arcs) {
    check_vertex(arc.from, n, "arc source");
    check_vertex(arc.to, n, "arc target");
    if (arc.from == arc.to) throw DomainError("self-loop arc at vertex " + std::to_string(arc.from));
    if (arc.cost < 0) {
      throw DomainError("negative cost on arc (" + std::to_string(arc.from) + "," +
                        std::to_string(arc.to) + ")");
    }
    if (arc.to == root) continue;
    if (prec_set.count({arc.to, arc.from})) continue;  // (s,t) in R forbids arc (t,s)
    if (!seen.emplace(arc.from, arc.to).second) {
      throw DomainError("duplicate arc (" + std::to_string(arc.from) + "," +
                        std::to_string(arc.to) + ")");
    }
    kept.push_back(arc);
  }

  std::vector<std::pair<int, int>> prec(prec_set.begin(), prec_set.end());
  return Instance(n, root, std::move(kept), std::move(prec), std::move(name));
}

namespace {

struct TokenReader {
  explicit TokenReader(std::istream& in) : in_(in) {}

  // Returns false at end of input. '#' comments run to end of line.
  bool next(std::string& tok) {
    for (;;) {
      int c = in_.get();
      if (c == EOF) return false;
      if (c == '\n') {
        ++line_;
        continue;
      }
      if (c == '#') {
        while (c != EOF && c != '\n') c = in_.get();
        if (c == '\n') ++line_;
        continue;
      }
      if (std::isspace(c)) continue;
      tok.clear();
      while (c != EOF && !std::isspace(c) && c != '#') {
        tok.push_back(static_cast<char>(c));
        c = in_.get();
      }
      if (c == '\n') ++line_;
      if (c == '#') in_.unget();
      return true;
    }
  }

  int line() const { return line_; }

 private:
  std::istream& in_;
  int line_ = 1;
};

std::int64_t to_int(const std::string& tok, int line, const char* what) {
  try {
    size_t pos = 0;
    std::int64_t v = std::stoll(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("expected ") + what + ", got '" + tok + "'", line);
  }
}

}  // namespace

Instance parse_sop(std::istream& in, const std::string& name) {
  std::string line;
  int lineno = 0;
  int dimension = -1;
  std::string inst_name = name;
  bool in_matrix = false;
  std::vector<std::int64_t> entries;

  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed = line;
    auto first = trimmed.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    trimmed = trimmed.substr(first);

    if (!in_matrix) {
      auto starts = [&](const char* key) { return trimmed.rfind(key, 0) == 0; };
      auto value_after_colon = [&]() {
        auto pos = trimmed.find(':');
        std::string v = pos == std::string::npos ? "" : trimmed.substr(pos + 1);
        auto b = v.find_first_not_of(" \t\r");
        auto e = v.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
      };
      if (starts("NAME")) {
        if (inst_name.empty()) inst_name = value_after_colon();
        continue;
      }
      if (starts("TYPE") || starts("COMMENT") || starts("EDGE_WEIGHT_TYPE") ||
          starts("EDGE_WEIGHT_FORMAT")) {
        continue;
      }
      if (starts("DIMENSION")) {
        dimension = static_cast<int>(to_int(value_after_colon(), lineno, "dimension"));
        if (dimension <= 0) throw ParseError("non-positive dimension", lineno);
        continue;
      }
      if (starts("EDGE_WEIGHT_SECTION")) {
        if (dimension < 0) throw ParseError("EDGE_WEIGHT_SECTION before DIMENSION", lineno);
        in_matrix = true;
        continue;
      }
      throw ParseError("unrecognized header line '" + trimmed + "'", lineno);
    }

    if (trimmed.rfind("EOF", 0) == 0) break;
    std::istringstream row(trimmed);
    std::string tok;
    while (row >> tok) entries.push_back(to_int(tok, lineno, "matrix entry"));
  }

  if (!in_matrix) throw ParseError("missing EDGE_WEIGHT_SECTION", lineno);
  const std::int64_t n = dimension;
  // SOPLIB/TSPLIB files repeat the dimension as the first number of the section.
  if (static_cast<std::int64_t>(entries.size()) == n * n + 1 && entries.front() == n) {
    entries.erase(entries.begin());
  }
  if (static_cast<std::int64_t>(entries.size()) != n * n) {
    throw ParseError("matrix has " + std::to_string(entries.size()) + " entries, expected " +
                     std::to_string(n * n), lineno);
  }

  std::vector<InstanceArc> arcs;
  std::vector<std::pair<int, int>> precedences;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::int64_t c = entries[i * n + j];
      if (i == j) {
        if (c == -1) throw ParseError("-1 on matrix diagonal at row " + std::to_string(i), lineno);
        continue;
      }
      if (c == -1) {
        precedences.emplace_back(j, i);  // j must precede i
        continue;
      }
      if (c < 0) {
        throw ParseError("negative cost " + std::to_string(c) + " at (" + std::to_string(i) +
                         "," + std::to_string(j) + ")", lineno);
      }
      if (c >= kSopMissingArc) continue;
      if (j == 0) continue;  // vertex 0 is the root; no arc may enter it
      arcs.push_back({i, j, c});
    }
  }
  try {
    return normalize(static_cast<int>(n), 0, std::move(arcs), std::move(precedences), inst_name);
  } catch (const InfeasibleInstanceError&) {
    throw ParseError("precedence targets the root vertex", lineno);
  }
}

Instance parse_sop_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::string stem = path;
  if (auto pos = stem.find_last_of('/'); pos != std::string::npos) stem = stem.substr(pos + 1);
  if (auto pos = stem.find_last_of('.'); pos != std::string::npos) stem = stem.substr(0, pos);
  return parse_sop(in, stem);
}

void write_sop(const Instance& inst, std::ostream& out) {
  const int n = inst.n();
  if (inst.root() != 0) throw DomainError("SOP format requires root 0");
  for (const auto& arc : inst.arcs()) {
    if (arc.cost >= kSopMissingArc) {
      throw DomainError("cost " + std::to_string(arc.cost) + " not representable in SOP format");
    }
  }
  out << "NAME: " << (inst.name().empty() ? "instance" : inst.name()) << "\n";
  out << "TYPE: SOP\n";
  out << "DIMENSION: " << n << "\n";
  out << "EDGE_WEIGHT_TYPE: EXPLICIT\n";
  out << "EDGE_WEIGHT_FORMAT: FULL_MATRIX\n";
  out << "EDGE_WEIGHT_SECTION\n";
  out << n << "\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::int64_t v;
      if (i == j) {
        v = 0;
      } else if (inst.has_precedence(j, i)) {
        v = -1;
      } else if (int a = inst.arc_index(i, j); a >= 0) {
        v = inst.arcs()[a].cost;
      } else {
        v = kSopMissingArc;
      }
      out << v << (j + 1 == n ? "" : " ");
    }
    out << "\n";
  }
  out << "EOF\n";
}

Instance parse_native(std::istream& in, const std::string& name) {
  TokenReader reader(in);
  std::string tok;
  auto need = [&](const char* what) {
    if (!reader.next(tok)) throw ParseError(std::string("unexpected end of input, expected ") + what,
                                            reader.line());
    return tok;
  };

  if (need("format tag 'arbx'") != "arbx") throw ParseError("not an arbx file", reader.line());
  if (to_int(need("format version"), reader.line(), "version") != 1) {
    throw ParseError("unsupported arbx version", reader.line());
  }
  if (need("'n'") != "n") throw ParseError("expected 'n <count> root <id>'", reader.line());
  int n = static_cast<int>(to_int(need("vertex count"), reader.line(), "vertex count"));
  if (need("'root'") != "root") throw ParseError("expected 'root <id>'", reader.line());
  int root = static_cast<int>(to_int(need("root id"), reader.line(), "root id"));

  std::vector<InstanceArc> arcs;
  std::vector<std::pair<int, int>> precedences;
  while (reader.next(tok)) {
    if (tok == "a") {
      int i = static_cast<int>(to_int(need("arc source"), reader.line(), "arc source"));
      int j = static_cast<int>(to_int(need("arc target"), reader.line(), "arc target"));
      std::int64_t c = to_int(need("arc cost"), reader.line(), "arc cost");
      arcs.push_back({i, j, c});
    } else if (tok == "p") {
      int s = static_cast<int>(to_int(need("precedence source"), reader.line(), "precedence source"));
      int t = static_cast<int>(to_int(need("precedence target"), reader.line(), "precedence target"));
      precedences.emplace_back(s, t);
    } else {
      throw ParseError("unknown record '" + tok + "'", reader.line());
    }
  }
  try {
    return normalize(n, root, std::move(arcs), std::move(precedences), name);
  } catch (const DomainError& e) {
    throw ParseError(e.what(), reader.line());
  }
}

Instance parse_native_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::string stem = path;
  if (auto pos = stem.find_last_of('/'); pos != std::string::npos) stem = stem.substr(pos + 1);
  if (auto pos = stem.find_last_of('.'); pos != std::string::npos) stem = stem.substr(0, pos);
  return parse_native(in, stem);
}

void write_native(const Instance& inst, std::ostream& out) {
  out << "# " << (inst.name().empty() ? "instance" : inst.name()) << "\n";
  out << "arbx 1\n";
  out << "n " << inst.n() << " root " << inst.root() << "\n";
  auto arcs = inst.arcs();
  std::sort(arcs.begin(), arcs.end(), [](const InstanceArc& a, const InstanceArc& b) {
    return std::tie(a.from, a.to) < std::tie(b.from, b.to);
  });
  for (const auto& arc : arcs) out << "a " << arc.from << " " << arc.to << " " << arc.cost << "\n";
  auto prec = inst.precedences();
  std::sort(prec.begin(), prec.end());
  for (auto [s, t] : prec) out << "p " << s << " " << t << "\n";
}

Instance parse_any_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::string head;
  std::getline(in, head);
  while (!in.eof() && (head.empty() || head[0] == '#')) std::getline(in, head);
  in.clear();
  in.seekg(0);
  if (head.rfind("arbx", 0) == 0 || head.find("arbx 1") != std::string::npos) {
    std::string stem = path;
    if (auto pos = stem.find_last_of('/'); pos != std::string::npos) stem = stem.substr(pos + 1);
    if (auto pos = stem.find_last_of('.'); pos != std::string::npos) stem = stem.substr(0, pos);
    return parse_native(in, stem);
  }
  return parse_sop_file(path);
}

double precedence_density(const Instance& inst) {
  if (inst.n() < 2) throw DomainError("density needs at least 2 vertices");
  double n = inst.n();
  return 2.0 * static_cast<double>(inst.precedences().size()) / (n * (n - 1.0));
}

}  // namespace arbx
