#include "mincca/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mincca/error.hpp"

namespace mincca {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    Line line{number, {}};
    for (std::string w; words >> w;) line.tokens.push_back(w);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

template <class T>
T number(const Line& line, std::size_t i) {
  if (i >= line.tokens.size()) throw ParseError("missing field in '" + line.tokens[0] + "'", line.number);
  const std::string& s = line.tokens[i];
  T value{};
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw ParseError("'" + s + "' is not a valid number", line.number);
  }
  return value;
}

int nonneg(const Line& line, std::size_t i) {
  int v = number<int>(line, i);
  if (v < 0) throw ParseError("negative id " + std::to_string(v), line.number);
  return v;
}

void arity(const Line& line, std::size_t n) {
  if (line.tokens.size() != n) {
    throw ParseError("'" + line.tokens[0] + "' expects " + std::to_string(n - 1) + " fields",
                     line.number);
  }
}

// Checks the header record and returns the remaining lines.
std::vector<Line> body(std::string_view text, const std::string& magic, bool versioned) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty input, expected '" + magic + "'", 0);
  const Line& h = lines.front();
  if (h.tokens[0] != magic) throw ParseError("expected '" + magic + "' header", h.number);
  if (versioned) {
    arity(h, 2);
    if (h.tokens[1] != "1") throw ParseError("unsupported version " + h.tokens[1], h.number);
  }
  return lines;
}

[[noreturn]] void unknown(const Line& line) {
  throw ParseError("unknown record '" + line.tokens[0] + "'", line.number);
}

}  // namespace

std::string write_instance(const Instance& instance) {
  std::ostringstream os;
  const auto& g = instance.graph;
  const auto& c = instance.costs;
  os << "mincca 1\n";
  os << "vertices " << g.num_vertices() << "\n";
  os << "colors " << c.num_colors() << (c.symmetric() ? " symmetric" : " ordered") << "\n";
  os << "root " << instance.root << "\n";
  for (const auto& e : g.edges()) os << "edge " << e.id << " " << e.u << " " << e.v << " " << e.color << "\n";
  for (ColorId a = 0; a < c.num_colors(); ++a) {
    for (ColorId b = c.symmetric() ? a + 1 : 0; b < c.num_colors(); ++b) {
      if (a != b && c.cost(a, b) != 0) os << "cost " << a << " " << b << " " << c.cost(a, b) << "\n";
    }
  }
  return os.str();
}

Instance parse_instance(std::string_view text) {
  auto lines = body(text, "mincca", true);
  Instance out;
  bool have_vertices = false, have_colors = false, have_root = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    const std::string& kw = l.tokens[0];
    if (kw == "vertices") {
      arity(l, 2);
      if (have_vertices) throw ParseError("duplicate 'vertices'", l.number);
      out.graph = ColoredMultigraph(nonneg(l, 1));
      have_vertices = true;
    } else if (kw == "colors") {
      if (l.tokens.size() != 2 && l.tokens.size() != 3) throw ParseError("'colors' expects 1 or 2 fields", l.number);
      if (have_colors) throw ParseError("duplicate 'colors'", l.number);
      bool symmetric = false;
      if (l.tokens.size() == 3) {
        if (l.tokens[2] == "symmetric") {
          symmetric = true;
        } else if (l.tokens[2] != "ordered") {
          throw ParseError("cost mode must be 'ordered' or 'symmetric'", l.number);
        }
      }
      out.costs = CostModel(nonneg(l, 1), symmetric);
      have_colors = true;
    } else if (kw == "root") {
      arity(l, 2);
      out.root = nonneg(l, 1);
      have_root = true;
    } else if (kw == "edge") {
      arity(l, 5);
      if (!have_vertices || !have_colors) throw ParseError("'edge' before 'vertices' and 'colors'", l.number);
      int id = nonneg(l, 1), u = nonneg(l, 2), v = nonneg(l, 3), c = nonneg(l, 4);
      if (id != out.graph.num_edges()) {
        throw ParseError("edge ids must be dense and in order (expected " +
                             std::to_string(out.graph.num_edges()) + ")", l.number);
      }
      if (!out.graph.has_vertex(u) || !out.graph.has_vertex(v)) throw ParseError("edge endpoint out of range", l.number);
      if (u == v) throw ParseError("self-loop", l.number);
      if (!out.costs.valid_color(c)) throw ParseError("unknown color " + std::to_string(c), l.number);
      out.graph.add_edge(u, v, c);
    } else if (kw == "cost") {
      arity(l, 4);
      if (!have_colors) throw ParseError("'cost' before 'colors'", l.number);
      int a = nonneg(l, 1), b = nonneg(l, 2);
      auto value = number<Cost>(l, 3);
      if (!out.costs.valid_color(a) || !out.costs.valid_color(b)) throw ParseError("unknown color in 'cost'", l.number);
      if (a == b) {
        if (value != 0) throw ParseError("diagonal cost must be zero", l.number);
        continue;
      }
      out.costs.set(a, b, value);
    } else {
      unknown(l);
    }
  }
  if (!have_vertices) throw ParseError("missing 'vertices'", 0);
  if (!have_colors) throw ParseError("missing 'colors'", 0);
  if (!have_root) throw ParseError("missing 'root'", 0);
  if (!out.graph.has_vertex(out.root)) throw ParseError("root is not a vertex", 0);
  return out;
}

std::string write_arborescence(const Arborescence& arb) {
  std::ostringstream os;
  os << "root " << arb.root << "\n";
  for (std::size_t v = 0; v < arb.parent_edge.size(); ++v) {
    if (static_cast<VertexId>(v) != arb.root && arb.parent_edge[v] != kNoEdge) {
      os << "parent " << v << " " << arb.parent_edge[v] << "\n";
    }
  }
  return os.str();
}

Arborescence parse_arborescence(std::string_view text, int num_vertices) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty arborescence", 0);
  Arborescence out;
  bool have_root = false;
  std::map<VertexId, EdgeId> parent;
  for (const Line& l : lines) {
    if (l.tokens[0] == "root") {
      arity(l, 2);
      if (have_root) throw ParseError("duplicate 'root'", l.number);
      out.root = nonneg(l, 1);
      have_root = true;
    } else if (l.tokens[0] == "parent") {
      arity(l, 3);
      VertexId v = nonneg(l, 1);
      if (!parent.emplace(v, nonneg(l, 2)).second) {
        throw ParseError("second parent for vertex " + std::to_string(v), l.number);
      }
    } else {
      unknown(l);
    }
  }
  if (!have_root) throw ParseError("missing 'root'", 0);
  int n = std::max(num_vertices, out.root + 1);
  if (!parent.empty()) n = std::max(n, parent.rbegin()->first + 1);
  out.parent_edge.assign(n, kNoEdge);
  for (auto [v, e] : parent) out.parent_edge[v] = e;
  return out;
}

std::string write_decomposition(const TreeCutDecomposition& tcd) {
  std::ostringstream os;
  os << "tcd 1\n";
  for (NodeId t = 0; t < tcd.num_nodes(); ++t) {
    os << "node " << t << " parent ";
    if (tcd.parent[t] == kNoNode) {
      os << "-";
    } else {
      os << tcd.parent[t];
    }
    os << " bag";
    for (VertexId v : tcd.bags[t]) os << " " << v;
    os << "\n";
  }
  return os.str();
}

TreeCutDecomposition parse_decomposition(std::string_view text) {
  auto lines = body(text, "tcd", true);
  std::map<NodeId, std::pair<NodeId, std::vector<VertexId>>> nodes;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens[0] != "node") unknown(l);
    if (l.tokens.size() < 5 || l.tokens[2] != "parent" || l.tokens[4] != "bag") {
      throw ParseError("expected 'node <id> parent <pid|-> bag ...'", l.number);
    }
    NodeId id = nonneg(l, 1);
    NodeId parent = l.tokens[3] == "-" ? kNoNode : nonneg(l, 3);
    std::vector<VertexId> bag;
    for (std::size_t j = 5; j < l.tokens.size(); ++j) bag.push_back(nonneg(l, j));
    if (!nodes.emplace(id, std::make_pair(parent, std::move(bag))).second) {
      throw ParseError("duplicate node " + std::to_string(id), l.number);
    }
  }
  TreeCutDecomposition out;
  for (auto& [id, rec] : nodes) {
    if (id != out.num_nodes()) throw ParseError("node ids must be dense from 0", 0);
    out.parent.push_back(rec.first);
    out.bags.push_back(std::move(rec.second));
  }
  for (NodeId p : out.parent) {
    if (p != kNoNode && p >= out.num_nodes()) throw ParseError("parent refers to unknown node " + std::to_string(p), 0);
  }
  return out;
}

std::string write_clique(const CliqueInstance& ci) {
  std::ostringstream os;
  os << "mcq " << ci.k << " " << ci.n << "\n";
  for (auto [u, v] : ci.edges) os << "edge " << u << " " << v << "\n";
  return os.str();
}

CliqueInstance parse_clique(std::string_view text) {
  auto lines = body(text, "mcq", false);
  arity(lines[0], 3);
  CliqueInstance out;
  out.k = nonneg(lines[0], 1);
  out.n = nonneg(lines[0], 2);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens[0] != "edge") unknown(l);
    arity(l, 3);
    try {
      out.add_edge(nonneg(l, 1), nonneg(l, 2));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), l.number);
    }
  }
  return out;
}

std::string write_cnf(const MonotoneCnf& cnf) {
  std::ostringstream os;
  os << "mcnf " << cnf.num_vars << "\n";
  for (const auto& c : cnf.clauses) {
    os << "clause " << (c.positive ? "+" : "-");
    for (int x : c.vars) os << " " << x + 1;
    os << "\n";
  }
  return os.str();
}

MonotoneCnf parse_cnf(std::string_view text) {
  auto lines = body(text, "mcnf", false);
  arity(lines[0], 2);
  MonotoneCnf out;
  out.num_vars = nonneg(lines[0], 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens[0] != "clause") unknown(l);
    std::size_t first = 1;
    int sign = 0;  // +1 / -1 once fixed
    if (l.tokens.size() > 1 && (l.tokens[1] == "+" || l.tokens[1] == "-")) {
      sign = l.tokens[1] == "+" ? 1 : -1;
      first = 2;
    }
    if (first >= l.tokens.size()) throw ParseError("clause without literals", l.number);
    MonotoneClause clause;
    bool mixed = false;
    int seen_sign = sign;
    for (std::size_t j = first; j < l.tokens.size(); ++j) {
      int lit = number<int>(l, j);
      if (lit == 0) throw ParseError("variable 0 does not exist (variables are 1-based)", l.number);
      int s = lit > 0 ? 1 : -1;
      if (first == 2 && s < 0 && sign < 0) throw ParseError("signed literal after '-'", l.number);
      if (first == 2) s = lit > 0 ? sign : -1;
      if (seen_sign == 0) seen_sign = s;
      if (s != seen_sign) mixed = true;
      int var = std::abs(lit);
      if (var > out.num_vars) throw ParseError("variable " + std::to_string(var) + " out of range", l.number);
      clause.vars.push_back(var - 1);
    }
    if (mixed) {
      throw PreconditionError("line " + std::to_string(l.number) +
                              ": clause mixes positive and negative literals");
    }
    clause.positive = seen_sign > 0;
    out.clauses.push_back(std::move(clause));
  }
  return out;
}

std::string write_roles(const std::vector<std::string>& roles) {
  std::ostringstream os;
  os << "roles 1\n";
  for (std::size_t v = 0; v < roles.size(); ++v) os << "role " << v << " " << roles[v] << "\n";
  return os.str();
}

std::vector<std::string> parse_roles(std::string_view text) {
  auto lines = body(text, "roles", true);
  std::vector<std::string> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens[0] != "role") unknown(l);
    arity(l, 3);
    if (nonneg(l, 1) != static_cast<int>(out.size())) throw ParseError("role ids must be dense and in order", l.number);
    out.push_back(l.tokens[2]);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
  if (!out) throw Error("failed writing " + path);
}

}  // namespace mincca
