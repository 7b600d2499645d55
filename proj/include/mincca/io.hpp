#pragma once

// Line-oriented text formats.  Blank lines and `#` comments are ignored;
// every parser throws ParseError carrying the offending line number.

#include <string>
#include <string_view>
#include <vector>

#include "mincca/graph.hpp"
#include "mincca/problems.hpp"
#include "mincca/treecut.hpp"

namespace mincca {

/// `mincca 1`, `vertices n`, `colors c ordered|symmetric`, `root v`,
/// `edge id u v color`, `cost cin cout value` (nonzero entries only).
std::string write_instance(const Instance& instance);
Instance parse_instance(std::string_view text);

/// `root v`, then `parent v edge_id` per non-root vertex.
std::string write_arborescence(const Arborescence& arb);
/// Vertices are counted from the largest id mentioned; pass the instance
/// size to pad when some vertex has no parent line.
Arborescence parse_arborescence(std::string_view text, int num_vertices = 0);

/// `tcd 1`, then `node id parent pid|- bag v1 v2 ...`.
std::string write_decomposition(const TreeCutDecomposition& tcd);
TreeCutDecomposition parse_decomposition(std::string_view text);

/// `mcq k n`, then `edge u v` with class-major vertex ids.
std::string write_clique(const CliqueInstance& ci);
CliqueInstance parse_clique(std::string_view text);

/// `mcnf n`, then `clause + v1 [v2 [v3]]` or `clause - ...` with 1-based
/// variables.  Signed literals (`clause 1 -2`) are accepted as well; a
/// clause mixing signs raises PreconditionError since it cannot be stored.
std::string write_cnf(const MonotoneCnf& cnf);
MonotoneCnf parse_cnf(std::string_view text);

/// `roles 1`, then `role v name`.
std::string write_roles(const std::vector<std::string>& roles);
std::vector<std::string> parse_roles(std::string_view text);

/// Whole file as a string; throws Error when it cannot be read.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace mincca
