#include "mincca/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <ostream>

#include "mincca/error.hpp"
#include "mincca/exact.hpp"
#include "mincca/fpt.hpp"
#include "mincca/io.hpp"
#include "mincca/reductions.hpp"
#include "mincca/treecut.hpp"

namespace mincca {

namespace {

using nlohmann::json;

struct Options {
  bool json = false;
  std::uint64_t seed = 0;
  bool seeded = false;

  std::string instance, decomposition, tree, out, input, out_prefix;
  std::string algo = "brute";
  std::string kind;
  bool lift = false;
  bool allow_non_star = false;
};

json tree_json(const Arborescence& arb) {
  json parents = json::array();
  for (std::size_t v = 0; v < arb.parent_edge.size(); ++v) {
    if (arb.parent_edge[v] != kNoEdge) parents.push_back({{"vertex", v}, {"edge", arb.parent_edge[v]}});
  }
  return {{"root", arb.root}, {"parents", parents}};
}

json tcd_json(const TreeCutDecomposition& tcd) {
  json nodes = json::array();
  for (NodeId t = 0; t < tcd.num_nodes(); ++t) {
    nodes.push_back({{"node", t},
                     {"parent", tcd.parent[t] == kNoNode ? json(nullptr) : json(tcd.parent[t])},
                     {"bag", tcd.bags[t]}});
  }
  return nodes;
}

int cmd_solve(const Options& o, std::ostream& out) {
  Instance in = parse_instance(read_file(o.instance));
  SolveResult res;
  if (o.algo == "fpt") {
    if (o.decomposition.empty()) throw PreconditionError("--algo fpt needs --decomposition");
    auto tcd = parse_decomposition(read_file(o.decomposition));
    FptOptions opt;
    opt.require_star = !o.allow_non_star;
    res = fpt_solve(in, tcd, opt);
  } else {
    res = *solve_exact(in);
  }
  const std::string tree = write_arborescence(res.witness);
  if (!o.out.empty()) write_file(o.out, tree);
  if (o.json) {
    out << json{{"command", "solve"},
                {"algo", o.algo},
                {"optimum", res.optimum},
                {"nodes_explored", res.nodes_explored},
                {"tree", tree_json(res.witness)}}
               .dump(2)
        << "\n";
  } else {
    out << "optimum " << res.optimum << "\n";
    if (o.out.empty()) out << tree;
  }
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  Instance in = parse_instance(read_file(o.instance));
  Arborescence arb = parse_arborescence(read_file(o.tree), in.graph.num_vertices());
  auto report = validate_arborescence(in, arb);
  std::optional<Cost> cost;
  if (report.ok()) cost = evaluate_cost(in, arb);
  if (o.json) {
    out << json{{"command", "verify"},
                {"valid", report.ok()},
                {"spanning", report.spanning},
                {"acyclic", report.acyclic},
                {"incidence", report.incidence},
                {"problems", report.problems},
                {"cost", cost ? json(*cost) : json(nullptr)}}
               .dump(2)
        << "\n";
  } else {
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    out << "spanning " << yn(report.spanning) << "\nacyclic " << yn(report.acyclic)
        << "\nincidence " << yn(report.incidence) << "\n";
    for (const auto& p : report.problems) out << "problem " << p << "\n";
    if (cost) out << "cost " << *cost << "\n";
    out << "valid " << yn(report.ok()) << "\n";
  }
  return report.ok() ? kExitOk : kExitInvalid;
}

int cmd_gen(const Options& o, std::ostream& out) {
  const std::string text = read_file(o.input);
  ReductionOutput r;
  if (o.kind == "clique-simple" || o.kind == "clique-multi") {
    CliqueInstance ci = parse_clique(text);
    if (o.lift) ci = lift_even_k(ci);
    r = o.kind == "clique-simple" ? gen_clique_simple(ci) : gen_clique_multigraph(ci);
  } else {
    MonotoneCnf cnf = parse_cnf(text);
    r = o.kind == "sat6" ? gen_sat_planar6(cnf) : gen_sat_deg4(cnf);
  }
  json files;
  files["instance"] = o.out_prefix + ".instance";
  files["roles"] = o.out_prefix + ".roles";
  write_file(files["instance"], write_instance(r.instance));
  write_file(files["roles"], write_roles(r.roles));
  if (r.decomposition) {
    files["decomposition"] = o.out_prefix + ".tcd";
    write_file(files["decomposition"], write_decomposition(*r.decomposition));
  }
  if (o.json) {
    out << json{{"command", "gen"},
                {"kind", o.kind},
                {"threshold", r.threshold},
                {"vertices", r.instance.graph.num_vertices()},
                {"edges", r.instance.graph.num_edges()},
                {"files", files}}
               .dump(2)
        << "\n";
  } else {
    out << "threshold " << r.threshold << "\n";
    for (auto& [k, v] : files.items()) out << k << " " << v.get<std::string>() << "\n";
  }
  return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  Instance in = parse_instance(read_file(o.instance));
  auto tcd = parse_decomposition(read_file(o.decomposition));
  const auto& g = in.graph;
  auto report = validate_decomposition(g, tcd);
  if (!report.ok()) {
    if (o.json) {
      out << json{{"command", "check"}, {"valid", false}, {"problems", report.problems}}.dump(2) << "\n";
    } else {
      for (const auto& p : report.problems) out << "problem " << p << "\n";
      out << "valid no\n";
    }
    return kExitInvalid;
  }
  std::optional<std::uint64_t> seed;
  if (o.seeded) seed = o.seed;
  DecompositionIndex index(g, tcd);
  json nodes = json::array();
  for (NodeId t = 0; t < tcd.num_nodes(); ++t) {
    nodes.push_back({{"node", t},
                     {"adhesion", adhesion(g, tcd, t)},
                     {"torso_size", torso(g, tcd, t, seed).size()},
                     {"thin", index.is_thin(t)}});
  }
  const int w = width(g, tcd);
  auto nice = is_nice(g, tcd);
  auto star = is_star_decomposition(g, tcd);
  if (o.json) {
    json offending = json::array();
    for (auto [a, b] : nice.offending) offending.push_back({a, b});
    out << json{{"command", "check"},
                {"valid", true},
                {"nodes", nodes},
                {"width", w},
                {"nice", nice.nice},
                {"nice_offending", offending},
                {"star", star.star},
                {"star_offending", star.star ? json(nullptr) : json(star.offending)}}
               .dump(2)
        << "\n";
  } else {
    out << "node adhesion torso thin\n";
    for (const auto& n : nodes) {
      out << n["node"] << " " << n["adhesion"] << " " << n["torso_size"] << " "
          << (n["thin"].get<bool>() ? "yes" : "no") << "\n";
    }
    out << "width " << w << "\n";
    out << "nice " << (nice.nice ? "yes" : "no") << "\n";
    for (auto [a, b] : nice.offending) out << "  thin node " << a << " sees sibling " << b << "\n";
    out << "star " << (star.star ? "yes" : "no") << "\n";
    if (!star.star) out << "  node " << star.offending << "\n";
    out << "valid yes\n";
  }
  return kExitOk;
}

int cmd_tcw(const Options& o, std::ostream& out) {
  Instance in = parse_instance(read_file(o.instance));
  auto res = exhaustive_tcw(in.graph);
  const std::string text = write_decomposition(res.decomposition);
  if (!o.out.empty()) write_file(o.out, text);
  if (o.json) {
    out << json{{"command", "tcw"}, {"width", res.width}, {"decomposition", tcd_json(res.decomposition)}}
               .dump(2)
        << "\n";
  } else {
    out << "width " << res.width << "\n";
    if (o.out.empty()) out << text;
  }
  return kExitOk;
}

int fail(const Options& o, std::ostream& out, std::ostream& err, int code, const std::string& msg) {
  err << "error: " << msg << "\n";
  if (o.json) out << json{{"error", msg}, {"exit_code", code}}.dump(2) << "\n";
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Minimum changeover cost arborescence toolkit", "mincca"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", o.seed, "Seed for randomized choices");

  auto* solve = app.add_subcommand("solve", "Optimal arborescence by brute force or the DP");
  solve->add_option("--instance", o.instance)->required();
  solve->add_option("--algo", o.algo)->check(CLI::IsMember({"brute", "fpt"}));
  solve->add_option("--decomposition", o.decomposition);
  solve->add_option("--out", o.out, "Write the witness tree here");
  solve->add_flag("--allow-non-star", o.allow_non_star, "Accept decompositions that are not star");

  auto* verify = app.add_subcommand("verify", "Validate a tree and report its cost");
  verify->add_option("--instance", o.instance)->required();
  verify->add_option("--tree", o.tree)->required();

  auto* gen = app.add_subcommand("gen", "Build a reduction instance");
  gen->add_option("kind", o.kind)->required()->check(
      CLI::IsMember({"clique-simple", "clique-multi", "sat6", "sat-deg4"}));
  gen->add_option("--input", o.input, "mcq or mcnf file")->required();
  gen->add_option("--out-prefix", o.out_prefix)->required();
  gen->add_flag("--lift", o.lift, "Add a universal class when k is even");

  auto* check = app.add_subcommand("check", "Validate a tree-cut decomposition");
  check->add_option("--instance", o.instance)->required();
  check->add_option("--decomposition", o.decomposition)->required();

  auto* tcw = app.add_subcommand("tcw", "Exact tree-cutwidth of a small graph");
  tcw->add_option("--instance", o.instance)->required();
  tcw->add_option("--out", o.out, "Write the optimal decomposition here");

  std::vector<const char*> argv{"mincca"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }
  o.json = format == "json";
  o.seeded = app.count("--seed") > 0;

  try {
    if (solve->parsed()) return cmd_solve(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (gen->parsed()) return cmd_gen(o, out);
    if (check->parsed()) return cmd_check(o, out);
    return cmd_tcw(o, out);
  } catch (const ParseError& e) {
    return fail(o, out, err, kExitParse, e.what());
  } catch (const PreconditionError& e) {
    return fail(o, out, err, kExitPrecondition, e.what());
  } catch (const SizeError& e) {
    return fail(o, out, err, kExitPrecondition, e.what());
  } catch (const NoSpanningTreeError& e) {
    return fail(o, out, err, kExitPrecondition, e.what());
  } catch (const StructureError& e) {
    return fail(o, out, err, kExitInvalid, e.what());
  } catch (const InvalidColorError& e) {
    return fail(o, out, err, kExitInvalid, e.what());
  } catch (const Error& e) {
    return fail(o, out, err, kExitParse, e.what());
  } catch (const std::exception& e) {
    return fail(o, out, err, kExitInternal, e.what());
  }
}

}  // namespace mincca
