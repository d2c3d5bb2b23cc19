#include "minlob/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "minlob/formats.hpp"
#include "minlob/solvers.hpp"

namespace minlob {

namespace {

using nlohmann::json;

// Largest instance `reduce --certify` hands to the exact solvers.
constexpr std::size_t kCertifyBruteForceOrder = 22;
constexpr std::size_t kCertifyDpwOrder = 16;
constexpr std::size_t kCertifySatVariables = 20;

std::string read_input(const std::string& path) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  buffer << in.rdbuf();
  return buffer.str();
}

json arcs_json(std::span<const Arc> arcs) {
  json out = json::array();
  for (const Arc& a : arcs) out.push_back({a.tail + 1, a.head + 1});
  return out;
}

json graph_json(const Digraph& d) { return {{"vertices", d.order()}, {"arcs", arcs_json(d.arcs())}}; }

json branching_json(const OutTree& t) {
  return {{"root", t.root() + 1}, {"leaves", t.leaf_count()}, {"arcs", arcs_json(t.arcs())}};
}

json bags_json(const std::vector<Bag>& bags) {
  json out = json::array();
  for (Bag b : bags) {
    std::sort(b.begin(), b.end());
    json bag = json::array();
    for (Vertex v : b) bag.push_back(v + 1);
    out.push_back(bag);
  }
  return out;
}

json violation_json(const Violation& v) {
  json vertices = json::array(), nodes = json::array();
  for (Vertex x : v.vertices) vertices.push_back(x + 1);
  for (std::size_t x : v.nodes) nodes.push_back(x + 1);
  return {{"condition", v.condition}, {"message", v.describe(1)}, {"vertices", vertices}, {"nodes", nodes}};
}

struct CertifyStep {
  std::string name;
  bool ok;
  std::string detail;
};

std::string assignment_text(const Assignment& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? " " : "") + std::string(a[i] ? "" : "-") + std::to_string(i + 1);
  return s;
}

std::vector<CertifyStep> certify_reduction(const ReducedInstance& inst) {
  std::vector<CertifyStep> steps;
  const Digraph& d = inst.digraph();
  const std::size_t k = inst.var_count(), p = inst.clause_count(), n = d.order();

  steps.push_back({"order", n == 6 * p + k + 1, std::to_string(n) + " = 6*" + std::to_string(p) + "+" + std::to_string(k) + "+1"});
  WidthReport dpd = validate_dpd(d, canonical_width1_dpd(inst));
  steps.push_back({"canonical-dpd", dpd.width == std::optional<std::size_t>(1),
                   dpd.accepted() ? "width " + std::to_string(*dpd.width) : dpd.violation->describe(1)});
  steps.push_back({"cyclic", !is_acyclic(d), is_acyclic(d) ? "digraph is acyclic" : "digraph has a cycle"});

  if (k > kCertifySatVariables) {
    steps.push_back({"satisfiable", true, "skipped: too many variables to enumerate"});
    return steps;
  }
  std::optional<Assignment> sat = find_satisfying_assignment(inst.formula());
  steps.push_back({"satisfiable", true, sat ? "yes: " + assignment_text(*sat) : "no"});
  if (sat) {
    OutTree b = assignment_to_branching(inst, *sat);
    std::size_t leaves = validate_out_branching(d, b);
    steps.push_back({"forward-map", leaves == k, std::to_string(leaves) + " leaves"});
    Assignment decoded = decode_assignment(inst, b);
    steps.push_back({"decode", inst.formula().satisfied_by(decoded), assignment_text(decoded)});
  }
  if (n <= kCertifyBruteForceOrder) {
    SolveResult best = min_leaf_brute_force(d);
    bool ok = best.min_leaves && *best.min_leaves >= k && ((*best.min_leaves == k) == sat.has_value());
    steps.push_back({"min-leaves", ok, best.min_leaves ? std::to_string(*best.min_leaves) : "no out-branching"});
  }
  if (n <= kCertifyDpwOrder) {
    std::size_t w = dpw_exact(d, kCertifyDpwOrder).width;
    steps.push_back({"dpw", w == 1, std::to_string(w)});
  }
  return steps;
}

class Runner {
 public:
  Runner(std::ostream& out, bool as_json) : out_(out), json_(as_json) {}

  int solve(const std::string& path) {
    Digraph d = parse_graph(read_input(path));
    SolveResult r = min_leaf_brute_force(d);
    if (json_) {
      emit({{"command", "solve"},
            {"vertices", d.order()},
            {"feasible", r.min_leaves.has_value()},
            {"min_leaves", r.min_leaves ? json(*r.min_leaves) : json(nullptr)},
            {"witness", r.witness ? branching_json(*r.witness) : json(nullptr)}});
    } else if (r.min_leaves) {
      out_ << "c min-leaves " << *r.min_leaves << '\n' << serialize_branching(*r.witness);
    } else {
      out_ << "c no out-branching\n";
    }
    return r.min_leaves ? kExitYes : kExitNo;
  }

  int check(const std::string& path, std::size_t k) {
    Digraph d = parse_graph(read_input(path));
    KLeafDecision dec = check_k_leaves_contraction(d, k);
    if (json_) {
      emit({{"command", "check"},
            {"k", k},
            {"answer", dec.answer},
            {"witness", dec.witness ? branching_json(*dec.witness) : json(nullptr)}});
    } else {
      out_ << "c k " << k << "\nc answer " << (dec.answer ? "yes" : "no") << '\n';
      if (dec.witness) out_ << "c leaves " << dec.witness->leaf_count() << '\n' << serialize_branching(*dec.witness);
    }
    return dec.answer ? kExitYes : kExitNo;
  }

  int reduce(const std::string& path, const std::string& dpd_path, bool certify) {
    CnfFormula f = parse_cnf(read_input(path));
    ReducedInstance inst = reduce_cnf(f);
    const Digraph& d = inst.digraph();
    PathDecomposition dpd = canonical_width1_dpd(inst);
    if (!dpd_path.empty()) {
      std::ofstream file(dpd_path, std::ios::binary);
      if (!file) throw InputError("cannot write " + dpd_path);
      file << serialize_dpd(dpd);
    }
    std::vector<CertifyStep> steps;
    if (certify) steps = certify_reduction(inst);
    bool ok = std::all_of(steps.begin(), steps.end(), [](const CertifyStep& s) { return s.ok; });

    if (json_) {
      json names = json::array();
      for (Vertex v = 0; v < d.order(); ++v) names.push_back(inst.vertex_name(v));
      json doc = {{"command", "reduce"},
                  {"variables", inst.var_count()},
                  {"clauses", inst.clause_count()},
                  {"graph", graph_json(d)},
                  {"vertex_names", names}};
      if (!dpd_path.empty()) doc["dpd"] = bags_json(dpd.bags);
      if (certify) {
        json list = json::array();
        for (const auto& s : steps) list.push_back({{"check", s.name}, {"ok", s.ok}, {"detail", s.detail}});
        doc["certification"] = list;
      }
      emit(doc);
    } else {
      out_ << "c 3-CNF with " << inst.var_count() << " variables and " << inst.clause_count()
           << " clauses; digraph of order " << d.order() << '\n';
      for (Vertex v = 0; v < d.order(); ++v) out_ << "c vertex " << v + 1 << ' ' << inst.vertex_name(v) << '\n';
      out_ << serialize_graph(d);
      for (const auto& s : steps) out_ << "c certify " << s.name << (s.ok ? " ok " : " FAILED ") << s.detail << '\n';
    }
    return ok ? kExitYes : kExitNo;
  }

  int dpw(const std::string& path, std::size_t cap) {
    Digraph d = parse_graph(read_input(path));
    DpwResult r = dpw_exact(d, cap);
    if (json_) {
      emit({{"command", "dpw"}, {"width", r.width}, {"bags", bags_json(r.witness.bags)}});
    } else {
      out_ << "c dpw " << r.width << '\n' << serialize_dpd(r.witness);
    }
    return kExitYes;
  }

  int certify(const std::string& graph_path, const std::string& cert_path) {
    Digraph d = parse_graph(read_input(graph_path));
    Certificate cert = parse_certificate(read_input(cert_path));
    const std::string kind = certificate_kind(cert);
    std::optional<std::size_t> leaves, width;
    std::optional<Violation> violation;
    try {
      if (auto* b = std::get_if<BranchingRecord>(&cert)) {
        leaves = validate_out_branching(d, OutTree(b->root, b->arcs));
      } else {
        WidthReport report;
        if (auto* p = std::get_if<PathDecomposition>(&cert)) report = validate_dpd(d, *p);
        if (auto* g = std::get_if<DagDecomposition>(&cert)) report = validate_dagd(d, *g);
        if (auto* a = std::get_if<ArborealRecord>(&cert)) report = validate_arboreal(d, to_arboreal(*a));
        width = report.width;
        violation = report.violation;
      }
    } catch (const InvalidCertificate& e) {
      violation = e.violation();
    }
    const bool valid = !violation.has_value();
    if (json_) {
      emit({{"command", "certify"},
            {"kind", kind},
            {"valid", valid},
            {"leaves", leaves ? json(*leaves) : json(nullptr)},
            {"width", width ? json(*width) : json(nullptr)},
            {"violation", violation ? violation_json(*violation) : json(nullptr)}});
    } else if (valid) {
      out_ << "valid " << kind << ": ";
      if (leaves) out_ << *leaves << " leaves\n";
      if (width) out_ << "width " << *width << '\n';
    } else {
      out_ << "invalid " << kind << ": " << violation->describe(1) << '\n';
    }
    return valid ? kExitYes : kExitNo;
  }

  int gen(std::size_t n, double density, std::uint64_t seed) {
    Digraph d = random_digraph(n, density, seed);
    if (json_) {
      emit({{"command", "gen"}, {"n", n}, {"density", density}, {"seed", seed}, {"graph", graph_json(d)}});
    } else {
      out_ << serialize_graph(d);
    }
    return kExitYes;
  }

 private:
  void emit(const json& doc) { out_ << doc.dump(2) << '\n'; }

  std::ostream& out_;
  bool json_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum leaf out-branching solvers, 3SAT reduction and directed width tools", "minlob"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Write a JSON document instead of text");

  std::string graph, second;
  std::size_t k = 0, cap = 12, n = 0;
  double density = 0;
  std::uint64_t seed = 0;
  std::string dpd_path;
  bool certify = false;

  auto* solve = app.add_subcommand("solve", "Minimum number of leaves over all out-branchings, with a witness");
  solve->add_option("graph", graph, "Graph file ('-' for stdin)")->required();
  auto* check = app.add_subcommand("check", "Decide whether an out-branching with at most K leaves exists");
  check->add_option("-k", k, "Leaf bound K")->required()->check(CLI::PositiveNumber);
  check->add_option("graph", graph, "Graph file")->required();
  auto* reduce = app.add_subcommand("reduce", "Build the MinLOB instance of a 3-CNF formula (DIMACS)");
  reduce->add_option("cnf", graph, "DIMACS cnf file")->required();
  reduce->add_option("--dpd", dpd_path, "Also write the width-1 path decomposition to this file");
  reduce->add_flag("--certify", certify, "Audit the instance end to end");
  auto* dpw = app.add_subcommand("dpw", "Exact directed path-width with an optimal decomposition");
  dpw->add_option("graph", graph, "Graph file")->required();
  dpw->add_option("--cap", cap, "Refuse digraphs with more vertices than this")->capture_default_str();
  auto* certify_cmd = app.add_subcommand("certify", "Audit an out-branching or decomposition certificate");
  certify_cmd->add_option("graph", graph, "Graph file")->required();
  certify_cmd->add_option("certificate", second, "Certificate file")->required();
  auto* gen = app.add_subcommand("gen", "Random digraph: each arc independently with probability D");
  gen->add_option("--n", n, "Vertex count")->required();
  gen->add_option("--density", density, "Arc probability D")->required()->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", seed, "Random seed")->required();
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInput;
  }

  Runner run(out, as_json);
  try {
    if (solve->parsed()) return run.solve(graph);
    if (check->parsed()) return run.check(graph, k);
    if (reduce->parsed()) return run.reduce(graph, dpd_path, certify);
    if (dpw->parsed()) return run.dpw(graph, cap);
    if (certify_cmd->parsed()) return run.certify(graph, second);
    if (gen->parsed()) return run.gen(n, density, seed);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InvalidCertificate& e) {
    err << "error: " << e.violation().describe(1) << '\n';
    return kExitInput;
  }
  err << app.help();
  return kExitInput;
}

}  // namespace minlob
