#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "minlob/formats.hpp"
#include "minlob/solvers.hpp"

using namespace minlob;

namespace {

std::size_t error_line(auto&& parse) {
  try {
    parse();
  } catch (const ParseError& e) {
    return e.line();
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

TEST_CASE("graph parsing") {
  Digraph d = parse_graph("c a comment\n\np digraph 3 2\na 1 2\na 3 1\n");
  CHECK(d == Digraph(3, {{0, 1}, {2, 0}}));
  CHECK(serialize_graph(d) == "p digraph 3 2\na 1 2\na 3 1\n");
  CHECK(parse_graph(serialize_graph(d)) == d);
}

TEST_CASE("graph parse errors carry line numbers") {
  CHECK(error_line([] { parse_graph("p digraph 2 1\na 1 1\n"); }) == 2);
  CHECK(error_line([] { parse_graph("p digraph 2 1\na 1 3\n"); }) == 2);
  CHECK(error_line([] { parse_graph("p digraph 2 1\na 1 2\na 2 1\n"); }) == 3);
  CHECK(error_line([] { parse_graph("a 1 2\n"); }) == 1);
  CHECK(error_line([] { parse_graph("p digraph 2 2\na 1 2\n"); }) == 0);
  CHECK(error_line([] { parse_graph("p digraph 2 x\n"); }) == 1);
  CHECK(error_line([] { parse_graph("p digraph 2 1\na 0 1\n"); }) == 2);
  CHECK(error_line([] { parse_graph("p digraph 2 1\nq 1 2\n"); }) == 2);
  CHECK(error_line([] { parse_graph(""); }) == 0);
  try {
    parse_graph("p digraph 2 1\na 2 2\n");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()) == "line 2: self-loop at vertex 2");
  }
}

TEST_CASE("cnf parsing") {
  CnfFormula f = parse_cnf("c x\np cnf 4 2\n1 -2 3 0\n-4 2\n1 0\n%\n0\n");
  CHECK(f.var_count() == 4);
  REQUIRE(f.clauses().size() == 2);
  CHECK(f.clauses()[0][1] == Literal{1, true});
  CHECK(f.clauses()[1][2] == Literal{0, false});
  CHECK(parse_cnf(serialize_cnf(f)).clauses() == f.clauses());
  CHECK(serialize_cnf(f) == "p cnf 4 2\n1 -2 3 0\n-4 2 1 0\n");

  CHECK(error_line([] { parse_cnf("p cnf 3 1\n1 2 0\n"); }) == 2);
  CHECK(error_line([] { parse_cnf("p cnf 3 1\n1 -1 2 0\n"); }) == 2);
  CHECK(error_line([] { parse_cnf("p cnf 3 1\n1 2 4 0\n"); }) == 2);
  CHECK(error_line([] { parse_cnf("p cnf 3 2\n1 2 3 0\n"); }) == 0);
  CHECK(error_line([] { parse_cnf("p cnf 3 1\n1 2 3\n"); }) == 0);
}

TEST_CASE("certificate round trips") {
  OutTree t(0, {{0, 1}, {1, 2}, {0, 3}});
  std::string text = serialize_branching(t);
  CHECK(text == "b root 1\nb 1 2\nb 1 4\nb 2 3\n");
  Certificate c = parse_certificate(text);
  CHECK(certificate_kind(c) == "out-branching");
  auto& rec = std::get<BranchingRecord>(c);
  CHECK(OutTree(rec.root, rec.arcs) == t);
  CHECK(serialize_certificate(c) == text);

  PathDecomposition dpd{{{0}, {1, 2}}};
  std::string dtext = serialize_dpd(dpd);
  CHECK(dtext == "bag 1 1\nbag 2 2 3\n");
  CHECK(certificate_kind(parse_certificate(dtext)) == "dpd");
  CHECK(serialize_certificate(parse_certificate(dtext)) == dtext);

  DagDecomposition dagd{Digraph(3, {{0, 1}, {0, 2}}), {{0}, {1}, {0, 2}}};
  std::string gtext = serialize_dagd(dagd);
  Certificate g = parse_certificate(gtext);
  CHECK(certificate_kind(g) == "dagd");
  CHECK(std::get<DagDecomposition>(g).index == dagd.index);
  CHECK(serialize_certificate(g) == gtext);

  ArborealDecomposition a{OutTree(0, {{0, 1}}), {{0}, {1, 2}}, {{Arc{0, 1}, Bag{0}}}};
  std::string atext = serialize_arboreal(a);
  CHECK(atext == "node 1 1\nnode 2 2 3\ntarc 1 2 1\n");
  Certificate ac = parse_certificate(atext);
  CHECK(certificate_kind(ac) == "arboreal");
  ArborealDecomposition back = to_arboreal(std::get<ArborealRecord>(ac));
  CHECK(back.tree == a.tree);
  CHECK(back.node_bags == a.node_bags);
  CHECK(back.arc_labels == a.arc_labels);
  CHECK(serialize_certificate(ac) == atext);
}

TEST_CASE("certificate parse errors") {
  CHECK(error_line([] { parse_certificate("b root 1\nbag 1 1\n"); }) == 2);
  CHECK(error_line([] { parse_certificate("b 1 2\n"); }) == 0);
  CHECK(error_line([] { parse_certificate("bag 1 1 1\n"); }) == 1);
  CHECK(error_line([] { parse_certificate("bag 2 1\n"); }) == 0);
  CHECK(error_line([] { parse_certificate("c nothing\n"); }) == 0);
  CHECK_THROWS_AS(to_arboreal(std::get<ArborealRecord>(parse_certificate("node 1 1\nnode 2 2\ntarc 1 2\ntarc 2 1\n"))),
                  InvalidCertificate);
}

TEST_CASE("random digraphs are reproducible") {
  Digraph a = random_digraph(9, 0.4, 123);
  CHECK(a == random_digraph(9, 0.4, 123));
  CHECK_FALSE(a == random_digraph(9, 0.4, 124));
  CHECK(random_digraph(6, 0.0, 1).size() == 0);
  CHECK(random_digraph(6, 1.0, 1).size() == 30);
  CHECK_THROWS_AS(random_digraph(3, 1.5, 1), InputError);
  // Density is roughly honoured.
  std::size_t arcs = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) arcs += random_digraph(10, 0.3, seed).size();
  CHECK(arcs > 0.25 * 50 * 90);
  CHECK(arcs < 0.35 * 50 * 90);
}
