#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "minlob/digraph.hpp"
#include "minlob/out_tree.hpp"
#include "minlob/reduction.hpp"
#include "minlob/width.hpp"

// Text formats. Vertex ids, bag indices and tree-node ids are 1-based on
// disk and 0-based in memory. Lines starting with 'c' and blank lines are
// ignored everywhere.
//
//   graph        p digraph <n> <m>      then m lines  a <u> <v>
//   cnf          DIMACS: p cnf <k> <p>, clauses terminated by 0
//   branching    b root <r>             then lines    b <parent> <child>
//   dpd          bag <i> <v...>
//   dagd         bag <i> <v...>         plus lines    harc <h1> <h2>
//   arboreal     node <id> <v...>       and lines     tarc <id1> <id2> <v...>

namespace minlob {

/// Malformed input; what() starts with "line <n>: " when a line is to blame.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& message)
      : InputError(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

Digraph parse_graph(std::string_view text);
std::string serialize_graph(const Digraph& d);

CnfFormula parse_cnf(std::string_view text);
std::string serialize_cnf(const CnfFormula& f);

/// Out-branching certificate as written; tree invariants are checked
/// later, by building an OutTree from it.
struct BranchingRecord {
  Vertex root = 0;
  std::vector<Arc> arcs;
};

/// Arboreal certificate as written; node ids must be 0..m-1.
struct ArborealRecord {
  std::vector<Bag> node_bags;
  std::vector<std::pair<Arc, Bag>> tree_arcs;
};

using Certificate = std::variant<BranchingRecord, PathDecomposition, DagDecomposition, ArborealRecord>;

/// "out-branching", "dpd", "dagd" or "arboreal".
std::string certificate_kind(const Certificate& c);

Certificate parse_certificate(std::string_view text);

std::string serialize_branching(const OutTree& t);
std::string serialize_dpd(const PathDecomposition& dec);
std::string serialize_dagd(const DagDecomposition& dec);
std::string serialize_arboreal(const ArborealDecomposition& dec);
std::string serialize_certificate(const Certificate& c);

/// Builds the ArborealDecomposition; throws InvalidCertificate when the
/// tree arcs do not form an out-tree.
ArborealDecomposition to_arboreal(const ArborealRecord& record);

/// Each ordered pair (u, v), u != v, becomes an arc independently with
/// probability `density`, pairs visited in lexicographic order. Uses
/// mt19937_64 and a 53-bit fixed conversion, so files are reproducible
/// across platforms for a given seed.
Digraph random_digraph(std::size_t n, double density, std::uint64_t seed);

}  // namespace minlob
