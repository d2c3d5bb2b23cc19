#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "minlob/digraph.hpp"
#include "minlob/out_tree.hpp"
#include "minlob/width.hpp"

namespace minlob {

struct Literal {
  std::size_t variable = 0;  // 0-based
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::array<Literal, 3>;

/// 3-CNF formula. Every clause has three literals over three distinct
/// variables, each below `var_count`.
class CnfFormula {
 public:
  CnfFormula(std::size_t var_count, std::vector<Clause> clauses);

  std::size_t var_count() const { return var_count_; }
  const std::vector<Clause>& clauses() const { return clauses_; }

  bool satisfied_by(const std::vector<bool>& assignment) const;

 private:
  std::size_t var_count_;
  std::vector<Clause> clauses_;
};

/// Truth value per variable; vector<bool> indexed by 0-based variable.
using Assignment = std::vector<bool>;

/// Brute force over all 2^k assignments; the first satisfying one in
/// counting order (variable 0 least significant, bit set = TRUE).
std::optional<Assignment> find_satisfying_assignment(const CnfFormula& f);

// ---------------------------------------------------------------------------
// Clause gadget

/// Literal slot of a gadget: clause position 1, 2, 3 maps to x, y, z.
enum class Slot : std::size_t { x = 0, y = 1, z = 2 };

/// Gadget-local vertex ids, in the order x1, y1, z1, x2, y2, z2.
constexpr Vertex gadget_vertex(Slot s, int layer) {
  return static_cast<Vertex>(s) + (layer == 1 ? 0 : 3);
}

std::string gadget_vertex_name(Vertex local);

/// The six-vertex, nine-arc clause gadget.
Digraph build_gadget();

/// One audited statement about the gadget, for one cyclic relabelling.
struct GadgetCheck {
  std::string property;  // "(i)" .. "(v)"
  std::size_t rotation;  // 0: x->x, 1: x->y, 2: x->z
  bool holds;
  std::string detail;
  // Path family found (for existence properties) in gadget-local ids.
  std::vector<std::vector<Vertex>> witness;
};

struct GadgetReport {
  std::vector<GadgetCheck> checks;
  bool all_hold() const;
};

/// Exhaustively enumerates path families in the gadget and audits
/// properties (i)-(v) under each of the three cyclic relabellings
/// x->y->z->x (the gadget's automorphisms).
GadgetReport verify_gadget_properties();

/// Covering segments for a gadget entered at the given slots: for each
/// entered slot s, a path from s1 to s2, jointly covering all six gadget
/// vertices. Gadget-local ids; `entered` must be sorted and non-empty.
std::vector<std::vector<Vertex>> gadget_traversal(const std::vector<Slot>& entered);

// ---------------------------------------------------------------------------
// Reduction 3SAT -> MinLOB

class ReducedInstance {
 public:
  const Digraph& digraph() const { return digraph_; }
  const CnfFormula& formula() const { return formula_; }
  std::size_t var_count() const { return formula_.var_count(); }
  std::size_t clause_count() const { return formula_.clauses().size(); }

  Vertex root() const { return 0; }
  Vertex variable_vertex(std::size_t variable) const { return 1 + variable; }
  Vertex clause_vertex(std::size_t clause, Slot s, int layer) const {
    return 1 + var_count() + 6 * clause + gadget_vertex(s, layer);
  }
  /// Clause index owning `v`, or npos if v is r or some u_i.
  std::size_t clause_of(Vertex v) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Chain of arcs Arc(v^i) (negated = false) or Arc(not v^i).
  const std::vector<Arc>& literal_arcs(std::size_t variable, bool negated) const {
    return negated ? negative_arcs_.at(variable) : positive_arcs_.at(variable);
  }

  /// "r", "u3", "y2(H1)", ... with 1-based variable and clause numbers.
  std::string vertex_name(Vertex v) const;

 private:
  friend ReducedInstance reduce_cnf(const CnfFormula& f);
  explicit ReducedInstance(CnfFormula f) : formula_(std::move(f)) {}

  CnfFormula formula_;
  Digraph digraph_;
  std::vector<std::vector<Arc>> positive_arcs_;
  std::vector<std::vector<Arc>> negative_arcs_;
};

/// Builds D(I): vertex r = 0, u_i = i (1-based variables), then six
/// vertices per clause in slot order x1, y1, z1, x2, y2, z2.
/// Requires at least one clause.
ReducedInstance reduce_cnf(const CnfFormula& f);

/// Thrown by assignment_to_branching when some clause has no true literal.
class UncoveredClause : public std::runtime_error {
 public:
  explicit UncoveredClause(std::size_t clause)
      : std::runtime_error("clause " + std::to_string(clause + 1) + " has no true literal"),
        clause_(clause) {}
  std::size_t clause() const { return clause_; }

 private:
  std::size_t clause_;
};

/// Out-branching with exactly k leaves built from a satisfying assignment.
OutTree assignment_to_branching(const ReducedInstance& inst, const Assignment& a);

/// True when every variable path meeting a gadget enters at some s1 and
/// leaves the gadget at the matching s2.
bool is_gadget_compatible(const ReducedInstance& inst, const OutTree& b);

/// Rewires a k-leaf out-branching gadget by gadget (in clause order) so
/// that every path is compatible with every gadget it meets. Leaf count is
/// preserved. Throws InputError unless b is a k-leaf out-branching.
OutTree repair_to_compatible(const ReducedInstance& inst, const OutTree& b);

/// Reads a satisfying assignment off a k-leaf out-branching (after repair).
/// Variables whose path has no arc default to TRUE.
Assignment decode_assignment(const ReducedInstance& inst, const OutTree& b);

/// The width-1 directed path decomposition of D(I):
/// {r}, {u_1}, ..., {u_k}, then per clause {z1,y1}, {y1,x1}, {x2,y2}, {y2,z2}.
PathDecomposition canonical_width1_dpd(const ReducedInstance& inst);

}  // namespace minlob
