#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace minlob {

using Vertex = std::size_t;

struct Arc {
  Vertex tail = 0;
  Vertex head = 0;

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Thrown when an argument violates an operation's precondition
/// (out-of-range vertex, self-loop, malformed formula, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Simple digraph on the dense vertex range 0..n-1.
///
/// Parallel arcs collapse on construction; self-loops are rejected.
/// Arcs and adjacency lists are kept sorted, so every traversal over a
/// Digraph is deterministic.
class Digraph {
 public:
  Digraph() = default;
  Digraph(std::size_t n, std::span<const Arc> arcs);
  Digraph(std::size_t n, std::initializer_list<Arc> arcs)
      : Digraph(n, std::span<const Arc>(arcs.begin(), arcs.size())) {}

  std::size_t order() const { return out_.size(); }
  std::size_t size() const { return arcs_.size(); }
  bool empty() const { return out_.empty(); }

  std::span<const Arc> arcs() const { return arcs_; }
  std::span<const Vertex> out_neighbors(Vertex v) const { return out_.at(v); }
  std::span<const Vertex> in_neighbors(Vertex v) const { return in_.at(v); }
  std::size_t out_degree(Vertex v) const { return out_.at(v).size(); }
  std::size_t in_degree(Vertex v) const { return in_.at(v).size(); }

  bool has_arc(Vertex tail, Vertex head) const;

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.order() == b.order() && a.arcs_ == b.arcs_;
  }

 private:
  std::vector<Arc> arcs_;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
};

struct CondensationReport {
  // Components listed in order of their smallest vertex; each sorted.
  std::vector<std::vector<Vertex>> components;
  // Indices into `components` of those without incoming arcs.
  std::vector<std::size_t> source_components;
};

CondensationReport condense(const Digraph& d);

struct BranchingExistence {
  bool exists = false;
  // The unique source component when `exists`; any vertex may be a root.
  std::vector<Vertex> root_component;
};

/// A digraph has an out-branching iff its condensation has exactly one
/// source component. Throws InputError on the empty digraph.
BranchingExistence has_out_branching(const Digraph& d);

bool is_acyclic(const Digraph& d);

/// Vertices reachable from `sources` (including them), as a membership mask.
std::vector<bool> reachable_from(const Digraph& d, std::span<const Vertex> sources);

std::string to_string(const Arc& a);

}  // namespace minlob
