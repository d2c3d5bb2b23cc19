#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "minlob/digraph.hpp"

namespace minlob {

/// Structured description of why a certificate (out-branching or
/// decomposition) was rejected. `vertices` are subject-digraph vertices,
/// `nodes` index-structure nodes (bags, tree nodes); both 0-based.
struct Violation {
  std::string condition;
  std::vector<Vertex> vertices;
  std::vector<std::size_t> nodes;

  /// Human-readable text; `id_base` is added to every id (1 for on-disk ids).
  std::string describe(std::size_t id_base = 0) const;
};

class InvalidCertificate : public std::runtime_error {
 public:
  explicit InvalidCertificate(Violation v)
      : std::runtime_error(v.describe()), violation_(std::move(v)) {}
  const Violation& violation() const { return violation_; }

 private:
  Violation violation_;
};

/// Rooted out-tree on an arbitrary vertex set. Immutable; the constructor
/// enforces a single root, one parent per non-root vertex, and that every
/// vertex is reachable from the root.
class OutTree {
 public:
  static constexpr Vertex kNoParent = static_cast<Vertex>(-1);

  /// `arcs` are (parent, child) pairs. Throws InvalidCertificate.
  OutTree(Vertex root, std::span<const Arc> arcs);
  OutTree(Vertex root, std::initializer_list<Arc> arcs)
      : OutTree(root, std::span<const Arc>(arcs.begin(), arcs.size())) {}

  Vertex root() const { return root_; }
  std::span<const Vertex> vertices() const { return vertices_; }
  std::size_t order() const { return vertices_.size(); }
  bool contains(Vertex v) const;

  std::optional<Vertex> parent(Vertex v) const;
  std::span<const Vertex> children(Vertex v) const;
  std::size_t out_degree(Vertex v) const { return children(v).size(); }

  /// Arcs sorted by (parent, child).
  std::vector<Arc> arcs() const;
  std::vector<Vertex> leaves() const;
  std::vector<Vertex> branching_vertices() const;
  std::size_t leaf_count() const;

  friend bool operator==(const OutTree& a, const OutTree& b) {
    return a.root_ == b.root_ && a.vertices_ == b.vertices_ && a.parent_ == b.parent_;
  }

 private:
  std::size_t slot(Vertex v) const;

  Vertex root_;
  std::vector<Vertex> vertices_;               // sorted
  std::vector<Vertex> parent_;                 // aligned with vertices_
  std::vector<std::vector<Vertex>> children_;  // aligned, sorted
};

/// Builds a tree from a dense parent array over 0..n-1 (root has kNoParent).
OutTree out_tree_from_parents(std::span<const Vertex> parent);

/// Checks that `t` is an out-branching of `d` and returns its leaf count.
/// Throws InvalidCertificate naming the first problem found.
std::size_t validate_out_branching(const Digraph& d, const OutTree& t);

/// Contraction of an out-tree onto X(t) = {root} + leaves + branching
/// vertices: every maximal path through out-degree-1 vertices becomes a
/// single arc.
OutTree contract_branching(const OutTree& t);

/// Root, leaves and branching vertices of `t`, sorted.
std::vector<Vertex> contraction_vertices(const OutTree& t);

}  // namespace minlob
