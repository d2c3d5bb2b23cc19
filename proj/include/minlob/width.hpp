#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "minlob/digraph.hpp"
#include "minlob/out_tree.hpp"

namespace minlob {

using Bag = std::vector<Vertex>;

struct PathDecomposition {
  std::vector<Bag> bags;
};

/// Bags indexed by the vertices of an acyclic index digraph.
struct DagDecomposition {
  Digraph index;
  std::vector<Bag> bags;
};

/// Index out-tree on nodes 0..m-1 with a node bag per node and a label per
/// tree arc.
struct ArborealDecomposition {
  OutTree tree;
  std::vector<Bag> node_bags;
  std::map<Arc, Bag> arc_labels;
};

/// Outcome of a decomposition check: the width on acceptance, otherwise
/// the first violated condition with a concrete witness.
struct WidthReport {
  std::optional<std::size_t> width;
  std::optional<Violation> violation;

  bool accepted() const { return width.has_value(); }
};

/// S is Z-normal iff every walk that leaves S and re-enters it passes
/// through Z. Checked as: in d - Z, no vertex outside S that is reachable
/// from S has an arc back into S. Throws InputError if S and Z meet.
bool is_z_normal(const Digraph& d, std::span<const Vertex> s, std::span<const Vertex> z);

WidthReport validate_dagd(const Digraph& d, const DagDecomposition& dec);
WidthReport validate_dpd(const Digraph& d, const PathDecomposition& dec);
WidthReport validate_arboreal(const Digraph& d, const ArborealDecomposition& dec);

/// The same bags indexed by the directed path 0 -> 1 -> ... -> m-1.
DagDecomposition as_dagd(const PathDecomposition& dec);

/// Drops every bag that is a subset of the bag kept before it (including
/// empty bags). The result is still a DPD of the same digraph.
PathDecomposition drop_redundant_bags(const PathDecomposition& dec);

/// Converts a DPD Y_1..Y_m into an arboreal decomposition over the path
/// 0 -> 1 -> ...: W_1 = Y_1, W_i = Y_i \ Y_{i-1}, label of (i, i+1) is
/// Y_i & Y_{i+1}. Redundant bags are dropped first. The width does not
/// increase. Throws InputError if `dec` is not a DPD of d.
ArborealDecomposition dpd_to_arboreal(const Digraph& d, const PathDecomposition& dec);

struct DpwResult {
  std::size_t width = 0;
  PathDecomposition witness;
};

/// Exact directed path-width by dynamic programming over the set of
/// introduced vertices. A vertex leaves the active bag once all its
/// in-neighbours have been introduced. Throws InputError if d has more
/// than `vertex_cap` vertices or is empty.
DpwResult dpw_exact(const Digraph& d, std::size_t vertex_cap = 12);

}  // namespace minlob
