#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "minlob/digraph.hpp"
#include "minlob/out_tree.hpp"

namespace minlob {

struct SolveResult {
  // Both empty iff the digraph has no out-branching.
  std::optional<std::size_t> min_leaves;
  std::optional<OutTree> witness;
};

struct KLeafDecision {
  std::size_t k = 0;
  bool answer = false;
  std::optional<OutTree> witness;  // leaf count <= k when answer is true
};

/// Exact MinLOB by branch and bound over in-arc assignments: every
/// non-root vertex picks a parent among its in-neighbours, cycles are
/// rejected as they form, and partial assignments are cut once a lower
/// bound on the leaf count reaches the incumbent. Throws InputError on
/// the empty digraph.
SolveResult min_leaf_brute_force(const Digraph& d);

/// Visits every rooted out-tree on vertex set `y` (arcs unrestricted)
/// with at most `leaf_cap` leaves, each exactly once. Order: root
/// ascending, then parent choices of the remaining vertices in
/// lexicographic order. Stops early when `visit` returns false.
/// Without a cap the count is |y|^(|y|-1).
void for_each_out_tree(std::span<const Vertex> y, std::size_t leaf_cap,
                       const std::function<bool(const OutTree&)>& visit);

std::vector<OutTree> enumerate_out_trees(std::span<const Vertex> y, std::size_t leaf_cap);

struct ContractionOptions {
  // Skip candidate trees with a non-root vertex of out-degree exactly 1;
  // such a tree is never the contraction of an out-branching.
  bool prune_unary_vertices = true;
};

/// Decides whether d has an out-branching with at most k leaves by
/// guessing its contraction: every Y with |Y| <= 2k, every out-tree T on
/// Y with <= k leaves, and a covering-linkage query realising T's arcs as
/// internally disjoint paths of d. Requires k >= 1 and at most 64 vertices.
KLeafDecision check_k_leaves_contraction(const Digraph& d, std::size_t k,
                                         const ContractionOptions& options = {});

}  // namespace minlob
