#include "minlob/solvers.hpp"

#include <algorithm>

#include "minlob/linkage.hpp"

namespace minlob {

namespace {

constexpr Vertex kNone = OutTree::kNoParent;

// Depth-first spanning tree from `root`; a cheap first incumbent.
std::vector<Vertex> dfs_tree(const Digraph& d, Vertex root) {
  std::vector<Vertex> parent(d.order(), kNone);
  std::vector<bool> seen(d.order(), false);
  std::vector<std::pair<Vertex, std::size_t>> stack{{root, 0}};
  seen[root] = true;
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    auto out = d.out_neighbors(v);
    if (next == out.size()) {
      stack.pop_back();
      continue;
    }
    Vertex w = out[next++];
    if (!seen[w]) {
      seen[w] = true;
      parent[w] = v;
      stack.push_back({w, 0});
    }
  }
  return parent;
}

std::size_t count_leaves(std::span<const Vertex> parent) {
  std::vector<bool> has_child(parent.size(), false);
  for (Vertex p : parent) {
    if (p != kNone) has_child[p] = true;
  }
  return static_cast<std::size_t>(std::count(has_child.begin(), has_child.end(), false));
}

// A tree with child counts c_v has exactly 1 + sum(max(0, c_v - 1)) leaves,
// and child counts only grow as the assignment is completed, so the
// running "excess" is a valid lower bound. So is the number of vertices
// that can no longer receive a child.
class LeafBranchAndBound {
 public:
  explicit LeafBranchAndBound(const Digraph& d) : d_(d), n_(d.order()) {}

  void search_from(Vertex root) {
    parent_.assign(n_, kNone);
    assigned_.assign(n_, false);
    child_count_.assign(n_, 0);
    pending_out_.assign(n_, 0);
    assigned_[root] = true;
    excess_ = 0;
    sure_leaves_ = 0;
    for (Vertex w = 0; w < n_; ++w) {
      for (Vertex x : d_.out_neighbors(w)) {
        if (x != root) ++pending_out_[w];
      }
      if (pending_out_[w] == 0) ++sure_leaves_;
    }
    order_.clear();
    std::vector<bool> seen(n_, false);
    std::vector<Vertex> queue{root};
    seen[root] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (Vertex w : d_.out_neighbors(queue[head])) {
        if (!seen[w]) {
          seen[w] = true;
          queue.push_back(w);
          order_.push_back(w);
        }
      }
    }
    if (order_.size() + 1 != n_) return;  // root does not reach everything
    if (best_parent_.empty()) {
      best_parent_ = dfs_tree(d_, root);
      best_ = count_leaves(best_parent_);
    }
    descend(0);
  }

  std::size_t best() const { return best_; }
  const std::vector<Vertex>& best_parent() const { return best_parent_; }

 private:
  std::size_t bound() const { return std::max(sure_leaves_, 1 + excess_); }

  bool closes_cycle(Vertex v, Vertex p) const {
    while (assigned_[p] && parent_[p] != kNone) p = parent_[p];
    return p == v;
  }

  void descend(std::size_t idx) {
    if (idx == order_.size()) {
      std::size_t leaves = static_cast<std::size_t>(
          std::count(child_count_.begin(), child_count_.end(), std::size_t{0}));
      if (leaves < best_) {
        best_ = leaves;
        best_parent_ = parent_;
      }
      return;
    }
    const Vertex v = order_[idx];
    for (Vertex p : d_.in_neighbors(v)) {
      if (closes_cycle(v, p)) continue;
      assign(v, p);
      if (bound() < best_) descend(idx + 1);
      unassign(v, p);
      if (best_ <= 1) return;
    }
  }

  void assign(Vertex v, Vertex p) {
    parent_[v] = p;
    assigned_[v] = true;
    if (++child_count_[p] >= 2) ++excess_;
    for (Vertex w : d_.in_neighbors(v)) {
      if (--pending_out_[w] == 0 && child_count_[w] == 0) ++sure_leaves_;
    }
  }

  void unassign(Vertex v, Vertex p) {
    for (Vertex w : d_.in_neighbors(v)) {
      if (pending_out_[w]++ == 0 && child_count_[w] == 0) --sure_leaves_;
    }
    if (child_count_[p]-- >= 2) --excess_;
    parent_[v] = kNone;
    assigned_[v] = false;
  }

  const Digraph& d_;
  std::size_t n_;
  std::vector<Vertex> order_;
  std::vector<Vertex> parent_;
  std::vector<bool> assigned_;
  std::vector<std::size_t> child_count_;
  std::vector<std::size_t> pending_out_;
  std::size_t excess_ = 0;
  std::size_t sure_leaves_ = 0;
  std::size_t best_ = 0;
  std::vector<Vertex> best_parent_;
};

// Parent arrays over positions 0..m-1 of a vertex list, for every rooted
// tree with at most `leaf_cap` leaves.
class TreeEnumerator {
 public:
  TreeEnumerator(std::size_t m, std::size_t leaf_cap,
                 const std::function<bool(Vertex, std::span<const Vertex>)>& visit)
      : m_(m), cap_(leaf_cap), visit_(visit) {}

  void run() {
    for (Vertex root = 0; root < m_ && !stopped_; ++root) {
      root_ = root;
      parent_.assign(m_, kNone);
      child_count_.assign(m_, 0);
      excess_ = 0;
      descend(0);
    }
  }

 private:
  bool closes_cycle(Vertex v, Vertex p) const {
    while (p != root_ && parent_[p] != kNone) p = parent_[p];
    return p == v;
  }

  void descend(Vertex v) {
    if (stopped_) return;
    if (v == root_) return descend(v + 1);
    if (v == m_) {
      std::size_t leaves = static_cast<std::size_t>(
          std::count(child_count_.begin(), child_count_.end(), std::size_t{0}));
      if (leaves <= cap_ && !visit_(root_, parent_)) stopped_ = true;
      return;
    }
    for (Vertex p = 0; p < m_ && !stopped_; ++p) {
      if (p == v || closes_cycle(v, p)) continue;
      parent_[v] = p;
      if (++child_count_[p] >= 2) ++excess_;
      if (1 + excess_ <= cap_) descend(v + 1);
      if (child_count_[p]-- >= 2) --excess_;
      parent_[v] = kNone;
    }
  }

  std::size_t m_;
  std::size_t cap_;
  const std::function<bool(Vertex, std::span<const Vertex>)>& visit_;
  Vertex root_ = 0;
  std::vector<Vertex> parent_;
  std::vector<std::size_t> child_count_;
  std::size_t excess_ = 0;
  bool stopped_ = false;
};

std::vector<Vertex> normalized_set(std::span<const Vertex> y) {
  std::vector<Vertex> set(y.begin(), y.end());
  std::sort(set.begin(), set.end());
  if (std::adjacent_find(set.begin(), set.end()) != set.end()) {
    throw InputError("vertex set contains a repeated vertex");
  }
  if (set.empty()) throw InputError("vertex set is empty");
  return set;
}

OutTree tree_on(std::span<const Vertex> y, Vertex root, std::span<const Vertex> parent) {
  std::vector<Arc> arcs;
  for (Vertex i = 0; i < parent.size(); ++i) {
    if (i != root) arcs.push_back({y[parent[i]], y[i]});
  }
  return OutTree(y[root], arcs);
}

bool has_unary_non_root(Vertex root, std::span<const Vertex> parent) {
  std::vector<std::size_t> count(parent.size(), 0);
  for (Vertex i = 0; i < parent.size(); ++i) {
    if (i != root) ++count[parent[i]];
  }
  for (Vertex i = 0; i < parent.size(); ++i) {
    if (i != root && count[i] == 1) return true;
  }
  return false;
}

}  // namespace

SolveResult min_leaf_brute_force(const Digraph& d) {
  BranchingExistence existence = has_out_branching(d);
  if (!existence.exists) return {};
  LeafBranchAndBound search(d);
  for (Vertex root : existence.root_component) {
    search.search_from(root);
    if (search.best() <= 1) break;
  }
  return {search.best(), out_tree_from_parents(search.best_parent())};
}

void for_each_out_tree(std::span<const Vertex> y, std::size_t leaf_cap,
                       const std::function<bool(const OutTree&)>& visit) {
  std::vector<Vertex> set = normalized_set(y);
  std::function<bool(Vertex, std::span<const Vertex>)> adapter =
      [&](Vertex root, std::span<const Vertex> parent) { return visit(tree_on(set, root, parent)); };
  TreeEnumerator(set.size(), leaf_cap, adapter).run();
}

std::vector<OutTree> enumerate_out_trees(std::span<const Vertex> y, std::size_t leaf_cap) {
  std::vector<OutTree> out;
  for_each_out_tree(y, leaf_cap, [&](const OutTree& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

KLeafDecision check_k_leaves_contraction(const Digraph& d, std::size_t k,
                                         const ContractionOptions& options) {
  if (k == 0) throw InputError("check_k_leaves_contraction: k must be positive");
  if (d.order() > 64) throw InputError("check_k_leaves_contraction supports at most 64 vertices");
  KLeafDecision decision{k, false, std::nullopt};
  BranchingExistence existence = has_out_branching(d);
  if (!existence.exists) return decision;
  const std::size_t n = d.order();
  if (k >= n) {
    // Any out-branching has at most max(1, n-1) leaves.
    decision.answer = true;
    decision.witness = out_tree_from_parents(dfs_tree(d, existence.root_component.front()));
    return decision;
  }

  std::function<bool(Vertex, std::span<const Vertex>)> try_tree;
  std::vector<Vertex> subset;
  try_tree = [&](Vertex root, std::span<const Vertex> parent) {
    if (options.prune_unary_vertices && has_unary_non_root(root, parent)) return true;
    std::vector<Arc> demands;
    for (Vertex i = 0; i < parent.size(); ++i) {
      if (i != root) demands.push_back({subset[parent[i]], subset[i]});
    }
    std::sort(demands.begin(), demands.end());
    auto solution = solve_cover_linkage(d, LinkageQuery(demands));
    if (!solution) return true;
    std::vector<Arc> arcs;
    for (const auto& path : solution->paths) {
      for (std::size_t j = 0; j + 1 < path.size(); ++j) arcs.push_back({path[j], path[j + 1]});
    }
    decision.answer = true;
    decision.witness = OutTree(subset[root], arcs);
    return false;
  };

  // n >= 2 here, so a contraction has a root and at least one leaf.
  const std::size_t max_size = std::min(2 * k, n);
  for (std::size_t size = 2; size <= max_size; ++size) {
    std::vector<Vertex> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      subset = pick;
      TreeEnumerator(size, k, try_tree).run();
      if (decision.answer) return decision;
      // Next combination in lexicographic order.
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == n - size + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return decision;
}

}  // namespace minlob
