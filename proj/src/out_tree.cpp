#include "minlob/out_tree.hpp"

#include <algorithm>
#include <sstream>

namespace minlob {

namespace {

std::string join_ids(std::span<const std::size_t> ids, std::size_t base) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ids.size(); ++i) os << (i ? " " : "") << ids[i] + base;
  return os.str();
}

}  // namespace

std::string Violation::describe(std::size_t id_base) const {
  auto vid = [&](std::size_t i) { return std::to_string(vertices.at(i) + id_base); };
  auto nid = [&](std::size_t i) { return std::to_string(nodes.at(i) + id_base); };
  const std::string& c = condition;
  if (c == "not-spanning") return "vertex " + vid(0) + " is not covered by the out-tree";
  if (c == "arc-absent") return "tree arc (" + vid(0) + "," + vid(1) + ") is not an arc of the digraph";
  if (c == "vertex-out-of-range") return "vertex " + vid(0) + " is not a vertex of the digraph";
  if (c == "two-parents") return "vertex " + vid(0) + " has more than one parent";
  if (c == "root-has-parent") return "root " + vid(0) + " has a parent";
  if (c == "multiple-roots") return "vertex " + vid(0) + " has no parent but is not the root";
  if (c == "cycle") return "tree arcs contain a cycle through vertex " + vid(0);
  if (c == "(a)") return "condition (a): vertex " + vid(0) + " lies in no bag";
  if (c == "(b)") {
    return "condition (b): arc (" + vid(0) + "," + vid(1) +
           ") has no bag pair joined by a directed path in the index structure";
  }
  if (c == "(c)") {
    return "condition (c): vertex " + vid(0) + " lies in bags " + nid(0) + " and " + nid(2) +
           " but not in bag " + nid(1) + " between them";
  }
  if (c == "interval") {
    return "condition (c): the bags containing vertex " + vid(0) + " are not contiguous (gap at bag " +
           nid(0) + ")";
  }
  if (c == "index-cyclic") return "index digraph is not acyclic";
  if (c == "(1)-empty") return "condition (1): node bag " + nid(0) + " is empty";
  if (c == "(1)-overlap") {
    return "condition (1): vertex " + vid(0) + " lies in node bags " + nid(0) + " and " + nid(1);
  }
  if (c == "(1)-uncovered") return "condition (1): vertex " + vid(0) + " lies in no node bag";
  if (c == "(2)") {
    return "condition (2): the vertex set below tree arc (" + nid(0) + "," + nid(1) +
           ") is not normal w.r.t. the arc label: a walk leaves it and comes back along arc (" + vid(0) +
           "," + vid(1) + ") without meeting the label";
  }
  if (c == "(2)-overlap") {
    return "condition (2): label of tree arc (" + nid(0) + "," + nid(1) +
           ") meets the vertex set below it at vertex " + vid(0);
  }
  if (c == "label-not-arc") return "label given for (" + nid(0) + "," + nid(1) + "), which is not a tree arc";
  if (c == "index-nodes") return "index tree must use exactly the nodes 0..m-1 (offending node " + nid(0) + ")";
  std::ostringstream os;
  os << c;
  if (!vertices.empty()) os << " vertices [" << join_ids(vertices, id_base) << "]";
  if (!nodes.empty()) os << " nodes [" << join_ids(nodes, id_base) << "]";
  return os.str();
}

OutTree::OutTree(Vertex root, std::span<const Arc> arcs) : root_(root) {
  vertices_.push_back(root);
  for (const Arc& a : arcs) {
    vertices_.push_back(a.tail);
    vertices_.push_back(a.head);
  }
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
  parent_.assign(vertices_.size(), kNoParent);
  children_.assign(vertices_.size(), {});

  for (const Arc& a : arcs) {
    if (a.head == root) throw InvalidCertificate({"root-has-parent", {root}, {}});
    std::size_t s = slot(a.head);
    if (parent_[s] != kNoParent) throw InvalidCertificate({"two-parents", {a.head}, {}});
    parent_[s] = a.tail;
    children_[slot(a.tail)].push_back(a.head);
  }
  for (auto& list : children_) std::sort(list.begin(), list.end());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i] != root && parent_[i] == kNoParent) {
      throw InvalidCertificate({"multiple-roots", {vertices_[i]}, {}});
    }
  }
  // One parent per non-root vertex: the structure is a tree iff everything
  // is reachable from the root.
  std::vector<bool> seen(vertices_.size(), false);
  std::vector<Vertex> todo{root};
  seen[slot(root)] = true;
  std::size_t reached = 1;
  while (!todo.empty()) {
    Vertex v = todo.back();
    todo.pop_back();
    for (Vertex w : children_[slot(v)]) {
      seen[slot(w)] = true;
      ++reached;
      todo.push_back(w);
    }
  }
  if (reached != vertices_.size()) {
    auto it = std::find(seen.begin(), seen.end(), false);
    throw InvalidCertificate({"cycle", {vertices_[static_cast<std::size_t>(it - seen.begin())]}, {}});
  }
}

std::size_t OutTree::slot(Vertex v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) {
    throw InputError("vertex " + std::to_string(v) + " is not in the out-tree");
  }
  return static_cast<std::size_t>(it - vertices_.begin());
}

bool OutTree::contains(Vertex v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::optional<Vertex> OutTree::parent(Vertex v) const {
  Vertex p = parent_[slot(v)];
  if (p == kNoParent) return std::nullopt;
  return p;
}

std::span<const Vertex> OutTree::children(Vertex v) const { return children_[slot(v)]; }

std::vector<Arc> OutTree::arcs() const {
  std::vector<Arc> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (Vertex c : children_[i]) out.push_back({vertices_[i], c});
  }
  return out;
}

std::vector<Vertex> OutTree::leaves() const {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (children_[i].empty()) out.push_back(vertices_[i]);
  }
  return out;
}

std::vector<Vertex> OutTree::branching_vertices() const {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (children_[i].size() >= 2) out.push_back(vertices_[i]);
  }
  return out;
}

std::size_t OutTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(children_.begin(), children_.end(), [](const auto& c) { return c.empty(); }));
}

OutTree out_tree_from_parents(std::span<const Vertex> parent) {
  std::vector<Arc> arcs;
  std::optional<Vertex> root;
  for (Vertex v = 0; v < parent.size(); ++v) {
    if (parent[v] == OutTree::kNoParent) {
      if (root) throw InvalidCertificate({"multiple-roots", {v}, {}});
      root = v;
    } else {
      arcs.push_back({parent[v], v});
    }
  }
  if (!root) throw InvalidCertificate({"cycle", {0}, {}});
  return OutTree(*root, arcs);
}

std::size_t validate_out_branching(const Digraph& d, const OutTree& t) {
  for (Vertex v : t.vertices()) {
    if (v >= d.order()) throw InvalidCertificate({"vertex-out-of-range", {v}, {}});
  }
  for (Vertex v = 0; v < d.order(); ++v) {
    if (!t.contains(v)) throw InvalidCertificate({"not-spanning", {v}, {}});
  }
  for (const Arc& a : t.arcs()) {
    if (!d.has_arc(a.tail, a.head)) throw InvalidCertificate({"arc-absent", {a.tail, a.head}, {}});
  }
  return t.leaf_count();
}

std::vector<Vertex> contraction_vertices(const OutTree& t) {
  std::vector<Vertex> x;
  for (Vertex v : t.vertices()) {
    if (v == t.root() || t.out_degree(v) != 1) x.push_back(v);
  }
  return x;
}

OutTree contract_branching(const OutTree& t) {
  std::vector<Vertex> x = contraction_vertices(t);
  auto in_x = [&](Vertex v) { return std::binary_search(x.begin(), x.end(), v); };
  std::vector<Arc> arcs;
  for (Vertex v : x) {
    if (v == t.root()) continue;
    Vertex p = *t.parent(v);
    while (!in_x(p)) p = *t.parent(p);
    arcs.push_back({p, v});
  }
  return OutTree(t.root(), arcs);
}

}  // namespace minlob
