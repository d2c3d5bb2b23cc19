#include "minlob/width.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace minlob {

namespace {

Bag as_set(const Bag& bag) {
  Bag out = bag;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Bag> as_sets(const std::vector<Bag>& bags) {
  std::vector<Bag> out;
  out.reserve(bags.size());
  for (const Bag& b : bags) out.push_back(as_set(b));
  return out;
}

bool contains(const Bag& sorted, Vertex v) { return std::binary_search(sorted.begin(), sorted.end(), v); }

std::size_t max_bag_width(const std::vector<Bag>& bags) {
  std::size_t widest = 0;
  for (const Bag& b : bags) widest = std::max(widest, b.size());
  return widest == 0 ? 0 : widest - 1;
}

WidthReport reject(Violation v) { return {std::nullopt, std::move(v)}; }

std::optional<Violation> out_of_range(const Digraph& d, const std::vector<Bag>& bags) {
  for (std::size_t h = 0; h < bags.size(); ++h) {
    for (Vertex v : bags[h]) {
      if (v >= d.order()) return Violation{"vertex-out-of-range", {v}, {h}};
    }
  }
  return std::nullopt;
}

// nodes_of[v] = indices of the bags holding v, ascending.
std::vector<std::vector<std::size_t>> bag_membership(std::size_t n, const std::vector<Bag>& bags) {
  std::vector<std::vector<std::size_t>> nodes_of(n);
  for (std::size_t h = 0; h < bags.size(); ++h) {
    for (Vertex v : bags[h]) nodes_of[v].push_back(h);
  }
  return nodes_of;
}

// An arc (a, b) with a outside S and b in S such that a is reachable from
// S by a walk avoiding Z whose intermediate vertices stay outside S.
std::optional<Arc> find_return_arc(const Digraph& d, const std::vector<bool>& in_s,
                                   const std::vector<bool>& in_z) {
  std::vector<bool> seen(d.order(), false);
  std::vector<Vertex> todo;
  for (Vertex v = 0; v < d.order(); ++v) {
    if (!in_s[v]) continue;
    for (Vertex w : d.out_neighbors(v)) {
      if (!in_s[w] && !in_z[w] && !seen[w]) {
        seen[w] = true;
        todo.push_back(w);
      }
    }
  }
  std::sort(todo.begin(), todo.end());
  std::reverse(todo.begin(), todo.end());
  while (!todo.empty()) {
    Vertex v = todo.back();
    todo.pop_back();
    for (Vertex w : d.out_neighbors(v)) {
      if (in_s[w]) return Arc{v, w};
      if (!in_z[w] && !seen[w]) {
        seen[w] = true;
        todo.push_back(w);
      }
    }
  }
  return std::nullopt;
}

std::vector<bool> membership(std::size_t n, std::span<const Vertex> set) {
  std::vector<bool> in(n, false);
  for (Vertex v : set) in.at(v) = true;
  return in;
}

}  // namespace

bool is_z_normal(const Digraph& d, std::span<const Vertex> s, std::span<const Vertex> z) {
  for (Vertex v : s) {
    if (v >= d.order()) throw InputError("is_z_normal: vertex " + std::to_string(v) + " out of range");
  }
  for (Vertex v : z) {
    if (v >= d.order()) throw InputError("is_z_normal: vertex " + std::to_string(v) + " out of range");
  }
  std::vector<bool> in_s = membership(d.order(), s);
  std::vector<bool> in_z = membership(d.order(), z);
  for (Vertex v : z) {
    if (in_s[v]) throw InputError("is_z_normal: S and Z share vertex " + std::to_string(v));
  }
  return !find_return_arc(d, in_s, in_z).has_value();
}

WidthReport validate_dagd(const Digraph& d, const DagDecomposition& dec) {
  const std::size_t m = dec.index.order();
  if (dec.bags.size() != m) {
    throw InputError("DAG decomposition has " + std::to_string(dec.bags.size()) + " bags for " +
                     std::to_string(m) + " index vertices");
  }
  std::vector<Bag> bags = as_sets(dec.bags);
  if (auto v = out_of_range(d, bags)) return reject(*v);
  if (!is_acyclic(dec.index)) return reject({"index-cyclic", {}, {}});

  auto nodes_of = bag_membership(d.order(), bags);
  for (Vertex v = 0; v < d.order(); ++v) {
    if (nodes_of[v].empty()) return reject({"(a)", {v}, {}});
  }

  std::vector<std::vector<bool>> reach(m);
  for (std::size_t h = 0; h < m; ++h) {
    Vertex start = h;
    reach[h] = reachable_from(dec.index, std::span<const Vertex>(&start, 1));
  }

  for (const Arc& a : d.arcs()) {
    bool ok = false;
    for (std::size_t h1 : nodes_of[a.tail]) {
      for (std::size_t h2 : nodes_of[a.head]) ok = ok || reach[h1][h2];
    }
    if (!ok) return reject({"(b)", {a.tail, a.head}, {}});
  }

  for (Vertex v = 0; v < d.order(); ++v) {
    const auto& holders = nodes_of[v];
    for (std::size_t h : holders) {
      for (std::size_t h2 : holders) {
        if (h == h2 || !reach[h][h2]) continue;
        for (std::size_t mid = 0; mid < m; ++mid) {
          if (reach[h][mid] && reach[mid][h2] && !contains(bags[mid], v)) {
            return reject({"(c)", {v}, {h, mid, h2}});
          }
        }
      }
    }
  }
  return {max_bag_width(bags), std::nullopt};
}

WidthReport validate_dpd(const Digraph& d, const PathDecomposition& dec) {
  std::vector<Bag> bags = as_sets(dec.bags);
  if (auto v = out_of_range(d, bags)) return reject(*v);
  auto nodes_of = bag_membership(d.order(), bags);
  for (Vertex v = 0; v < d.order(); ++v) {
    if (nodes_of[v].empty()) return reject({"(a)", {v}, {}});
  }
  // On a path, (b) reads: the first bag of the tail is not after the last
  // bag of the head.
  for (const Arc& a : d.arcs()) {
    if (nodes_of[a.tail].front() > nodes_of[a.head].back()) return reject({"(b)", {a.tail, a.head}, {}});
  }
  for (Vertex v = 0; v < d.order(); ++v) {
    const auto& holders = nodes_of[v];
    for (std::size_t i = 1; i < holders.size(); ++i) {
      if (holders[i] != holders[i - 1] + 1) return reject({"interval", {v}, {holders[i - 1] + 1}});
    }
  }
  return {max_bag_width(bags), std::nullopt};
}

WidthReport validate_arboreal(const Digraph& d, const ArborealDecomposition& dec) {
  const std::size_t m = dec.node_bags.size();
  auto tree_nodes = dec.tree.vertices();
  if (tree_nodes.size() != m) {
    return reject({"index-nodes", {}, {tree_nodes.back() >= m ? tree_nodes.back() : m}});
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (tree_nodes[i] != i) return reject({"index-nodes", {}, {tree_nodes[i]}});
  }
  std::vector<Bag> bags = as_sets(dec.node_bags);
  if (auto v = out_of_range(d, bags)) return reject(*v);
  std::map<Arc, Bag> labels;
  for (const auto& [arc, label] : dec.arc_labels) {
    if (arc.tail >= m || arc.head >= m || dec.tree.parent(arc.head) != arc.tail) {
      return reject({"label-not-arc", {}, {arc.tail, arc.head}});
    }
    Bag set = as_set(label);
    for (Vertex v : set) {
      if (v >= d.order()) return reject({"vertex-out-of-range", {v}, {arc.tail, arc.head}});
    }
    labels[arc] = std::move(set);
  }

  // (1) partition into nonempty sets
  for (std::size_t r = 0; r < m; ++r) {
    if (bags[r].empty()) return reject({"(1)-empty", {}, {r}});
  }
  auto nodes_of = bag_membership(d.order(), bags);
  for (Vertex v = 0; v < d.order(); ++v) {
    if (nodes_of[v].empty()) return reject({"(1)-uncovered", {v}, {}});
    if (nodes_of[v].size() > 1) return reject({"(1)-overlap", {v}, {nodes_of[v][0], nodes_of[v][1]}});
  }

  // (2) for e = (r', r''), the vertices below r'' are X_e-normal
  for (const Arc& e : dec.tree.arcs()) {
    std::vector<bool> in_s(d.order(), false);
    std::vector<Vertex> todo{e.head};
    while (!todo.empty()) {
      std::size_t r = todo.back();
      todo.pop_back();
      for (Vertex v : bags[r]) in_s[v] = true;
      for (Vertex c : dec.tree.children(r)) todo.push_back(c);
    }
    std::vector<bool> in_z(d.order(), false);
    if (auto it = labels.find(e); it != labels.end()) {
      for (Vertex v : it->second) {
        if (in_s[v]) return reject({"(2)-overlap", {v}, {e.tail, e.head}});
        in_z[v] = true;
      }
    }
    if (auto back = find_return_arc(d, in_s, in_z)) {
      return reject({"(2)", {back->tail, back->head}, {e.tail, e.head}});
    }
  }

  std::size_t widest = 0;
  for (std::size_t r = 0; r < m; ++r) {
    Bag all = bags[r];
    for (const auto& [arc, label] : labels) {
      if (arc.tail == r || arc.head == r) all.insert(all.end(), label.begin(), label.end());
    }
    widest = std::max(widest, as_set(all).size());
  }
  return {widest - 1, std::nullopt};
}

DagDecomposition as_dagd(const PathDecomposition& dec) {
  std::vector<Arc> path;
  for (std::size_t i = 0; i + 1 < dec.bags.size(); ++i) path.push_back({i, i + 1});
  return {Digraph(dec.bags.size(), path), dec.bags};
}

PathDecomposition drop_redundant_bags(const PathDecomposition& dec) {
  PathDecomposition out;
  for (const Bag& raw : dec.bags) {
    Bag bag = as_set(raw);
    if (bag.empty()) continue;
    if (!out.bags.empty() &&
        std::includes(out.bags.back().begin(), out.bags.back().end(), bag.begin(), bag.end())) {
      continue;
    }
    out.bags.push_back(std::move(bag));
  }
  return out;
}

ArborealDecomposition dpd_to_arboreal(const Digraph& d, const PathDecomposition& dec) {
  WidthReport check = validate_dpd(d, dec);
  if (!check.accepted()) {
    throw InputError("dpd_to_arboreal: input is not a DPD: " + check.violation->describe());
  }
  PathDecomposition kept = drop_redundant_bags(dec);
  const auto& y = kept.bags;
  std::vector<Arc> path;
  std::vector<Bag> node_bags;
  std::map<Arc, Bag> labels;
  for (std::size_t i = 0; i < y.size(); ++i) {
    Bag w;
    if (i == 0) {
      w = y[0];
    } else {
      std::set_difference(y[i].begin(), y[i].end(), y[i - 1].begin(), y[i - 1].end(), std::back_inserter(w));
      Bag x;
      std::set_intersection(y[i - 1].begin(), y[i - 1].end(), y[i].begin(), y[i].end(), std::back_inserter(x));
      path.push_back({i - 1, i});
      labels[{i - 1, i}] = std::move(x);
    }
    node_bags.push_back(std::move(w));
  }
  return {OutTree(0, path), std::move(node_bags), std::move(labels)};
}

DpwResult dpw_exact(const Digraph& d, std::size_t vertex_cap) {
  const std::size_t n = d.order();
  if (n == 0) throw InputError("dpw_exact: empty digraph");
  if (n > vertex_cap) {
    throw InputError("dpw_exact: " + std::to_string(n) + " vertices exceed the cap of " +
                     std::to_string(vertex_cap));
  }
  if (n > 26) throw InputError("dpw_exact: at most 26 vertices are supported");

  using Mask = std::uint32_t;
  const Mask full = (Mask{1} << n) - 1;
  std::vector<Mask> in_mask(n, 0);
  for (const Arc& a : d.arcs()) in_mask[a.head] |= Mask{1} << a.tail;

  // Active vertices after introducing `set`: introduced, but with an
  // in-neighbour not yet introduced.
  auto active = [&](Mask set) {
    Mask act = 0;
    for (Mask s = set; s; s &= s - 1) {
      auto v = static_cast<std::size_t>(std::countr_zero(s));
      if ((in_mask[v] & ~set) != 0) act |= Mask{1} << v;
    }
    return act;
  };

  // best[set] = least achievable maximum bag size for the remaining sweep.
  std::vector<std::uint8_t> best(std::size_t{1} << n, 0);
  for (Mask set = full; set-- > 0;) {
    auto bag = static_cast<std::uint8_t>(std::popcount(active(set)) + 1);
    std::uint8_t value = UINT8_MAX;
    for (Mask rest = full & ~set; rest; rest &= rest - 1) {
      Mask next = set | (rest & (~rest + 1));
      value = std::min(value, std::max(bag, best[next]));
    }
    best[set] = value;
  }

  DpwResult result;
  result.width = best[0] - 1u;
  Mask set = 0;
  while (set != full) {
    Mask act = active(set);
    auto bag = static_cast<std::uint8_t>(std::popcount(act) + 1);
    for (std::size_t v = 0; v < n; ++v) {
      Mask b = Mask{1} << v;
      if ((set & b) || std::max(bag, best[set | b]) != best[set]) continue;
      Bag out;
      for (Mask s = act | b; s; s &= s - 1) out.push_back(static_cast<Vertex>(std::countr_zero(s)));
      result.witness.bags.push_back(std::move(out));
      set |= b;
      break;
    }
  }
  return result;
}

}  // namespace minlob
