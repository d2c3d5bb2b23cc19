#include "minlob/digraph.hpp"

#include <algorithm>
#include <sstream>

namespace minlob {

Digraph::Digraph(std::size_t n, std::span<const Arc> arcs)
    : arcs_(arcs.begin(), arcs.end()), out_(n), in_(n) {
  for (const Arc& a : arcs_) {
    if (a.tail >= n || a.head >= n) {
      throw InputError("arc " + to_string(a) + " has an endpoint outside 0.." +
                       std::to_string(n == 0 ? 0 : n - 1));
    }
    if (a.tail == a.head) {
      throw InputError("self-loop at vertex " + std::to_string(a.tail));
    }
  }
  std::sort(arcs_.begin(), arcs_.end());
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
  for (const Arc& a : arcs_) {
    out_[a.tail].push_back(a.head);
    in_[a.head].push_back(a.tail);
  }
  // Sorted arcs give sorted out-lists; in-lists need their own pass.
  for (auto& list : in_) std::sort(list.begin(), list.end());
}

bool Digraph::has_arc(Vertex tail, Vertex head) const {
  if (tail >= order() || head >= order()) return false;
  const auto& list = out_[tail];
  return std::binary_search(list.begin(), list.end(), head);
}

CondensationReport condense(const Digraph& d) {
  // Iterative Tarjan.
  const std::size_t n = d.order();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), comp_of(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<Vertex> stack;
  std::vector<std::vector<Vertex>> raw_components;
  std::size_t next_index = 0;

  struct Frame {
    Vertex v;
    std::size_t next_child;
  };
  for (Vertex start = 0; start < n; ++start) {
    if (index[start] != kUnvisited) continue;
    std::vector<Frame> call{{start, 0}};
    index[start] = low[start] = next_index++;
    stack.push_back(start);
    on_stack[start] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      auto out = d.out_neighbors(f.v);
      if (f.next_child < out.size()) {
        Vertex w = out[f.next_child++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      Vertex v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<Vertex> comp;
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        raw_components.push_back(std::move(comp));
      }
    }
  }

  std::sort(raw_components.begin(), raw_components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  CondensationReport report;
  report.components = std::move(raw_components);
  for (std::size_t c = 0; c < report.components.size(); ++c) {
    for (Vertex v : report.components[c]) comp_of[v] = c;
  }
  std::vector<bool> has_incoming(report.components.size(), false);
  for (const Arc& a : d.arcs()) {
    if (comp_of[a.tail] != comp_of[a.head]) has_incoming[comp_of[a.head]] = true;
  }
  for (std::size_t c = 0; c < report.components.size(); ++c) {
    if (!has_incoming[c]) report.source_components.push_back(c);
  }
  return report;
}

BranchingExistence has_out_branching(const Digraph& d) {
  if (d.empty()) throw InputError("has_out_branching: empty digraph");
  CondensationReport report = condense(d);
  BranchingExistence result;
  if (report.source_components.size() == 1) {
    result.exists = true;
    result.root_component = report.components[report.source_components.front()];
  }
  return result;
}

bool is_acyclic(const Digraph& d) {
  // Kahn's algorithm.
  std::vector<std::size_t> indeg(d.order());
  std::vector<Vertex> ready;
  for (Vertex v = 0; v < d.order(); ++v) {
    indeg[v] = d.in_degree(v);
    if (indeg[v] == 0) ready.push_back(v);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    Vertex v = ready.back();
    ready.pop_back();
    ++removed;
    for (Vertex w : d.out_neighbors(v)) {
      if (--indeg[w] == 0) ready.push_back(w);
    }
  }
  return removed == d.order();
}

std::vector<bool> reachable_from(const Digraph& d, std::span<const Vertex> sources) {
  std::vector<bool> seen(d.order(), false);
  std::vector<Vertex> todo;
  for (Vertex s : sources) {
    if (!seen.at(s)) {
      seen[s] = true;
      todo.push_back(s);
    }
  }
  while (!todo.empty()) {
    Vertex v = todo.back();
    todo.pop_back();
    for (Vertex w : d.out_neighbors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        todo.push_back(w);
      }
    }
  }
  return seen;
}

std::string to_string(const Arc& a) {
  std::ostringstream os;
  os << '(' << a.tail << ',' << a.head << ')';
  return os.str();
}

}  // namespace minlob
