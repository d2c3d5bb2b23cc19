#include "minlob/linkage.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_set>

namespace minlob {

namespace {

using Mask = std::uint64_t;

constexpr Mask bit(Vertex v) { return Mask{1} << v; }

struct StateKey {
  Mask used;
  std::uint32_t demand;
  std::uint32_t at;
  friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const {
    std::uint64_t h = k.used * 0x9E3779B97F4A7C15ull;
    h ^= (static_cast<std::uint64_t>(k.demand) << 32 | k.at) + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

class CoverLinkageSearch {
 public:
  CoverLinkageSearch(const Digraph& d, const LinkageQuery& q) : d_(d), demands_(q.demands()) {
    const std::size_t n = d.order();
    all_ = n == 64 ? ~Mask{0} : bit(n) - 1;
    Mask endpoints = 0;
    for (Vertex v : q.endpoints()) endpoints |= bit(v);
    interior_ = all_ & ~endpoints;
    out_.resize(n);
    for (const Arc& a : d.arcs()) out_[a.tail] |= bit(a.head);
    paths_.resize(demands_.size());
  }

  std::optional<LinkageSolution> run() {
    if (!start_demand(0, 0)) return std::nullopt;
    return LinkageSolution{paths_};
  }

 private:
  bool start_demand(std::size_t i, Mask used) {
    if (i == demands_.size()) return used == interior_;
    paths_[i].assign(1, demands_[i].tail);
    return extend(i, demands_[i].tail, used);
  }

  bool extend(std::size_t i, Vertex at, Mask used) {
    StateKey key{used, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(at)};
    if (dead_.contains(key)) return false;
    if (!promising(i, at, used)) {
      dead_.insert(key);
      return false;
    }
    const Vertex target = demands_[i].head;
    const Mask free = interior_ & ~used;
    for (Vertex w : d_.out_neighbors(at)) {
      if (w == target) {
        paths_[i].push_back(w);
        if (start_demand(i + 1, used)) return true;
        paths_[i].pop_back();
      } else if (free & bit(w)) {
        paths_[i].push_back(w);
        if (extend(i, w, used | bit(w))) return true;
        paths_[i].pop_back();
      }
    }
    dead_.insert(key);
    return false;
  }

  // Vertices of `free` reachable from `seeds` through free vertices.
  Mask closure(Mask seeds, Mask free) const {
    Mask reached = 0;
    Mask frontier = seeds;
    while (frontier) {
      Mask next = 0;
      for (Mask f = frontier; f; f &= f - 1) next |= out_[static_cast<Vertex>(std::countr_zero(f))];
      next &= free & ~reached;
      reached |= next;
      frontier = next;
    }
    return reached;
  }

  // The current path must still be able to reach its target, and every
  // uncovered interior vertex must be reachable from the current tail or
  // from the source of a later demand.
  bool promising(std::size_t i, Vertex at, Mask used) const {
    const Mask free = interior_ & ~used;
    Mask from_here = closure(bit(at), free);
    Mask tails = bit(at) | from_here;
    bool target_reachable = false;
    for (Mask f = tails; f; f &= f - 1) {
      if (out_[static_cast<Vertex>(std::countr_zero(f))] & bit(demands_[i].head)) {
        target_reachable = true;
        break;
      }
    }
    if (!target_reachable) return false;
    Mask later = 0;
    for (std::size_t j = i + 1; j < demands_.size(); ++j) later |= bit(demands_[j].tail);
    Mask covered = from_here | closure(later, free);
    return (free & ~covered) == 0;
  }

  const Digraph& d_;
  std::span<const Arc> demands_;
  Mask all_ = 0;
  Mask interior_ = 0;
  std::vector<Mask> out_;
  std::vector<std::vector<Vertex>> paths_;
  std::unordered_set<StateKey, StateKeyHash> dead_;
};

}  // namespace

LinkageQuery::LinkageQuery(std::vector<Arc> demands) : demands_(std::move(demands)) {
  for (const Arc& a : demands_) {
    if (a.tail == a.head) {
      throw InputError("linkage demand " + to_string(a) + " has equal endpoints");
    }
    endpoints_.push_back(a.tail);
    endpoints_.push_back(a.head);
  }
  std::sort(endpoints_.begin(), endpoints_.end());
  endpoints_.erase(std::unique(endpoints_.begin(), endpoints_.end()), endpoints_.end());
}

std::optional<LinkageSolution> solve_cover_linkage(const Digraph& d, const LinkageQuery& q) {
  if (d.order() > 64) throw InputError("solve_cover_linkage supports at most 64 vertices");
  for (Vertex v : q.endpoints()) {
    if (v >= d.order()) throw InputError("linkage endpoint " + std::to_string(v) + " is not a vertex");
  }
  return CoverLinkageSearch(d, q).run();
}

bool is_cover_linkage(const Digraph& d, const LinkageQuery& q, const LinkageSolution& s) {
  auto demands = q.demands();
  auto endpoints = q.endpoints();
  if (s.paths.size() != demands.size()) return false;
  std::vector<bool> covered(d.order(), false);
  std::vector<bool> interior_used(d.order(), false);
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const auto& path = s.paths[i];
    if (path.size() < 2 || path.front() != demands[i].tail || path.back() != demands[i].head) return false;
    for (std::size_t j = 0; j < path.size(); ++j) {
      if (path[j] >= d.order()) return false;
      if (j + 1 < path.size() && !d.has_arc(path[j], path[j + 1])) return false;
      covered[path[j]] = true;
      if (j == 0 || j + 1 == path.size()) continue;
      if (std::binary_search(endpoints.begin(), endpoints.end(), path[j])) return false;
      if (interior_used[path[j]]) return false;
      interior_used[path[j]] = true;
    }
  }
  return std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
}

}  // namespace minlob
