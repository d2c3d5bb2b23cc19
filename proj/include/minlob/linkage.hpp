#pragma once

#include <optional>
#include <span>
#include <vector>

#include "minlob/digraph.hpp"

namespace minlob {

/// Ordered demand pairs (s_i, t_i). Endpoints may be shared between
/// demands; the endpoint universe is exactly the set of endpoints.
class LinkageQuery {
 public:
  explicit LinkageQuery(std::vector<Arc> demands);

  std::span<const Arc> demands() const { return demands_; }
  std::span<const Vertex> endpoints() const { return endpoints_; }

 private:
  std::vector<Arc> demands_;
  std::vector<Vertex> endpoints_;  // sorted, unique
};

struct LinkageSolution {
  // paths[i] runs from demands[i].tail to demands[i].head.
  std::vector<std::vector<Vertex>> paths;
};

/// Exact search for a covering linkage in the restricted sense: path i
/// runs s_i -> t_i, no path has an endpoint of any demand as an internal
/// vertex, internal vertex sets are pairwise disjoint, and the paths
/// together cover V(d). Exponential in the worst case; d may have at most
/// 64 vertices.
///
/// Deterministic: demands are routed in order, each extended through
/// out-neighbours in ascending order, and the first solution is returned.
std::optional<LinkageSolution> solve_cover_linkage(const Digraph& d, const LinkageQuery& q);

/// Independent re-check of every LinkageSolution invariant.
bool is_cover_linkage(const Digraph& d, const LinkageQuery& q, const LinkageSolution& s);

}  // namespace minlob
