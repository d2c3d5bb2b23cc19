#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "minlob/linkage.hpp"

using namespace minlob;

namespace {

// Every s -> t path whose internal vertices avoid `forbidden`.
void paths_between(const Digraph& d, Vertex s, Vertex t, const std::vector<bool>& forbidden,
                   std::vector<std::vector<Vertex>>& out) {
  std::vector<Vertex> path{s};
  std::vector<bool> on(d.order(), false);
  on[s] = true;
  auto rec = [&](auto&& self, Vertex v) -> void {
    for (Vertex w : d.out_neighbors(v)) {
      if (w == t) {
        path.push_back(w);
        out.push_back(path);
        path.pop_back();
      } else if (!on[w] && !forbidden[w]) {
        on[w] = true;
        path.push_back(w);
        self(self, w);
        path.pop_back();
        on[w] = false;
      }
    }
  };
  rec(rec, s);
}

// Tries every combination of candidate paths.
bool oracle_has_linkage(const Digraph& d, const std::vector<Arc>& demands) {
  std::vector<bool> endpoint(d.order(), false);
  for (const Arc& a : demands) endpoint[a.tail] = endpoint[a.head] = true;
  std::vector<std::vector<std::vector<Vertex>>> options(demands.size());
  for (std::size_t i = 0; i < demands.size(); ++i)
    paths_between(d, demands[i].tail, demands[i].head, endpoint, options[i]);
  std::vector<int> used(d.order(), 0);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == demands.size()) {
      for (Vertex v = 0; v < d.order(); ++v)
        if (!endpoint[v] && used[v] != 1) return false;
      return true;
    }
    for (const auto& p : options[i]) {
      for (std::size_t j = 1; j + 1 < p.size(); ++j) ++used[p[j]];
      bool ok = self(self, i + 1);
      for (std::size_t j = 1; j + 1 < p.size(); ++j) --used[p[j]];
      if (ok) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace

TEST_CASE("three-cycle with two demands") {
  Digraph d(3, {{0, 1}, {1, 2}, {2, 0}});
  LinkageQuery q({{0, 1}, {1, 0}});
  auto s = solve_cover_linkage(d, q);
  REQUIRE(s.has_value());
  CHECK(s->paths == std::vector<std::vector<Vertex>>{{0, 1}, {1, 2, 0}});
  CHECK(is_cover_linkage(d, q, *s));
}

TEST_CASE("uncovered vertex means no linkage") {
  Digraph d(3, {{0, 1}, {0, 2}});
  CHECK_FALSE(solve_cover_linkage(d, LinkageQuery({{0, 1}})).has_value());
  CHECK(solve_cover_linkage(d, LinkageQuery({{0, 1}, {0, 2}})).has_value());
}

TEST_CASE("internal vertices may not be endpoints") {
  // 0 -> 1 -> 2 exists, but 1 is an endpoint of the second demand.
  Digraph d(4, {{0, 1}, {1, 2}, {1, 3}});
  CHECK_FALSE(solve_cover_linkage(d, LinkageQuery({{0, 2}, {1, 3}})).has_value());
}

TEST_CASE("query validation") {
  CHECK_THROWS_AS(LinkageQuery({{1, 1}}), InputError);
  Digraph d(2, {{0, 1}});
  CHECK_THROWS_AS(solve_cover_linkage(d, LinkageQuery({{0, 5}})), InputError);
}

TEST_CASE("checker rejects tampered solutions") {
  Digraph d(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  LinkageQuery q({{0, 3}});
  LinkageSolution good{{{0, 1, 2, 3}}};
  CHECK(is_cover_linkage(d, q, good));
  CHECK_FALSE(is_cover_linkage(d, q, LinkageSolution{{{0, 3}}}));
  CHECK_FALSE(is_cover_linkage(d, q, LinkageSolution{{{0, 2, 3}}}));
  CHECK_FALSE(is_cover_linkage(d, q, LinkageSolution{}));
}

TEST_CASE("solver agrees with path-family enumeration") {
  std::mt19937_64 rng(2024);
  int positives = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const std::size_t n = 2 + trial % 5;
    std::bernoulli_distribution coin(0.25 + 0.1 * (trial % 4));
    std::vector<Arc> arcs;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v)
        if (u != v && coin(rng)) arcs.push_back({u, v});
    Digraph d(n, arcs);
    std::uniform_int_distribution<Vertex> pick(0, n - 1);
    std::vector<Arc> demands;
    const int count = 1 + trial % 3;
    while (static_cast<int>(demands.size()) < count) {
      Vertex s = pick(rng), t = pick(rng);
      if (s != t) demands.push_back({s, t});
    }
    LinkageQuery q(demands);
    auto got = solve_cover_linkage(d, q);
    CAPTURE(trial);
    CHECK(got.has_value() == oracle_has_linkage(d, demands));
    if (got) {
      ++positives;
      CHECK(is_cover_linkage(d, q, *got));
    }
  }
  CHECK(positives > 20);
}
