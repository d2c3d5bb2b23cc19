#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "minlob/solvers.hpp"
#include "oracles.hpp"

using namespace minlob;

namespace {

Digraph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v && coin(rng)) arcs.push_back({u, v});
  return Digraph(n, arcs);
}

}  // namespace

TEST_CASE("brute force on small named digraphs") {
  Digraph path(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(min_leaf_brute_force(path).min_leaves == std::optional<std::size_t>(1));
  Digraph star(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(min_leaf_brute_force(star).min_leaves == std::optional<std::size_t>(3));
  Digraph split(3, {{0, 2}, {1, 2}});
  auto none = min_leaf_brute_force(split);
  CHECK_FALSE(none.min_leaves.has_value());
  CHECK_FALSE(none.witness.has_value());
  CHECK(min_leaf_brute_force(Digraph(1, {})).min_leaves == std::optional<std::size_t>(1));
  CHECK_THROWS_AS(min_leaf_brute_force(Digraph()), InputError);
}

TEST_CASE("brute force matches parent-function enumeration") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + trial % 7;
    Digraph d = random_graph(rng, n, 0.15 + 0.1 * (trial % 5));
    auto r = min_leaf_brute_force(d);
    CAPTURE(trial);
    CHECK(r.min_leaves == oracle::min_leaves(d));
    if (r.witness) CHECK(validate_out_branching(d, *r.witness) == *r.min_leaves);
  }
}

TEST_CASE("Cayley counts for out-tree enumeration") {
  for (std::size_t m = 1; m <= 6; ++m) {
    std::vector<Vertex> y;
    for (std::size_t i = 0; i < m; ++i) y.push_back(3 * i + 1);
    auto trees = enumerate_out_trees(y, m);
    CHECK(trees.size() == static_cast<std::size_t>(std::pow(m, m - 1) + 0.5));
    std::set<std::vector<Arc>> distinct;
    for (const auto& t : trees) {
      CHECK(t.order() == m);
      distinct.insert(t.arcs());
    }
    // Distinct rooted trees: arcs plus root (a single vertex has no arcs).
    CHECK(distinct.size() == (m == 1 ? 1 : trees.size()));
  }
}

TEST_CASE("leaf cap filters exactly") {
  std::vector<Vertex> y{0, 1, 2, 3, 4};
  auto all = enumerate_out_trees(y, 5);
  for (std::size_t cap = 1; cap <= 4; ++cap) {
    std::size_t expected = std::count_if(all.begin(), all.end(), [&](const OutTree& t) { return t.leaf_count() <= cap; });
    CHECK(enumerate_out_trees(y, cap).size() == expected);
  }
  // Paths on 5 labelled vertices: 5! of them with one leaf.
  CHECK(enumerate_out_trees(y, 1).size() == 120);
}

TEST_CASE("for_each_out_tree stops early") {
  std::vector<Vertex> y{0, 1, 2, 3};
  int seen = 0;
  for_each_out_tree(y, 4, [&](const OutTree&) { return ++seen < 5; });
  CHECK(seen == 5);
}

TEST_CASE("contraction decision agrees with brute force") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 240; ++trial) {
    const std::size_t n = 2 + trial % 6;
    Digraph d = random_graph(rng, n, 0.2 + 0.1 * (trial % 4));
    auto best = min_leaf_brute_force(d).min_leaves;
    for (std::size_t k = 1; k <= 3; ++k) {
      for (bool prune : {true, false}) {
        auto dec = check_k_leaves_contraction(d, k, {prune});
        CAPTURE(trial);
        CAPTURE(k);
        CHECK(dec.answer == (best && *best <= k));
        if (dec.answer) {
          REQUIRE(dec.witness.has_value());
          CHECK(validate_out_branching(d, *dec.witness) <= k);
        } else {
          CHECK_FALSE(dec.witness.has_value());
        }
      }
    }
  }
}

TEST_CASE("k = 1 is Hamiltonian path") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + trial % 9;
    Digraph d = random_graph(rng, n, 0.2 + 0.05 * (trial % 6));
    CHECK(check_k_leaves_contraction(d, 1).answer == oracle::hamiltonian_path(d));
  }
}

TEST_CASE("contraction decision input checks") {
  Digraph d(3, {{0, 1}, {1, 2}});
  CHECK_THROWS_AS(check_k_leaves_contraction(d, 0), InputError);
  CHECK_FALSE(check_k_leaves_contraction(Digraph(3, {{0, 2}, {1, 2}}), 5).answer);
  auto big = check_k_leaves_contraction(d, 7);
  CHECK(big.answer);
  CHECK(big.witness->leaf_count() == 1);
}
