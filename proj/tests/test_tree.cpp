#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "steiner/tree.hpp"

using namespace steiner;

TEST_CASE("tree construction rejects non-trees") {
  CHECK_THROWS_AS(Tree(3, {{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Tree(3, {{0, 1}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Tree(3, {{0, 0}, {1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Tree(4, {{0, 1}, {1, 2}, {2, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Tree(3, {{0, 1}, {1, 3}}), std::invalid_argument);
  CHECK_NOTHROW(Tree(1, {}));
}

TEST_CASE("edges are normalized and sorted") {
  const Tree t(4, {{3, 1}, {1, 0}, {2, 1}});
  const std::vector<Edge> expected{{0, 1}, {1, 2}, {1, 3}};
  CHECK(t.edges() == expected);
  CHECK(t.degree(1) == 3);
  CHECK(t.leaves() == std::vector<Vertex>{0, 2, 3});
  CHECK(t.has_edge(3, 1));
  CHECK_FALSE(t.has_edge(0, 2));
}

TEST_CASE("unlabeled tree counts") {
  const int counts[] = {0, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106};
  for (int n = 1; n <= 10; ++n) CHECK(enumerate_trees(n, TreeEnumeration::unlabeled).size() == counts[n]);
  CHECK_THROWS_AS(enumerate_trees(11, TreeEnumeration::unlabeled), SizeLimitError);
}

TEST_CASE("labeled trees follow Cayley's formula and are distinct") {
  for (int n = 2; n <= 7; ++n) {
    long expected = 1;
    for (int i = 0; i < n - 2; ++i) expected *= n;
    const auto all = enumerate_trees(n, TreeEnumeration::labeled);
    CHECK(static_cast<long>(all.size()) == expected);
    std::set<std::vector<Edge>> distinct;
    for (const auto& t : all) distinct.insert(t.edges());
    CHECK(distinct.size() == all.size());
  }
  long streamed = 0;
  for_each_labeled_tree(9, [&](const Tree&) { ++streamed; });
  CHECK(streamed == 4782969);
  CHECK_THROWS_AS(enumerate_trees(9, TreeEnumeration::labeled), SizeLimitError);
}

TEST_CASE("canonical codes agree with brute-force isomorphism") {
  for (int n = 2; n <= 6; ++n) {
    const auto labeled = enumerate_trees(n, TreeEnumeration::labeled);
    std::mt19937 rng(n);
    std::uniform_int_distribution<std::size_t> pick(0, labeled.size() - 1);
    for (int trial = 0; trial < 150; ++trial) {
      const Tree& a = labeled[pick(rng)];
      const Tree& b = labeled[pick(rng)];
      CHECK((canonical_code(a) == canonical_code(b)) == oracle::isomorphic(a, b));
    }
  }
}

TEST_CASE("unlabeled representatives cover every labeled class exactly once") {
  for (int n = 2; n <= 7; ++n) {
    std::set<std::string> reps;
    for (const auto& t : enumerate_trees(n, TreeEnumeration::unlabeled)) reps.insert(canonical_code(t).code);
    std::set<std::string> seen;
    for_each_labeled_tree(n, [&](const Tree& t) { seen.insert(canonical_code(t).code); });
    CHECK(seen == reps);
  }
}

TEST_CASE("paths and stars") {
  const Tree p = Tree::path(4);
  CHECK(p.edges() == std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}});
  const Tree s = Tree::star(4);
  CHECK(s.degree(0) == 3);
  CHECK(canonical_code(p) != canonical_code(s));
}

TEST_CASE("Pruefer decoding") {
  // Sequence (3, 3, 3) on 5 vertices is the star centered at 3.
  const Tree t = Tree::from_pruefer(5, {3, 3, 3});
  CHECK(t.degree(3) == 4);
  CHECK(t.edges() == std::vector<Edge>{{0, 3}, {1, 3}, {2, 3}, {3, 4}});
}

TEST_CASE("remove_leaf relabels the remaining vertices in order") {
  const Tree t(4, {{0, 1}, {1, 2}, {1, 3}});
  const Tree r = t.remove_leaf(2);
  CHECK(r.vertex_count() == 3);
  CHECK(r.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK_THROWS_AS(t.remove_leaf(1), std::invalid_argument);
}

TEST_CASE("edge cuts") {
  const Tree t = Tree::path(4);
  const EdgeCut cut = edge_cut(t, {1, 2});
  CHECK(cut.side_a == std::vector<Vertex>{0, 1});
  CHECK(cut.side_b == std::vector<Vertex>{2, 3});
  const EdgeCut flipped = edge_cut(t, {2, 1});
  CHECK(flipped.side_a == std::vector<Vertex>{2, 3});
  CHECK_THROWS_AS(edge_cut(t, {0, 2}), std::invalid_argument);
}

TEST_CASE("graph6 round trip and known strings") {
  CHECK(to_graph6(Tree::path(3)) == "Bg");
  CHECK(from_graph6("Bg") == Tree::path(3));
  CHECK(parse_tree(">>graph6<<Bg") == Tree::path(3));
  for (int n = 1; n <= 8; ++n)
    for (const auto& t : enumerate_trees(n, TreeEnumeration::unlabeled)) CHECK(from_graph6(to_graph6(t)) == t);
  CHECK_THROWS(from_graph6("B"));
}

TEST_CASE("text format round trip") {
  const Tree t(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}});
  CHECK(parse_tree(to_text(t)) == t);
  CHECK(parse_tree("n 3\n0 1\n1 2\n") == Tree::path(3));
  CHECK_THROWS(parse_tree("n 3\n0 1\n"));
}
