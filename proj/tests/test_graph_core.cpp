#include <doctest.h>

#include "augtree/constructor.hpp"
#include "augtree/errors.hpp"
#include "augtree/graph.hpp"
#include "augtree/lists.hpp"
#include "oracles.hpp"

using namespace augtree;

TEST_CASE("validate_augmented_tree accepts built trees") {
    CHECK(validate_augmented_tree(build_base(2, 1)).ok());
    CHECK(validate_augmented_tree(build_base(3, 2)).ok());
    CHECK(validate_augmented_tree(reduce(build_base(3, 2))).ok());
}

TEST_CASE("planted defect: aug edge rerouted to a non-ancestor") {
    AugmentedTree t = build_base(2, 1);
    // leaf 7 is under vertex 1; vertex 2 is not its ancestor
    t.aug_edges[0] = {t.aug_edges[0].leaf, 2};
    const auto report = validate_augmented_tree(t);
    CHECK_FALSE(report.ok());
    CHECK(report.mentions("not an ancestor"));
}

TEST_CASE("planted defect: a leaf loses one aug edge") {
    AugmentedTree t = build_base(2, 2);
    t.aug_edges.erase(t.aug_edges.begin());
    const auto report = validate_augmented_tree(t);
    CHECK(report.mentions("has 1 ≠ r=2 aug edges"));
}

TEST_CASE("planted defect: aug edge to the parent") {
    AugmentedTree t = build_base(2, 1);
    const Vertex leaf = t.aug_edges[0].leaf;
    t.aug_edges[0].ancestor = t.parent[leaf];
    CHECK(validate_augmented_tree(t).mentions("distance < 2"));
}

TEST_CASE("planted defect: parallel aug edges") {
    AugmentedTree t = build_base(2, 2);
    t.aug_edges[1] = t.aug_edges[0];
    CHECK(validate_augmented_tree(t).mentions("parallel aug edge"));
}

TEST_CASE("planted defect: leaves on different levels") {
    // root with children 1,2; only 1 has children
    AugmentedTree t = assemble_tree({2, 0, 4}, false, {0, 0, 0, 1, 1}, {0, 1, 2, 1, 2}, {});
    CHECK(validate_augmented_tree(t).mentions("other leaves at level"));
}

TEST_CASE("planted defect: wrong branching") {
    AugmentedTree t = assemble_tree({3, 0, 4}, false, {0, 0, 0}, {0, 1, 2}, {});
    CHECK(validate_augmented_tree(t).mentions("expected 3"));
}

TEST_CASE("planted defect: colors disagree with child order") {
    AugmentedTree t = build_base(2, 1);
    std::swap(t.edge_color[1], t.edge_color[2]);
    CHECK_FALSE(validate_augmented_tree(t).ok());
}

TEST_CASE("planted defect: reduced tree with an improper coloring") {
    AugmentedTree t = reduce(build_base(3, 1));
    // vertex 4 is the first child of vertex 1 (color 1); make it repeat color 1
    REQUIRE(t.parent[4] == 1);
    t.edge_color[4] = t.edge_color[1];
    const auto report = validate_augmented_tree(t);
    CHECK(report.mentions("not proper"));
}

TEST_CASE("planted defect: reduced tree with a full vertex") {
    AugmentedTree t = assemble_tree({2, 0, 4}, true, {0, 0, 0, 1, 1, 2}, {0, 1, 2, 1, 2, 1}, {});
    CHECK(validate_augmented_tree(t).mentions("expected 1"));
}

TEST_CASE("assemble_tree rejects a non breadth-first parent array") {
    CHECK_THROWS_AS(assemble_tree({2, 0, 4}, false, {0, 0, 2}, {0, 1, 1}, {}), PreconditionError);
}

TEST_CASE("bipartition of small graphs") {
    Graph edge;
    edge.vertex_count = 2;
    edge.add_edge(0, 1, EdgeTag::gadget);
    const auto r = bipartition(edge);
    const auto* b = std::get_if<Bipartition>(&r);
    REQUIRE(b);
    CHECK(b->classes[0] == std::vector<Vertex>{0});
    CHECK(b->classes[1] == std::vector<Vertex>{1});

    Graph c5;
    c5.vertex_count = 5;
    for (int i = 0; i < 5; ++i) c5.add_edge(i, (i + 1) % 5, EdgeTag::gadget);
    const auto r5 = bipartition(c5);
    const auto* odd = std::get_if<NotBipartite>(&r5);
    REQUIRE(odd);
    CHECK(odd->odd_cycle.size() == 5);
    for (std::size_t i = 0; i < odd->odd_cycle.size(); ++i) {
        const Edge e = make_edge(odd->odd_cycle[i], odd->odd_cycle[(i + 1) % odd->odd_cycle.size()]);
        CHECK(std::find(c5.edges.begin(), c5.edges.end(), e) != c5.edges.end());
    }
}

TEST_CASE("flatten(build_base(2,1)) is bipartite by level parity") {
    const AugmentedTree t = build_base(2, 1);
    const Graph g = flatten(t);
    CHECK(oracle::bipartite(g));
    const auto r = bipartition(g);
    const auto* b = std::get_if<Bipartition>(&r);
    REQUIRE(b);
    for (Vertex v = 0; v < t.vertex_count(); ++v) CHECK(b->side[v] == t.level[v] % 2);
}

TEST_CASE("bipartition agrees with brute force on random small graphs") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const Graph g = oracle::random_graph(1 + trial % 9, 0.3, rng);
        const auto r = bipartition(g);
        CHECK(std::holds_alternative<Bipartition>(r) == oracle::bipartite(g));
        if (const auto* b = std::get_if<Bipartition>(&r)) {
            for (const Edge& e : g.edges) CHECK(b->side[e.u] != b->side[e.v]);
        }
    }
}

TEST_CASE("flatten counts") {
    const Graph g21 = flatten(build_base(2, 1));
    CHECK(g21.vertex_count == 15);
    CHECK(g21.edge_count() == 22);
    CHECK(std::count(g21.tags.begin(), g21.tags.end(), EdgeTag::tree) == 14);
    CHECK(std::count(g21.tags.begin(), g21.tags.end(), EdgeTag::aug) == 8);
    CHECK(validate_graph(g21).ok());

    const Graph g31 = flatten(build_base(3, 1));
    CHECK(g31.vertex_count == 40);
    CHECK(g31.edge_count() == 66);

    // height-1 star without aug edges
    const AugmentedTree star = assemble_tree({3, 0, 4}, false, {0, 0, 0, 0}, {0, 1, 2, 3}, {});
    CHECK(validate_augmented_tree(star).ok());
    const Graph s = flatten(star);
    CHECK(s.edges == std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}});
}

TEST_CASE("an aug edge spanning even distance breaks bipartiteness") {
    AugmentedTree t = build_base(2, 2);
    // move one mate from distance 3 to distance 2
    auto& e = t.aug_edges[1];
    e.ancestor = t.ancestor_at_level(e.leaf, t.level[e.leaf] - 2);
    CHECK(validate_augmented_tree(t).ok());
    CHECK(std::holds_alternative<NotBipartite>(bipartition(flatten(t))));
}

TEST_CASE("validate_graph reports loops and parallel edges") {
    Graph g;
    g.vertex_count = 3;
    g.edges = {{0, 0}, {0, 1}, {0, 1}, {1, 5}};
    g.tags.assign(4, EdgeTag::gadget);
    const auto report = validate_graph(g);
    CHECK(report.mentions("loop"));
    CHECK(report.mentions("parallel edge"));
    CHECK(report.mentions("out of range"));
}

TEST_CASE("hypergraph validation and simple graph view") {
    Hypergraph h;
    h.vertex_count = 3;
    h.uniformity = 2;
    h.members = {0, 1, 1, 0, 1, 2};
    h.origin_leaf = {5, 6, 7};
    CHECK(validate_hypergraph(h).ok());
    const Graph g = as_simple_graph(h);
    CHECK(g.edges == std::vector<Edge>{{0, 1}, {1, 2}});
    h.members[1] = 0;
    CHECK(validate_hypergraph(h).mentions("repeats a member"));
}

TEST_CASE("list assignment invariants") {
    ListAssignment l({{3, 1}, {2}, {5, 4, 1}});
    CHECK(validate_lists(l).ok());
    CHECK(l.universe() == std::vector<Color>{1, 2, 3, 4, 5});
    CHECK(l.contains(0, 3));
    CHECK_FALSE(l.contains(1, 3));
    const Color fresh = l.allocate();
    CHECK(fresh == 6);
    CHECK(l.allocate() == 7);
    ListAssignment empty({{1}, {}});
    CHECK(validate_lists(empty).mentions("empty list"));
}

TEST_CASE("complete tree index arithmetic") {
    const CompleteTreeIndex idx(3, 3);
    CHECK(idx.vertex_count() == 40);
    CHECK(idx.first_at_level(2) == 4);
    CHECK(idx.count_at_level(3) == 27);
    CHECK(idx.id(3, 0) == 13);
}
