#include <doctest.h>

#include "augtree/errors.hpp"
#include "augtree/list_coloring.hpp"
#include "augtree/verifier.hpp"
#include "oracles.hpp"

using namespace augtree;

namespace {

// Random bipartite graph on sides [0,a) and [a,a+b) with its 2-coloring in [2].
std::pair<Graph, Coloring> random_bipartite(int a, int b, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    Graph g;
    g.vertex_count = a + b;
    for (int u = 0; u < a; ++u) {
        for (int v = a; v < a + b; ++v) {
            if (coin(rng)) g.add_edge(u, v, EdgeTag::gadget);
        }
    }
    Coloring f(a + b, 1);
    for (int v = a; v < a + b; ++v) f[v] = 2;
    return {g, f};
}

std::vector<Color> random_subset(const std::vector<Color>& pool, int size, std::mt19937_64& rng) {
    std::vector<Color> s = pool;
    std::shuffle(s.begin(), s.end(), rng);
    s.resize(size);
    return s;
}

std::size_t shared(std::span<const Color> a, std::span<const Color> b) {
    std::size_t n = 0;
    for (Color c : a) n += std::find(b.begin(), b.end(), c) != b.end();
    return n;
}

}  // namespace

TEST_CASE("smallcup_bound values") {
    CHECK(smallcup_bound(2, 2) == 2);
    CHECK(smallcup_bound(2, 3) == 4);
    CHECK(smallcup_bound(3, 3) == 3);
    CHECK(smallcup_bound(3, 4) == 4);
    CHECK(smallcup_bound(2, 5) == 8);
    CHECK_THROWS_AS(smallcup_bound(1, 3), ParameterError);
}

TEST_CASE("two_common_color colors bipartite graphs whose adjacent lists share two colors") {
    std::mt19937_64 rng(5);
    int done = 0;
    for (int trial = 0; trial < 400; ++trial) {
        auto [g, f] = random_bipartite(3, 4, 0.5, rng);
        std::vector<std::vector<Color>> lists;
        for (Vertex v = 0; v < g.vertex_count; ++v) lists.push_back(random_subset({1, 2, 3, 4, 5}, 3, rng));
        const ListAssignment la(lists);
        bool ok = true;
        for (const Edge& e : g.edges) ok = ok && shared(la.list(e.u), la.list(e.v)) >= 2;
        if (!ok) {
            CHECK_THROWS_AS(two_common_color(g, la), PreconditionError);
            continue;
        }
        ++done;
        const Coloring c = two_common_color(g, la);
        CHECK_FALSE(check_proper(g, c).has_value());
        for (Vertex v = 0; v < g.vertex_count; ++v) CHECK(la.contains(v, c[v]));
    }
    CHECK(done > 20);
}

TEST_CASE("two_common_color rejects odd cycles") {
    Graph tri;
    tri.vertex_count = 3;
    tri.add_edge(0, 1, EdgeTag::gadget);
    tri.add_edge(1, 2, EdgeTag::gadget);
    tri.add_edge(0, 2, EdgeTag::gadget);
    const ListAssignment la(std::vector<std::vector<Color>>(3, {1, 2, 3}));
    CHECK_THROWS_AS(two_common_color(tri, la), PreconditionError);
}

TEST_CASE("smallcup_color succeeds on 1000 random instances with j=2, k=3, |U|=4") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 1000; ++trial) {
        auto [g, f] = random_bipartite(1 + trial % 5, 1 + trial % 4, 0.6, rng);
        // four colors with arbitrary ids; every list is a 3-subset of them
        std::vector<Color> pool;
        std::uniform_int_distribution<int> id(1, 50);
        while (pool.size() < 4) {
            const Color c = id(rng);
            if (std::find(pool.begin(), pool.end(), c) == pool.end()) pool.push_back(c);
        }
        std::vector<std::vector<Color>> lists;
        for (Vertex v = 0; v < g.vertex_count; ++v) lists.push_back(random_subset(pool, 3, rng));
        const ListAssignment la(lists);
        REQUIRE(la.universe().size() <= 4);
        const Coloring c = smallcup_color(g, f, 2, la);
        CHECK_FALSE(check_proper(g, c).has_value());
        for (Vertex v = 0; v < g.vertex_count; ++v) CHECK(la.contains(v, c[v]));
    }
}

TEST_CASE("smallcup_color with three classes") {
    // K_{2,2,2} with 3-lists from 4 colors (bound for j=3, k=3 is 3, so use k=4, |U|=4)
    Graph g;
    g.vertex_count = 6;
    Coloring f{1, 1, 2, 2, 3, 3};
    for (int u = 0; u < 6; ++u) {
        for (int v = u + 1; v < 6; ++v) {
            if (f[u] != f[v]) g.add_edge(u, v, EdgeTag::gadget);
        }
    }
    const ListAssignment la(std::vector<std::vector<Color>>(6, {2, 4, 6, 8}));
    const Coloring c = smallcup_color(g, f, 3, la);
    CHECK_FALSE(check_proper(g, c).has_value());
}

TEST_CASE("smallcup_color rejects unions above the bound") {
    Graph g;
    g.vertex_count = 2;
    g.add_edge(0, 1, EdgeTag::gadget);
    const ListAssignment la({{1, 2, 3}, {3, 4, 5}});
    CHECK_THROWS_AS(smallcup_color(g, {1, 2}, 2, la), PreconditionError);
    const ListAssignment ok({{1, 2, 3}, {2, 3, 4}});
    CHECK_THROWS_AS(smallcup_color(g, {1, 1}, 2, ok), PreconditionError);
    CHECK_THROWS_AS(smallcup_color(g, {1, 3}, 2, ok), PreconditionError);
}

TEST_CASE("smallcup_sharp(2,2) is exhaustively unsat") {
    const auto [g, lists] = smallcup_sharp(2, 2);
    CHECK(g.vertex_count == 6);
    CHECK(g.edge_count() == 9);
    CHECK(lists.universe().size() == 3);
    CHECK(oracle::count_list_colorings(g, lists) == 0);
    CHECK(list_color_search(g, lists).status == SearchStatus::unsat);
}

TEST_CASE("smallcup_sharp(2,3) is unsat by backtracking") {
    const auto [g, lists] = smallcup_sharp(2, 3);
    CHECK(g.vertex_count == 20);
    CHECK(g.edge_count() == 100);
    CHECK(lists.universe().size() == 5);
    CHECK(list_color_search(g, lists).status == SearchStatus::unsat);
}

TEST_CASE("smallcup_sharp(3,3) is unsat by backtracking") {
    const auto [g, lists] = smallcup_sharp(3, 3);
    CHECK(lists.universe().size() == 4);
    CHECK(g.vertex_count == 12);
    CHECK(list_color_search(g, lists).status == SearchStatus::unsat);
}
