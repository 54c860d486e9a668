#include <doctest.h>

#include <map>
#include <set>

#include "augtree/errors.hpp"
#include "augtree/gadgets.hpp"
#include "augtree/verifier.hpp"
#include "oracles.hpp"

using namespace augtree;

namespace {

// Two-coloring by plain BFS; false on any conflict.
bool two_colorable(const Graph& g) {
    std::vector<std::vector<Vertex>> adj(g.vertex_count);
    for (const Edge& e : g.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<int> side(g.vertex_count, -1);
    for (Vertex s = 0; s < g.vertex_count; ++s) {
        if (side[s] >= 0) continue;
        side[s] = 0;
        std::vector<Vertex> queue{s};
        for (std::size_t h = 0; h < queue.size(); ++h) {
            for (Vertex w : adj[queue[h]]) {
                if (side[w] < 0) {
                    side[w] = 1 - side[queue[h]];
                    queue.push_back(w);
                } else if (side[w] == side[queue[h]]) {
                    return false;
                }
            }
        }
    }
    return true;
}

std::size_t common(std::span<const Color> a, std::span<const Color> b) {
    std::size_t n = 0;
    for (Color c : a) n += std::find(b.begin(), b.end(), c) != b.end();
    return n;
}

void check_intersection_one(const GadgetBundle& b) {
    const ListAssignment& l = *b.lists;
    std::size_t bad = 0;
    for (const Edge& e : b.graph.edges) bad += common(l.list(e.u), l.list(e.v)) != 1;
    CHECK(bad == 0);
}

// Colors a copy takes from its child never show up outside that copy.
void check_freshness(const GadgetBundle& b) {
    const ListAssignment& l = *b.lists;
    const ListAssignment& cl = *b.child->lists;
    std::map<Color, std::size_t> owner;
    for (std::size_t j = 0; j < b.copy_count(); ++j) {
        for (Vertex w = 0; w < b.child->vertex_count(); ++w) {
            for (Color c : cl.list(w)) owner[b.map_color(j, c)] = j;
        }
    }
    std::size_t leaks = 0;
    for (Vertex v = 0; v < b.vertex_count(); ++v) {
        for (Color c : l.list(v)) {
            auto it = owner.find(c);
            if (it == owner.end()) continue;
            const Origin o = b.origin[v];
            leaks += o.copy != static_cast<std::int32_t>(it->second);
        }
    }
    CHECK(leaks == 0);
}

void check_list_sizes(const GadgetBundle& b) {
    const ListAssignment& l = *b.lists;
    CHECK(validate_lists(l).ok());
    for (Vertex v = 0; v < b.vertex_count(); ++v) CHECK(l.list(v).size() == static_cast<std::size_t>(b.k));
}

void check_choosable_shape(const GadgetBundle& b) {
    CHECK(validate_graph(b.graph).ok());
    CHECK(two_colorable(b.graph));
    CHECK(b.graph.edge_count() == static_cast<std::size_t>((b.k - 1) * b.vertex_count() + 1));
    REQUIRE(b.orientation.has_value());
    CHECK_FALSE(check_orientation(b.graph, *b.orientation, b.k).has_value());
    check_list_sizes(b);
}

}  // namespace

TEST_CASE("hypergraph at t=2, k=2 is a non-bipartite graph with |E| = |V|+1") {
    const HypergraphBundle h = build_hypergraph(build_base(2, 3), 2, 2);
    CHECK(validate_hypergraph(h.hypergraph).ok());
    CHECK(h.hypergraph.vertex_count == 127);
    CHECK(h.hypergraph.edge_count() == 128);
    // counted with multiplicity; repeated pairs collapse in the simple graph
    CHECK(h.hypergraph.edge_count() == static_cast<std::size_t>((h.k - 1) * h.hypergraph.vertex_count + 1));
    const Graph g = as_simple_graph(h.hypergraph);
    CHECK(g.edge_count() <= 128);
    CHECK_FALSE(two_colorable(g));
    const auto r = bipartition(g);
    const auto* odd = std::get_if<NotBipartite>(&r);
    REQUIRE(odd);
    CHECK(odd->odd_cycle.size() % 2 == 1);
    for (std::size_t i = 0; i < odd->odd_cycle.size(); ++i) {
        const Edge e = make_edge(odd->odd_cycle[i], odd->odd_cycle[(i + 1) % odd->odd_cycle.size()]);
        CHECK(std::binary_search(g.edges.begin(), g.edges.end(), e));
    }
}

TEST_CASE("hyperedges are aligned mates of their leaf") {
    const HypergraphBundle h = build_hypergraph(build_base(3, 4), 2, 3);   // r = (t-1)k+1 = 4
    const AugmentedTree& t = h.skeleton;
    for (std::size_t i = 0; i < h.hypergraph.edge_count(); ++i) {
        const Vertex leaf = h.hypergraph.origin_leaf[i];
        std::set<int> colors;
        for (Vertex v : h.hypergraph.edge(i)) {
            CHECK(t.is_strict_ancestor(v, leaf));
            colors.insert(t.descending_color(v, leaf));
        }
        CHECK(colors.size() == 1);
    }
    CHECK_THROWS_AS(build_hypergraph(build_base(3, 3), 2, 3), PreconditionError);
}

TEST_CASE("hypergraph witnesses at t=3, k=2") {
    const HypergraphBundle h = build_hypergraph(build_base(2, 5), 3, 2);
    CHECK(h.hypergraph.vertex_count == 2047);
    CHECK(h.hypergraph.edge_count() == 2048);
    const TrialReport rep = run_witness_trials(h, 1000, 42);
    CHECK(rep.trials == 1000);
    CHECK(rep.failures == 0);
    // witness re-check from the outside
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        const Coloring f = random_coloring(h, TrialMode::uniform, rng);
        const std::size_t e = hyper_witness(h, f);
        std::set<Color> seen;
        for (Vertex v : h.hypergraph.edge(e)) seen.insert(f[v]);
        CHECK(seen.size() == 1);
    }
}

TEST_CASE("J_2 is an odd cycle of length g+1") {
    for (int g : {4, 6, 8}) {
        const GadgetBundle j = build_Jk(2, g);
        CHECK(j.vertex_count() == g + 1);
        CHECK(j.graph.edge_count() == static_cast<std::size_t>(g + 1));
        CHECK(girth(j.graph).length == g + 1);
        CHECK_FALSE(two_colorable(j.graph));
    }
}

TEST_CASE("J_3 is sparse, has girth at least 4 and every 3-coloring fails") {
    const GadgetBundle j = build_Jk(3, 4);
    CHECK(validate_graph(j.graph).ok());
    const Rational m = mad_exact(j.graph);
    CHECK(m <= Rational(4));
    const GirthResult gr = girth(j.graph);
    REQUIRE(gr.length.has_value());
    CHECK(*gr.length >= 4);
    const TrialReport rep = run_witness_trials(j, 300, 7);
    CHECK(rep.failures == 0);
    CHECK(rep.reason_counts[static_cast<int>(WitnessReason::improper_tree_edge)] > 0);
    CHECK(rep.reason_counts[static_cast<int>(WitnessReason::forbidden_color)] +
              rep.reason_counts[static_cast<int>(WitnessReason::base_gadget)] >
          0);
}

TEST_CASE("J_k witness on hand-made colorings") {
    const GadgetBundle j = build_Jk(3, 4);
    Coloring all_one(j.vertex_count(), 1);
    const Witness w = Jk_witness(j, all_one);
    CHECK(w.reason == WitnessReason::improper_tree_edge);
    Coloring bad(j.vertex_count(), 4);
    CHECK_THROWS_AS(Jk_witness(j, bad), PreconditionError);
    // a 2-coloring of the odd cycle
    const GadgetBundle c = build_Jk(2, 4);
    const Witness wc = Jk_witness(c, {1, 2, 1, 2, 1});
    CHECK(wc.edge == Edge{0, 4});
}

TEST_CASE("G_2 is not 2-choosable and every edge deletion leaves mad at most 2") {
    const GadgetBundle b = build_Gk(2, 4);
    CHECK(b.vertex_count() == 7);
    CHECK(b.graph.edge_count() == 8);
    check_choosable_shape(b);
    CHECK(oracle::count_list_colorings(b.graph, *b.lists) == 0);
    CHECK(list_color_search(b.graph, *b.lists).status == SearchStatus::unsat);
    const auto whole = oracle::mad(b.graph);
    CHECK(oracle::same_fraction(whole, 16, 7));
    for (std::size_t i = 0; i < b.graph.edge_count(); ++i) {
        Graph h = b.graph;
        h.edges.erase(h.edges.begin() + static_cast<std::ptrdiff_t>(i));
        h.tags.erase(h.tags.begin() + static_cast<std::ptrdiff_t>(i));
        const Rational m = mad_exact(h);
        CHECK(m <= Rational(2));
        CHECK(oracle::same_fraction(oracle::mad(h), m.num(), m.den()));
    }
}

TEST_CASE("twin-cycle bases at larger girth") {
    for (int g : {6, 8, 10}) {
        CAPTURE(g);
        const GadgetBundle b = build_Gk(2, g);
        CHECK(b.vertex_count() == 2 * g - 1);
        check_choosable_shape(b);
        CHECK(girth(b.graph).length == g);
        CHECK(oracle::count_list_colorings(b.graph, *b.lists) == 0);
    }
}

TEST_CASE("G_3 from the aligned provider") {
    const GadgetBundle b = build_Gk(3, 4, aligned_provider());
    check_choosable_shape(b);
    CHECK(*girth(b.graph).length >= 4);
    check_freshness(b);
    const TrialReport rep = run_witness_trials(b, 300, 1);
    CHECK(rep.failures == 0);
}

TEST_CASE("G_3 from the pigeonhole provider") {
    const GadgetBundle b = build_Gk(3, 4);
    CHECK(b.vertex_count() == 98302);
    check_choosable_shape(b);
    check_freshness(b);
    const TrialReport rep = run_witness_trials(b, 60, 2);
    CHECK(rep.failures == 0);
}

TEST_CASE("G_k witnesses reach the child gadget") {
    const GadgetBundle b = build_Gk(3, 4, aligned_provider());
    const TrialReport rep = run_witness_trials(b, 300, 9);
    CHECK(rep.reason_counts[static_cast<int>(WitnessReason::forbidden_color)] +
              rep.reason_counts[static_cast<int>(WitnessReason::base_gadget)] >
          0);
    // a choice outside the lists is refused
    Coloring f(b.vertex_count(), 1);
    CHECK_THROWS_AS(Gk_witness(b, f), PreconditionError);
}

TEST_CASE("list-cap lists share exactly one color on every edge") {
    const GadgetBundle l2 = build_listcap(2, 4);
    check_choosable_shape(l2);
    check_intersection_one(l2);
    CHECK(oracle::count_list_colorings(l2.graph, *l2.lists) == 0);
    CHECK(list_color_search(l2.graph, *l2.lists).status == SearchStatus::unsat);

    const GadgetBundle l10 = build_listcap(2, 10);
    check_intersection_one(l10);
    CHECK(list_color_search(l10.graph, *l10.lists).status == SearchStatus::unsat);

    const GadgetBundle l3 = build_listcap(3, 4);
    check_choosable_shape(l3);
    check_intersection_one(l3);
    check_freshness(l3);
    CHECK(run_witness_trials(l3, 60, 3).failures == 0);

    CHECK_THROWS_AS(build_listcap(2, 6), ParameterError);
    CHECK_THROWS_AS(build_listcap(3, 8), ParameterError);
}

TEST_CASE("H_2 uses 2k-1 colors and has no choice") {
    for (int g : {4, 6}) {
        const GadgetBundle h = build_Hk_smallunion(2, g);
        check_choosable_shape(h);
        CHECK(h.lists->universe().size() == 3);
        CHECK(oracle::count_list_colorings(h.graph, *h.lists) == 0);
        CHECK(list_color_search(h.graph, *h.lists).status == SearchStatus::unsat);
    }
}

TEST_CASE("gadget builds are deterministic") {
    CHECK(build_Gk(3, 4, aligned_provider()) == build_Gk(3, 4, aligned_provider()));
    CHECK(build_Jk(2, 6) == build_Jk(2, 6));
    const GadgetBundle b = build_Gk(3, 4, aligned_provider());
    const TrialReport a = run_witness_trials(b, 30, 5);
    const TrialReport c = run_witness_trials(b, 30, 5);
    CHECK(a.sample_edge == c.sample_edge);
    CHECK(a.reason_counts == c.reason_counts);
}

TEST_CASE("gadget parameters are checked") {
    CHECK_THROWS_AS(build_Jk(1, 4), ParameterError);
    CHECK_THROWS_AS(build_Gk(2, 5), ParameterError);
    CHECK_THROWS_AS(build_Hk_smallunion(3, 4, aligned_provider(), 1000), BudgetExceeded);
}
