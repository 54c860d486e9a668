// Acceptance run: one PASS/FAIL line per criterion with its runtime limit.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <variant>

#include "augtree/constructor.hpp"
#include "augtree/errors.hpp"
#include "augtree/gadgets.hpp"
#include "augtree/list_coloring.hpp"
#include "augtree/verifier.hpp"
#include "oracles.hpp"

using namespace augtree;

namespace {

// A criterion collects its failed conditions as text; empty means pass.
struct Check {
    std::string failures;
    void require(bool ok, const std::string& what) {
        if (!ok && failures.size() < 400) failures += (failures.empty() ? "" : "; ") + what;
    }
};

bool is_bipartite(const Graph& g) { return std::holds_alternative<Bipartition>(bipartition(g)); }

std::optional<int> girth_of(const Graph& g) { return girth(g).length; }

std::string show(std::optional<int> v) { return v ? std::to_string(*v) : "inf"; }

void c1(Check& c) {
    for (int d : {2, 3, 4}) {
        for (int r : {1, 2, 3}) {
            const AugmentedTree t = build_base(d, r);
            const Graph g = flatten(t);
            const std::string tag = "(" + std::to_string(d) + "," + std::to_string(r) + ")";
            c.require(t.height() == 2 * r + 1, tag + " height " + std::to_string(t.height()));
            c.require(height_bound(d, r, 4) == 2 * r + 1, tag + " height_bound");
            c.require(is_bipartite(g), tag + " not bipartite");
            const auto measured = oracle::bfs_girth(g);
            c.require(measured == 4 && girth_of(g) == 4, tag + " girth " + show(measured));
        }
    }
}

void c2(Check& c) {
    const PlanResult res = plan_and_build(2, 1, 6);
    c.require(res.built(), "not built");
    if (!res.built()) return;
    const Graph g = flatten(*res.tree);
    c.require(res.tree->vertex_count() == 4095, "vertices " + std::to_string(res.tree->vertex_count()));
    c.require(res.tree->height() == 11, "height " + std::to_string(res.tree->height()));
    const auto measured = oracle::bfs_girth(g);
    c.require(measured && *measured >= 6, "girth " + show(measured));
    c.require(validate_augmented_tree(*res.tree).ok(), "invalid tree");
}

void c3(Check& c) {
    const AugmentedTree t = compose(build_base(2, 1), build_base(8, 1));
    c.require(t.params.d == 2 && t.params.r == 2, "params");
    c.require(t.height() == 5, "height " + std::to_string(t.height()));
    const auto measured = oracle::bfs_girth(flatten(t));
    c.require(measured && *measured >= 4, "girth " + show(measured));
    c.require(is_bipartite(flatten(t)), "not bipartite");
    for (Vertex leaf : t.leaves) c.require(t.mates(leaf).size() == 2, "leaf " + std::to_string(leaf) + " mates");
}

void c4(Check& c) {
    c.require(height_bound(2, 2, 6) == BigNat("8388621"), "height_bound(2,2,6) = " + height_bound(2, 2, 6).get_str());
    int built = 0;
    for (int d : {2, 3, 4}) {
        for (int r : {1, 2, 3}) {
            for (int g : {4, 6}) {
                try {
                    const PlanResult res = plan_and_build(d, r, g);
                    if (!res.built()) continue;
                    ++built;
                    c.require(res.plan.height_bound == res.tree->height(),
                              "built height differs at (" + std::to_string(d) + "," + std::to_string(r) + "," +
                                  std::to_string(g) + ")");
                } catch (const MagnitudeOverflow&) {
                }
            }
        }
    }
    c.require(built >= 10, "only " + std::to_string(built) + " plans built");
}

void c5(Check& c) {
    const HypergraphBundle h2 = build_hypergraph(build_base(2, 3), 2, 2);
    c.require(h2.hypergraph.vertex_count == 127, "t=2 vertices " + std::to_string(h2.hypergraph.vertex_count));
    c.require(h2.hypergraph.edge_count() == 128, "t=2 edges " + std::to_string(h2.hypergraph.edge_count()));
    c.require(static_cast<std::int64_t>(h2.hypergraph.edge_count()) == (2 - 1) * h2.hypergraph.vertex_count + 1,
              "|E| != (k-1)|V|+1");
    const Graph simple = as_simple_graph(h2.hypergraph);
    const BipartitionResult b = bipartition(simple);
    const auto* odd = std::get_if<NotBipartite>(&b);
    c.require(odd != nullptr, "t=2 graph is bipartite");
    if (odd) {
        const auto& cyc = odd->odd_cycle;
        const auto adj = oracle::matrix(simple);
        bool closed = cyc.size() % 2 == 1;
        for (std::size_t i = 0; i < cyc.size(); ++i) closed = closed && adj[cyc[i]][cyc[(i + 1) % cyc.size()]];
        c.require(closed, "odd cycle certificate does not check out");
    }
    const HypergraphBundle h3 = build_hypergraph(build_base(2, 5), 3, 2);
    c.require(h3.hypergraph.vertex_count == 2047, "t=3 vertices " + std::to_string(h3.hypergraph.vertex_count));
    c.require(h3.hypergraph.edge_count() == 2048, "t=3 edges " + std::to_string(h3.hypergraph.edge_count()));
    const TrialReport rep = run_witness_trials(h3, 1000, 20261019);
    c.require(rep.trials == 1000 && rep.failures == 0, "t=3 witness failures " + std::to_string(rep.failures));
}

void c6(Check& c) {
    const GadgetBundle j = build_Jk(3, 4);
    const Rational m = mad_exact(j.graph);
    c.require(m <= Rational(4), "mad " + m.to_string());
    const auto gr = girth_of(j.graph);
    c.require(gr && *gr >= 4, "girth " + show(gr));
    const TrialReport rep = run_witness_trials(j, 1000, 20261019);
    c.require(rep.trials == 1000 && rep.failures == 0, "witness failures " + std::to_string(rep.failures));
}

void c7(Check& c) {
    const GadgetBundle g2 = build_Gk(2, 4);
    c.require(list_color_search(g2.graph, *g2.lists).status == SearchStatus::unsat, "G_2 lists colorable");
    c.require(g2.graph.edge_count() == 8 && g2.vertex_count() == 7, "G_2 size");
    for (std::size_t i = 0; i < g2.graph.edges.size(); ++i) {
        Graph h;
        h.vertex_count = g2.graph.vertex_count;
        for (std::size_t e = 0; e < g2.graph.edges.size(); ++e) {
            if (e != i) h.add_edge(g2.graph.edges[e].u, g2.graph.edges[e].v, g2.graph.tags[e]);
        }
        c.require(mad_exact(h) <= Rational(2), "mad after deleting edge " + std::to_string(i));
    }
    const GadgetBundle g3 = build_Gk(3, 4, aligned_provider());
    const auto bad = check_orientation(g3.graph, *g3.orientation, 3);
    c.require(!bad, "orientation: " + bad.value_or(""));
    c.require(static_cast<std::int64_t>(g3.graph.edge_count()) == 2 * static_cast<std::int64_t>(g3.vertex_count()) + 1,
              "G_3 |E| != 2|V|+1");
    c.require(is_bipartite(g3.graph), "G_3 not bipartite");
    const TrialReport rep = run_witness_trials(g3, 1000, 20261019);
    c.require(rep.trials == 1000 && rep.failures == 0, "G_3 witness failures " + std::to_string(rep.failures));
}

std::size_t edges_not_meeting_once(const GadgetBundle& b) {
    std::size_t bad = 0;
    for (const Edge& e : b.graph.edges) {
        std::size_t shared = 0;
        for (Color x : b.lists->list(e.u)) shared += b.lists->contains(e.v, x);
        bad += shared != 1;
    }
    return bad;
}

void c8(Check& c) {
    const GadgetBundle l2 = build_listcap(2, 4);
    c.require(edges_not_meeting_once(l2) == 0, "k=2 intersection scan");
    c.require(list_color_search(l2.graph, *l2.lists).status == SearchStatus::unsat, "k=2 lists colorable");
    const GadgetBundle l3 = build_listcap(3, 4);
    c.require(edges_not_meeting_once(l3) == 0, "k=3 intersection scan");
    const TrialReport rep = run_witness_trials(l3, 1000, 20261019);
    c.require(rep.trials == 1000 && rep.failures == 0, "k=3 witness failures " + std::to_string(rep.failures));
}

void c9(Check& c) {
    const GadgetBundle h = build_Hk_smallunion(2, 4);
    c.require(h.lists->universe().size() == 3, "union size " + std::to_string(h.lists->universe().size()));
    c.require(oracle::count_list_colorings(h.graph, *h.lists) == 0, "H_2 has a list coloring");

    std::mt19937_64 rng(20261019);
    std::size_t failed = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int a = 1 + trial % 5, b = 1 + trial % 4;
        Graph g = oracle::random_graph(a + b, 0.0, rng);
        std::bernoulli_distribution coin(0.6);
        for (int u = 0; u < a; ++u) {
            for (int v = a; v < a + b; ++v) {
                if (coin(rng)) g.add_edge(u, v, EdgeTag::gadget);
            }
        }
        Coloring f(a + b, 1);
        for (int v = a; v < a + b; ++v) f[v] = 2;
        std::vector<std::vector<Color>> lists;
        for (int v = 0; v < a + b; ++v) {
            std::vector<Color> pool{3, 5, 7, 9};
            std::shuffle(pool.begin(), pool.end(), rng);
            pool.resize(3);
            lists.push_back(pool);
        }
        const ListAssignment la(lists);
        try {
            const Coloring col = smallcup_color(g, f, 2, la);
            bool ok = !check_proper(g, col);
            for (Vertex v = 0; v < g.vertex_count; ++v) ok = ok && la.contains(v, col[v]);
            failed += !ok;
        } catch (const Error&) {
            ++failed;
        }
    }
    c.require(failed == 0, "smallcup_color failed " + std::to_string(failed) + " of 1000");

    const auto [g22, l22] = smallcup_sharp(2, 2);
    c.require(oracle::count_list_colorings(g22, l22) == 0, "smallcup_sharp(2,2) colorable");
    const auto [g23, l23] = smallcup_sharp(2, 3);
    c.require(list_color_search(g23, l23).status == SearchStatus::unsat, "smallcup_sharp(2,3) not unsat");
}

void c10(Check& c) {
    std::mt19937_64 rng(20261019);
    std::uniform_int_distribution<int> size(1, 8);
    std::uniform_real_distribution<double> density(0.1, 0.9);
    int mismatches = 0;
    for (int i = 0; i < 200; ++i) {
        const Graph g = oracle::random_graph(size(rng), density(rng), rng);
        mismatches += girth_of(g) != oracle::girth(g);
        const Rational m = mad_exact(g);
        mismatches += !oracle::same_fraction(oracle::mad(g), m.num(), m.den());
    }
    c.require(mismatches == 0, std::to_string(mismatches) + " disagreements");
}

void c11(Check& c) {
    const HeightBoundSeq s = height_bound_seq(8);
    c.require(s.q == 1, "q = " + s.q.get_str());
    c.require(s.k.size() == 2 && s.k[1] == 19, "k_1 != 19");
    int prev = 0;
    bool monotone = true;
    for (std::uint64_t m = 1; m <= 1'000'000; ++m) {
        const int cap = forced_cycle_girth_cap(m);
        monotone = monotone && cap >= prev;
        prev = cap;
    }
    c.require(monotone, "cap not monotone");
    auto consistent = [&](const AugmentedTree& t, int target) {
        const auto gr = girth_of(flatten(t));
        const int cap = std::max(target, forced_cycle_girth_cap(t.height()));
        c.require(gr && *gr <= cap, "girth " + show(gr) + " above cap " + std::to_string(cap));
    };
    consistent(build_base(2, 1), 4);
    consistent(*plan_and_build(2, 1, 6).tree, 6);
    consistent(expand_girth(build_base(2, 4)), 6);
}

struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<void(Check&)> body;
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "base trees: height 2r+1, bipartite, girth 4", 5, c1},
        {2, "plan_and_build(2,1,6): 4095 vertices, height 11, girth >= 6", 10, c2},
        {3, "compose(base(2,1), base(8,1)): height 5, two mates per leaf", 5, c3},
        {4, "height_bound(2,2,6) = 8388621 and agrees with built heights", 1, c4},
        {5, "hypergraphs t=2 odd cycle, |E|=|V|+1; t=3 1000 witnesses", 30, c5},
        {6, "J_3: mad <= 4, girth >= 4, 1000 witnesses", 60, c6},
        {7, "G_2 unsat and edge-deleted mad <= 2; G_3 orientation and 1000 witnesses", 60, c7},
        {8, "listcap intersection one; k=2 unsat; k=3 1000 witnesses", 60, c8},
        {9, "union size 2k-1, smallcup coloring and sharpness", 60, c9},
        {10, "girth and mad agree with enumeration on 200 graphs", 30, c10},
        {11, "g=8 sequence q=1, k_1=19; cap monotone to 10^6; consistency", 5, c11},
    };
    int failed = 0;
    for (const Criterion& cr : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            cr.body(check);
        } catch (const std::exception& e) {
            check.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        check.require(secs < cr.limit_s, "runtime over " + std::to_string(cr.limit_s).substr(0, 4) + " s");
        const bool pass = check.failures.empty();
        failed += !pass;
        std::printf("%s %2d %s [%.2f s / %.0f s]%s%s\n", pass ? "PASS" : "FAIL", cr.id, cr.name, secs, cr.limit_s,
                    pass ? "" : ": ", check.failures.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
