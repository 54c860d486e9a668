#include "augtree/list_coloring.hpp"

#include <algorithm>
#include <string>

#include "augtree/errors.hpp"
#include "augtree/verifier.hpp"

namespace augtree {

namespace {

std::string edge_name(const Edge& e) { return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}"; }

void require_cover(const Graph& g, const ListAssignment& lists) {
    if (lists.vertex_count() != g.vertex_count) {
        throw PreconditionError("list assignment size differs from the graph");
    }
}

}  // namespace

Coloring two_common_color(const Graph& g, const ListAssignment& lists) {
    require_cover(g, lists);
    const BipartitionResult parts = bipartition(g);
    const auto* bip = std::get_if<Bipartition>(&parts);
    if (!bip) throw PreconditionError("graph is not bipartite");
    for (Vertex v = 0; v < g.vertex_count; ++v) {
        if (lists.list(v).size() < 2) {
            throw PreconditionError("vertex " + std::to_string(v) + " has a list with fewer than two colors");
        }
    }
    for (const Edge& e : g.edges) {
        auto a = lists.list(e.u);
        auto b = lists.list(e.v);
        std::vector<Color> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        if (common.size() < 2) {
            throw PreconditionError("adjacent lists of " + edge_name(e) + " share fewer than two colors");
        }
    }
    Coloring f(g.vertex_count);
    for (Vertex v = 0; v < g.vertex_count; ++v) {
        auto l = lists.list(v);
        f[v] = bip->side[v] == 0 ? l.back() : l.front();
    }
    if (auto bad = check_proper(g, f)) throw Error("two-common coloring is improper at " + edge_name(*bad));
    return f;
}

int smallcup_bound(int j, int k) {
    if (j < 2 || k < 1) throw ParameterError("smallcup bound needs j >= 2 and k >= 1");
    return j * (k - 1) / (j - 1);
}

Coloring smallcup_color(const Graph& g, const Coloring& f, int j, const ListAssignment& lists) {
    require_cover(g, lists);
    if (g.vertex_count == 0) return {};
    const int k = static_cast<int>(lists.list(0).size());
    if (j < 2 || j > k) throw PreconditionError("smallcup coloring needs 2 <= j <= k");
    for (Vertex v = 0; v < g.vertex_count; ++v) {
        if (static_cast<int>(lists.list(v).size()) != k) throw PreconditionError("lists must all have size k");
        if (f.size() <= static_cast<std::size_t>(v) || f[v] < 1 || f[v] > j) {
            throw PreconditionError("vertex " + std::to_string(v) + " has no color in [j]");
        }
    }
    if (auto bad = check_proper(g, f)) throw PreconditionError("f is not proper at " + edge_name(*bad));
    const std::vector<Color>& u = lists.universe();
    const int size = static_cast<int>(u.size());
    if (size > smallcup_bound(j, k)) {
        throw PreconditionError("union of the lists has " + std::to_string(size) + " colors, above the bound " +
                                std::to_string(smallcup_bound(j, k)));
    }
    // balanced split: the first size % j parts get one extra color
    std::vector<int> part_of_rank(size);
    const int small = size / j, extra = size % j;
    for (int i = 0, rank = 0; i < j; ++i) {
        const int len = small + (i < extra ? 1 : 0);
        for (int x = 0; x < len; ++x) part_of_rank[rank++] = i + 1;
    }
    Coloring out(g.vertex_count, kUncolored);
    for (Vertex v = 0; v < g.vertex_count; ++v) {
        for (Color c : lists.list(v)) {
            const auto rank = std::lower_bound(u.begin(), u.end(), c) - u.begin();
            if (part_of_rank[rank] == f[v]) {
                out[v] = c;
                break;
            }
        }
        if (out[v] == kUncolored) throw Error("list of vertex " + std::to_string(v) + " misses its color class");
    }
    if (auto bad = check_proper(g, out)) throw Error("smallcup coloring is improper at " + edge_name(*bad));
    return out;
}

std::pair<Graph, ListAssignment> smallcup_sharp(int j, int k) {
    if (j < 2 || j > k) throw ParameterError("smallcup_sharp needs 2 <= j <= k");
    const int universe = smallcup_bound(j, k) + 1;
    // all k-subsets of [universe] in lexicographic order
    std::vector<std::vector<Color>> subsets;
    std::vector<Color> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i + 1;
    while (true) {
        subsets.push_back(cur);
        if (subsets.size() > 1'000'000) throw BudgetExceeded("smallcup_sharp instance is too large");
        int i = k - 1;
        while (i >= 0 && cur[i] == universe - (k - 1 - i)) --i;
        if (i < 0) break;
        ++cur[i];
        for (int x = i + 1; x < k; ++x) cur[x] = cur[x - 1] + 1;
    }
    const auto per_part = static_cast<Vertex>(subsets.size());
    Graph g;
    g.vertex_count = per_part * j;
    for (int p = 0; p < j; ++p) {
        for (int q = p + 1; q < j; ++q) {
            for (Vertex a = 0; a < per_part; ++a) {
                for (Vertex b = 0; b < per_part; ++b) g.add_edge(p * per_part + a, q * per_part + b, EdgeTag::gadget);
            }
        }
    }
    g.canonicalize();
    ListAssignment::Builder lists(g.vertex_count);
    for (int p = 0; p < j; ++p) {
        for (const auto& s : subsets) lists.append(s);
    }
    return {std::move(g), std::move(lists).finish()};
}

}  // namespace augtree
