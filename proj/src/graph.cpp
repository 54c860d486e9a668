#include "augtree/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

#include "augtree/errors.hpp"

namespace augtree {

const char* to_string(EdgeTag tag) {
    switch (tag) {
        case EdgeTag::tree: return "tree";
        case EdgeTag::aug: return "aug";
        case EdgeTag::gadget: return "gadget";
    }
    return "?";
}

void Graph::add_edge(Vertex a, Vertex b, EdgeTag tag) {
    edges.push_back(make_edge(a, b));
    tags.push_back(tag);
}

void Graph::canonicalize() {
    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
    std::vector<Edge> e2;
    std::vector<EdgeTag> t2;
    e2.reserve(edges.size());
    t2.reserve(tags.size());
    for (std::size_t i : order) {
        e2.push_back(edges[i]);
        t2.push_back(tags[i]);
    }
    edges = std::move(e2);
    tags = std::move(t2);
}

ValidationReport validate_graph(const Graph& g) {
    ValidationReport report;
    if (g.tags.size() != g.edges.size()) report.add("tag count differs from edge count");
    for (const Edge& e : g.edges) {
        const std::string name = "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
        if (e.u < 0 || e.v < 0 || e.u >= g.vertex_count || e.v >= g.vertex_count) {
            report.add(name + " has an endpoint out of range");
        } else if (e.u == e.v) {
            report.add(name + " is a loop");
        }
    }
    std::vector<Edge> sorted;
    sorted.reserve(g.edges.size());
    for (const Edge& e : g.edges) sorted.push_back(make_edge(e.u, e.v));
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i] == sorted[i - 1]) {
            report.add("edge {" + std::to_string(sorted[i].u) + "," + std::to_string(sorted[i].v) +
                       "} is a parallel edge");
        }
    }
    return report;
}

Adjacency::Adjacency(const Graph& g) : Adjacency(g.vertex_count, g.edges) {}

Adjacency::Adjacency(Vertex vertex_count, std::span<const Edge> edges) {
    offset_.assign(static_cast<std::size_t>(vertex_count) + 1, 0);
    for (const Edge& e : edges) {
        ++offset_[e.u + 1];
        ++offset_[e.v + 1];
    }
    std::partial_sum(offset_.begin(), offset_.end(), offset_.begin());
    nbr_.resize(offset_.back());
    eid_.resize(offset_.back());
    std::vector<std::int64_t> fill(offset_.begin(), offset_.end() - 1);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        nbr_[fill[e.u]] = e.v;
        eid_[fill[e.u]++] = static_cast<std::int64_t>(i);
        nbr_[fill[e.v]] = e.u;
        eid_[fill[e.v]++] = static_cast<std::int64_t>(i);
    }
}

BipartitionResult bipartition(const Graph& g) {
    const Adjacency adj(g);
    const Vertex n = g.vertex_count;
    std::vector<int> side(n, -1);
    std::vector<Vertex> parent(n, -1);
    std::vector<int> depth(n, 0);
    for (Vertex s = 0; s < n; ++s) {
        if (side[s] >= 0) continue;
        side[s] = 0;
        std::deque<Vertex> queue{s};
        while (!queue.empty()) {
            const Vertex u = queue.front();
            queue.pop_front();
            for (Vertex w : adj.neighbors(u)) {
                if (side[w] < 0) {
                    side[w] = 1 - side[u];
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                } else if (side[w] == side[u]) {
                    // walk both endpoints up to their common ancestor
                    std::vector<Vertex> left, right;
                    Vertex a = u, b = w;
                    while (depth[a] > depth[b]) { left.push_back(a); a = parent[a]; }
                    while (depth[b] > depth[a]) { right.push_back(b); b = parent[b]; }
                    while (a != b) {
                        left.push_back(a);
                        right.push_back(b);
                        a = parent[a];
                        b = parent[b];
                    }
                    left.push_back(a);
                    left.insert(left.end(), right.rbegin(), right.rend());
                    return NotBipartite{std::move(left)};
                }
            }
        }
    }
    Bipartition result;
    result.side.resize(n);
    for (Vertex v = 0; v < n; ++v) {
        result.side[v] = static_cast<std::uint8_t>(side[v]);
        result.classes[side[v]].push_back(v);
    }
    return result;
}

Graph flatten(const AugmentedTree& t) {
    Graph g;
    g.vertex_count = t.vertex_count();
    g.edges.reserve(t.vertex_count() - 1 + t.aug_edges.size());
    for (Vertex v = 1; v < t.vertex_count(); ++v) g.add_edge(t.parent[v], v, EdgeTag::tree);
    for (const AugEdge& e : t.aug_edges) g.add_edge(e.ancestor, e.leaf, EdgeTag::aug);
    g.canonicalize();
    return g;
}

ValidationReport validate_hypergraph(const Hypergraph& h) {
    ValidationReport report;
    if (h.uniformity < 1) {
        report.add("uniformity must be positive");
        return report;
    }
    if (h.members.size() != h.origin_leaf.size() * static_cast<std::size_t>(h.uniformity)) {
        report.add("member count is not uniformity times edge count");
        return report;
    }
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        std::vector<Vertex> e(h.edge(i).begin(), h.edge(i).end());
        for (Vertex v : e) {
            if (v < 0 || v >= h.vertex_count) {
                report.add("hyperedge " + std::to_string(i) + " has a member out of range");
                break;
            }
        }
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
            report.add("hyperedge " + std::to_string(i) + " repeats a member");
        }
    }
    return report;
}

Graph as_simple_graph(const Hypergraph& h) {
    if (h.uniformity != 2) throw PreconditionError("as_simple_graph needs a 2-uniform hypergraph");
    Graph g;
    g.vertex_count = h.vertex_count;
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        g.add_edge(h.edge(i)[0], h.edge(i)[1], EdgeTag::gadget);
    }
    g.canonicalize();
    auto last = std::unique(g.edges.begin(), g.edges.end());
    g.edges.erase(last, g.edges.end());
    g.tags.resize(g.edges.size());
    return g;
}

}  // namespace augtree
