#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "augtree/augmented_tree.hpp"
#include "augtree/types.hpp"

namespace augtree {

enum class EdgeTag : std::uint8_t { tree, aug, gadget };

const char* to_string(EdgeTag tag);

struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Orders the endpoints so that u < v.
inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Simple undirected graph with per-edge provenance tags.
struct Graph {
    Vertex vertex_count = 0;
    std::vector<Edge> edges;
    std::vector<EdgeTag> tags;   ///< parallel to edges

    std::size_t edge_count() const { return edges.size(); }
    void add_edge(Vertex a, Vertex b, EdgeTag tag);
    /// Sorts edges lexicographically, permuting tags along.
    void canonicalize();

    friend bool operator==(const Graph&, const Graph&) = default;
};

/// Loops, out-of-range endpoints, parallel edges, tag count.
ValidationReport validate_graph(const Graph& g);

/// Compressed adjacency with the id of the edge behind every entry.
class Adjacency {
public:
    explicit Adjacency(const Graph& g);
    Adjacency(Vertex vertex_count, std::span<const Edge> edges);

    Vertex vertex_count() const { return static_cast<Vertex>(offset_.size()) - 1; }
    std::span<const Vertex> neighbors(Vertex v) const {
        return {nbr_.data() + offset_[v], nbr_.data() + offset_[v + 1]};
    }
    std::span<const std::int64_t> edge_ids(Vertex v) const {
        return {eid_.data() + offset_[v], eid_.data() + offset_[v + 1]};
    }
    int degree(Vertex v) const { return static_cast<int>(offset_[v + 1] - offset_[v]); }

private:
    std::vector<std::int64_t> offset_;
    std::vector<Vertex> nbr_;
    std::vector<std::int64_t> eid_;
};

struct Bipartition {
    std::vector<std::uint8_t> side;   ///< 0 or 1 per vertex; side of vertex 0 is 0
    std::vector<Vertex> classes[2];
};

struct NotBipartite {
    std::vector<Vertex> odd_cycle;    ///< consecutive vertices, closing back to the first
};

using BipartitionResult = std::variant<Bipartition, NotBipartite>;

/// Two-coloring by breadth-first search; an odd cycle certifies failure.
BipartitionResult bipartition(const Graph& g);

/// Tree edges plus augmenting edges as a plain tagged graph.
Graph flatten(const AugmentedTree& t);

/// t-uniform hypergraph; edge i occupies members[i*t, (i+1)*t).
struct Hypergraph {
    Vertex vertex_count = 0;
    int uniformity = 0;
    std::vector<Vertex> members;
    std::vector<Vertex> origin_leaf;   ///< leaf of the skeleton that produced each edge

    std::size_t edge_count() const { return origin_leaf.size(); }
    std::span<const Vertex> edge(std::size_t i) const {
        return {members.data() + i * uniformity, static_cast<std::size_t>(uniformity)};
    }

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;
};

ValidationReport validate_hypergraph(const Hypergraph& h);

/// For 2-uniform hypergraphs: the underlying simple graph (repeated edges merged).
Graph as_simple_graph(const Hypergraph& h);

}  // namespace augtree
