#pragma once

#include <span>
#include <vector>

#include "augtree/augmented_tree.hpp"
#include "augtree/types.hpp"

namespace augtree {

/// Root-to-leaf path of the underlying tree.
struct FullPath {
    std::vector<Vertex> vertices;   ///< root first
    std::vector<int> colors;        ///< colors[i] labels vertices[i] -> vertices[i+1]

    Vertex leaf() const { return vertices.back(); }
};

/// Color of the tree edge parent -> child (1-based child index in the
/// ordering the tree was built with). Throws PreconditionError otherwise.
int phi(const AugmentedTree& t, Vertex parent, Vertex child);

FullPath full_path(const AugmentedTree& t, Vertex leaf);

/// The unique full path along which every non-leaf vertex's color equals the
/// color of its descending edge. Only non-leaf colors are read. Throws
/// MissingBranch on a reduced tree when f is not proper along the descent.
FullPath f_path(const AugmentedTree& t, const Coloring& f);

/// Same descent with arbitrary edge labels: label[v] names the edge
/// parent[v] -> v, and the walk follows the child whose label equals f.
FullPath descend_by_labels(const AugmentedTree& t, const Coloring& f,
                           std::span<const Color> label);

struct PigeonholeChoice {
    int color = 0;
    std::vector<Vertex> mates;   ///< ancestor-level order, at least the group size
};

/// Smallest color c such that at least `group_size` mates of `leaf` have
/// descending color c along the leaf's full path; returns every mate of that
/// color. Throws PreconditionError when no color class is large enough.
PigeonholeChoice pigeonhole_select(const AugmentedTree& t, Vertex leaf, int group_size);

}  // namespace augtree
