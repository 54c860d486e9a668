#pragma once

#include <compare>
#include <ranges>
#include <span>
#include <vector>

#include "augtree/types.hpp"

namespace augtree {

struct TreeParams {
    int d = 0;              ///< branching of the underlying tree
    int r = 0;              ///< augmenting edges per leaf
    int girth_target = 0;

    friend bool operator==(const TreeParams&, const TreeParams&) = default;
};

/// Augmenting edge from a leaf up to one of its strict ancestors.
struct AugEdge {
    Vertex leaf = 0;
    Vertex ancestor = 0;

    friend bool operator==(const AugEdge&, const AugEdge&) = default;
};

/// Rooted tree with ordered children plus augmenting leaf-to-ancestor edges.
///
/// Vertices are numbered breadth-first, so the children of v are the
/// contiguous id range [child_begin[v], child_begin[v+1]). edge_color[v] is
/// the color of the tree edge parent[v] -> v; for a complete tree it equals
/// the 1-based index of v among its siblings, and a reduced tree keeps the
/// colors of the tree it was cut from. aug_edges are sorted by leaf and then
/// by ancestor level.
///
/// Values are built by the constructor functions and treated as immutable
/// afterwards; validate_augmented_tree checks every structural invariant.
struct AugmentedTree {
    TreeParams params;
    bool reduced = false;
    std::vector<Vertex> parent;        ///< parent[0] == 0
    std::vector<int> edge_color;       ///< 0 for the root
    std::vector<int> level;
    std::vector<Vertex> child_begin;   ///< size vertex_count() + 1
    std::vector<Vertex> leaves;        ///< ascending
    std::vector<AugEdge> aug_edges;

    Vertex vertex_count() const { return static_cast<Vertex>(parent.size()); }
    int height() const;
    bool is_leaf(Vertex v) const { return child_begin[v] == child_begin[v + 1]; }
    int child_count(Vertex v) const { return child_begin[v + 1] - child_begin[v]; }
    auto children(Vertex v) const { return std::views::iota(child_begin[v], child_begin[v + 1]); }

    /// Augmenting edges incident to `leaf` (ancestor-level order).
    std::span<const AugEdge> mates(Vertex leaf) const;
    /// Ancestor of v at the given level (v itself at its own level).
    Vertex ancestor_at_level(Vertex v, int lvl) const;
    bool is_strict_ancestor(Vertex anc, Vertex v) const;
    /// Color of the edge leaving `anc` towards `descendant`.
    int descending_color(Vertex anc, Vertex descendant) const;
    /// Index of `leaf` in `leaves`.
    std::size_t leaf_index(Vertex leaf) const;

    friend bool operator==(const AugmentedTree&, const AugmentedTree&) = default;
};

/// Derives level, child offsets and leaves from a breadth-first parent array.
/// Throws PreconditionError if `parent` is not in breadth-first order.
AugmentedTree assemble_tree(TreeParams params, bool reduced, std::vector<Vertex> parent,
                            std::vector<int> edge_color, std::vector<AugEdge> aug_edges);

/// Checks every AugmentedTree invariant and lists each violation.
ValidationReport validate_augmented_tree(const AugmentedTree& t);

/// Index arithmetic for complete `d`-ary trees numbered breadth-first.
class CompleteTreeIndex {
public:
    CompleteTreeIndex(int d, int height);

    int d() const { return d_; }
    int height() const { return height_; }
    Vertex first_at_level(int lvl) const { return first_[lvl]; }
    Vertex count_at_level(int lvl) const { return first_[lvl + 1] - first_[lvl]; }
    Vertex vertex_count() const { return first_[height_ + 1]; }
    Vertex id(int lvl, Vertex pos) const { return first_[lvl] + pos; }

private:
    int d_;
    int height_;
    std::vector<Vertex> first_;
};

}  // namespace augtree
