#include "augtree/augmented_tree.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "augtree/errors.hpp"

namespace augtree {

bool ValidationReport::mentions(const std::string& needle) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

int AugmentedTree::height() const {
    if (level.empty()) return 0;
    return *std::max_element(level.begin(), level.end());
}

std::span<const AugEdge> AugmentedTree::mates(Vertex leaf) const {
    auto lo = std::lower_bound(aug_edges.begin(), aug_edges.end(), leaf,
                               [](const AugEdge& e, Vertex x) { return e.leaf < x; });
    auto hi = std::upper_bound(lo, aug_edges.end(), leaf,
                               [](Vertex x, const AugEdge& e) { return x < e.leaf; });
    return {aug_edges.data() + (lo - aug_edges.begin()), static_cast<std::size_t>(hi - lo)};
}

Vertex AugmentedTree::ancestor_at_level(Vertex v, int lvl) const {
    while (level[v] > lvl) v = parent[v];
    return v;
}

bool AugmentedTree::is_strict_ancestor(Vertex anc, Vertex v) const {
    if (anc < 0 || anc >= vertex_count() || level[anc] >= level[v]) return false;
    return ancestor_at_level(v, level[anc]) == anc;
}

int AugmentedTree::descending_color(Vertex anc, Vertex descendant) const {
    return edge_color[ancestor_at_level(descendant, level[anc] + 1)];
}

std::size_t AugmentedTree::leaf_index(Vertex leaf) const {
    auto it = std::lower_bound(leaves.begin(), leaves.end(), leaf);
    if (it == leaves.end() || *it != leaf) {
        throw PreconditionError("vertex " + std::to_string(leaf) + " is not a leaf");
    }
    return static_cast<std::size_t>(it - leaves.begin());
}

AugmentedTree assemble_tree(TreeParams params, bool reduced, std::vector<Vertex> parent,
                            std::vector<int> edge_color, std::vector<AugEdge> aug_edges) {
    const auto n = static_cast<Vertex>(parent.size());
    if (n == 0 || parent[0] != 0 || edge_color.size() != parent.size()) {
        throw PreconditionError("tree must have a root mapped to itself and one color per vertex");
    }
    AugmentedTree t;
    t.params = params;
    t.reduced = reduced;
    t.level.assign(n, 0);
    t.child_begin.assign(n + 1, 0);
    for (Vertex v = 1; v < n; ++v) {
        if (parent[v] < 0 || parent[v] >= v || parent[v] < parent[v - 1]) {
            throw PreconditionError("parent array is not in breadth-first order at vertex " +
                                    std::to_string(v));
        }
        t.level[v] = t.level[parent[v]] + 1;
    }
    // child_begin[v] = first vertex whose parent is >= v (excluding the root)
    Vertex cursor = 1;
    for (Vertex v = 0; v < n; ++v) {
        while (cursor < n && parent[cursor] < v) ++cursor;
        t.child_begin[v] = cursor;
    }
    t.child_begin[n] = n;
    for (Vertex v = 0; v < n; ++v) {
        if (t.child_begin[v] == t.child_begin[v + 1]) t.leaves.push_back(v);
    }
    t.parent = std::move(parent);
    t.edge_color = std::move(edge_color);
    std::sort(aug_edges.begin(), aug_edges.end(), [&](const AugEdge& a, const AugEdge& b) {
        if (a.leaf != b.leaf) return a.leaf < b.leaf;
        return t.level[a.ancestor] < t.level[b.ancestor];
    });
    t.aug_edges = std::move(aug_edges);
    return t;
}

ValidationReport validate_augmented_tree(const AugmentedTree& t) {
    ValidationReport report;
    const Vertex n = t.vertex_count();
    if (n == 0) {
        report.add("empty tree");
        return report;
    }
    if (t.edge_color.size() != static_cast<std::size_t>(n) ||
        t.level.size() != static_cast<std::size_t>(n) ||
        t.child_begin.size() != static_cast<std::size_t>(n) + 1) {
        report.add("array sizes disagree with vertex count");
        return report;
    }
    const int d = t.params.d;
    if (d < 1) report.add("branching d must be positive");
    if (t.parent[0] != 0 || t.level[0] != 0) report.add("root must be its own parent at level 0");

    // structure: breadth-first order and consistent children
    for (Vertex v = 1; v < n; ++v) {
        const Vertex p = t.parent[v];
        if (p < 0 || p >= v) {
            report.add("vertex " + std::to_string(v) + " has parent " + std::to_string(p) +
                       " out of breadth-first order");
            return report;
        }
        if (t.level[v] != t.level[p] + 1) {
            report.add("vertex " + std::to_string(v) + " has inconsistent level");
        }
        if (v < t.child_begin[p] || v >= t.child_begin[p + 1]) {
            report.add("vertex " + std::to_string(v) + " is not listed among the children of its parent");
        }
    }
    for (Vertex v = 0; v < n; ++v) {
        if (t.child_begin[v] > t.child_begin[v + 1]) {
            report.add("child offsets decrease at vertex " + std::to_string(v));
            return report;
        }
    }

    // leaves
    std::vector<Vertex> expected_leaves;
    for (Vertex v = 0; v < n; ++v) {
        if (t.is_leaf(v)) expected_leaves.push_back(v);
    }
    if (expected_leaves != t.leaves) report.add("leaf set disagrees with the childless vertices");

    // branching and edge colors
    const int leaf_level = t.level[t.leaves.empty() ? 0 : t.leaves.front()];
    for (Vertex v = 0; v < n; ++v) {
        if (t.is_leaf(v)) {
            if (!t.reduced && t.level[v] != leaf_level) {
                report.add("leaf " + std::to_string(v) + " is at level " + std::to_string(t.level[v]) +
                           ", other leaves at level " + std::to_string(leaf_level));
            }
            continue;
        }
        const int want = (t.reduced && v != 0) ? d - 1 : d;
        if (t.child_count(v) != want) {
            report.add("vertex " + std::to_string(v) + " has " + std::to_string(t.child_count(v)) +
                       " children, expected " + std::to_string(want));
        }
        int previous = 0;
        for (Vertex c : t.children(v)) {
            const int color = t.edge_color[c];
            if (color < 1 || color > d) {
                report.add("edge to vertex " + std::to_string(c) + " has color " +
                           std::to_string(color) + " outside [d]");
            }
            if (color <= previous) {
                report.add("children of vertex " + std::to_string(v) + " are not in color order");
            }
            previous = color;
            if (!t.reduced && color != c - t.child_begin[v] + 1) {
                report.add("edge to vertex " + std::to_string(c) + " has color " +
                           std::to_string(color) + " but child index " +
                           std::to_string(c - t.child_begin[v] + 1));
            }
            if (t.reduced && v != 0 && color == t.edge_color[v]) {
                report.add("coloring is not proper at vertex " + std::to_string(v) +
                           ": child edge repeats the parent edge color");
            }
        }
    }
    if (t.reduced && !t.leaves.empty()) {
        for (Vertex v : t.leaves) {
            if (t.level[v] != leaf_level) {
                report.add("leaf " + std::to_string(v) + " is not on the common leaf level");
                break;
            }
        }
    }

    // augmenting edges
    std::vector<int> per_leaf(n, 0);
    for (std::size_t i = 0; i < t.aug_edges.size(); ++i) {
        const AugEdge& e = t.aug_edges[i];
        const std::string where = "aug edge (" + std::to_string(e.leaf) + "," + std::to_string(e.ancestor) + ")";
        if (e.leaf < 0 || e.leaf >= n || e.ancestor < 0 || e.ancestor >= n) {
            report.add(where + " has an endpoint out of range");
            continue;
        }
        if (!t.is_leaf(e.leaf)) report.add(where + " does not start at a leaf");
        if (!t.is_strict_ancestor(e.ancestor, e.leaf)) {
            report.add(where + ": not an ancestor of the leaf");
        } else if (t.level[e.leaf] - t.level[e.ancestor] < 2) {
            report.add(where + " spans distance < 2");
        }
        ++per_leaf[e.leaf];
        if (i > 0) {
            const AugEdge& prev = t.aug_edges[i - 1];
            if (prev.leaf > e.leaf ||
                (prev.leaf == e.leaf && t.level[prev.ancestor] > t.level[e.ancestor])) {
                report.add(where + " breaks the canonical (leaf, ancestor level) order");
            }
            if (prev == e) report.add(where + " is a parallel aug edge");
        }
    }
    for (Vertex v : t.leaves) {
        if (per_leaf[v] != t.params.r) {
            report.add("leaf " + std::to_string(v) + " has " + std::to_string(per_leaf[v]) +
                       " ≠ r=" + std::to_string(t.params.r) + " aug edges");
        }
    }
    return report;
}

CompleteTreeIndex::CompleteTreeIndex(int d, int height) : d_(d), height_(height) {
    first_.assign(height + 2, 0);
    std::int64_t width = 1;
    std::int64_t total = 0;
    for (int l = 0; l <= height; ++l) {
        first_[l] = static_cast<Vertex>(total);
        total += width;
        width *= d;
        if (total > std::numeric_limits<Vertex>::max()) {
            throw BudgetExceeded("complete tree exceeds the vertex id range");
        }
    }
    first_[height + 1] = static_cast<Vertex>(total);
}

}  // namespace augtree
