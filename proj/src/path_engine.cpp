#include "augtree/path_engine.hpp"

#include <algorithm>
#include <string>

#include "augtree/errors.hpp"

namespace augtree {

int phi(const AugmentedTree& t, Vertex parent, Vertex child) {
    if (child <= 0 || child >= t.vertex_count() || parent < 0 || t.parent[child] != parent) {
        throw PreconditionError("(" + std::to_string(parent) + "," + std::to_string(child) +
                                ") is not a tree edge");
    }
    return t.edge_color[child];
}

FullPath full_path(const AugmentedTree& t, Vertex leaf) {
    if (leaf < 0 || leaf >= t.vertex_count() || !t.is_leaf(leaf)) {
        throw PreconditionError("vertex " + std::to_string(leaf) + " is not a leaf");
    }
    FullPath p;
    p.vertices.resize(t.level[leaf] + 1);
    for (Vertex v = leaf; v != 0; v = t.parent[v]) p.vertices[t.level[v]] = v;
    p.vertices[0] = 0;
    for (std::size_t i = 1; i < p.vertices.size(); ++i) p.colors.push_back(t.edge_color[p.vertices[i]]);
    return p;
}

namespace {

template <class Key>
FullPath descend(const AugmentedTree& t, const Coloring& f, Key key, bool strict) {
    if (f.size() < static_cast<std::size_t>(t.vertex_count())) {
        throw PreconditionError("coloring does not cover the tree");
    }
    FullPath p;
    Vertex v = 0;
    p.vertices.push_back(0);
    while (!t.is_leaf(v)) {
        const Color want = f[v];
        Vertex next = -1;
        for (Vertex c : t.children(v)) {
            if (key(c) == want) {
                next = c;
                break;
            }
        }
        if (next < 0) {
            if (strict) {
                throw PreconditionError("vertex " + std::to_string(v) + " has color " +
                                        std::to_string(want) + " outside [d]");
            }
            throw MissingBranch(v, want);
        }
        p.colors.push_back(want);
        p.vertices.push_back(next);
        v = next;
    }
    return p;
}

}  // namespace

FullPath f_path(const AugmentedTree& t, const Coloring& f) {
    return descend(t, f, [&](Vertex c) { return t.edge_color[c]; }, !t.reduced);
}

FullPath descend_by_labels(const AugmentedTree& t, const Coloring& f,
                           std::span<const Color> label) {
    if (label.size() < static_cast<std::size_t>(t.vertex_count())) {
        throw PreconditionError("labels do not cover the tree");
    }
    return descend(t, f, [&](Vertex c) { return label[c]; }, false);
}

PigeonholeChoice pigeonhole_select(const AugmentedTree& t, Vertex leaf, int group_size) {
    auto mates = t.mates(leaf);
    for (int c = 1; c <= t.params.d; ++c) {
        PigeonholeChoice choice{c, {}};
        for (const AugEdge& e : mates) {
            if (t.descending_color(e.ancestor, leaf) == c) choice.mates.push_back(e.ancestor);
        }
        if (static_cast<int>(choice.mates.size()) >= group_size) return choice;
    }
    throw PreconditionError("no descending color is shared by " + std::to_string(group_size) +
                            " mates of leaf " + std::to_string(leaf));
}

}  // namespace augtree
