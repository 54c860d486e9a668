#include "augtree/gadgets.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "augtree/errors.hpp"
#include "augtree/path_engine.hpp"

namespace augtree {

// ---------------------------------------------------------------------------
// Hypergraphs

HypergraphBundle build_hypergraph(const AugmentedTree& base, int t, int k) {
    if (t < 2 || k < 2) throw ParameterError("hypergraph needs t >= 2 and k >= 2");
    if (base.reduced || base.params.d != k) {
        throw PreconditionError("hypergraph base must be a complete k-ary tree");
    }
    if (base.params.r != (t - 1) * k + 1) {
        throw PreconditionError("hypergraph base needs r = (t-1)k+1 = " + std::to_string((t - 1) * k + 1));
    }
    HypergraphBundle out;
    out.k = k;
    out.t = t;
    out.skeleton = base;
    Hypergraph& h = out.hypergraph;
    h.uniformity = t;
    h.vertex_count = base.leaves.empty() ? base.vertex_count() : base.leaves.front();
    h.members.reserve(base.leaves.size() * t);
    h.origin_leaf.reserve(base.leaves.size());
    for (Vertex leaf : base.leaves) {
        const PigeonholeChoice choice = pigeonhole_select(base, leaf, t);
        h.members.insert(h.members.end(), choice.mates.begin(), choice.mates.begin() + t);
        h.origin_leaf.push_back(leaf);
    }
    return out;
}

std::size_t hyper_witness(const HypergraphBundle& bundle, const Coloring& f) {
    const Hypergraph& h = bundle.hypergraph;
    if (f.size() < static_cast<std::size_t>(h.vertex_count)) {
        throw PreconditionError("coloring does not cover the hypergraph");
    }
    for (Vertex v = 0; v < h.vertex_count; ++v) {
        if (f[v] < 1 || f[v] > bundle.k) {
            throw PreconditionError("vertex " + std::to_string(v) + " has color " + std::to_string(f[v]) +
                                    " outside [k]");
        }
    }
    const AugmentedTree& t = bundle.skeleton;
    Vertex v = 0;
    while (!t.is_leaf(v)) v = t.child_begin[v] + f[v] - 1;
    const std::size_t e = t.leaf_index(v);
    for (Vertex x : h.edge(e)) {
        if (f[x] != f[h.edge(e)[0]]) throw WitnessFailure("hyperedge of the reached leaf is not monochromatic");
    }
    return e;
}

// ---------------------------------------------------------------------------
// Gadget bundles

const char* to_string(GadgetKind kind) {
    switch (kind) {
        case GadgetKind::odd_cycle: return "odd_cycle";
        case GadgetKind::twin_cycles: return "twin_cycles";
        case GadgetKind::sparse: return "sparse";
        case GadgetKind::choosable: return "choosable";
        case GadgetKind::listcap: return "listcap";
        case GadgetKind::small_union: return "small_union";
    }
    return "?";
}

std::size_t GadgetBundle::copy_count() const { return skeleton ? skeleton->leaves.size() : 0; }

Vertex GadgetBundle::copy_vertex(std::size_t copy, Vertex w) const {
    const Vertex nc = child->vertex_count();
    if (root_merged) {
        if (w == 0) return skeleton->leaves[copy];
        return copy_base + static_cast<Vertex>(copy) * (nc - 1) + (w - 1);
    }
    return copy_base + static_cast<Vertex>(copy) * nc + w;
}

Vertex GadgetBundle::mate_of(std::size_t copy, Vertex w) const {
    const AugmentedTree& t = *skeleton;
    const Vertex leaf = t.leaves[copy];
    auto mates = t.mates(leaf);
    int slot = mate_slot[w];
    if (!root_merged) return mates[slot].ancestor;
    for (int pass = 1; pass >= 0; --pass) {
        for (const AugEdge& e : mates) {
            if ((t.level[leaf] - t.level[e.ancestor]) % 2 == pass && slot-- == 0) return e.ancestor;
        }
    }
    throw PreconditionError("mate slot out of range");
}

Color GadgetBundle::map_color(std::size_t copy, Color c) const {
    if (copy_table_width > 0) return copy_color_table[copy * copy_table_width + c];
    return copy_color_offset[copy] + c;
}

Color GadgetBundle::unmap_color(std::size_t copy, Color c) const {
    if (copy_table_width > 0) {
        for (int u = 1; u < copy_table_width; ++u) {
            if (copy_color_table[copy * copy_table_width + u] == c) return u;
        }
        return kUncolored;
    }
    const Color u = c - copy_color_offset[copy];
    const Color top = child->lists ? child->lists->universe().back() : 0;
    return (u >= 1 && u <= top) ? u : kUncolored;
}

bool operator==(const GadgetBundle& a, const GadgetBundle& b) {
    auto shallow = [](const GadgetBundle& x) {
        return std::tie(x.kind, x.k, x.g, x.graph, x.lists, x.orientation, x.skeleton, x.origin, x.added_color,
                        x.tree_label, x.copy_color_offset, x.copy_table_width, x.copy_color_table, x.mate_slot,
                        x.copy_base, x.root_merged, x.twin_lists);
    };
    if (shallow(a) != shallow(b)) return false;
    if (!a.child || !b.child) return !a.child && !b.child;
    return *a.child == *b.child;
}

namespace {

// Edges gathered with their tags and (optionally) arcs, sorted together.
struct Assembly {
    struct Item {
        Edge edge;
        Arc arc;
        EdgeTag tag;
    };
    std::vector<Item> items;

    void add(Vertex tail, Vertex head, EdgeTag tag) { items.push_back({make_edge(tail, head), {tail, head}, tag}); }

    void finish(Vertex n, Graph& g, Orientation* o) {
        std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) { return x.edge < y.edge; });
        g.vertex_count = n;
        g.edges.resize(items.size());
        g.tags.resize(items.size());
        if (o) o->arcs.resize(items.size());
        for (std::size_t i = 0; i < items.size(); ++i) {
            g.edges[i] = items[i].edge;
            g.tags[i] = items[i].tag;
            if (o) o->arcs[i] = items[i].arc;
        }
        items.clear();
        items.shrink_to_fit();
    }
};

void check_budget(std::int64_t vertices, std::size_t budget, const char* what) {
    if (vertices < 0 || static_cast<std::uint64_t>(vertices) > budget) {
        throw BudgetExceeded(std::string(what) + " needs " + std::to_string(vertices) + " vertices, budget is " +
                             std::to_string(budget));
    }
}

GadgetBundle build_odd_cycle(int g) {
    GadgetBundle b;
    b.kind = GadgetKind::odd_cycle;
    b.k = 2;
    b.g = g;
    const Vertex n = g + 1;
    Assembly a;
    for (Vertex i = 0; i < n; ++i) a.add(i, (i + 1) % n, EdgeTag::gadget);
    a.finish(n, b.graph, nullptr);
    b.origin.assign(n, Origin{});
    for (Vertex i = 0; i < n; ++i) b.origin[i].vertex = i;
    b.added_color.assign(n, kUncolored);
    return b;
}

// Two g-cycles through vertex 0: 0,1,...,g-1 and 0,g,...,2g-2.
GadgetBundle build_twin_cycles(int g, TwinLists family) {
    GadgetBundle b;
    b.kind = GadgetKind::twin_cycles;
    b.k = 2;
    b.g = g;
    b.twin_lists = family;
    const Vertex n = 2 * g - 1;
    Assembly a;
    Orientation o;
    for (int cycle = 0; cycle < 2; ++cycle) {
        const Vertex first = cycle == 0 ? 1 : g;
        Vertex prev = 0;
        for (Vertex i = 0; i < g - 1; ++i) {
            a.add(prev, first + i, EdgeTag::gadget);
            prev = first + i;
        }
        a.add(prev, 0, EdgeTag::gadget);
    }
    a.finish(n, b.graph, &o);
    o.root = 0;
    b.orientation = std::move(o);

    std::vector<std::vector<Color>> lists(n);
    lists[0] = {1, 2};
    for (int cycle = 0; cycle < 2; ++cycle) {
        const Vertex first = cycle == 0 ? 1 : g;
        // cycle 0 forces color 1 next to the root, cycle 1 forces color 2
        const Color own = cycle == 0 ? 1 : 2;
        const Color other = 3 - own;
        for (Vertex i = 0; i < g - 1; ++i) {
            std::vector<Color>& l = lists[first + i];
            if (family == TwinLists::intersection_one) {
                const std::vector<Color> rotation[3] = {{own, 3}, {3, 4}, {4, own}};
                l = rotation[i % 3];
            } else if (i == 0) {
                l = {own, 3};
            } else if (i == g - 2) {
                l = {own, other};
            } else {
                l = {other, 3};
            }
            std::sort(l.begin(), l.end());
        }
    }
    b.lists = ListAssignment(lists);
    b.origin.assign(n, Origin{});
    for (Vertex i = 0; i < n; ++i) b.origin[i].vertex = i;
    b.added_color.assign(n, kUncolored);
    return b;
}

void check_provider(const AugmentedTree& t, int k, std::span<const MateGroup> groups) {
    if (!t.reduced || t.params.d != k) {
        throw PreconditionError("provider mismatch: skeleton must be a reduced k-ary tree");
    }
    const ValidationReport report = check_mate_groups(t, groups);
    if (!report.ok()) throw PreconditionError("provider mismatch: " + report.violations.front());
}

// Side of every child vertex relative to the child root (0 = root side).
std::vector<std::uint8_t> root_sides(const GadgetBundle& child) {
    const BipartitionResult parts = bipartition(child.graph);
    const auto* bip = std::get_if<Bipartition>(&parts);
    if (!bip) throw PreconditionError("child gadget is not bipartite");
    std::vector<std::uint8_t> side = bip->side;
    if (side[0] != 0) {
        for (auto& s : side) s ^= 1;
    }
    return side;
}

// Fills origin, mate slots and the copy edges (with arcs) shared by every
// root-merged construction; returns the mate vertex of each copy vertex.
void attach_merged_copies(GadgetBundle& b, const AugmentedTree& skel, const GadgetBundle& child,
                          const std::vector<std::uint8_t>& side, Assembly& a) {
    const Vertex nc = child.vertex_count();
    b.mate_slot.assign(nc, -1);
    int a_count = 0;
    for (Vertex w = 1; w < nc; ++w) a_count += side[w] == 0;
    for (Vertex w = 1, odd = 0, even = 0; w < nc; ++w) b.mate_slot[w] = side[w] == 0 ? odd++ : a_count + even++;
    const Vertex n_tree = skel.vertex_count();
    for (Vertex v = 1; v < n_tree; ++v) a.add(skel.parent[v], v, EdgeTag::tree);
    b.origin.resize(b.graph.vertex_count);
    for (Vertex v = 0; v < n_tree; ++v) b.origin[v] = {-1, v};
    for (std::size_t j = 0; j < skel.leaves.size(); ++j) {
        const Vertex leaf = skel.leaves[j];
        for (Vertex w = 1; w < nc; ++w) {
            const Vertex mate = b.mate_of(j, w);
            if (((skel.level[leaf] - skel.level[mate]) % 2 == 1) != (side[w] == 0)) {
                throw PreconditionError("provider mismatch: mate parities differ between leaves");
            }
            const Vertex x = b.copy_vertex(j, w);
            b.origin[x] = {static_cast<std::int32_t>(j), w};
            a.add(x, mate, EdgeTag::aug);
        }
        b.origin[leaf] = {static_cast<std::int32_t>(j), 0};
        for (std::size_t i = 0; i < child.graph.edges.size(); ++i) {
            const Arc& arc = child.orientation->arcs[i];
            a.add(b.copy_vertex(j, arc.tail), b.copy_vertex(j, arc.head), child.graph.tags[i]);
        }
    }
}

GadgetBundle build_merged(GadgetKind kind, int k, int g, const BaseProvider& provider, std::size_t budget,
                          std::shared_ptr<const GadgetBundle> child) {
    const std::vector<std::uint8_t> side = root_sides(*child);
    const Vertex nc = child->vertex_count();
    int a_count = 0;
    for (Vertex w = 1; w < nc; ++w) a_count += side[w] == 0;
    const bool aligned = kind == GadgetKind::small_union;
    const std::vector<MateGroup> groups = {{a_count, MateParity::odd, aligned},
                                           {nc - 1 - a_count, MateParity::even, aligned}};
    AugmentedTree skel = provider(k, groups, budget);
    check_provider(skel, k, groups);
    const Vertex n_tree = skel.vertex_count();
    const std::size_t copies = skel.leaves.size();
    check_budget(static_cast<std::int64_t>(n_tree) + static_cast<std::int64_t>(copies) * (nc - 1), budget,
                 to_string(kind));

    GadgetBundle b;
    b.kind = kind;
    b.k = k;
    b.g = g;
    b.root_merged = true;
    b.copy_base = n_tree;
    b.child = child;
    b.graph.vertex_count = n_tree + static_cast<Vertex>(copies) * (nc - 1);
    b.skeleton = std::move(skel);
    const AugmentedTree& t = *b.skeleton;

    Assembly asm_edges;
    attach_merged_copies(b, t, *child, side, asm_edges);
    Orientation o;
    o.root = 0;
    asm_edges.finish(b.graph.vertex_count, b.graph, &o);
    b.orientation = std::move(o);

    // lists
    const Vertex n = b.graph.vertex_count;
    b.added_color.assign(n, kUncolored);
    const ListAssignment& cl = *child->lists;
    const Color child_top = cl.universe().back();
    if (kind == GadgetKind::listcap) {
        b.tree_label.resize(n_tree);
        std::iota(b.tree_label.begin(), b.tree_label.end(), 0);
    }
    // color of the edge descending from ancestor x toward leaf
    auto descending = [&](Vertex x, Vertex leaf) {
        const Vertex next = t.ancestor_at_level(leaf, t.level[x] + 1);
        return kind == GadgetKind::listcap ? b.tree_label[next] : t.edge_color[next];
    };
    if (kind == GadgetKind::small_union) {
        b.copy_table_width = child_top + 1;
        b.copy_color_table.assign(copies * b.copy_table_width, kUncolored);
    } else {
        const Color base = kind == GadgetKind::listcap ? n_tree - 1 : k;
        b.copy_color_offset.resize(copies);
        for (std::size_t j = 0; j < copies; ++j) b.copy_color_offset[j] = base + static_cast<Color>(j) * child_top;
    }

    ListAssignment::Builder lists(n);
    std::vector<Color> buf;
    for (Vertex x = 0; x < n_tree; ++x) {
        if (t.is_leaf(x)) break;   // leaves close the breadth-first order
        buf.clear();
        if (kind == GadgetKind::listcap) {
            if (x != 0) buf.push_back(b.tree_label[x]);
            for (Vertex c : t.children(x)) buf.push_back(b.tree_label[c]);
        } else {
            for (Color c = 1; c <= k; ++c) buf.push_back(c);
        }
        lists.append(buf);
    }
    const Color universe = 2 * k - 1;
    // pass 1: palettes and the lists of the merged roots (the leaves)
    for (std::size_t j = 0; j < copies; ++j) {
        const Vertex leaf = t.leaves[j];
        const Color c_leaf = kind == GadgetKind::listcap ? b.tree_label[leaf] : t.edge_color[leaf];
        if (kind == GadgetKind::small_union) {
            Color c = kUncolored, c2 = kUncolored;
            for (Vertex w = 1; w < nc; ++w) {
                const Color col = descending(b.mate_of(j, w), leaf);
                (side[w] == 0 ? c : c2) = col;
            }
            if (c == kUncolored) c = c2;
            if (c2 == kUncolored) c2 = c;
            std::vector<Color> s;
            for (Color x = 1; x <= universe; ++x) {
                if (x != c && x != c2) s.push_back(x);
            }
            if (c == c2) s.pop_back();
            const std::vector<Color>& cu = cl.universe();
            if (cu.size() != s.size()) throw PreconditionError("child lists must use 2k-3 colors");
            Color* row = b.copy_color_table.data() + j * b.copy_table_width;
            for (std::size_t i = 0; i < cu.size(); ++i) row[cu[i]] = s[i];
            auto root_list = cl.list(0);
            auto in_root = [&](Color col) {
                return std::any_of(root_list.begin(), root_list.end(), [&](Color u) { return row[u] == col; });
            };
            if (in_root(c_leaf)) {
                // keep the color of the edge into the leaf out of the root's palette
                const Color spare = *std::find_if(s.begin(), s.end(), [&](Color col) { return !in_root(col); });
                std::swap(*std::find(row, row + b.copy_table_width, c_leaf),
                          *std::find(row, row + b.copy_table_width, spare));
            }
        }
        buf.clear();
        for (Color u : cl.list(0)) buf.push_back(b.map_color(j, u));
        buf.push_back(c_leaf);
        b.added_color[leaf] = c_leaf;
        lists.append(buf);
    }
    // pass 2: the remaining copy vertices, copy by copy
    for (std::size_t j = 0; j < copies; ++j) {
        const Vertex leaf = t.leaves[j];
        for (Vertex w = 1; w < nc; ++w) {
            const Color added = descending(b.mate_of(j, w), leaf);
            b.added_color[b.copy_vertex(j, w)] = added;
            buf.clear();
            for (Color u : cl.list(w)) buf.push_back(b.map_color(j, u));
            buf.push_back(added);
            lists.append(buf);
        }
    }
    b.lists = std::move(lists).finish();
    return b;
}

}  // namespace

BaseProvider aligned_provider() {
    return [](int d, std::span<const MateGroup> groups, std::size_t budget) {
        int r = 0;
        for (const MateGroup& g : groups) r += g.count;
        return build_reduced_color_aligned(d, r, groups, std::nullopt, budget);
    };
}

BaseProvider pigeonhole_provider() {
    return [](int d, std::span<const MateGroup> groups, std::size_t budget) {
        return build_reduced_by_pigeonhole(d, groups, budget);
    };
}

namespace {

void check_kg(int k, int g) {
    if (k < 2) throw ParameterError("k must be at least 2");
    if (g < 4 || g % 2 != 0) throw ParameterError("girth g must be even and at least 4");
}

}  // namespace

GadgetBundle build_Jk(int k, int g, const BaseProvider& provider, std::size_t budget) {
    check_kg(k, g);
    if (k == 2) return build_odd_cycle(g);
    auto child = std::make_shared<const GadgetBundle>(build_Jk(k - 1, g, provider, budget));
    const Vertex nc = child->vertex_count();
    const std::vector<MateGroup> groups = {{nc, MateParity::any, true}};
    AugmentedTree skel = provider(k, groups, budget);
    check_provider(skel, k, groups);
    const Vertex first_leaf = skel.leaves.front();
    const std::size_t copies = skel.leaves.size();
    check_budget(static_cast<std::int64_t>(first_leaf) + static_cast<std::int64_t>(copies) * nc, budget, "sparse gadget");

    GadgetBundle b;
    b.kind = GadgetKind::sparse;
    b.k = k;
    b.g = g;
    b.copy_base = first_leaf;
    b.child = child;
    b.skeleton = std::move(skel);
    const AugmentedTree& t = *b.skeleton;
    const Vertex n = first_leaf + static_cast<Vertex>(copies) * nc;
    b.mate_slot.resize(nc);
    std::iota(b.mate_slot.begin(), b.mate_slot.end(), 0);
    b.origin.resize(n);
    b.added_color.assign(n, kUncolored);

    Assembly a;
    for (Vertex v = 1; v < first_leaf; ++v) a.add(t.parent[v], v, EdgeTag::tree);
    for (Vertex v = 0; v < first_leaf; ++v) b.origin[v] = {-1, v};
    for (std::size_t j = 0; j < copies; ++j) {
        const Vertex leaf = t.leaves[j];
        auto mates = t.mates(leaf);
        for (Vertex w = 0; w < nc; ++w) {
            const Vertex x = b.copy_vertex(j, w);
            b.origin[x] = {static_cast<std::int32_t>(j), w};
            a.add(x, mates[w].ancestor, EdgeTag::aug);
            b.added_color[x] = t.descending_color(mates[w].ancestor, leaf);
        }
        for (std::size_t i = 0; i < child->graph.edges.size(); ++i) {
            const Edge& e = child->graph.edges[i];
            a.add(b.copy_vertex(j, e.u), b.copy_vertex(j, e.v), child->graph.tags[i]);
        }
    }
    a.finish(n, b.graph, nullptr);
    return b;
}

GadgetBundle build_Gk(int k, int g, const BaseProvider& provider, std::size_t budget) {
    check_kg(k, g);
    if (k == 2) return build_twin_cycles(g, g % 6 == 4 ? TwinLists::intersection_one : TwinLists::union_three);
    auto child = std::make_shared<const GadgetBundle>(build_Gk(k - 1, g, provider, budget));
    return build_merged(GadgetKind::choosable, k, g, provider, budget, std::move(child));
}

GadgetBundle build_listcap(int k, int g, const BaseProvider& provider, std::size_t budget) {
    check_kg(k, g);
    if (g % 6 != 4) throw ParameterError("intersection-one lists need g ≡ 4 (mod 6)");
    if (k == 2) return build_twin_cycles(g, TwinLists::intersection_one);
    auto child = std::make_shared<const GadgetBundle>(build_listcap(k - 1, g, provider, budget));
    return build_merged(GadgetKind::listcap, k, g, provider, budget, std::move(child));
}

GadgetBundle build_Hk_smallunion(int k, int g, const BaseProvider& provider, std::size_t budget) {
    check_kg(k, g);
    if (k == 2) return build_twin_cycles(g, TwinLists::union_three);
    auto child = std::make_shared<const GadgetBundle>(build_Hk_smallunion(k - 1, g, provider, budget));
    return build_merged(GadgetKind::small_union, k, g, provider, budget, std::move(child));
}

// ---------------------------------------------------------------------------
// Witnesses

namespace {

bool has_edge(const Graph& g, Edge e) {
    e = make_edge(e.u, e.v);
    return std::binary_search(g.edges.begin(), g.edges.end(), e);
}

std::optional<Edge> scan_edges(const Graph& g, std::span<const Color> f) {
    for (const Edge& e : g.edges) {
        if (f[e.u] == f[e.v]) return e;
    }
    return std::nullopt;
}

// Tree edges in breadth-first order, below `limit` (the copy region).
std::optional<Edge> scan_tree(const AugmentedTree& t, Vertex limit, std::span<const Color> f) {
    for (Vertex v = 1; v < limit; ++v) {
        if (f[v] == f[t.parent[v]]) return make_edge(t.parent[v], v);
    }
    return std::nullopt;
}

Witness jk_rec(const GadgetBundle& b, std::span<const Color> f) {
    if (b.kind == GadgetKind::odd_cycle) {
        if (auto e = scan_edges(b.graph, f)) return {*e, WitnessReason::base_gadget, 0};
        throw WitnessFailure("odd cycle has no monochromatic edge");
    }
    const AugmentedTree& t = *b.skeleton;
    if (auto e = scan_tree(t, b.copy_base, f)) return {*e, WitnessReason::improper_tree_edge, 0};
    Vertex v = 0;
    while (!t.is_leaf(v)) {
        Vertex next = -1;
        for (Vertex c : t.children(v)) {
            if (t.edge_color[c] == f[v]) next = c;
        }
        if (next < 0) throw WitnessFailure("f-path descent stuck at vertex " + std::to_string(v));
        v = next;
    }
    const std::size_t j = t.leaf_index(v);
    const GadgetBundle& child = *b.child;
    std::vector<Color> sub(child.vertex_count());
    for (Vertex w = 0; w < child.vertex_count(); ++w) {
        const Vertex x = b.copy_vertex(j, w);
        const Vertex mate = b.mate_of(j, w);
        if (f[x] == f[mate]) return {make_edge(x, mate), WitnessReason::forbidden_color, 0};
        const Color c = f[mate];
        sub[w] = f[x] > c ? f[x] - 1 : f[x];
    }
    Witness inner = jk_rec(child, sub);
    return {make_edge(b.copy_vertex(j, inner.edge.u), b.copy_vertex(j, inner.edge.v)), inner.reason, inner.depth + 1};
}

Witness gk_rec(const GadgetBundle& b, std::span<const Color> f) {
    if (b.kind == GadgetKind::twin_cycles) {
        if (auto e = scan_edges(b.graph, f)) return {*e, WitnessReason::base_gadget, 0};
        throw WitnessFailure("twin cycles have no monochromatic edge");
    }
    const AugmentedTree& t = *b.skeleton;
    if (auto e = scan_tree(t, t.vertex_count(), f)) return {*e, WitnessReason::improper_tree_edge, 0};
    Vertex v = 0;
    while (!t.is_leaf(v)) {
        Vertex next = -1;
        for (Vertex c : t.children(v)) {
            const Color key = b.kind == GadgetKind::listcap ? b.tree_label[c] : t.edge_color[c];
            if (key == f[v]) next = c;
        }
        if (next < 0) throw WitnessFailure("f-path descent stuck at vertex " + std::to_string(v));
        v = next;
    }
    const std::size_t j = t.leaf_index(v);
    const GadgetBundle& child = *b.child;
    std::vector<Color> sub(child.vertex_count());
    for (Vertex w = 0; w < child.vertex_count(); ++w) {
        const Vertex x = b.copy_vertex(j, w);
        const Vertex nbr = w == 0 ? t.parent[v] : b.mate_of(j, w);
        if (f[x] == b.added_color[x]) {
            if (f[nbr] != f[x]) throw WitnessFailure("added color is not used by the tree neighbor");
            return {make_edge(x, nbr), WitnessReason::forbidden_color, 0};
        }
        sub[w] = b.unmap_color(j, f[x]);
        if (sub[w] == kUncolored) throw WitnessFailure("copy color outside the copy palette");
    }
    Witness inner = gk_rec(child, sub);
    return {make_edge(b.copy_vertex(j, inner.edge.u), b.copy_vertex(j, inner.edge.v)), inner.reason, inner.depth + 1};
}

void verify_witness(const GadgetBundle& b, const Coloring& f, const Witness& w) {
    if (!has_edge(b.graph, w.edge) || f[w.edge.u] != f[w.edge.v]) {
        throw WitnessFailure("witness edge {" + std::to_string(w.edge.u) + "," + std::to_string(w.edge.v) +
                             "} failed re-verification");
    }
}

void require_total(const GadgetBundle& b, const Coloring& f) {
    if (f.size() != static_cast<std::size_t>(b.vertex_count())) {
        throw PreconditionError("coloring size differs from the vertex count");
    }
}

}  // namespace

Witness Jk_witness(const GadgetBundle& bundle, const Coloring& f) {
    if (bundle.kind != GadgetKind::odd_cycle && bundle.kind != GadgetKind::sparse) {
        throw PreconditionError("Jk_witness needs a sparse gadget");
    }
    require_total(bundle, f);
    for (Vertex v = 0; v < bundle.vertex_count(); ++v) {
        if (f[v] < 1 || f[v] > bundle.k) {
            throw PreconditionError("vertex " + std::to_string(v) + " has color " + std::to_string(f[v]) +
                                    " outside [k]");
        }
    }
    Witness w = jk_rec(bundle, f);
    verify_witness(bundle, f, w);
    return w;
}

Witness Gk_witness(const GadgetBundle& bundle, const Coloring& f) {
    if (!bundle.lists) throw PreconditionError("Gk_witness needs a gadget with lists");
    require_total(bundle, f);
    for (Vertex v = 0; v < bundle.vertex_count(); ++v) {
        if (!bundle.lists->contains(v, f[v])) {
            throw PreconditionError("vertex " + std::to_string(v) + " takes color " + std::to_string(f[v]) +
                                    " outside its list");
        }
    }
    Witness w = gk_rec(bundle, f);
    verify_witness(bundle, f, w);
    return w;
}

Witness bundle_witness(const GadgetBundle& bundle, const Coloring& f) {
    if (bundle.kind == GadgetKind::odd_cycle || bundle.kind == GadgetKind::sparse) return Jk_witness(bundle, f);
    return Gk_witness(bundle, f);
}

// ---------------------------------------------------------------------------
// Trials

namespace {

// Colors allowed at v: its list, or [k] for list-free gadgets.
template <class Fn>
void allowed(const GadgetBundle& b, Vertex v, Fn fn) {
    if (b.lists) {
        for (Color c : b.lists->list(v)) fn(c);
    } else {
        for (Color c = 1; c <= b.k; ++c) fn(c);
    }
}

Color pick_avoiding(const GadgetBundle& b, Vertex v, std::mt19937_64& rng, std::span<const Color> avoid,
                    std::vector<Color>& scratch) {
    scratch.clear();
    allowed(b, v, [&](Color c) {
        if (std::find(avoid.begin(), avoid.end(), c) == avoid.end()) scratch.push_back(c);
    });
    if (scratch.empty()) allowed(b, v, [&](Color c) { scratch.push_back(c); });
    std::uniform_int_distribution<std::size_t> pick(0, scratch.size() - 1);
    return scratch[pick(rng)];
}

Coloring random_coloring_impl(const GadgetBundle& b, TrialMode mode, std::mt19937_64& rng, const Adjacency* adj) {
    const Vertex n = b.vertex_count();
    Coloring f(n, kUncolored);
    std::vector<Color> scratch;
    const Vertex tree_end = b.skeleton ? b.copy_base : 0;
    for (Vertex v = 0; v < n; ++v) {
        if (mode != TrialMode::uniform && v < tree_end && v > 0) {
            const Color p = f[b.skeleton->parent[v]];
            f[v] = pick_avoiding(b, v, rng, std::span<const Color>(&p, 1), scratch);
        } else if (mode == TrialMode::greedy && adj) {
            std::vector<Color> used;
            for (Vertex w : adj->neighbors(v)) {
                if (f[w] != kUncolored) used.push_back(f[w]);
            }
            f[v] = pick_avoiding(b, v, rng, used, scratch);
        } else {
            f[v] = pick_avoiding(b, v, rng, {}, scratch);
        }
    }
    return f;
}

std::mt19937_64 trial_stream(std::uint64_t seed, std::size_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

TrialMode mode_of(std::size_t trial) { return static_cast<TrialMode>(trial % 3); }

}  // namespace

Coloring random_coloring(const GadgetBundle& bundle, TrialMode mode, std::mt19937_64& rng) {
    if (mode == TrialMode::greedy) {
        const Adjacency adj(bundle.graph);
        return random_coloring_impl(bundle, mode, rng, &adj);
    }
    return random_coloring_impl(bundle, mode, rng, nullptr);
}

Coloring random_coloring(const HypergraphBundle& bundle, TrialMode mode, std::mt19937_64& rng) {
    const Vertex n = bundle.hypergraph.vertex_count;
    Coloring f(n);
    std::uniform_int_distribution<Color> any(1, bundle.k);
    std::uniform_int_distribution<Color> other(1, bundle.k - 1);
    for (Vertex v = 0; v < n; ++v) {
        if (mode == TrialMode::uniform || v == 0) {
            f[v] = any(rng);
        } else {
            const Color p = f[bundle.skeleton.parent[v]];
            const Color c = other(rng);
            f[v] = c >= p ? c + 1 : c;
        }
    }
    return f;
}

TrialReport run_witness_trials(const GadgetBundle& bundle, std::size_t trials, std::uint64_t seed) {
    TrialReport report;
    report.trials = trials;
    std::optional<Adjacency> adj;
    for (std::size_t i = 0; i < trials; ++i) {
        std::mt19937_64 rng = trial_stream(seed, i);
        const TrialMode mode = mode_of(i);
        if (mode == TrialMode::greedy && !adj) adj.emplace(bundle.graph);
        const Coloring f = random_coloring_impl(bundle, mode, rng, mode == TrialMode::greedy ? &*adj : nullptr);
        try {
            const Witness w = bundle_witness(bundle, f);
            if (i == 0) report.sample_edge = w.edge;
            ++report.reason_counts[static_cast<std::size_t>(w.reason)];
        } catch (const Error&) {
            ++report.failures;
        }
    }
    return report;
}

TrialReport run_witness_trials(const HypergraphBundle& bundle, std::size_t trials, std::uint64_t seed) {
    TrialReport report;
    report.trials = trials;
    for (std::size_t i = 0; i < trials; ++i) {
        std::mt19937_64 rng = trial_stream(seed, i);
        const Coloring f = random_coloring(bundle, mode_of(i), rng);
        try {
            const std::size_t e = hyper_witness(bundle, f);
            if (i == 0) report.sample_hyperedge = e;
            ++report.reason_counts[static_cast<std::size_t>(WitnessReason::base_gadget)];
        } catch (const Error&) {
            ++report.failures;
        }
    }
    return report;
}

}  // namespace augtree
