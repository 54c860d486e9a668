#include "augtree/constructor.hpp"

#include <algorithm>
#include <string>

#include "augtree/errors.hpp"

namespace augtree {

namespace {

void check_girth(int g) {
    if (g < 4 || g % 2 != 0) {
        throw ParameterError("girth g must be even and at least 4, got " + std::to_string(g));
    }
}

void check_dr(const BigNat& d, const BigNat& r) {
    if (d < 2) throw ParameterError("branching d must be at least 2");
    if (r < 1) throw ParameterError("r must be at least 1");
}

void check_budget(const NodeCount& nodes, std::size_t budget, const char* what) {
    if (nodes.exceeds(budget)) {
        throw BudgetExceeded(std::string(what) + " needs " + nodes.to_string() +
                             " vertices, budget is " + std::to_string(budget));
    }
}

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

// Height recursion shared by height_bound and make_plan; steps are recorded
// only when `plan` is given.
BigNat plan_rec(const BigNat& d, const BigNat& r, int g, ConstructionPlan* plan) {
    auto record = [&](StepKind kind, const BigNat& sd, const BigNat& sr, int sg, const BigNat& h,
                      const BigNat& m1 = 0, const BigNat& m2 = 0) {
        if (!plan) return;
        plan->trace.push_back(PlanStep{kind, sd, sr, sg, h, m1, m2});
        plan->node_bound += complete_tree_nodes(sd, h);
    };
    if (g == 4) {
        BigNat h = 2 * r + 1;
        record(StepKind::base, d, r, 4, h);
        return h;
    }
    if (r == 1) {
        BigNat h = plan_rec(d, d * d, g - 2, plan) + 2;
        record(StepKind::girth, d, 1, g, h);
        return h;
    }
    BigNat m1 = plan_rec(d, 1, g, plan);
    if (m1 % 2 == 0) {
        m1 += 1;
        record(StepKind::pad, d, 1, g, m1);
    }
    const BigNat wide = checked_pow(d, m1);
    const BigNat m2 = plan_rec(wide, r - 1, g, plan);
    BigNat h = m1 + m2 - 1;
    record(StepKind::augment, d, r, g, h, m1, m2);
    return h;
}

AugmentedTree complete_tree(int d, int height, TreeParams params, std::vector<AugEdge> aug) {
    const CompleteTreeIndex idx(d, height);
    const Vertex n = idx.vertex_count();
    std::vector<Vertex> parent(n, 0);
    std::vector<int> color(n, 0);
    for (int l = 1; l <= height; ++l) {
        const Vertex width = idx.count_at_level(l);
        for (Vertex p = 0; p < width; ++p) {
            const Vertex v = idx.id(l, p);
            parent[v] = idx.id(l - 1, p / d);
            color[v] = p % d + 1;
        }
    }
    return assemble_tree(params, false, std::move(parent), std::move(color), std::move(aug));
}

void require_complete(const AugmentedTree& t, const char* what) {
    if (t.reduced) throw PreconditionError(std::string(what) + " needs a non-reduced tree");
    const NodeCount want = complete_tree_nodes(t.params.d, t.height());
    if (!want.is_exact() || want.value() != t.vertex_count()) {
        throw PreconditionError(std::string(what) + " needs a complete d-ary tree");
    }
}

NodeCount reduced_nodes(int d, int height) {
    BigNat total = 1;
    BigNat width = d;
    for (int l = 1; l <= height; ++l) {
        total += width;
        width *= d - 1;
        if (bit_length(total) > 64) return NodeCount::at_least_pow2(63);
    }
    return NodeCount::exact(total);
}

void validate_layout(std::span<const MateGroup> groups) {
    bool odd = false, even = false, any = false;
    int total = 0;
    for (const MateGroup& g : groups) {
        if (g.count < 0) throw ParameterError("mate group count must be nonnegative");
        total += g.count;
        bool& seen = g.parity == MateParity::odd ? odd : g.parity == MateParity::even ? even : any;
        if (seen) throw ParameterError("at most one mate group per parity");
        seen = true;
    }
    if (groups.empty() || total == 0) throw ParameterError("mate groups must request at least one mate");
    if (any && groups.size() > 1) throw ParameterError("a mixed-parity group must be the only group");
}

int group_need(int d, const MateGroup& g) {
    if (g.count == 0) return 0;
    return g.aligned ? (g.count - 1) * d + 1 : g.count;
}

bool parity_matches(MateParity p, int distance) {
    if (distance < 2) return false;
    switch (p) {
        case MateParity::odd: return distance % 2 == 1;
        case MateParity::even: return distance % 2 == 0;
        case MateParity::any: return true;
    }
    return false;
}

// Picks `count` candidate levels: all of them in order when unaligned, else
// those with the smallest color reaching `count`. color_at(l) is the color of
// the edge descending from the ancestor at level l.
template <class ColorAt>
bool pick(const std::vector<int>& levels, int count, bool aligned, int d, ColorAt color_at,
          std::vector<int>& out) {
    if (static_cast<int>(levels.size()) < count) return false;
    if (!aligned) {
        out.insert(out.end(), levels.begin(), levels.begin() + count);
        return true;
    }
    for (int c = 1; c <= d; ++c) {
        std::vector<int> same;
        for (int l : levels) {
            if (color_at(l) == c) same.push_back(l);
        }
        if (static_cast<int>(same.size()) >= count) {
            out.insert(out.end(), same.begin(), same.begin() + count);
            return true;
        }
    }
    return false;
}

// Root-to-leaf vertices of `leaf` in a tree.
void path_to(const AugmentedTree& t, Vertex leaf, std::vector<Vertex>& path) {
    path.assign(t.level[leaf] + 1, 0);
    for (Vertex v = leaf; v != 0; v = t.parent[v]) path[t.level[v]] = v;
}

}  // namespace

BigNat height_bound(const BigNat& d, const BigNat& r, int g) {
    check_girth(g);
    check_dr(d, r);
    return plan_rec(d, r, g, nullptr);
}

ConstructionPlan make_plan(const BigNat& d, const BigNat& r, int g) {
    check_girth(g);
    check_dr(d, r);
    ConstructionPlan plan;
    plan.d = d;
    plan.r = r;
    plan.g = g;
    plan.node_bound = NodeCount::exact(0);
    plan.height_bound = plan_rec(d, r, g, &plan);
    return plan;
}

AugmentedTree build_base(int d, int r, std::size_t node_budget) {
    check_dr(d, r);
    const int height = 2 * r + 1;
    check_budget(complete_tree_nodes(d, height), node_budget, "base tree");
    const CompleteTreeIndex idx(d, height);
    std::vector<AugEdge> aug;
    const Vertex leaves = idx.count_at_level(height);
    aug.reserve(static_cast<std::size_t>(leaves) * r);
    for (Vertex p = 0; p < leaves; ++p) {
        for (int l = 0; l <= height - 3; l += 2) {
            aug.push_back({idx.id(height, p),
                           idx.id(l, static_cast<Vertex>(p / ipow(d, height - l)))});
        }
    }
    return complete_tree(d, height, {d, r, 4}, std::move(aug));
}

AugmentedTree expand_girth(const AugmentedTree& g, std::size_t node_budget) {
    require_complete(g, "expand_girth");
    const int d = g.params.d;
    if (g.params.r != d * d) throw PreconditionError("r must equal d² for the girth step");
    const int h = g.height();
    check_budget(complete_tree_nodes(d, h + 2), node_budget, "girth step");
    const CompleteTreeIndex old_idx(d, h);
    const CompleteTreeIndex idx(d, h + 2);
    std::vector<AugEdge> aug;
    aug.reserve(g.aug_edges.size());
    for (Vertex leaf : g.leaves) {
        const Vertex p = leaf - old_idx.first_at_level(h);
        auto mates = g.mates(leaf);
        for (std::size_t i = 0; i < mates.size(); ++i) {
            aug.push_back({idx.id(h + 2, p * d * d + static_cast<Vertex>(i)), mates[i].ancestor});
        }
    }
    return complete_tree(d, h + 2, {d, 1, g.params.girth_target + 2}, std::move(aug));
}

AugmentedTree compose(const AugmentedTree& short_part, const AugmentedTree& wide_part,
                      std::size_t node_budget) {
    require_complete(short_part, "compose");
    require_complete(wide_part, "compose");
    const int d = short_part.params.d;
    const int m1 = short_part.height();
    const int m2 = wide_part.height();
    if (short_part.params.r != 1) throw PreconditionError("the short part must be 1-augmented");
    if (m1 % 2 == 0) throw PreconditionError("height must be odd for the short part of compose");
    const BigNat wide_d = checked_pow(d, m1);
    if (wide_d != wide_part.params.d) {
        throw PreconditionError("the wide part must have branching d^m1 = " + wide_d.get_str());
    }
    const int height = m1 + m2 - 1;
    check_budget(complete_tree_nodes(d, height), node_budget, "composition");
    const std::int64_t D = wide_d.get_si();
    const CompleteTreeIndex idx(d, height);
    const CompleteTreeIndex idx1(d, m1);
    const CompleteTreeIndex idx2(static_cast<int>(D), m2);
    const int r2 = wide_part.params.r;
    const int top = m2 - 1;   // level of the merged roots

    std::vector<AugEdge> aug;
    aug.reserve(static_cast<std::size_t>(idx.count_at_level(height)) * (r2 + 1));
    for (Vertex pu = 0; pu < idx.count_at_level(top); ++pu) {
        // position of u in the wide tree: same base-d digits read in base D
        std::int64_t wide_pos = 0;
        for (int l = top - 1; l >= 0; --l) wide_pos = wide_pos * D + (pu / ipow(d, l)) % d;
        for (std::int64_t i = 0; i < D; ++i) {
            const Vertex leaf = idx.id(height, static_cast<Vertex>(pu * D + i));
            const Vertex wide_leaf = idx2.id(m2, static_cast<Vertex>(wide_pos * D + i));
            for (const AugEdge& e : wide_part.mates(wide_leaf)) {
                const int la = wide_part.level[e.ancestor];
                aug.push_back({leaf, idx.id(la, static_cast<Vertex>(pu / ipow(d, top - la)))});
            }
            for (const AugEdge& e : short_part.mates(idx1.id(m1, static_cast<Vertex>(i)))) {
                const int la = short_part.level[e.ancestor];
                const Vertex pa = e.ancestor - idx1.first_at_level(la);
                aug.push_back({leaf, idx.id(top + la, static_cast<Vertex>(pu * ipow(d, la) + pa))});
            }
        }
    }
    const int g = std::min(short_part.params.girth_target, wide_part.params.girth_target);
    return complete_tree(d, height, {d, r2 + 1, g}, std::move(aug));
}

AugmentedTree pad_with_root(int copies, const AugmentedTree& g, std::size_t node_budget) {
    require_complete(g, "pad_with_root");
    const int d = g.params.d;
    if (copies != d) {
        throw PreconditionError("pad_with_root needs exactly d = " + std::to_string(d) + " copies");
    }
    const int h = g.height();
    check_budget(complete_tree_nodes(d, h + 1), node_budget, "padded tree");
    const CompleteTreeIndex in(d, h);
    const CompleteTreeIndex out(d, h + 1);
    std::vector<AugEdge> aug;
    aug.reserve(g.aug_edges.size() * copies);
    for (int j = 0; j < copies; ++j) {
        for (const AugEdge& e : g.aug_edges) {
            const int la = g.level[e.ancestor];
            const Vertex pl = e.leaf - in.first_at_level(h);
            const Vertex pa = e.ancestor - in.first_at_level(la);
            aug.push_back({out.id(h + 1, static_cast<Vertex>(j * ipow(d, h) + pl)),
                           out.id(la + 1, static_cast<Vertex>(j * ipow(d, la) + pa))});
        }
    }
    return complete_tree(d, h + 1, g.params, std::move(aug));
}

namespace {

AugmentedTree build_rec(int d, int r, int g, std::size_t budget) {
    if (g == 4) return build_base(d, r, budget);
    if (r == 1) return expand_girth(build_rec(d, d * d, g - 2, budget), budget);
    AugmentedTree g1 = build_rec(d, 1, g, budget);
    if (g1.height() % 2 == 0) g1 = pad_with_root(d, g1, budget);
    const BigNat wide = checked_pow(d, g1.height());
    if (!wide.fits_sint_p()) throw BudgetExceeded("wide part branching exceeds the vertex id range");
    AugmentedTree g2 = build_rec(static_cast<int>(wide.get_si()), r - 1, g, budget);
    return compose(g1, g2, budget);
}

}  // namespace

PlanResult plan_and_build(int d, int r, int g, std::size_t node_budget) {
    PlanResult result{make_plan(d, r, g), std::nullopt};
    if (!result.plan.node_bound.exceeds(node_budget)) {
        result.tree = build_rec(d, r, g, node_budget);
    }
    return result;
}

AugmentedTree reduce(const AugmentedTree& g) {
    if (g.reduced) throw PreconditionError("reduce needs a non-reduced tree");
    const Vertex n = g.vertex_count();
    std::vector<Vertex> new_id(n, -1);
    std::vector<Vertex> parent;
    std::vector<int> color;
    new_id[0] = 0;
    parent.push_back(0);
    color.push_back(0);
    for (Vertex v = 1; v < n; ++v) {
        const Vertex p = g.parent[v];
        if (new_id[p] < 0) continue;
        if (p != 0 && g.edge_color[v] == g.edge_color[p]) continue;
        new_id[v] = static_cast<Vertex>(parent.size());
        parent.push_back(new_id[p]);
        color.push_back(g.edge_color[v]);
    }
    std::vector<AugEdge> aug;
    for (const AugEdge& e : g.aug_edges) {
        if (new_id[e.leaf] >= 0) aug.push_back({new_id[e.leaf], new_id[e.ancestor]});
    }
    return assemble_tree(g.params, true, std::move(parent), std::move(color), std::move(aug));
}

AugmentedTree reduced_skeleton(int d, int height, std::size_t node_budget) {
    if (d < 2) throw ParameterError("branching d must be at least 2");
    if (height < 1) throw ParameterError("height must be positive");
    check_budget(reduced_nodes(d, height), node_budget, "reduced tree");
    std::vector<Vertex> parent{0};
    std::vector<int> color{0};
    Vertex level_begin = 0;
    for (int l = 0; l < height; ++l) {
        const Vertex level_end = static_cast<Vertex>(parent.size());
        for (Vertex v = level_begin; v < level_end; ++v) {
            for (int c = 1; c <= d; ++c) {
                if (v != 0 && c == color[v]) continue;
                parent.push_back(v);
                color.push_back(c);
            }
        }
        level_begin = level_end;
    }
    return assemble_tree({d, 0, 0}, true, std::move(parent), std::move(color), {});
}

AugmentedTree build_reduced_base(int d, int r, std::size_t node_budget) {
    check_dr(d, r);
    AugmentedTree t = reduced_skeleton(d, 2 * r + 1, node_budget);
    std::vector<Vertex> path;
    std::vector<AugEdge> aug;
    aug.reserve(t.leaves.size() * r);
    for (Vertex leaf : t.leaves) {
        path_to(t, leaf, path);
        const int h = t.level[leaf];
        for (int l = 0; l <= h - 3; l += 2) aug.push_back({leaf, path[l]});
    }
    t.params = {d, r, 4};
    t.aug_edges = std::move(aug);
    return t;
}

int aligned_height(int d, std::span<const MateGroup> groups) {
    validate_layout(groups);
    int odd = 0, even = 0, any = 0;
    for (const MateGroup& g : groups) {
        const int need = group_need(d, g);
        (g.parity == MateParity::odd ? odd : g.parity == MateParity::even ? even : any) = need;
    }
    for (int h = 3;; ++h) {
        if (any <= h - 1 && odd <= (h - 1) / 2 && even <= h / 2) return h;
    }
}

AugmentedTree build_reduced_color_aligned(int d, int r, std::span<const MateGroup> groups,
                                          std::optional<int> height, std::size_t node_budget) {
    validate_layout(groups);
    int total = 0;
    for (const MateGroup& g : groups) total += g.count;
    if (total != r) {
        throw ParameterError("mate group counts sum to " + std::to_string(total) + ", expected r=" +
                             std::to_string(r));
    }
    const int h = height.value_or(aligned_height(d, groups));
    AugmentedTree t = reduced_skeleton(d, h, node_budget);
    std::vector<Vertex> path;
    std::vector<AugEdge> aug;
    aug.reserve(t.leaves.size() * r);
    std::vector<int> levels, chosen;
    for (Vertex leaf : t.leaves) {
        path_to(t, leaf, path);
        auto color_at = [&](int l) { return t.edge_color[path[l + 1]]; };
        chosen.clear();
        for (const MateGroup& g : groups) {
            levels.clear();
            for (int l = 0; l < h; ++l) {
                if (parity_matches(g.parity, h - l)) levels.push_back(l);
            }
            if (!pick(levels, g.count, g.aligned, d, color_at, chosen)) {
                throw InfeasibleSplit("height " + std::to_string(h) + " cannot host the mate groups of leaf " +
                                      std::to_string(leaf));
            }
        }
        for (int l : chosen) aug.push_back({leaf, path[l]});
    }
    t.params = {d, r, 4};
    return assemble_tree(t.params, true, std::move(t.parent), std::move(t.edge_color), std::move(aug));
}

AugmentedTree build_reduced_by_pigeonhole(int d, std::span<const MateGroup> groups,
                                          std::size_t node_budget) {
    validate_layout(groups);
    int base_r = 0, total = 0;
    for (const MateGroup& g : groups) {
        base_r += group_need(d, g);
        total += g.count;
    }
    const AugmentedTree base = build_reduced_base(d, base_r, node_budget);
    std::vector<Vertex> path;
    std::vector<AugEdge> aug;
    aug.reserve(base.leaves.size() * total);
    std::vector<int> levels, chosen;
    for (Vertex leaf : base.leaves) {
        path_to(base, leaf, path);
        auto color_at = [&](int l) { return base.edge_color[path[l + 1]]; };
        chosen.clear();
        auto mates = base.mates(leaf);
        std::size_t next = 0;
        for (const MateGroup& g : groups) {
            const int shift = g.parity == MateParity::even ? 1 : 0;
            levels.clear();
            for (int i = 0; i < group_need(d, g); ++i) {
                levels.push_back(base.level[mates[next++].ancestor] + shift);
            }
            if (!pick(levels, g.count, g.aligned, d, color_at, chosen)) {
                throw WitnessFailure("pigeonhole selection failed at leaf " + std::to_string(leaf));
            }
        }
        for (int l : chosen) aug.push_back({leaf, path[l]});
    }
    return assemble_tree({d, total, 4}, true, base.parent, base.edge_color, std::move(aug));
}

bool mate_is_odd(const AugmentedTree& t, const AugEdge& e) {
    return (t.level[e.leaf] - t.level[e.ancestor]) % 2 == 1;
}

ValidationReport check_mate_groups(const AugmentedTree& t, std::span<const MateGroup> groups) {
    ValidationReport report;
    validate_layout(groups);
    int total = 0;
    for (const MateGroup& g : groups) total += g.count;
    for (Vertex leaf : t.leaves) {
        for (const MateGroup& g : groups) {
            int count = 0;
            int color = -1;
            bool aligned = true;
            for (const AugEdge& e : t.mates(leaf)) {
                const int dist = t.level[leaf] - t.level[e.ancestor];
                if (!parity_matches(g.parity, dist)) continue;
                ++count;
                const int c = t.descending_color(e.ancestor, leaf);
                if (color >= 0 && c != color) aligned = false;
                color = c;
            }
            const std::string where = "leaf " + std::to_string(leaf);
            if (count != g.count) {
                report.add(where + " has " + std::to_string(count) + " mates in a group of size " +
                           std::to_string(g.count));
            }
            if (g.aligned && !aligned) report.add(where + " has a group without a common color");
        }
        if (static_cast<int>(t.mates(leaf).size()) != total) {
            report.add("leaf " + std::to_string(leaf) + " has mates outside every group");
        }
    }
    return report;
}

}  // namespace augtree
