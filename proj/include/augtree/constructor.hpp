#pragma once

#include <optional>
#include <span>
#include <vector>

#include "augtree/augmented_tree.hpp"
#include "augtree/bignum.hpp"
#include "augtree/types.hpp"

namespace augtree {

/// Upper bound on the least height of a (d,r,g)-graph, obtained by composing
/// the base, girth-step and augmentation-step recurrences (g outer, r inner).
/// g must be even and at least 4.
BigNat height_bound(const BigNat& d, const BigNat& r, int g);

enum class StepKind { base, girth, augment, pad };

struct PlanStep {
    StepKind kind = StepKind::base;
    BigNat d;
    BigNat r;
    int g = 0;
    BigNat height;      ///< height of the tree this step produces
    BigNat m1;          ///< augment: odd height of the r=1 part
    BigNat m2;          ///< augment: height of the wide part
};

/// Materialization recipe for a (d,r,g)-graph.
struct ConstructionPlan {
    BigNat d;
    BigNat r;
    int g = 0;
    std::vector<PlanStep> trace;   ///< steps in the order they are built
    BigNat height_bound;
    NodeCount node_bound;          ///< vertices allocated over all steps
};

ConstructionPlan make_plan(const BigNat& d, const BigNat& r, int g);

struct PlanResult {
    ConstructionPlan plan;
    std::optional<AugmentedTree> tree;   ///< empty when the plan exceeds the budget

    bool built() const { return tree.has_value(); }
};

/// Complete d-ary tree of height 2r+1 whose leaves are joined to their
/// ancestors at distances 3, 5, ..., 2r+1: a (d,r,4)-graph.
AugmentedTree build_base(int d, int r, std::size_t node_budget = kDefaultNodeBudget);

/// (d,d^2,g)-graph -> (d,1,g+2)-graph: every leaf grows a complete d-ary tree
/// of height 2 and the i-th new leaf takes the i-th augmenting edge.
AugmentedTree expand_girth(const AugmentedTree& g, std::size_t node_budget = kDefaultNodeBudget);

/// (d,1,g)-graph of odd height m1 and (d^m1,r,g)-graph -> (d,r+1,g)-graph of
/// height m1+m2-1.
AugmentedTree compose(const AugmentedTree& short_part, const AugmentedTree& wide_part,
                      std::size_t node_budget = kDefaultNodeBudget);

/// `copies` disjoint copies of g under a fresh root (copies must equal d).
AugmentedTree pad_with_root(int copies, const AugmentedTree& g,
                            std::size_t node_budget = kDefaultNodeBudget);

/// Plans a (d,r,g)-graph and builds it when the node bound fits the budget.
PlanResult plan_and_build(int d, int r, int g, std::size_t node_budget = kDefaultNodeBudget);

/// Deletes, below every non-root internal vertex, the child subtree whose
/// edge color repeats the color of the vertex's parent edge.
AugmentedTree reduce(const AugmentedTree& g);

/// Reduced tree of the given height (root d children, others d-1) without
/// augmenting edges; params.r is 0.
AugmentedTree reduced_skeleton(int d, int height, std::size_t node_budget = kDefaultNodeBudget);

/// Equal to reduce(build_base(d, r)) but built without the complete tree.
AugmentedTree build_reduced_base(int d, int r, std::size_t node_budget = kDefaultNodeBudget);

/// Distance class of a mate group. `odd` keeps mates at odd distance (offset
/// 0); `even` mates sit one step closer to the leaf (offset 1); `any` mixes.
enum class MateParity { odd, even, any };

struct MateGroup {
    int count = 0;
    MateParity parity = MateParity::odd;
    bool aligned = true;   ///< all mates of the group share one descending color

    friend bool operator==(const MateGroup&, const MateGroup&) = default;
};

/// Least height at which every leaf of a reduced d-ary tree can be given the
/// requested groups, whatever the colors along its full path.
int aligned_height(int d, std::span<const MateGroup> groups);

/// Reduced (d,r,4)-tree whose mates, group by group, have equal descending
/// colors along the full path of their leaf. Without an explicit height the
/// least feasible one is used.
AugmentedTree build_reduced_color_aligned(int d, int r, std::span<const MateGroup> groups,
                                          std::optional<int> height = std::nullopt,
                                          std::size_t node_budget = kDefaultNodeBudget);

/// Reduced base route: build_reduced_base(d, R) with R large enough for
/// pigeonhole selection, then per leaf keep aligned groups among its mates,
/// moving `even` groups one step closer.
AugmentedTree build_reduced_by_pigeonhole(int d, std::span<const MateGroup> groups,
                                          std::size_t node_budget = kDefaultNodeBudget);

/// Mates of `leaf` whose distance parity matches the group (odd or even).
bool mate_is_odd(const AugmentedTree& t, const AugEdge& e);

/// Checks that every leaf's mates split into the groups (by parity, in group
/// order for equal parities) and that aligned groups share a color.
ValidationReport check_mate_groups(const AugmentedTree& t, std::span<const MateGroup> groups);

}  // namespace augtree
