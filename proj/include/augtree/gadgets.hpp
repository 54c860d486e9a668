#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "augtree/augmented_tree.hpp"
#include "augtree/constructor.hpp"
#include "augtree/graph.hpp"
#include "augtree/lists.hpp"
#include "augtree/types.hpp"

namespace augtree {

// ---------------------------------------------------------------------------
// Hypergraphs of large chromatic number

struct HypergraphBundle {
    int k = 0;
    int t = 0;
    Hypergraph hypergraph;
    AugmentedTree skeleton;   ///< non-reduced k-ary base; hypergraph vertices are its internal vertices

    friend bool operator==(const HypergraphBundle&, const HypergraphBundle&) = default;
};

/// One t-edge per leaf: t mates whose descending colors agree. The base must
/// be a complete k-ary tree with r = (t-1)k + 1.
HypergraphBundle build_hypergraph(const AugmentedTree& base, int t, int k);

/// Follows the f-path of a [k]-coloring of the internal vertices and returns
/// the index of the hyperedge of the reached leaf, verified monochromatic.
std::size_t hyper_witness(const HypergraphBundle& bundle, const Coloring& f);

// ---------------------------------------------------------------------------
// Recursive gadgets J_k, G_k, list-cap G_k and H_k

enum class GadgetKind : std::uint8_t {
    odd_cycle,     ///< J_2
    twin_cycles,   ///< G_2 / H_2: two g-cycles sharing the root
    sparse,        ///< J_k, k >= 3
    choosable,     ///< G_k, k >= 3
    listcap,       ///< G_k with intersection-one lists, k >= 3
    small_union,   ///< H_k, k >= 3
};

const char* to_string(GadgetKind kind);

/// Graph vertex provenance: a skeleton vertex (copy == -1) or vertex `vertex`
/// of the child gadget copied at leaf number `copy`.
struct Origin {
    std::int32_t copy = -1;
    Vertex vertex = 0;

    friend bool operator==(const Origin&, const Origin&) = default;
};

/// Which list family a twin-cycles base carries.
enum class TwinLists : std::uint8_t { none, intersection_one, union_three };

struct GadgetBundle {
    GadgetKind kind = GadgetKind::odd_cycle;
    int k = 2;
    int g = 4;
    Graph graph;
    std::optional<ListAssignment> lists;
    std::optional<Orientation> orientation;
    std::optional<AugmentedTree> skeleton;
    std::vector<Origin> origin;            ///< per graph vertex
    std::vector<Color> added_color;        ///< per graph vertex; kUncolored if none
    std::vector<Color> tree_label;         ///< listcap: distinct color per skeleton edge parent->v
    std::vector<Color> copy_color_offset;  ///< choosable/listcap: copy color = child color + offset
    int copy_table_width = 0;              ///< small_union: child color ids 0..width-1
    std::vector<Color> copy_color_table;   ///< small_union: per copy, child color -> color
    std::vector<int> mate_slot;            ///< per child vertex: mate index, -1 for a merged root (see mate_of)
    Vertex copy_base = 0;                  ///< graph id of the first copy vertex
    bool root_merged = false;              ///< child root is identified with the leaf
    TwinLists twin_lists = TwinLists::none;
    std::shared_ptr<const GadgetBundle> child;

    Vertex vertex_count() const { return graph.vertex_count; }
    std::size_t copy_count() const;
    /// Graph id of child vertex w inside copy number `copy`.
    Vertex copy_vertex(std::size_t copy, Vertex w) const;
    /// Skeleton vertex that child vertex w of copy `copy` is joined to. Slots
    /// count the leaf's mates in level order for sparse gadgets, and odd
    /// distance mates first (then even ones) for root-merged gadgets.
    Vertex mate_of(std::size_t copy, Vertex w) const;
    /// Color that copy `copy` uses for child color c.
    Color map_color(std::size_t copy, Color c) const;
    /// Inverse of map_color; kUncolored if c is not a copy color.
    Color unmap_color(std::size_t copy, Color c) const;

    friend bool operator==(const GadgetBundle& a, const GadgetBundle& b);
};

/// Supplies the reduced skeleton a recursive gadget hangs its copies from:
/// branching d, mates per leaf split into the given groups.
using BaseProvider =
    std::function<AugmentedTree(int d, std::span<const MateGroup> groups, std::size_t budget)>;

/// Minimal-height color-aligned skeletons (build_reduced_color_aligned).
BaseProvider aligned_provider();
/// Reduced base skeletons with pigeonhole selection and shifting.
BaseProvider pigeonhole_provider();

/// Non-k-colorable graph of maximum average degree at most 2(k-1).
GadgetBundle build_Jk(int k, int g, const BaseProvider& provider = aligned_provider(),
                      std::size_t budget = kDefaultNodeBudget);

/// Bipartite non-k-choosable graph with (k-1)|V|+1 edges, its orientation
/// certificate and a k-list assignment admitting no proper choice.
GadgetBundle build_Gk(int k, int g, const BaseProvider& provider = pigeonhole_provider(),
                      std::size_t budget = kDefaultNodeBudget);

/// G_k with lists whose adjacent pairs share exactly one color.
/// g must be 4 mod 6.
GadgetBundle build_listcap(int k, int g, const BaseProvider& provider = pigeonhole_provider(),
                           std::size_t budget = kDefaultNodeBudget);

/// H_k with k-lists drawn from 2k-1 colors admitting no proper choice.
GadgetBundle build_Hk_smallunion(int k, int g, const BaseProvider& provider = aligned_provider(),
                                 std::size_t budget = kDefaultNodeBudget);

enum class WitnessReason : std::uint8_t {
    improper_tree_edge,   ///< coloring already fails on the skeleton
    forbidden_color,      ///< copy vertex took the color its tree neighbor forces
    base_gadget,          ///< violated edge of the k=2 base
};

struct Witness {
    Edge edge;
    WitnessReason reason = WitnessReason::base_gadget;
    int depth = 0;        ///< recursion levels descended
};

/// J_k: any [k]-coloring has a monochromatic edge. Colors must lie in [k].
Witness Jk_witness(const GadgetBundle& bundle, const Coloring& f);

/// G_k, list-cap G_k and H_k: any choice from the lists has a monochromatic
/// edge. f must choose from the bundle's lists.
Witness Gk_witness(const GadgetBundle& bundle, const Coloring& f);

/// Dispatches to Jk_witness or Gk_witness by kind.
Witness bundle_witness(const GadgetBundle& bundle, const Coloring& f);

// ---------------------------------------------------------------------------
// Seeded witness trials

enum class TrialMode : std::uint8_t {
    uniform,       ///< every vertex picks uniformly from its allowed colors
    tree_proper,   ///< skeleton colored top-down avoiding the parent's color
    greedy,        ///< tree_proper, then copies greedily avoid colored neighbors
};

/// Random coloring allowed by the bundle (lists, or [k] for sparse kinds).
Coloring random_coloring(const GadgetBundle& bundle, TrialMode mode, std::mt19937_64& rng);
/// Random [k]-coloring of the hypergraph vertices.
Coloring random_coloring(const HypergraphBundle& bundle, TrialMode mode, std::mt19937_64& rng);

struct TrialReport {
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::optional<Edge> sample_edge;   ///< witness of the first trial
    std::optional<std::size_t> sample_hyperedge;
    std::vector<std::size_t> reason_counts = std::vector<std::size_t>(3, 0);
};

/// Runs `trials` colorings (modes cycling uniform, tree_proper, greedy), each
/// on its own stream seeded by (seed, trial); counts witnesses that fail
/// re-verification or throw.
TrialReport run_witness_trials(const GadgetBundle& bundle, std::size_t trials, std::uint64_t seed);
TrialReport run_witness_trials(const HypergraphBundle& bundle, std::size_t trials,
                               std::uint64_t seed);

}  // namespace augtree
