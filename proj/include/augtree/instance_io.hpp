#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "augtree/augmented_tree.hpp"
#include "augtree/gadgets.hpp"
#include "augtree/graph.hpp"
#include "augtree/lists.hpp"

namespace augtree {

inline constexpr int kInstanceFormatVersion = 1;

/// Everything an instance file may carry. Bundles keep their own graph,
/// lists, orientation and skeleton; a bare tree or hypergraph uses the
/// dedicated fields.
struct InstanceFile {
    std::string construction;
    std::map<std::string, std::string> params;   ///< sorted, written as key=value
    std::uint64_t seed = 0;
    nlohmann::json meta = nlohmann::json::object();

    std::optional<AugmentedTree> tree;
    std::optional<Graph> graph;
    std::optional<ListAssignment> lists;
    std::optional<Orientation> orientation;
    std::optional<HypergraphBundle> hypergraph;
    std::optional<GadgetBundle> bundle;

    friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

void write_instance(std::ostream& out, const InstanceFile& file);
std::string serialize(const InstanceFile& file);

/// Throws ParseError with a line number on malformed input.
InstanceFile read_instance(std::istream& in);
InstanceFile parse_instance(const std::string& text);

/// The plain graph an instance describes (bundle graph, graph, flattened tree,
/// or the simple graph of a 2-uniform hypergraph), if any.
std::optional<Graph> instance_graph(const InstanceFile& file);
const ListAssignment* instance_lists(const InstanceFile& file);
const Orientation* instance_orientation(const InstanceFile& file);

/// "n m" header then "u v" lines.
void write_edge_list(std::ostream& out, const Graph& g);
/// "p edge n m", "e u v" (1-based) and "l v c..." list lines.
void write_dimacs(std::ostream& out, const Graph& g, const ListAssignment* lists);

}  // namespace augtree
