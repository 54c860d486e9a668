#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace augtree {

/// Dense vertex id. Trees number their vertices in breadth-first order with
/// the root at 0.
using Vertex = std::int32_t;

/// Color id. Colors are positive; 0 marks an uncolored vertex.
using Color = std::int32_t;

inline constexpr Color kUncolored = 0;

inline constexpr std::size_t kDefaultNodeBudget = 5'000'000;

/// color_of[v] is the color of vertex v (kUncolored when unassigned).
using Coloring = std::vector<Color>;

/// Report-style validation result: ok iff no violation was recorded.
struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    void add(std::string message) { violations.push_back(std::move(message)); }
    /// True if some violation message contains `needle`.
    bool mentions(const std::string& needle) const;
};

}  // namespace augtree
