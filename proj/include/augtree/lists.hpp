#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "augtree/graph.hpp"
#include "augtree/types.hpp"

namespace augtree {

/// Color lists per vertex over a global universe of positive color ids.
///
/// Lists are stored sorted in one flat array. The allocator hands out ids
/// strictly above every id ever stored or allocated, so a fresh color never
/// collides with an existing one.
class ListAssignment {
public:
    class Builder {
    public:
        explicit Builder(std::size_t expected_vertices = 0);
        /// Appends the list of the next vertex (vertices are filled in id order).
        void append(std::span<const Color> list);
        void append(std::initializer_list<Color> list);
        ListAssignment finish() &&;

    private:
        std::vector<std::int64_t> offset_{0};
        std::vector<Color> colors_;
    };

    ListAssignment() = default;
    explicit ListAssignment(const std::vector<std::vector<Color>>& lists);

    Vertex vertex_count() const { return static_cast<Vertex>(offset_.size()) - 1; }
    std::span<const Color> list(Vertex v) const {
        return {colors_.data() + offset_[v], colors_.data() + offset_[v + 1]};
    }
    bool contains(Vertex v, Color c) const;
    /// Sorted union of all lists.
    const std::vector<Color>& universe() const { return universe_; }
    Color allocator_next() const { return next_; }
    /// Returns a color id never used before by this assignment.
    Color allocate() { return next_++; }

    friend bool operator==(const ListAssignment&, const ListAssignment&) = default;

private:
    void finalize();

    std::vector<std::int64_t> offset_{0};
    std::vector<Color> colors_;
    std::vector<Color> universe_;
    Color next_ = 1;
};

/// Nonempty lists, sorted without duplicates, universe equals the union.
ValidationReport validate_lists(const ListAssignment& lists);

struct Arc {
    Vertex tail = 0;
    Vertex head = 0;

    friend bool operator==(const Arc&, const Arc&) = default;
};

/// arcs[i] orients graph.edges[i] of the companion graph.
struct Orientation {
    Vertex root = 0;
    std::vector<Arc> arcs;

    friend bool operator==(const Orientation&, const Orientation&) = default;
};

}  // namespace augtree
