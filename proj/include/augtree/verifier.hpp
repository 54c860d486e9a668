#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "augtree/bignum.hpp"
#include "augtree/graph.hpp"
#include "augtree/lists.hpp"
#include "augtree/types.hpp"

namespace augtree {

/// Exact fraction in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    std::string to_string() const;

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

struct GirthResult {
    std::optional<int> length;   ///< empty for forests
    std::vector<Vertex> cycle;   ///< one shortest cycle

    bool infinite() const { return !length.has_value(); }
};

/// Shortest cycle by breadth-first search from every vertex.
GirthResult girth(const Graph& g);

/// Shortest alternating vertex/edge cycle: half the girth of the incidence graph.
std::optional<int> hypergraph_girth(const Hypergraph& h);

/// max over nonempty subgraphs H of 2|E(H)|/|V(H)|, exactly.
Rational mad_exact(const Graph& g);

/// Empty when ok; otherwise the first violation.
std::optional<std::string> check_orientation(const Graph& g, const Orientation& o, int k);

enum class SearchStatus { sat, unsat, inconclusive };

struct SearchResult {
    SearchStatus status = SearchStatus::inconclusive;
    Coloring coloring;             ///< verified proper when sat
    std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultSearchBudget = 100'000'000;

/// Complete backtracking over list colorings; unsat only after exhaustion.
SearchResult list_color_search(const Graph& g, const ListAssignment& lists,
                               std::uint64_t node_budget = kDefaultSearchBudget);

/// Empty when f is proper; otherwise a monochromatic edge. Throws
/// PreconditionError on a partial coloring.
std::optional<Edge> check_proper(const Graph& g, const Coloring& f);
/// Index of a monochromatic hyperedge, if any.
std::optional<std::size_t> check_proper(const Hypergraph& h, const Coloring& f);

/// k_0 = g-1, k_{i+1} = ceil(2^((k_i - g/2 + 4)/2)) + k_i for i < q, with
/// q = ceil(2^(g/4 - 2)); defined for even g >= 8.
struct HeightBoundSeq {
    int g = 0;
    BigNat q;
    std::vector<BigNat> k;
};

HeightBoundSeq height_bound_seq(int g);

/// Least even g >= 8 whose sequence reaches k_q >= m.
int forced_cycle_girth_cap(std::uint64_t m);

}  // namespace augtree
