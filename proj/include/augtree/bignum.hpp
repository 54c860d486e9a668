#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace augtree {

using BigNat = mpz_class;

/// Exact values above this many bits are refused (or saturated, see NodeCount).
inline constexpr std::uint64_t kMaxMagnitudeBits = std::uint64_t{1} << 24;

std::uint64_t bit_length(const BigNat& x);

/// base^exp, throwing MagnitudeOverflow when the result would exceed the cap.
BigNat checked_pow(const BigNat& base, const BigNat& exp);

/// Exact value when small enough, else true lower bound 2^log2_lower.
class NodeCount {
public:
    NodeCount() = default;
    static NodeCount exact(BigNat value);
    static NodeCount at_least_pow2(BigNat exponent);

    bool is_exact() const { return exact_; }
    const BigNat& value() const;        // requires is_exact()
    BigNat log2_lower() const;          // floor(log2) for exact values
    bool exceeds(std::uint64_t limit) const;

    NodeCount& operator+=(const NodeCount& other);

    /// Decimal string, or ">=2^e" when saturated.
    std::string to_string() const;

private:
    bool exact_ = true;
    BigNat value_ = 0;     // exact value or the exponent of the lower bound
};

/// Vertices in a complete `branching`-ary tree of the given height:
/// sum_{i=0..height} branching^i.
NodeCount complete_tree_nodes(const BigNat& branching, const BigNat& height);

std::int64_t to_int64(const BigNat& x);   // throws MagnitudeOverflow

}  // namespace augtree
