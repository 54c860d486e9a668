#include "augtree/bignum.hpp"

#include <limits>

#include "augtree/errors.hpp"

namespace augtree {

std::uint64_t bit_length(const BigNat& x) {
    if (x == 0) return 0;
    return mpz_sizeinbase(x.get_mpz_t(), 2);
}

namespace {

// ceil(log2(base)) * exp as an overflow-free estimate of the result width.
bool pow_fits(const BigNat& base, const BigNat& exp) {
    if (base <= 1 || exp == 0) return true;
    const BigNat estimate = BigNat(bit_length(base)) * exp;
    return estimate <= kMaxMagnitudeBits;
}

}  // namespace

BigNat checked_pow(const BigNat& base, const BigNat& exp) {
    if (base == 0) return exp == 0 ? BigNat(1) : BigNat(0);
    if (base == 1) return 1;
    if (!pow_fits(base, exp)) {
        throw MagnitudeOverflow("magnitude overflow: " + base.get_str() + "^" +
                                (bit_length(exp) > 64 ? std::string("<huge>") : exp.get_str()) +
                                " exceeds 2^" + std::to_string(kMaxMagnitudeBits));
    }
    BigNat result;
    mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exp.get_ui());
    return result;
}

NodeCount NodeCount::exact(BigNat value) {
    NodeCount n;
    n.exact_ = true;
    n.value_ = std::move(value);
    return n;
}

NodeCount NodeCount::at_least_pow2(BigNat exponent) {
    NodeCount n;
    n.exact_ = false;
    n.value_ = std::move(exponent);
    return n;
}

const BigNat& NodeCount::value() const {
    if (!exact_) throw MagnitudeOverflow("node count is only known as a lower bound");
    return value_;
}

BigNat NodeCount::log2_lower() const {
    if (!exact_) return value_;
    if (value_ == 0) return 0;
    return BigNat(bit_length(value_) - 1);
}

bool NodeCount::exceeds(std::uint64_t limit) const {
    if (!exact_) return value_ >= 64 || (BigNat(1) << static_cast<mp_bitcnt_t>(value_.get_ui())) > limit;
    return value_ > BigNat(std::to_string(limit));
}

NodeCount& NodeCount::operator+=(const NodeCount& other) {
    if (exact_ && other.exact_) {
        value_ += other.value_;
        if (bit_length(value_) > kMaxMagnitudeBits) *this = at_least_pow2(log2_lower());
        return *this;
    }
    BigNat e = log2_lower();
    const BigNat o = other.log2_lower();
    if (o > e) e = o;
    *this = at_least_pow2(e);
    return *this;
}

std::string NodeCount::to_string() const {
    if (exact_) return value_.get_str();
    return ">=2^" + value_.get_str();
}

NodeCount complete_tree_nodes(const BigNat& branching, const BigNat& height) {
    if (branching <= 1) return NodeCount::exact(height + 1);
    const BigNat levels = height + 1;
    if (!pow_fits(branching, levels)) {
        // branching^height leaves alone: floor(log2) >= height * floor(log2 branching)
        return NodeCount::at_least_pow2(height * BigNat(bit_length(branching) - 1));
    }
    const BigNat top = checked_pow(branching, levels);
    return NodeCount::exact((top - 1) / (branching - 1));
}

std::int64_t to_int64(const BigNat& x) {
    if (!x.fits_slong_p()) throw MagnitudeOverflow("value " + std::string(bit_length(x) > 200 ? "<huge>" : x.get_str()) + " does not fit in 64 bits");
    return x.get_si();
}

}  // namespace augtree
