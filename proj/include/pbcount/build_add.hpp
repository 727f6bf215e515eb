#pragma once

#include "pbcount/dd.hpp"
#include "pbcount/formula.hpp"

#include <map>
#include <utility>
#include <vector>

namespace pbcount {

/// An integer extended with -inf and +inf.
struct ExtendedInt {
    enum class Kind { NegInf, Finite, PosInf };

    Kind kind = Kind::Finite;
    BigInt value = 0;

    static ExtendedInt negInf() { return {Kind::NegInf, 0}; }
    static ExtendedInt posInf() { return {Kind::PosInf, 0}; }
    static ExtendedInt finite(BigInt v) { return {Kind::Finite, std::move(v)}; }

    bool isFinite() const { return kind == Kind::Finite; }
    ExtendedInt operator+(const BigInt& delta) const;
    std::strong_ordering operator<=>(const ExtendedInt& other) const;
    bool operator==(const ExtendedInt& other) const { return (*this <=> other) == 0; }
};

/// Closed range of degrees [lo, hi]; either end may be infinite.
struct Interval {
    ExtendedInt lo;
    ExtendedInt hi;

    bool contains(const BigInt& k) const;
    Interval intersect(const Interval& other) const;
    Interval shifted(const BigInt& delta) const { return {lo + delta, hi + delta}; }
    bool operator==(const Interval&) const = default;
};

std::string to_string(const Interval& interval);

/// Builds the 0/1 diagram of one relaxed normalized constraint.
///
/// Terms are reordered by the manager's variable order on construction. The
/// builder keeps per-position memo tables for the lifetime of the object:
/// equality sub-constraints are memoized by residual degree, and `>=`
/// sub-constraints by the whole interval of residual degrees that share one
/// diagram, so a query for any residual inside a stored interval is a hit.
template <class V>
class ConstraintAddBuilder {
public:
    ConstraintAddBuilder(AddManager<V>& manager, const PBConstraint& constraint);

    /// Diagram of sum_{i >= position} a_i l_i = k. Positions are 0-based; position n is the empty suffix.
    Add eq(std::size_t position, const BigInt& k);
    /// Diagram of sum_{i >= position} a_i l_i >= k together with the interval of
    /// residual degrees having that same diagram.
    std::pair<Interval, Add> geq(std::size_t position, const BigInt& k);

    /// Diagram of the whole constraint.
    Add build();

    const std::vector<Term>& sortedTerms() const { return terms_; }
    const BigInt& suffixSum(std::size_t position) const { return suffix_[position]; }
    /// Stored `>=` entries at one position, keyed by interval lower end.
    const std::map<ExtendedInt, std::pair<Interval, Add>>& geqMemo(std::size_t position) const {
        return geqMemo_[position];
    }
    /// Recursive calls that went past the base cases and memo lookups.
    std::size_t expandedCalls() const { return expanded_; }

private:
    Add join(std::size_t position, Add whenTrue, Add whenFalse);

    AddManager<V>& manager_;
    RelOp op_;
    BigInt degree_;
    std::vector<Term> terms_;
    std::vector<BigInt> suffix_;
    std::vector<std::map<BigInt, Add>> eqMemo_;
    std::vector<std::map<ExtendedInt, std::pair<Interval, Add>>> geqMemo_;
    std::size_t expanded_ = 0;
};

/// Diagram of a relaxed normalized EQ or GE constraint; the interval is discarded.
template <class V>
Add constructConstraintAdd(AddManager<V>& manager, const PBConstraint& constraint) {
    return ConstraintAddBuilder<V>(manager, constraint).build();
}

extern template class ConstraintAddBuilder<double>;
extern template class ConstraintAddBuilder<Rational>;

}  // namespace pbcount
