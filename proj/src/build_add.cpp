#include "pbcount/build_add.hpp"

#include <algorithm>
#include <stdexcept>

namespace pbcount {

ExtendedInt ExtendedInt::operator+(const BigInt& delta) const {
    return isFinite() ? finite(value + delta) : *this;
}

std::strong_ordering ExtendedInt::operator<=>(const ExtendedInt& other) const {
    if (kind != other.kind) return kind <=> other.kind;
    if (!isFinite()) return std::strong_ordering::equal;
    if (value < other.value) return std::strong_ordering::less;
    if (value > other.value) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

bool Interval::contains(const BigInt& k) const {
    auto point = ExtendedInt::finite(k);
    return lo <= point && point <= hi;
}

Interval Interval::intersect(const Interval& other) const {
    return {std::max(lo, other.lo), std::min(hi, other.hi)};
}

std::string to_string(const Interval& interval) {
    auto str = [](const ExtendedInt& e) {
        switch (e.kind) {
            case ExtendedInt::Kind::NegInf: return std::string("-inf");
            case ExtendedInt::Kind::PosInf: return std::string("+inf");
            default: return e.value.str();
        }
    };
    return (interval.lo.isFinite() ? "[" : "(") + str(interval.lo) + ", " + str(interval.hi) +
           (interval.hi.isFinite() ? "]" : ")");
}

template <class V>
ConstraintAddBuilder<V>::ConstraintAddBuilder(AddManager<V>& manager, const PBConstraint& constraint)
    : manager_(manager), op_(constraint.op), degree_(constraint.degree), terms_(constraint.terms) {
    if (!constraint.isNormalized())
        throw std::invalid_argument("diagram construction needs a relaxed normalized constraint: " +
                                    to_string(constraint));
    const auto& order = manager_.order();
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term& a, const Term& b) { return order.rank(a.lit.var) < order.rank(b.lit.var); });
    suffix_.assign(terms_.size() + 1, BigInt(0));
    for (std::size_t i = terms_.size(); i-- > 0;) suffix_[i] = suffix_[i + 1] + terms_[i].coef;
    eqMemo_.resize(terms_.size() + 1);
    geqMemo_.resize(terms_.size() + 1);
}

template <class V>
Add ConstraintAddBuilder<V>::join(std::size_t position, Add whenTrue, Add whenFalse) {
    const Literal lit = terms_[position].lit;
    return lit.positive ? manager_.ite(lit.var, whenTrue, whenFalse) : manager_.ite(lit.var, whenFalse, whenTrue);
}

template <class V>
Add ConstraintAddBuilder<V>::eq(std::size_t position, const BigInt& k) {
    if (k < 0) return manager_.zero();
    if (position == terms_.size()) return k == 0 ? manager_.one() : manager_.zero();
    if (k > suffix_[position]) return manager_.zero();

    auto& memo = eqMemo_[position];
    if (auto it = memo.find(k); it != memo.end()) return it->second;

    ++expanded_;
    Add whenFalse = eq(position + 1, k);
    Add whenTrue = eq(position + 1, k - terms_[position].coef);
    Add result = join(position, whenTrue, whenFalse);
    memo.emplace(k, result);
    return result;
}

template <class V>
std::pair<Interval, Add> ConstraintAddBuilder<V>::geq(std::size_t position, const BigInt& k) {
    // With nonnegative coefficients a residual k <= 0 is satisfied by everything.
    if (k <= 0) return {Interval{ExtendedInt::negInf(), ExtendedInt::finite(0)}, manager_.one()};
    const BigInt& sum = suffix_[position];
    if (k > sum) return {Interval{ExtendedInt::finite(sum + 1), ExtendedInt::posInf()}, manager_.zero()};

    auto& memo = geqMemo_[position];
    auto it = memo.upper_bound(ExtendedInt::finite(k));
    if (it != memo.begin()) {
        const auto& [interval, add] = std::prev(it)->second;
        if (interval.contains(k)) return {interval, add};
    }

    ++expanded_;
    const BigInt& a = terms_[position].coef;
    auto [falseInterval, whenFalse] = geq(position + 1, k);
    auto [trueInterval, whenTrue] = geq(position + 1, k - a);
    Add result = join(position, whenTrue, whenFalse);
    Interval interval = falseInterval.intersect(trueInterval.shifted(a));
    memo.emplace(interval.lo, std::pair{interval, result});
    return {interval, result};
}

template <class V>
Add ConstraintAddBuilder<V>::build() {
    return op_ == RelOp::EQ ? eq(0, degree_) : geq(0, degree_).second;
}

template class ConstraintAddBuilder<double>;
template class ConstraintAddBuilder<Rational>;

}  // namespace pbcount
