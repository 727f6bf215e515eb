#pragma once

#include "pbcount/numeric.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pbcount {

/// A variable (1-based) or its negation.
struct Literal {
    int var = 0;
    bool positive = true;

    constexpr Literal negated() const { return {var, !positive}; }
    constexpr auto operator<=>(const Literal&) const = default;

    /// DIMACS-style signed encoding: +var or -var.
    constexpr int toSigned() const { return positive ? var : -var; }
    static constexpr Literal fromSigned(int lit) { return {lit < 0 ? -lit : lit, lit > 0}; }
};

constexpr Literal posLit(int var) { return {var, true}; }
constexpr Literal negLit(int var) { return {var, false}; }

std::string to_string(Literal lit);

/// Relational operator of a PB constraint. Normalized constraints only use EQ and GE.
enum class RelOp { LT, LE, EQ, GE, GT };

std::string_view to_string(RelOp op);

struct Term {
    BigInt coef;
    Literal lit;

    bool operator==(const Term&) const = default;
};

/// sum(coef_i * lit_i) <op> degree
struct PBConstraint {
    std::vector<Term> terms;
    RelOp op = RelOp::GE;
    BigInt degree = 0;

    bool operator==(const PBConstraint&) const = default;

    std::vector<int> vars() const;
    BigInt coefSum() const;
    /// Positive coefficients, op in {EQ, GE}, at most one term per variable.
    bool isNormalized() const;
};

std::string to_string(const PBConstraint& c);

/// Conjunction of constraints over variables 1..numVars, plus literals fixed
/// true by preprocessing. Fixed literals never occur in the constraints.
struct PBFormula {
    std::vector<PBConstraint> constraints;
    int numVars = 0;
    std::vector<Literal> fixedLiterals;

    bool operator==(const PBFormula&) const = default;

    /// Sorted variables occurring in at least one constraint.
    std::vector<int> vars() const;
};

/// Per-literal weights. Unset variables weigh (1, 1), i.e. plain counting.
class WeightFunction {
public:
    WeightFunction() = default;
    explicit WeightFunction(int numVars);

    int numVars() const { return static_cast<int>(pos_.size()) - 1; }
    const Rational& pos(int var) const { return pos_.at(static_cast<std::size_t>(var)); }
    const Rational& neg(int var) const { return neg_.at(static_cast<std::size_t>(var)); }
    const Rational& weight(Literal lit) const { return lit.positive ? pos(lit.var) : neg(lit.var); }
    void set(int var, Rational posWeight, Rational negWeight);
    bool isDefault(int var) const { return pos(var) == 1 && neg(var) == 1; }
    /// Extends to more variables; new ones get (1, 1).
    void resize(int numVars);

    bool operator==(const WeightFunction&) const = default;

private:
    std::vector<Rational> pos_{Rational(1)};
    std::vector<Rational> neg_{Rational(1)};
};

/// Partial or total 0/1 assignment indexed by variable.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(int numVars) : values_(static_cast<std::size_t>(numVars) + 1, kUnassigned) {}

    int numVars() const { return static_cast<int>(values_.size()) - 1; }
    bool isAssigned(int var) const;
    /// Throws std::invalid_argument when var is unassigned or out of range.
    bool value(int var) const;
    bool satisfies(Literal lit) const { return value(lit.var) == lit.positive; }
    void set(int var, bool value);
    void set(Literal lit) { set(lit.var, lit.positive); }
    void unset(int var);

    /// Bit i-1 of mask gives x_i.
    static Assignment fromMask(int numVars, std::uint64_t mask);

private:
    static constexpr std::int8_t kUnassigned = -1;
    std::vector<std::int8_t> values_{kUnassigned};
};

struct AlwaysTrue {
    bool operator==(const AlwaysTrue&) const = default;
};
struct AlwaysFalse {
    bool operator==(const AlwaysFalse&) const = default;
};

using NormalizeResult = std::variant<PBConstraint, AlwaysTrue, AlwaysFalse>;

/// Rewrites any constraint into relaxed normal form: op in {GE, EQ}, every
/// coefficient positive, one term per variable (x and ~x merged through
/// ~x = 1 - x), terms sorted by variable. Constraints decided by their bounds
/// come back as AlwaysTrue / AlwaysFalse.
NormalizeResult normalize(const PBConstraint& c);

/// Normalizes every constraint; drops tautologies. Returns nullopt when some
/// constraint is AlwaysFalse. Fixed literals are propagated into the result.
std::optional<PBFormula> normalizeFormula(const PBFormula& formula);

/// Sets `lit` true in a relaxed normalized formula: removes the variable from
/// every constraint, adjusts degrees, deletes satisfied constraints. Returns
/// nullopt when some constraint can no longer be satisfied. Does not record
/// `lit` as fixed.
std::optional<PBFormula> unitPropagate(const PBFormula& formula, Literal lit);

/// Throws std::invalid_argument when some variable of c is unassigned.
bool evaluate(const PBConstraint& c, const Assignment& assignment);

/// All constraints and all fixed literals.
bool evaluate(const PBFormula& formula, const Assignment& assignment);

}  // namespace pbcount
