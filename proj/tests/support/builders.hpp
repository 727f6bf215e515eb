#pragma once

// Terse constructors for hand-written test instances.

#include "pbcount/formula.hpp"

#include <initializer_list>
#include <utility>

namespace pbcount::testing {

/// pb({{2, 1}, {3, -2}}, RelOp::GE, 4) is 2·x1 + 3·¬x2 ≥ 4.
inline PBConstraint pb(std::initializer_list<std::pair<int, int>> terms, RelOp op, long long degree) {
    PBConstraint c;
    c.op = op;
    c.degree = degree;
    for (auto [coef, lit] : terms) c.terms.push_back({BigInt(coef), Literal::fromSigned(lit)});
    return c;
}

inline PBFormula formula(int numVars, std::initializer_list<PBConstraint> constraints) {
    PBFormula f;
    f.numVars = numVars;
    f.constraints.assign(constraints.begin(), constraints.end());
    return f;
}

inline WeightFunction weights(int numVars, std::initializer_list<std::pair<int, std::pair<const char*, const char*>>> entries) {
    WeightFunction w(numVars);
    for (const auto& [var, pn] : entries) w.set(var, parseRational(pn.first), parseRational(pn.second));
    return w;
}

/// Highest variable index mentioned by the constraint.
inline int maxVar(const PBConstraint& c) {
    int n = 0;
    for (const auto& t : c.terms) n = std::max(n, t.lit.var);
    return n;
}

}  // namespace pbcount::testing
