#pragma once

// Random instance generators shared by the unit and acceptance suites.

#include "pbcount/formula.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

namespace pbcount::testing {

struct RandomFormulaShape {
    int minVars = 4;
    int maxVars = 12;
    int minConstraints = 1;
    int maxConstraints = 8;
    int maxCoef = 10;
    int maxTerms = 7;
    /// Allow negative coefficients and repeated variables inside a constraint.
    bool raw = false;
};

inline int uniformInt(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline RelOp randomOp(std::mt19937_64& rng) {
    // Weighted towards inequalities; equalities prune most assignments.
    static constexpr RelOp table[] = {RelOp::GE, RelOp::GE, RelOp::GE, RelOp::LE, RelOp::LE,
                                      RelOp::GT, RelOp::LT, RelOp::EQ};
    return table[uniformInt(rng, 0, 7)];
}

/// A constraint over distinct variables of 1..numVars with coefficients in
/// 1..maxCoef (or ±, when raw) and a degree near the attainable range.
inline PBConstraint randomConstraint(std::mt19937_64& rng, int numVars, const RandomFormulaShape& shape) {
    std::vector<int> vars(static_cast<std::size_t>(numVars));
    std::iota(vars.begin(), vars.end(), 1);
    std::shuffle(vars.begin(), vars.end(), rng);
    int size = uniformInt(rng, 1, std::min(numVars, shape.maxTerms));
    if (shape.raw && size < numVars && uniformInt(rng, 0, 3) == 0) {
        // duplicate one variable so normalization has to merge occurrences
        vars[static_cast<std::size_t>(size)] = vars[0];
        ++size;
    }

    PBConstraint c;
    c.op = randomOp(rng);
    long long lo = 0, hi = 0;
    for (int i = 0; i < size; ++i) {
        long long a = uniformInt(rng, 1, shape.maxCoef);
        if (shape.raw && uniformInt(rng, 0, 2) == 0) a = -a;
        bool positive = uniformInt(rng, 0, 1) == 1;
        c.terms.push_back({BigInt(a), Literal{vars[static_cast<std::size_t>(i)], positive}});
        (a > 0 ? hi : lo) += a;
    }
    c.degree = uniformInt(rng, static_cast<int>(lo) - 1, static_cast<int>(hi) + 1);
    if (!shape.raw && uniformInt(rng, 0, 3) != 0) c.degree = uniformInt(rng, 1, std::max(1, static_cast<int>(hi) - 1));
    return c;
}

inline PBFormula randomFormula(std::mt19937_64& rng, const RandomFormulaShape& shape = {}) {
    PBFormula f;
    f.numVars = uniformInt(rng, shape.minVars, shape.maxVars);
    int m = uniformInt(rng, shape.minConstraints, shape.maxConstraints);
    for (int i = 0; i < m; ++i) f.constraints.push_back(randomConstraint(rng, f.numVars, shape));
    return f;
}

/// Weights p/1000 and 1 - p/1000 with p in 1..999.
inline WeightFunction randomWeights(std::mt19937_64& rng, int numVars) {
    WeightFunction w(numVars);
    for (int v = 1; v <= numVars; ++v) {
        Rational p(uniformInt(rng, 1, 999), 1000);
        w.set(v, p, Rational(1) - p);
    }
    return w;
}

/// Normalized random formula, or nullopt when normalization alone refutes it.
inline std::optional<PBFormula> randomNormalizedFormula(std::mt19937_64& rng, const RandomFormulaShape& shape = {}) {
    return normalizeFormula(randomFormula(rng, shape));
}

}  // namespace pbcount::testing
