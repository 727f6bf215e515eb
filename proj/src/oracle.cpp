#include "pbcount/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>

namespace pbcount {

namespace {

void checkBudget(int numVars, const OracleBudget& budget) {
    if (numVars > budget.maxVars || numVars > 62)
        throw BudgetExceeded("oracle refuses " + std::to_string(numVars) + " variables (limit " +
                             std::to_string(budget.maxVars) + ")");
}

void forEachAssignment(int numVars, const OracleBudget& budget, const std::function<void(const Assignment&)>& fn) {
    checkBudget(numVars, budget);
    const std::uint64_t total = std::uint64_t{1} << numVars;
    for (std::uint64_t mask = 0; mask < total; ++mask) fn(Assignment::fromMask(numVars, mask));
}

Rational assignmentWeight(const Assignment& a, const WeightFunction& weights, int numVars) {
    Rational w = 1;
    for (int v = 1; v <= numVars; ++v) w *= a.value(v) ? weights.pos(v) : weights.neg(v);
    return w;
}

}  // namespace

Rational bruteForceCount(const PBFormula& formula, const WeightFunction& weights, OracleBudget budget) {
    WeightFunction w = weights;
    w.resize(formula.numVars);
    Rational total = 0;
    forEachAssignment(formula.numVars, budget, [&](const Assignment& a) {
        if (evaluate(formula, a)) total += assignmentWeight(a, w, formula.numVars);
    });
    return total;
}

std::vector<Literal> bruteForceBackbone(const PBFormula& formula, OracleBudget budget) {
    const auto n = static_cast<std::size_t>(formula.numVars);
    std::vector<bool> seenTrue(n + 1, false), seenFalse(n + 1, false);
    bool anyModel = false;
    forEachAssignment(formula.numVars, budget, [&](const Assignment& a) {
        if (!evaluate(formula, a)) return;
        anyModel = true;
        for (int v = 1; v <= formula.numVars; ++v) (a.value(v) ? seenTrue : seenFalse)[static_cast<std::size_t>(v)] = true;
    });
    std::vector<Literal> backbone;
    if (!anyModel) return backbone;
    for (int v = 1; v <= formula.numVars; ++v) {
        auto i = static_cast<std::size_t>(v);
        if (seenTrue[i] && !seenFalse[i]) backbone.push_back(posLit(v));
        if (seenFalse[i] && !seenTrue[i]) backbone.push_back(negLit(v));
    }
    return backbone;
}

bool bruteForceEntails(const PBFormula& formula, const PBConstraint& constraint, OracleBudget budget) {
    int numVars = formula.numVars;
    for (const auto& t : constraint.terms) numVars = std::max(numVars, t.lit.var);
    bool entailed = true;
    forEachAssignment(numVars, budget, [&](const Assignment& a) {
        if (entailed && evaluate(formula, a) && !evaluate(constraint, a)) entailed = false;
    });
    return entailed;
}

Rational bruteForceCnfCount(int numVars, const std::vector<std::vector<int>>& clauses, const WeightFunction& weights) {
    WeightFunction w = weights;
    w.resize(numVars);
    // Clauses are checked as soon as their largest variable is assigned.
    std::vector<std::vector<const std::vector<int>*>> closedAt(static_cast<std::size_t>(numVars) + 1);
    for (const auto& clause : clauses) {
        int top = 0;
        for (int lit : clause) top = std::max(top, std::abs(lit));
        if (top > numVars) throw std::out_of_range("clause mentions a variable beyond numVars");
        closedAt[static_cast<std::size_t>(top)].push_back(&clause);
    }
    if (!closedAt[0].empty()) return 0;

    Assignment a(numVars);
    Rational total = 0;
    std::function<void(int, const Rational&)> extend = [&](int v, const Rational& weight) {
        if (v > numVars) {
            total += weight;
            return;
        }
        for (bool value : {false, true}) {
            a.set(v, value);
            bool ok = true;
            for (const auto* clause : closedAt[static_cast<std::size_t>(v)]) {
                bool sat = false;
                for (int lit : *clause) sat = sat || a.satisfies(Literal::fromSigned(lit));
                if (!sat) {
                    ok = false;
                    break;
                }
            }
            if (ok) extend(v + 1, weight * (value ? w.pos(v) : w.neg(v)));
        }
        a.unset(v);
    };
    extend(1, Rational(1));
    return total;
}

}  // namespace pbcount
