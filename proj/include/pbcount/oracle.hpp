#pragma once

#include "pbcount/formula.hpp"

#include <stdexcept>
#include <vector>

namespace pbcount {

/// Reference implementations by exhaustive enumeration of all 2^numVars
/// assignments. They rely on constraint evaluation only, never on diagrams,
/// normalization or propagation.
struct OracleBudget {
    int maxVars = 20;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sum over models of the product of literal weights, in exact arithmetic.
Rational bruteForceCount(const PBFormula& formula, const WeightFunction& weights, OracleBudget budget = {});

/// Literals true in every model; empty when there is no model.
std::vector<Literal> bruteForceBackbone(const PBFormula& formula, OracleBudget budget = {});

/// True iff every model of the formula satisfies the constraint.
bool bruteForceEntails(const PBFormula& formula, const PBConstraint& constraint, OracleBudget budget = {});

/// Weighted count of a CNF given as signed-literal clauses over 1..numVars.
/// Enumerates assignments in variable order and abandons a branch as soon as
/// a clause whose variables are all assigned is false, so functionally
/// defined auxiliaries do not multiply the work.
Rational bruteForceCnfCount(int numVars, const std::vector<std::vector<int>>& clauses, const WeightFunction& weights);

}  // namespace pbcount
