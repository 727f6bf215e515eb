#pragma once

#include "pbcount/formula.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace pbcount {

/// CNF over the original variables 1..numOriginalVars followed by auxiliary
/// variables. Auxiliaries weigh 1 in both polarities.
struct CnfInstance {
    int numVars = 0;
    int numOriginalVars = 0;
    std::vector<std::vector<int>> clauses;
    WeightFunction weights;

    bool operator==(const CnfInstance&) const = default;
};

/// Tseitin translation of each constraint's decision diagram: one auxiliary
/// per internal node, defined as node <-> (var ? hi : lo), plus a unit clause
/// on the root. Every auxiliary is a function of the original variables, so
/// the weighted count of the CNF equals the weighted count of the formula.
/// Fixed literals become unit clauses. The formula must be relaxed normalized.
CnfInstance encodeCountingSafe(const PBFormula& formula, const WeightFunction& weights);

/// `c t wmc`, `p cnf N M`, one `c p weight <lit> <w> 0` line per literal of
/// every variable, then the clauses.
void emitWeightedDimacs(const CnfInstance& cnf, std::ostream& out);
std::string emitWeightedDimacs(const CnfInstance& cnf);

/// Reads back what emitWeightedDimacs writes (any `c p weight` lines are
/// optional). Variables without weight lines get (1, 1); numOriginalVars is
/// left equal to numVars.
CnfInstance parseDimacs(std::istream& in);
CnfInstance parseDimacs(const std::string& text);

}  // namespace pbcount
