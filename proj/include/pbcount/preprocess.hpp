#pragma once

#include "pbcount/errors.hpp"
#include "pbcount/formula.hpp"
#include "pbcount/pbsat.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace pbcount {

enum class PreprocessMode { None, Backbone, Full };

struct PreprocessConfig {
    bool backbone = true;
    bool deletion = true;
    /// Constraints with more literals than this are never considered for deletion.
    std::size_t deletionLiteralCap = 20;
    Limits limits;

    static PreprocessConfig fromMode(PreprocessMode mode);
};

struct PreprocessReport {
    /// Exactly the literals added as fixed facts by the backbone pass.
    std::vector<Literal> backboneLiterals;
    std::size_t deletedConstraints = 0;
    bool unsatisfiable = false;
};

/// Finds every backbone literal with a SAT oracle: starting from one model,
/// each candidate literal l is tested by solving formula && ~l; an
/// unsatisfiable call makes l backbone (propagated and recorded as fixed), a
/// satisfiable one shrinks the candidates to the literals both models share.
/// The input must be relaxed normalized.
std::pair<PBFormula, PreprocessReport> addBackbone(PBFormula formula, PbSolver& solver);
std::pair<PBFormula, PreprocessReport> addBackbone(PBFormula formula);

/// Removes constraints implied by the rest of the formula. A candidate
/// (at most `literalCap` literals) is dropped when every root-to-0 path of its
/// diagram, propagated literal by literal through the remaining constraints,
/// hits a conflict. Each constraint is examined once, in order.
std::pair<PBFormula, PreprocessReport> deleteConstraint(PBFormula formula, std::size_t literalCap = 20,
                                                        const Limits& limits = {});

/// Backbone pass then deletion pass, each switchable.
std::pair<PBFormula, PreprocessReport> preprocess(PBFormula formula, const PreprocessConfig& config);

}  // namespace pbcount
