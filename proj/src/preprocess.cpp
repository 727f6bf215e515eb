#include "pbcount/preprocess.hpp"

#include "pbcount/build_add.hpp"
#include "pbcount/dd.hpp"
#include "pbcount/pbsat.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace pbcount {

PreprocessConfig PreprocessConfig::fromMode(PreprocessMode mode) {
    PreprocessConfig config;
    config.backbone = mode != PreprocessMode::None;
    config.deletion = mode == PreprocessMode::Full;
    return config;
}

std::pair<PBFormula, PreprocessReport> addBackbone(PBFormula formula, PbSolver& solver) {
    PreprocessReport report;
    SolveResult model = solver.solve(formula, {});
    if (!model) {
        report.unsatisfiable = true;
        return {std::move(formula), std::move(report)};
    }

    std::set<Literal> candidates;
    for (int v : formula.vars()) candidates.insert(Literal{v, model->value(v)});

    while (!candidates.empty()) {
        Literal lit = *candidates.begin();
        candidates.erase(candidates.begin());
        Literal flipped[] = {lit.negated()};
        SolveResult other = solver.solve(formula, flipped);
        if (!other) {
            auto reduced = unitPropagate(formula, lit);
            if (!reduced) throw std::logic_error("backbone literal " + to_string(lit) + " led to a conflict");
            formula = std::move(*reduced);
            formula.fixedLiterals.push_back(lit);
            report.backboneLiterals.push_back(lit);
        } else {
            std::erase_if(candidates, [&](Literal c) { return !other->satisfies(c); });
        }
    }
    return {std::move(formula), std::move(report)};
}

std::pair<PBFormula, PreprocessReport> addBackbone(PBFormula formula) {
    DpllSolver solver;
    return addBackbone(std::move(formula), solver);
}

namespace {

/// Unit propagation of a diagram path through the remaining constraints,
/// undone level by level as the traversal backs up.
class PathRefuter final : public ZeroPathVisitor {
public:
    explicit PathRefuter(const PBFormula& rest) : propagator_(rest) {
        bool ok = propagator_.propagate();
        for (Literal lit : rest.fixedLiterals) ok = ok && propagator_.assign(lit) && propagator_.propagate();
        rootConflict_ = !ok;
    }

    bool refuted() const { return refuted_; }
    bool rootConflict() const { return rootConflict_; }

    bool enter(Literal lit) override {
        marks_.push_back(propagator_.trailSize());
        return propagator_.assign(lit) && propagator_.propagate();
    }

    void leave(Literal) override {
        propagator_.backtrack(marks_.back());
        marks_.pop_back();
    }

    bool onZeroPath(std::span<const Literal>) override {
        refuted_ = false;
        return false;
    }

private:
    PbPropagator propagator_;
    std::vector<std::size_t> marks_;
    bool rootConflict_ = false;
    bool refuted_ = true;
};

}  // namespace

std::pair<PBFormula, PreprocessReport> deleteConstraint(PBFormula formula, std::size_t literalCap,
                                                        const Limits& limits) {
    PreprocessReport report;
    const std::size_t n = formula.constraints.size();
    std::vector<bool> alive(n, true);

    for (std::size_t idx = 0; idx < n; ++idx) {
        const auto& candidate = formula.constraints[idx];
        if (candidate.terms.size() > literalCap) continue;
        limits.checkDeadline();

        std::vector<std::size_t> rest;
        for (std::size_t j = 0; j < n; ++j)
            if (j != idx && alive[j]) rest.push_back(j);

        AddManager<double> manager(DiagramVarOrder::identity(formula.numVars));
        manager.setLimits(limits);
        Add diagram = constructConstraintAdd(manager, candidate);

        PBFormula others;
        others.numVars = formula.numVars;
        others.fixedLiterals = formula.fixedLiterals;
        for (std::size_t j : rest) others.constraints.push_back(formula.constraints[j]);
        PathRefuter refuter(others);
        if (!refuter.rootConflict()) manager.forEachZeroPath(diagram, refuter);
        if (refuter.refuted()) {
            alive[idx] = false;
            ++report.deletedConstraints;
        }
    }

    PBFormula out;
    out.numVars = formula.numVars;
    out.fixedLiterals = std::move(formula.fixedLiterals);
    for (std::size_t j = 0; j < n; ++j)
        if (alive[j]) out.constraints.push_back(std::move(formula.constraints[j]));
    return {std::move(out), std::move(report)};
}

std::pair<PBFormula, PreprocessReport> preprocess(PBFormula formula, const PreprocessConfig& config) {
    PreprocessReport report;
    if (config.backbone) {
        DpllSolver solver(config.limits);
        auto [reduced, bb] = addBackbone(std::move(formula), solver);
        formula = std::move(reduced);
        report = std::move(bb);
        if (report.unsatisfiable) return {std::move(formula), std::move(report)};
    }
    if (config.deletion) {
        auto [reduced, del] = deleteConstraint(std::move(formula), config.deletionLiteralCap, config.limits);
        formula = std::move(reduced);
        report.deletedConstraints = del.deletedConstraints;
    }
    return {std::move(formula), std::move(report)};
}

}  // namespace pbcount
