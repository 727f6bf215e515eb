#include "pbcount/pbsat.hpp"

#include <algorithm>
#include <stdexcept>

namespace pbcount {

PbPropagator::PbPropagator(const PBFormula& formula)
    : numVars_(formula.numVars),
      constraints_(formula.constraints),
      occurrences_(static_cast<std::size_t>(formula.numVars) + 1),
      trueSum_(formula.constraints.size(), BigInt(0)),
      freeSum_(formula.constraints.size(), BigInt(0)),
      values_(static_cast<std::size_t>(formula.numVars) + 1, -1),
      queued_(formula.constraints.size(), false) {
    for (std::size_t ci = 0; ci < constraints_.size(); ++ci) {
        const auto& c = constraints_[ci];
        if (!c.isNormalized()) throw std::invalid_argument("propagator expects normalized constraints");
        for (std::size_t ti = 0; ti < c.terms.size(); ++ti) {
            int v = c.terms[ti].lit.var;
            if (v < 1 || v > numVars_) throw std::out_of_range("variable beyond numVars");
            occurrences_[static_cast<std::size_t>(v)].push_back({ci, ti});
            freeSum_[ci] += c.terms[ti].coef;
        }
        enqueue(ci);
    }
    for (int v = 1; v <= numVars_; ++v)
        if (!occurrences_[static_cast<std::size_t>(v)].empty()) constraintVars_.push_back(v);
}

void PbPropagator::enqueue(std::size_t ci) {
    if (queued_[ci]) return;
    queued_[ci] = true;
    pending_.push_back(ci);
}

bool PbPropagator::assign(Literal lit) {
    auto& slot = values_.at(static_cast<std::size_t>(lit.var));
    if (slot >= 0) return (slot == 1) == lit.positive;
    slot = lit.positive ? 1 : 0;
    trail_.push_back(lit);
    for (const auto& occ : occurrences_[static_cast<std::size_t>(lit.var)]) {
        const Term& t = constraints_[occ.constraint].terms[occ.term];
        freeSum_[occ.constraint] -= t.coef;
        if (t.lit == lit) trueSum_[occ.constraint] += t.coef;
        enqueue(occ.constraint);
    }
    return true;
}

void PbPropagator::backtrack(std::size_t trailSize) {
    while (trail_.size() > trailSize) {
        Literal lit = trail_.back();
        trail_.pop_back();
        for (const auto& occ : occurrences_[static_cast<std::size_t>(lit.var)]) {
            const Term& t = constraints_[occ.constraint].terms[occ.term];
            freeSum_[occ.constraint] += t.coef;
            if (t.lit == lit) trueSum_[occ.constraint] -= t.coef;
        }
        values_[static_cast<std::size_t>(lit.var)] = -1;
    }
    for (std::size_t ci : pending_) queued_[ci] = false;
    pending_.clear();
}

bool PbPropagator::checkConstraint(std::size_t ci) {
    const auto& c = constraints_[ci];
    const BigInt& t = trueSum_[ci];
    const BigInt& f = freeSum_[ci];
    std::vector<Literal> forced;
    if (c.op == RelOp::GE) {
        BigInt slack = t + f - c.degree;
        if (slack < 0) return false;
        for (const auto& term : c.terms)
            if (!isAssigned(term.lit.var) && term.coef > slack) forced.push_back(term.lit);
    } else {
        if (t > c.degree || t + f < c.degree) return false;
        for (const auto& term : c.terms) {
            if (isAssigned(term.lit.var)) continue;
            if (t + term.coef > c.degree)
                forced.push_back(term.lit.negated());
            else if (t + f - term.coef < c.degree)
                forced.push_back(term.lit);
        }
    }
    for (Literal lit : forced)
        if (!assign(lit)) return false;
    return true;
}

bool PbPropagator::propagate() {
    while (!pending_.empty()) {
        std::size_t ci = pending_.back();
        pending_.pop_back();
        queued_[ci] = false;
        if (!checkConstraint(ci)) {
            for (std::size_t rest : pending_) queued_[rest] = false;
            pending_.clear();
            return false;
        }
    }
    return true;
}

SolveResult DpllSolver::solve(const PBFormula& formula, std::span<const Literal> assumptions) {
    limits_.checkDeadline();
    PbPropagator prop(formula);
    for (Literal lit : formula.fixedLiterals)
        if (!prop.assign(lit)) return std::nullopt;
    for (Literal lit : assumptions)
        if (!prop.assign(lit)) return std::nullopt;
    if (!prop.propagate()) return std::nullopt;

    struct Decision {
        std::size_t trailSize;
        Literal lit;
        bool flipped;
    };
    std::vector<Decision> stack;
    const auto& vars = prop.constraintVars();
    std::size_t cursor = 0;

    for (;;) {
        while (cursor < vars.size() && prop.isAssigned(vars[cursor])) ++cursor;
        if (cursor == vars.size()) break;

        if ((++decisions_ & 0x3FF) == 0) limits_.checkDeadline();
        Decision d{prop.trailSize(), posLit(vars[cursor]), false};
        stack.push_back(d);
        prop.assign(d.lit);

        while (!prop.propagate()) {
            while (!stack.empty() && stack.back().flipped) stack.pop_back();
            if (stack.empty()) return std::nullopt;
            Decision& top = stack.back();
            prop.backtrack(top.trailSize);
            top.flipped = true;
            prop.assign(top.lit.negated());
        }
        // Backtracking may have unassigned variables before the cursor.
        cursor = 0;
    }

    Assignment model(formula.numVars);
    for (int v = 1; v <= formula.numVars; ++v) model.set(v, prop.isAssigned(v) && prop.value(v));
    return model;
}

SolveResult solve(const PBFormula& formula) {
    DpllSolver solver;
    return solver.solve(formula, {});
}

SolveResult solveAssuming(const PBFormula& formula, Literal lit) {
    DpllSolver solver;
    Literal assumptions[] = {lit};
    return solver.solve(formula, assumptions);
}

}  // namespace pbcount
