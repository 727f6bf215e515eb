#pragma once

#include "pbcount/errors.hpp"
#include "pbcount/formula.hpp"

#include <optional>
#include <span>
#include <vector>

namespace pbcount {

/// A model over 1..numVars, or nullopt when unsatisfiable.
using SolveResult = std::optional<Assignment>;

/// Bound propagation over relaxed normalized constraints with an undo trail.
///
/// For `>=` the slack is (true contribution + unassigned coefficients - degree);
/// an unassigned literal whose coefficient exceeds the slack is forced true.
/// `=` constraints propagate both bounds.
class PbPropagator {
public:
    explicit PbPropagator(const PBFormula& formula);

    /// Puts lit on the trail. Returns false if its variable is already assigned the other way.
    bool assign(Literal lit);
    /// Runs to fixpoint. Returns false on conflict.
    bool propagate();
    void backtrack(std::size_t trailSize);

    std::size_t trailSize() const { return trail_.size(); }
    const std::vector<Literal>& trail() const { return trail_; }
    bool isAssigned(int var) const { return values_[static_cast<std::size_t>(var)] >= 0; }
    bool value(int var) const { return values_[static_cast<std::size_t>(var)] == 1; }
    int numVars() const { return numVars_; }
    /// Variables occurring in some constraint, ascending.
    const std::vector<int>& constraintVars() const { return constraintVars_; }

private:
    struct Occurrence {
        std::size_t constraint;
        std::size_t term;
    };

    bool checkConstraint(std::size_t ci);
    void enqueue(std::size_t ci);

    int numVars_;
    std::vector<PBConstraint> constraints_;
    std::vector<std::vector<Occurrence>> occurrences_;
    std::vector<BigInt> trueSum_;
    std::vector<BigInt> freeSum_;
    std::vector<std::int8_t> values_;
    std::vector<Literal> trail_;
    std::vector<std::size_t> pending_;
    std::vector<bool> queued_;
    std::vector<int> constraintVars_;
};

/// Complete decision procedure behind an interface so another solver can be plugged in.
class PbSolver {
public:
    virtual ~PbSolver() = default;
    /// Fixed literals of the formula are honoured as assumptions.
    virtual SolveResult solve(const PBFormula& formula, std::span<const Literal> assumptions) = 0;
};

/// Chronological-backtracking DPLL. Decisions take the smallest unassigned
/// constraint variable, positive phase first. Variables outside every
/// constraint are reported as 0 unless assumed or fixed.
class DpllSolver final : public PbSolver {
public:
    explicit DpllSolver(Limits limits = {}) : limits_(limits) {}
    SolveResult solve(const PBFormula& formula, std::span<const Literal> assumptions) override;

    std::size_t decisions() const { return decisions_; }

private:
    Limits limits_;
    std::size_t decisions_ = 0;
};

SolveResult solve(const PBFormula& formula);
SolveResult solveAssuming(const PBFormula& formula, Literal lit);

}  // namespace pbcount
