#pragma once

#include "pbcount/errors.hpp"
#include "pbcount/formula.hpp"
#include "pbcount/numeric.hpp"
#include "pbcount/preprocess.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <variant>

namespace pbcount {

enum class NumericMode { Float64, Rational };
enum class DiagramOrderHeuristic { Mcs, Index };
enum class ClusterOrderHeuristic { LexP, Index };

struct CountConfig {
    PreprocessConfig preprocess;
    DiagramOrderHeuristic diagramOrder = DiagramOrderHeuristic::Mcs;
    ClusterOrderHeuristic clusterOrder = ClusterOrderHeuristic::LexP;
    NumericMode mode = NumericMode::Float64;
    std::optional<std::chrono::milliseconds> timeout;
    /// 0 means unlimited.
    std::size_t maxNodes = 0;
    /// Verify before every projection that no pending diagram outside the
    /// current product mentions the variable; throws std::logic_error otherwise.
    bool checkProjectionSafety = false;
};

using NumericValue = std::variant<double, Rational>;

std::string formatValue(const NumericValue& value);
double toDouble(const NumericValue& value);

struct CountStats {
    std::size_t nodesCreated = 0;
    std::size_t peakLiveDiagrams = 0;
    std::size_t clusters = 0;
    std::size_t constraints = 0;
    std::size_t freeVariables = 0;
    double preprocessSeconds = 0;
    double buildSeconds = 0;
    double solveSeconds = 0;
};

struct CountResult {
    NumericValue value;
    CountStats stats;
    PreprocessReport report;
};

/// Weighted model count of a formula over variables 1..numVars.
///
/// Constraints are normalized, preprocessed, turned into diagrams and grouped
/// into clusters by the smallest cluster rank of their variables. Clusters are
/// processed in rank order: their diagrams are multiplied, the variables that
/// no later cluster mentions are summed out with their weights, and the result
/// moves on to the first later cluster that sums out one of its variables.
/// Fixed literals contribute their weight and variables outside every
/// constraint contribute pos + neg.
///
/// Throws TimeoutError or ResourceExhausted when the configured limits are hit.
CountResult count(const PBFormula& formula, const WeightFunction& weights, const CountConfig& config = {});

}  // namespace pbcount
