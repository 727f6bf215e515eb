#include "pbcount/engine.hpp"

#include "pbcount/build_add.hpp"
#include "pbcount/dd.hpp"
#include "pbcount/heuristics.hpp"

#include <algorithm>
#include <set>

namespace pbcount {

std::string formatValue(const NumericValue& value) {
    if (const auto* d = std::get_if<double>(&value)) return formatDouble(*d);
    return formatRational(std::get<Rational>(value));
}

double toDouble(const NumericValue& value) {
    if (const auto* d = std::get_if<double>(&value)) return *d;
    return toDouble(std::get<Rational>(value));
}

namespace {

template <class V>
V convert(const Rational& r) {
    if constexpr (std::is_same_v<V, double>)
        return toDouble(r);
    else
        return r;
}

double secondsSince(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

template <class V>
V countPreprocessed(const PBFormula& formula, const WeightFunction& weights, const CountConfig& config,
                    const Limits& limits, CountStats& stats) {
    const int numVars = formula.numVars;
    V scalar = V(1);
    for (Literal lit : formula.fixedLiterals) scalar *= convert<V>(weights.weight(lit));

    std::vector<bool> inConstraint(static_cast<std::size_t>(numVars) + 1, false);
    for (int v : formula.vars()) inConstraint[static_cast<std::size_t>(v)] = true;
    for (Literal lit : formula.fixedLiterals) inConstraint[static_cast<std::size_t>(lit.var)] = true;
    for (int v = 1; v <= numVars; ++v) {
        if (inConstraint[static_cast<std::size_t>(v)]) continue;
        scalar *= convert<V>(weights.pos(v) + weights.neg(v));
        ++stats.freeVariables;
    }
    stats.constraints = formula.constraints.size();
    if (formula.constraints.empty()) return scalar;

    auto buildStart = Clock::now();
    PrimalGraph graph = PrimalGraph::build(formula);
    DiagramVarOrder diagramOrder = config.diagramOrder == DiagramOrderHeuristic::Mcs
                                       ? mcsOrder(graph, numVars)
                                       : DiagramVarOrder::identity(numVars);
    ClusterVarOrder clusterOrder =
        config.clusterOrder == ClusterOrderHeuristic::LexP ? lexpOrder(graph) : indexClusterOrder(graph);
    const int m = clusterOrder.maxRank();
    stats.clusters = static_cast<std::size_t>(m);

    // Cluster i sums out exactly the variables whose last cluster is i.
    std::vector<int> clusterOf(formula.constraints.size());
    std::vector<int> projectingCluster(static_cast<std::size_t>(numVars) + 1, 0);
    for (std::size_t ci = 0; ci < formula.constraints.size(); ++ci) {
        const auto& c = formula.constraints[ci];
        clusterOf[ci] = constraintRank(c, clusterOrder);
        for (const auto& t : c.terms) {
            int& pc = projectingCluster[static_cast<std::size_t>(t.lit.var)];
            pc = std::max(pc, clusterOf[ci]);
        }
    }
    std::vector<std::vector<int>> projectVars(static_cast<std::size_t>(m) + 1);
    for (int v = 1; v <= numVars; ++v)
        if (int pc = projectingCluster[static_cast<std::size_t>(v)]; pc > 0)
            projectVars[static_cast<std::size_t>(pc)].push_back(v);
    for (auto& xs : projectVars)
        std::sort(xs.begin(), xs.end(),
                  [&](int a, int b) { return diagramOrder.rank(a) < diagramOrder.rank(b); });

    AddManager<V> manager(diagramOrder);
    manager.setLimits(limits);
    std::vector<std::vector<Add>> pending(static_cast<std::size_t>(m) + 1);
    for (std::size_t ci = 0; ci < formula.constraints.size(); ++ci) {
        limits.checkDeadline();
        pending[static_cast<std::size_t>(clusterOf[ci])].push_back(
            constructConstraintAdd(manager, formula.constraints[ci]));
    }
    stats.buildSeconds = secondsSince(buildStart);

    auto solveStart = Clock::now();
    std::size_t live = formula.constraints.size();
    stats.peakLiveDiagrams = live;
    std::optional<Add> last;
    for (int i = 1; i <= m; ++i) {
        auto& diagrams = pending[static_cast<std::size_t>(i)];
        if (diagrams.empty()) continue;
        limits.checkDeadline();

        std::vector<std::pair<std::size_t, Add>> sized;
        sized.reserve(diagrams.size());
        for (Add d : diagrams) sized.emplace_back(manager.nodeCount(d), d);
        std::stable_sort(sized.begin(), sized.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        Add acc = manager.one();
        for (const auto& [size, d] : sized) acc = manager.product(acc, d);
        live -= diagrams.size();
        diagrams.clear();

        const auto& xs = projectVars[static_cast<std::size_t>(i)];
        if (config.checkProjectionSafety && !xs.empty()) {
            std::set<int> projected(xs.begin(), xs.end());
            for (int j = i + 1; j <= m; ++j)
                for (Add other : pending[static_cast<std::size_t>(j)])
                    for (int v : manager.support(other))
                        if (projected.contains(v))
                            throw std::logic_error("x" + std::to_string(v) + " summed out in cluster " +
                                                   std::to_string(i) + " but still used by cluster " +
                                                   std::to_string(j));
        }
        for (int x : xs) acc = manager.projectWeighted(acc, x, convert<V>(weights.pos(x)), convert<V>(weights.neg(x)));

        if (i < m) {
            int j = chooseCluster(manager.support(acc), i, projectingCluster, m);
            pending[static_cast<std::size_t>(j)].push_back(acc);
            ++live;
            stats.peakLiveDiagrams = std::max(stats.peakLiveDiagrams, live);
        } else {
            last = acc;
        }
    }
    stats.solveSeconds = secondsSince(solveStart);
    stats.nodesCreated = manager.storedNodes();

    if (!last || !manager.isTerminal(*last))
        throw std::logic_error("diagram left with unprojected variables after the last cluster");
    return scalar * manager.value(*last);
}

}  // namespace

CountResult count(const PBFormula& formula, const WeightFunction& weights, const CountConfig& config) {
    CountResult result;
    Limits limits;
    if (config.timeout) limits.deadline = Clock::now() + *config.timeout;
    limits.maxNodes = config.maxNodes;

    auto zero = [&]() -> NumericValue {
        if (config.mode == NumericMode::Float64) return 0.0;
        return Rational(0);
    };

    WeightFunction w = weights;
    w.resize(formula.numVars);

    auto preStart = Clock::now();
    auto normalized = normalizeFormula(formula);
    if (!normalized) {
        result.report.unsatisfiable = true;
        result.value = zero();
        return result;
    }
    PreprocessConfig preConfig = config.preprocess;
    preConfig.limits = limits;
    auto [reduced, report] = preprocess(std::move(*normalized), preConfig);
    result.report = std::move(report);
    result.stats.preprocessSeconds = secondsSince(preStart);
    if (result.report.unsatisfiable) {
        result.value = zero();
        return result;
    }

    if (config.mode == NumericMode::Float64)
        result.value = countPreprocessed<double>(reduced, w, config, limits, result.stats);
    else
        result.value = countPreprocessed<Rational>(reduced, w, config, limits, result.stats);
    return result;
}

}  // namespace pbcount
