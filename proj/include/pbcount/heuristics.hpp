#pragma once

#include "pbcount/dd.hpp"
#include "pbcount/formula.hpp"

#include <utility>
#include <vector>

namespace pbcount {

/// Variables of a formula, adjacent when they share a constraint.
class PrimalGraph {
public:
    PrimalGraph() = default;
    /// Explicit graph; vertices are sorted, edges are undirected and self-loops are dropped.
    PrimalGraph(std::vector<int> vertices, const std::vector<std::pair<int, int>>& edges);

    static PrimalGraph build(const PBFormula& formula);

    const std::vector<int>& vertices() const { return vertices_; }
    /// Sorted neighbours of a vertex.
    const std::vector<int>& neighbors(int vertex) const;
    std::vector<std::pair<int, int>> edges() const;
    std::size_t vertexIndex(int vertex) const;

private:
    std::vector<int> vertices_;
    std::vector<std::vector<int>> adjacency_;
};

/// Injective rank var -> 1..m over the formula variables; 0 for variables outside it.
class ClusterVarOrder {
public:
    ClusterVarOrder() = default;
    /// Variable `sequence[i]` gets rank i + 1.
    static ClusterVarOrder fromSequence(const std::vector<int>& sequence);

    int rank(int var) const;
    int maxRank() const { return maxRank_; }

private:
    std::vector<int> rankOf_;
    int maxRank_ = 0;
};

/// Maximum-cardinality search: repeatedly visits the unvisited vertex with the
/// most visited neighbours, smallest index on ties. Graph vertices come first
/// in visit order, remaining variables of 1..numVars follow by index.
DiagramVarOrder mcsOrder(const PrimalGraph& graph, int numVars);
std::vector<int> mcsSequence(const PrimalGraph& graph);

/// Lexicographic breadth-first search (partition refinement): visits the
/// vertex with the lexicographically largest label, smallest index on ties.
/// Ranks follow visit order.
ClusterVarOrder lexpOrder(const PrimalGraph& graph);
std::vector<int> lexpSequence(const PrimalGraph& graph);

ClusterVarOrder indexClusterOrder(const PrimalGraph& graph);

/// Cluster of a constraint: the smallest cluster rank among its variables.
int constraintRank(const PBConstraint& constraint, const ClusterVarOrder& order);

/// Target cluster for a diagram leaving cluster `current`: the earliest later
/// cluster that projects one of its variables. `projectingCluster[v]` is the
/// cluster whose projection set holds v (0 if none). A constant diagram moves
/// to current + 1; a diagram none of whose variables is projected later goes
/// to `lastCluster`.
int chooseCluster(const std::vector<int>& diagramVars, int current, const std::vector<int>& projectingCluster,
                  int lastCluster);

}  // namespace pbcount
