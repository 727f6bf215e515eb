#include "pbcount/heuristics.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace pbcount {

PrimalGraph::PrimalGraph(std::vector<int> vertices, const std::vector<std::pair<int, int>>& edges)
    : vertices_(std::move(vertices)) {
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    adjacency_.resize(vertices_.size());
    for (auto [a, b] : edges) {
        if (a == b) continue;
        adjacency_[vertexIndex(a)].push_back(b);
        adjacency_[vertexIndex(b)].push_back(a);
    }
    for (auto& nbrs : adjacency_) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
}

PrimalGraph PrimalGraph::build(const PBFormula& formula) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& c : formula.constraints) {
        auto vars = c.vars();
        for (std::size_t i = 0; i < vars.size(); ++i)
            for (std::size_t j = i + 1; j < vars.size(); ++j) edges.emplace_back(vars[i], vars[j]);
    }
    return PrimalGraph(formula.vars(), edges);
}

std::size_t PrimalGraph::vertexIndex(int vertex) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), vertex);
    if (it == vertices_.end() || *it != vertex)
        throw std::out_of_range("x" + std::to_string(vertex) + " is not a graph vertex");
    return static_cast<std::size_t>(it - vertices_.begin());
}

const std::vector<int>& PrimalGraph::neighbors(int vertex) const {
    return adjacency_[vertexIndex(vertex)];
}

std::vector<std::pair<int, int>> PrimalGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        for (int n : adjacency_[i])
            if (vertices_[i] < n) out.emplace_back(vertices_[i], n);
    return out;
}

ClusterVarOrder ClusterVarOrder::fromSequence(const std::vector<int>& sequence) {
    ClusterVarOrder order;
    int maxVar = sequence.empty() ? 0 : *std::max_element(sequence.begin(), sequence.end());
    order.rankOf_.assign(static_cast<std::size_t>(maxVar) + 1, 0);
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        auto& slot = order.rankOf_.at(static_cast<std::size_t>(sequence[i]));
        if (slot != 0) throw std::invalid_argument("cluster order must not repeat a variable");
        slot = static_cast<int>(i) + 1;
    }
    order.maxRank_ = static_cast<int>(sequence.size());
    return order;
}

int ClusterVarOrder::rank(int var) const {
    return var >= 0 && static_cast<std::size_t>(var) < rankOf_.size() ? rankOf_[static_cast<std::size_t>(var)] : 0;
}

std::vector<int> mcsSequence(const PrimalGraph& graph) {
    const auto& vertices = graph.vertices();
    std::vector<int> weight(vertices.size(), 0);
    std::vector<bool> visited(vertices.size(), false);
    // (−visited neighbours, vertex): begin() is the next vertex to visit.
    std::set<std::pair<int, int>> queue;
    for (int v : vertices) queue.emplace(0, v);

    std::vector<int> sequence;
    sequence.reserve(vertices.size());
    while (!queue.empty()) {
        int v = queue.begin()->second;
        queue.erase(queue.begin());
        visited[graph.vertexIndex(v)] = true;
        sequence.push_back(v);
        for (int n : graph.neighbors(v)) {
            auto idx = graph.vertexIndex(n);
            if (visited[idx]) continue;
            queue.erase({-weight[idx], n});
            ++weight[idx];
            queue.emplace(-weight[idx], n);
        }
    }
    return sequence;
}

DiagramVarOrder mcsOrder(const PrimalGraph& graph, int numVars) {
    std::vector<int> sequence = mcsSequence(graph);
    std::vector<bool> placed(static_cast<std::size_t>(numVars) + 1, false);
    for (int v : sequence) placed.at(static_cast<std::size_t>(v)) = true;
    for (int v = 1; v <= numVars; ++v)
        if (!placed[static_cast<std::size_t>(v)]) sequence.push_back(v);
    return DiagramVarOrder::fromSequence(std::move(sequence));
}

std::vector<int> lexpSequence(const PrimalGraph& graph) {
    // Ordered partition of the unvisited vertices; earlier cells carry larger
    // labels. Each cell stays sorted by index, so cells.front().front() is the
    // next vertex.
    std::vector<std::vector<int>> cells;
    if (!graph.vertices().empty()) cells.push_back(graph.vertices());

    std::vector<bool> isNeighbor(graph.vertices().size(), false);
    std::vector<int> sequence;
    sequence.reserve(graph.vertices().size());
    while (!cells.empty()) {
        int v = cells.front().front();
        cells.front().erase(cells.front().begin());
        if (cells.front().empty()) cells.erase(cells.begin());
        sequence.push_back(v);

        const auto& nbrs = graph.neighbors(v);
        for (int n : nbrs) isNeighbor[graph.vertexIndex(n)] = true;
        std::vector<std::vector<int>> refined;
        refined.reserve(cells.size() * 2);
        for (auto& cell : cells) {
            std::vector<int> in, out;
            for (int u : cell) (isNeighbor[graph.vertexIndex(u)] ? in : out).push_back(u);
            if (!in.empty()) refined.push_back(std::move(in));
            if (!out.empty()) refined.push_back(std::move(out));
        }
        cells = std::move(refined);
        for (int n : nbrs) isNeighbor[graph.vertexIndex(n)] = false;
    }
    return sequence;
}

ClusterVarOrder lexpOrder(const PrimalGraph& graph) {
    return ClusterVarOrder::fromSequence(lexpSequence(graph));
}

ClusterVarOrder indexClusterOrder(const PrimalGraph& graph) {
    return ClusterVarOrder::fromSequence(graph.vertices());
}

int constraintRank(const PBConstraint& constraint, const ClusterVarOrder& order) {
    if (constraint.terms.empty()) throw std::invalid_argument("constraintRank of an empty constraint");
    int best = std::numeric_limits<int>::max();
    for (const auto& t : constraint.terms) {
        int r = order.rank(t.lit.var);
        if (r == 0) throw std::invalid_argument("x" + std::to_string(t.lit.var) + " has no cluster rank");
        best = std::min(best, r);
    }
    return best;
}

int chooseCluster(const std::vector<int>& diagramVars, int current, const std::vector<int>& projectingCluster,
                  int lastCluster) {
    if (diagramVars.empty()) return current + 1;
    int best = std::numeric_limits<int>::max();
    for (int v : diagramVars) {
        int c = static_cast<std::size_t>(v) < projectingCluster.size() ? projectingCluster[static_cast<std::size_t>(v)]
                                                                       : 0;
        if (c > current) best = std::min(best, c);
    }
    return best == std::numeric_limits<int>::max() ? lastCluster : best;
}

}  // namespace pbcount
