#include "pbcount/dd.hpp"

#include <algorithm>
#include <unordered_set>

namespace pbcount {

DiagramVarOrder DiagramVarOrder::identity(int numVars) {
    std::vector<int> seq(static_cast<std::size_t>(numVars));
    for (int i = 0; i < numVars; ++i) seq[static_cast<std::size_t>(i)] = i + 1;
    return fromSequence(std::move(seq));
}

DiagramVarOrder DiagramVarOrder::fromSequence(std::vector<int> sequence) {
    DiagramVarOrder order;
    order.rankOf_.assign(sequence.size() + 1, -1);
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        int v = sequence[i];
        if (v < 1 || v > static_cast<int>(sequence.size()) || order.rankOf_[static_cast<std::size_t>(v)] != -1)
            throw std::invalid_argument("diagram order must be a permutation of 1..n");
        order.rankOf_[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    order.sequence_ = std::move(sequence);
    return order;
}

int DiagramVarOrder::rank(int var) const {
    if (var < 1 || var > size()) throw std::out_of_range("variable x" + std::to_string(var) + " not in diagram order");
    return rankOf_[static_cast<std::size_t>(var)];
}

template <class V>
AddManager<V>::AddManager(DiagramVarOrder order) : order_(std::move(order)) {
    makeTerminal(V(0));
    makeTerminal(V(1));
}

template <class V>
int AddManager<V>::level(NodeId id) const {
    int v = nodes_[id].var;
    return v == kTerminalVar ? INT_MAX : order_.rank(v);
}

template <class V>
void AddManager<V>::countNewNode() {
    if (limits_.maxNodes != 0 && nodes_.size() >= limits_.maxNodes)
        throw ResourceExhausted("diagram node limit of " + std::to_string(limits_.maxNodes) + " reached");
    if ((nodes_.size() & 0xFFF) == 0) limits_.checkDeadline();
}

template <class V>
NodeId AddManager<V>::makeTerminal(V value) {
    if constexpr (std::is_same_v<V, double>) {
        if (value == 0.0) value = 0.0;
    }
    if (NodeId* hit = terminals_.find(value)) return *hit;
    countNewNode();
    auto id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back({kTerminalVar, static_cast<NodeId>(values_.size()), 0});
    values_.push_back(value);
    terminals_.insert(values_.back(), id);
    return id;
}

template <class V>
NodeId AddManager<V>::makeNode(int var, NodeId hi, NodeId lo) {
    if (hi == lo) return hi;
    NodeKey key{var, hi, lo};
    if (auto it = unique_.find(key); it != unique_.end()) return it->second;
    countNewNode();
    auto id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back({var, hi, lo});
    unique_.emplace(key, id);
    return id;
}

template <class V>
Add AddManager<V>::terminal(const V& value) {
    return Add{makeTerminal(value)};
}

template <class V>
Add AddManager<V>::ite(int var, Add hi, Add lo) {
    int r = order_.rank(var);
    if (r >= level(hi.index) || r >= level(lo.index))
        throw std::logic_error("ite on x" + std::to_string(var) + " violates the diagram variable order");
    return Add{makeNode(var, hi.index, lo.index)};
}

template <class V>
const V& AddManager<V>::value(Add f) const {
    if (!isTerminal(f)) throw std::logic_error("value() of a non-terminal node");
    return values_[nodes_[f.index].hi];
}

template <class V>
int AddManager<V>::var(Add f) const {
    if (isTerminal(f)) throw std::logic_error("var() of a terminal node");
    return nodes_[f.index].var;
}

template <class V>
Add AddManager<V>::product(Add f, Add g) {
    return Add{productRec(f.index, g.index)};
}

template <class V>
NodeId AddManager<V>::productRec(NodeId f, NodeId g) {
    if (f == kZero || g == kZero) return kZero;
    if (f == kOne) return g;
    if (g == kOne) return f;
    if (f > g) std::swap(f, g);
    const Node& nf = nodes_[f];
    const Node& ng = nodes_[g];
    if (nf.var == kTerminalVar && ng.var == kTerminalVar) return makeTerminal(values_[nf.hi] * values_[ng.hi]);

    auto key = pairKey(f, g);
    if (auto it = productCache_.find(key); it != productCache_.end()) return it->second;

    int lf = level(f), lg = level(g);
    int top = std::min(lf, lg);
    NodeId f1 = lf == top ? nodes_[f].hi : f, f0 = lf == top ? nodes_[f].lo : f;
    NodeId g1 = lg == top ? nodes_[g].hi : g, g0 = lg == top ? nodes_[g].lo : g;
    NodeId hi = productRec(f1, g1);
    NodeId lo = productRec(f0, g0);
    NodeId r = makeNode(order_.varAt(top), hi, lo);
    productCache_.emplace(key, r);
    return r;
}

template <class V>
Add AddManager<V>::sum(Add f, Add g) {
    return Add{sumRec(f.index, g.index)};
}

template <class V>
NodeId AddManager<V>::sumRec(NodeId f, NodeId g) {
    if (f == kZero) return g;
    if (g == kZero) return f;
    if (f > g) std::swap(f, g);
    const Node& nf = nodes_[f];
    const Node& ng = nodes_[g];
    if (nf.var == kTerminalVar && ng.var == kTerminalVar) return makeTerminal(values_[nf.hi] + values_[ng.hi]);

    auto key = pairKey(f, g);
    if (auto it = sumCache_.find(key); it != sumCache_.end()) return it->second;

    int lf = level(f), lg = level(g);
    int top = std::min(lf, lg);
    NodeId f1 = lf == top ? nodes_[f].hi : f, f0 = lf == top ? nodes_[f].lo : f;
    NodeId g1 = lg == top ? nodes_[g].hi : g, g0 = lg == top ? nodes_[g].lo : g;
    NodeId hi = sumRec(f1, g1);
    NodeId lo = sumRec(f0, g0);
    NodeId r = makeNode(order_.varAt(top), hi, lo);
    sumCache_.emplace(key, r);
    return r;
}

template <class V>
Add AddManager<V>::scale(Add f, const V& factor) {
    NodeId c = makeTerminal(factor);
    return Add{scaleRec(f.index, c)};
}

template <class V>
NodeId AddManager<V>::scaleRec(NodeId f, NodeId factor) {
    if (factor == kOne || f == kZero) return f;
    if (factor == kZero) return kZero;
    const Node& nf = nodes_[f];
    if (nf.var == kTerminalVar) return makeTerminal(values_[nf.hi] * values_[nodes_[factor].hi]);

    auto key = pairKey(f, factor);
    if (auto it = scaleCache_.find(key); it != scaleCache_.end()) return it->second;
    int var = nf.var;
    NodeId hi = scaleRec(nf.hi, factor);
    NodeId lo = scaleRec(nodes_[f].lo, factor);
    NodeId r = makeNode(var, hi, lo);
    scaleCache_.emplace(key, r);
    return r;
}

template <class V>
Add AddManager<V>::projectWeighted(Add f, int var, const V& pos, const V& neg) {
    std::unordered_map<NodeId, NodeId> cache;
    V both = pos + neg;
    return Add{projectRec(f.index, var, order_.rank(var), pos, neg, both, cache)};
}

template <class V>
NodeId AddManager<V>::projectRec(NodeId f, int var, int rank, const V& pos, const V& neg, const V& both,
                                 std::unordered_map<NodeId, NodeId>& cache) {
    int lf = level(f);
    if (lf > rank) return scaleRec(f, makeTerminal(both));
    if (auto it = cache.find(f); it != cache.end()) return it->second;

    NodeId r;
    if (lf == rank) {
        NodeId hi = scaleRec(nodes_[f].hi, makeTerminal(pos));
        NodeId lo = scaleRec(nodes_[f].lo, makeTerminal(neg));
        r = sumRec(hi, lo);
    } else {
        int v = nodes_[f].var;
        NodeId hi = projectRec(nodes_[f].hi, var, rank, pos, neg, both, cache);
        NodeId lo = projectRec(nodes_[f].lo, var, rank, pos, neg, both, cache);
        r = makeNode(v, hi, lo);
    }
    cache.emplace(f, r);
    return r;
}

template <class V>
V AddManager<V>::evaluate(Add f, const Assignment& assignment) const {
    NodeId id = f.index;
    while (nodes_[id].var != kTerminalVar) {
        const Node& n = nodes_[id];
        id = assignment.value(n.var) ? n.hi : n.lo;
    }
    return values_[nodes_[id].hi];
}

template <class V>
std::vector<int> AddManager<V>::support(Add f) const {
    std::vector<NodeId> stack{f.index};
    std::unordered_set<NodeId> seen{f.index};
    std::vector<int> vars;
    std::unordered_set<int> varSeen;
    while (!stack.empty()) {
        NodeId id = stack.back();
        stack.pop_back();
        const Node& n = nodes_[id];
        if (n.var == kTerminalVar) continue;
        if (varSeen.insert(n.var).second) vars.push_back(n.var);
        for (NodeId child : {n.hi, n.lo})
            if (seen.insert(child).second) stack.push_back(child);
    }
    std::sort(vars.begin(), vars.end(), [&](int a, int b) { return order_.rank(a) < order_.rank(b); });
    return vars;
}

template <class V>
std::size_t AddManager<V>::nodeCount(Add f) const {
    std::vector<NodeId> stack{f.index};
    std::unordered_set<NodeId> seen{f.index};
    while (!stack.empty()) {
        const Node& n = nodes_[stack.back()];
        stack.pop_back();
        if (n.var == kTerminalVar) continue;
        for (NodeId child : {n.hi, n.lo})
            if (seen.insert(child).second) stack.push_back(child);
    }
    return seen.size();
}

template <class V>
void AddManager<V>::forEachZeroPath(Add f, ZeroPathVisitor& visitor) const {
    std::vector<Literal> path;
    zeroPathRec(f.index, path, visitor);
}

template <class V>
bool AddManager<V>::zeroPathRec(NodeId f, std::vector<Literal>& path, ZeroPathVisitor& visitor) const {
    const Node& n = nodes_[f];
    if (n.var == kTerminalVar) {
        if (values_[n.hi] == V(0)) return visitor.onZeroPath(path);
        return true;
    }
    for (bool positive : {false, true}) {
        Literal lit{n.var, positive};
        bool descend = visitor.enter(lit);
        bool keepGoing = true;
        if (descend) {
            path.push_back(lit);
            keepGoing = zeroPathRec(positive ? n.hi : n.lo, path, visitor);
            path.pop_back();
        }
        visitor.leave(lit);
        if (!keepGoing) return false;
    }
    return true;
}

template <class V>
std::vector<std::vector<Literal>> AddManager<V>::zeroPaths(Add f) const {
    struct Collector : ZeroPathVisitor {
        std::vector<std::vector<Literal>> paths;
        bool enter(Literal) override { return true; }
        void leave(Literal) override {}
        bool onZeroPath(std::span<const Literal> path) override {
            paths.emplace_back(path.begin(), path.end());
            return true;
        }
    } collector;
    forEachZeroPath(f, collector);
    return std::move(collector.paths);
}

template <class V>
void AddManager<V>::writeDot(Add f, std::ostream& out) const {
    out << "digraph add {\n";
    std::vector<NodeId> stack{f.index};
    std::unordered_set<NodeId> seen{f.index};
    while (!stack.empty()) {
        NodeId id = stack.back();
        stack.pop_back();
        const Node& n = nodes_[id];
        if (n.var == kTerminalVar) {
            out << "  n" << id << " [shape=box,label=\"";
            if constexpr (std::is_same_v<V, double>)
                out << formatDouble(values_[n.hi]);
            else
                out << formatRational(values_[n.hi]);
            out << "\"];\n";
            continue;
        }
        out << "  n" << id << " [label=\"x" << n.var << "\"];\n";
        out << "  n" << id << " -> n" << n.hi << ";\n";
        out << "  n" << id << " -> n" << n.lo << " [style=dashed];\n";
        for (NodeId child : {n.hi, n.lo})
            if (seen.insert(child).second) stack.push_back(child);
    }
    out << "}\n";
}

template <class V>
void AddManager<V>::clearCaches() {
    productCache_.clear();
    sumCache_.clear();
    scaleCache_.clear();
}

template class AddManager<double>;
template class AddManager<Rational>;

}  // namespace pbcount
