#pragma once

#include "pbcount/errors.hpp"
#include "pbcount/formula.hpp"
#include "pbcount/numeric.hpp"

#include <bit>
#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace pbcount {

/// Total order over variables 1..n fixing the level of each variable in every diagram.
class DiagramVarOrder {
public:
    DiagramVarOrder() = default;

    static DiagramVarOrder identity(int numVars);
    /// `sequence` lists variables from top level to bottom; it must be a permutation of 1..n.
    static DiagramVarOrder fromSequence(std::vector<int> sequence);

    int size() const { return static_cast<int>(sequence_.size()); }
    /// 0-based level of var.
    int rank(int var) const;
    int varAt(int rank) const { return sequence_.at(static_cast<std::size_t>(rank)); }
    const std::vector<int>& sequence() const { return sequence_; }

private:
    std::vector<int> sequence_;
    std::vector<int> rankOf_{-1};
};

using NodeId = std::uint32_t;

/// Handle to a node of an AddManager. Equal handles mean equal functions.
struct Add {
    NodeId index = 0;
    constexpr auto operator<=>(const Add&) const = default;
};

/// Receives the paths of forEachZeroPath.
struct ZeroPathVisitor {
    virtual ~ZeroPathVisitor() = default;
    /// Called when the traversal takes the edge labelled `lit`. Return false to skip the subtree.
    virtual bool enter(Literal lit) = 0;
    /// Called after every enter, whether or not the subtree was visited.
    virtual void leave(Literal lit) = 0;
    /// A root-to-zero path. Return false to stop the traversal.
    virtual bool onZeroPath(std::span<const Literal> path) = 0;
};

namespace detail {

template <class V>
class TerminalTable;

template <>
class TerminalTable<double> {
public:
    NodeId* find(double v) {
        auto it = table_.find(key(v));
        return it == table_.end() ? nullptr : &it->second;
    }
    void insert(double v, NodeId id) { table_.emplace(key(v), id); }

private:
    // Bitwise identity, no epsilon merging; -0 is folded into +0 by the caller.
    static std::uint64_t key(double v) { return std::bit_cast<std::uint64_t>(v); }
    std::unordered_map<std::uint64_t, NodeId> table_;
};

template <>
class TerminalTable<Rational> {
public:
    NodeId* find(const Rational& v) {
        auto it = table_.find(v);
        return it == table_.end() ? nullptr : &it->second;
    }
    void insert(const Rational& v, NodeId id) { table_.emplace(v, id); }

private:
    std::map<Rational, NodeId> table_;
};

}  // namespace detail

/// Reduced ordered algebraic decision diagrams with a shared unique table.
///
/// Terminals hold values of type V (double or Rational). Every node is stored
/// once; nodes whose two children coincide are never created, so two handles
/// are equal exactly when they denote the same function. Nodes are never
/// freed before the manager itself goes away.
///
/// Not thread-safe: one manager per counting run.
template <class V>
class AddManager {
public:
    explicit AddManager(DiagramVarOrder order);

    const DiagramVarOrder& order() const { return order_; }
    void setLimits(const Limits& limits) { limits_ = limits; }

    Add terminal(const V& value);
    Add zero() const { return Add{kZero}; }
    Add one() const { return Add{kOne}; }

    /// Node testing `var`, 1-edge to hi and 0-edge to lo. Throws std::logic_error
    /// unless var lies strictly above every variable of hi and lo.
    Add ite(int var, Add hi, Add lo);

    Add product(Add f, Add g);
    Add sum(Add f, Add g);
    Add scale(Add f, const V& factor);
    /// pos * f|var=1 + neg * f|var=0. When var is not in f the result is (pos + neg) * f.
    Add projectWeighted(Add f, int var, const V& pos, const V& neg);

    /// Throws std::invalid_argument when a tested variable is unassigned.
    V evaluate(Add f, const Assignment& assignment) const;

    bool isTerminal(Add f) const { return node(f.index).var == kTerminalVar; }
    const V& value(Add f) const;
    int var(Add f) const;
    Add hi(Add f) const { return Add{node(f.index).hi}; }
    Add lo(Add f) const { return Add{node(f.index).lo}; }

    /// Variables tested anywhere in f, in diagram order.
    std::vector<int> support(Add f) const;
    /// Distinct nodes reachable from f, terminals included.
    std::size_t nodeCount(Add f) const;
    /// Nodes ever created by this manager.
    std::size_t storedNodes() const { return nodes_.size(); }

    /// Depth-first traversal of the root-to-zero paths of a 0/1 diagram.
    void forEachZeroPath(Add f, ZeroPathVisitor& visitor) const;
    std::vector<std::vector<Literal>> zeroPaths(Add f) const;

    void writeDot(Add f, std::ostream& out) const;

    void clearCaches();

private:
    static constexpr int kTerminalVar = INT_MAX;
    static constexpr NodeId kZero = 0;
    static constexpr NodeId kOne = 1;

    struct Node {
        int var;
        NodeId hi;  // terminal: index into values_
        NodeId lo;
    };

    struct NodeKey {
        int var;
        NodeId hi;
        NodeId lo;
        bool operator==(const NodeKey&) const = default;
    };

    struct NodeKeyHash {
        std::size_t operator()(const NodeKey& k) const {
            std::uint64_t h = static_cast<std::uint64_t>(static_cast<std::uint32_t>(k.var)) * 0x9E3779B97F4A7C15ULL;
            h ^= (static_cast<std::uint64_t>(k.hi) << 32 | k.lo) + 0x7F4A7C15ULL + (h << 6) + (h >> 2);
            return static_cast<std::size_t>(h);
        }
    };

    using PairCache = std::unordered_map<std::uint64_t, NodeId>;

    static std::uint64_t pairKey(NodeId a, NodeId b) { return static_cast<std::uint64_t>(a) << 32 | b; }

    const Node& node(NodeId id) const { return nodes_.at(id); }
    int level(NodeId id) const;
    NodeId makeNode(int var, NodeId hi, NodeId lo);
    NodeId makeTerminal(V value);
    void countNewNode();

    NodeId productRec(NodeId f, NodeId g);
    NodeId sumRec(NodeId f, NodeId g);
    NodeId scaleRec(NodeId f, NodeId factor);
    NodeId projectRec(NodeId f, int var, int rank, const V& pos, const V& neg, const V& both,
                      std::unordered_map<NodeId, NodeId>& cache);
    bool zeroPathRec(NodeId f, std::vector<Literal>& path, ZeroPathVisitor& visitor) const;

    DiagramVarOrder order_;
    Limits limits_;
    std::vector<Node> nodes_;
    std::vector<V> values_;
    std::unordered_map<NodeKey, NodeId, NodeKeyHash> unique_;
    detail::TerminalTable<V> terminals_;
    PairCache productCache_;
    PairCache sumCache_;
    PairCache scaleCache_;
};

extern template class AddManager<double>;
extern template class AddManager<Rational>;

}  // namespace pbcount
