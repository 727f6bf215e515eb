#include "pbcount/encode.hpp"

#include "pbcount/build_add.hpp"
#include "pbcount/dd.hpp"

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace pbcount {

namespace {

/// Literal standing for a diagram node: a constant, a plain variable
/// literal (for nodes with children (1, 0) or (0, 1)), or an auxiliary.
struct NodeLit {
    enum class Kind { True, False, Lit } kind;
    int lit = 0;
};

class DiagramEncoder {
public:
    DiagramEncoder(AddManager<double>& manager, CnfInstance& cnf) : manager_(manager), cnf_(cnf) {}

    void assertRoot(Add root) {
        NodeLit r = define(root);
        if (r.kind == NodeLit::Kind::True) return;
        if (r.kind == NodeLit::Kind::False)
            cnf_.clauses.emplace_back();
        else
            cnf_.clauses.push_back({r.lit});
    }

private:
    NodeLit define(Add node) {
        if (manager_.isTerminal(node))
            return manager_.value(node) == 0.0 ? NodeLit{NodeLit::Kind::False} : NodeLit{NodeLit::Kind::True};
        if (auto it = defined_.find(node.index); it != defined_.end()) return it->second;

        const int v = manager_.var(node);
        const Add hi = manager_.hi(node), lo = manager_.lo(node);
        NodeLit result{NodeLit::Kind::Lit};
        if (hi == manager_.one() && lo == manager_.zero()) {
            result.lit = v;
        } else if (hi == manager_.zero() && lo == manager_.one()) {
            result.lit = -v;
        } else {
            NodeLit h = define(hi);
            NodeLit l = define(lo);
            result.lit = ++cnf_.numVars;
            const int n = result.lit;
            emit({-n, -v}, h);
            emit({-n, v}, l);
            emit({n, -v}, negate(h));
            emit({n, v}, negate(l));
            emit({-n}, h, l);
            emit({n}, negate(h), negate(l));
        }
        defined_.emplace(node.index, result);
        return result;
    }

    static NodeLit negate(NodeLit x) {
        switch (x.kind) {
            case NodeLit::Kind::True: return {NodeLit::Kind::False};
            case NodeLit::Kind::False: return {NodeLit::Kind::True};
            default: return {NodeLit::Kind::Lit, -x.lit};
        }
    }

    void emit(std::vector<int> clause, NodeLit a, std::optional<NodeLit> b = std::nullopt) {
        for (const auto& x : {std::optional<NodeLit>(a), b}) {
            if (!x) continue;
            if (x->kind == NodeLit::Kind::True) return;
            if (x->kind == NodeLit::Kind::Lit) clause.push_back(x->lit);
        }
        for (std::size_t i = 0; i < clause.size(); ++i)
            for (std::size_t j = i + 1; j < clause.size(); ++j)
                if (clause[i] == -clause[j]) return;
        cnf_.clauses.push_back(std::move(clause));
    }

    AddManager<double>& manager_;
    CnfInstance& cnf_;
    std::unordered_map<NodeId, NodeLit> defined_;
};

}  // namespace

CnfInstance encodeCountingSafe(const PBFormula& formula, const WeightFunction& weights) {
    CnfInstance cnf;
    cnf.numOriginalVars = formula.numVars;
    cnf.numVars = formula.numVars;

    AddManager<double> manager(DiagramVarOrder::identity(formula.numVars));
    for (const auto& c : formula.constraints) {
        // Auxiliaries are per constraint even where diagrams share nodes.
        DiagramEncoder encoder(manager, cnf);
        encoder.assertRoot(constructConstraintAdd(manager, c));
    }
    for (Literal lit : formula.fixedLiterals) cnf.clauses.push_back({lit.toSigned()});

    cnf.weights = WeightFunction(cnf.numVars);
    for (int v = 1; v <= formula.numVars && v <= weights.numVars(); ++v)
        cnf.weights.set(v, weights.pos(v), weights.neg(v));
    return cnf;
}

void emitWeightedDimacs(const CnfInstance& cnf, std::ostream& out) {
    out << "c t wmc\n";
    out << "p cnf " << cnf.numVars << ' ' << cnf.clauses.size() << '\n';
    for (int v = 1; v <= cnf.numVars; ++v) {
        std::string pos = v <= cnf.weights.numVars() ? formatRational(cnf.weights.pos(v)) : "1";
        std::string neg = v <= cnf.weights.numVars() ? formatRational(cnf.weights.neg(v)) : "1";
        out << "c p weight " << v << ' ' << pos << " 0\n";
        out << "c p weight " << -v << ' ' << neg << " 0\n";
    }
    for (const auto& clause : cnf.clauses) {
        for (int lit : clause) out << lit << ' ';
        out << "0\n";
    }
}

std::string emitWeightedDimacs(const CnfInstance& cnf) {
    std::ostringstream os;
    emitWeightedDimacs(cnf, os);
    return os.str();
}

CnfInstance parseDimacs(std::istream& in) {
    CnfInstance cnf;
    std::optional<std::size_t> declaredClauses;
    std::map<int, Rational> weightOf;
    std::vector<int> current;
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::istringstream is(line);
        std::string head;
        if (!(is >> head)) continue;
        if (head == "c") {
            std::string p, kind;
            if (is >> p >> kind && p == "p" && kind == "weight") {
                int lit = 0;
                std::string w;
                if (!(is >> lit >> w) || lit == 0)
                    throw std::runtime_error("line " + std::to_string(lineNo) + ": bad weight line");
                weightOf[lit] = parseRational(w);
            }
            continue;
        }
        if (head == "p") {
            std::string fmt;
            std::size_t m = 0;
            if (!(is >> fmt >> cnf.numVars >> m) || fmt != "cnf")
                throw std::runtime_error("line " + std::to_string(lineNo) + ": bad problem line");
            declaredClauses = m;
            continue;
        }
        std::istringstream clauseStream(line);
        int lit = 0;
        while (clauseStream >> lit) {
            if (lit == 0) {
                cnf.clauses.push_back(std::move(current));
                current.clear();
            } else {
                current.push_back(lit);
            }
        }
    }
    if (!current.empty()) throw std::runtime_error("unterminated clause at end of input");
    if (declaredClauses && *declaredClauses != cnf.clauses.size())
        throw std::runtime_error("clause count does not match the problem line");
    cnf.numOriginalVars = cnf.numVars;
    cnf.weights = WeightFunction(cnf.numVars);
    for (int v = 1; v <= cnf.numVars; ++v) {
        auto p = weightOf.find(v), n = weightOf.find(-v);
        cnf.weights.set(v, p == weightOf.end() ? Rational(1) : p->second, n == weightOf.end() ? Rational(1) : n->second);
    }
    return cnf;
}

CnfInstance parseDimacs(const std::string& text) {
    std::istringstream is(text);
    return parseDimacs(is);
}

}  // namespace pbcount
