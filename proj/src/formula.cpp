#include "pbcount/formula.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pbcount {

std::string to_string(Literal lit) {
    return (lit.positive ? "x" : "~x") + std::to_string(lit.var);
}

std::string_view to_string(RelOp op) {
    switch (op) {
        case RelOp::LT: return "<";
        case RelOp::LE: return "<=";
        case RelOp::EQ: return "=";
        case RelOp::GE: return ">=";
        case RelOp::GT: return ">";
    }
    return "?";
}

std::vector<int> PBConstraint::vars() const {
    std::vector<int> out;
    out.reserve(terms.size());
    for (const auto& t : terms) out.push_back(t.lit.var);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

BigInt PBConstraint::coefSum() const {
    BigInt sum = 0;
    for (const auto& t : terms) sum += t.coef;
    return sum;
}

bool PBConstraint::isNormalized() const {
    if (op != RelOp::EQ && op != RelOp::GE) return false;
    std::set<int> seen;
    for (const auto& t : terms) {
        if (t.coef <= 0) return false;
        if (!seen.insert(t.lit.var).second) return false;
    }
    return true;
}

std::string to_string(const PBConstraint& c) {
    std::ostringstream os;
    for (const auto& t : c.terms) os << t.coef << ' ' << to_string(t.lit) << ' ';
    os << to_string(c.op) << ' ' << c.degree;
    return os.str();
}

std::vector<int> PBFormula::vars() const {
    std::vector<int> out;
    for (const auto& c : constraints)
        for (const auto& t : c.terms) out.push_back(t.lit.var);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

WeightFunction::WeightFunction(int numVars)
    : pos_(static_cast<std::size_t>(numVars) + 1, Rational(1)),
      neg_(static_cast<std::size_t>(numVars) + 1, Rational(1)) {}

void WeightFunction::set(int var, Rational posWeight, Rational negWeight) {
    if (var < 1 || var > numVars()) throw std::out_of_range("weight for unknown variable " + std::to_string(var));
    pos_[static_cast<std::size_t>(var)] = std::move(posWeight);
    neg_[static_cast<std::size_t>(var)] = std::move(negWeight);
}

void WeightFunction::resize(int numVars) {
    if (numVars < this->numVars()) return;
    pos_.resize(static_cast<std::size_t>(numVars) + 1, Rational(1));
    neg_.resize(static_cast<std::size_t>(numVars) + 1, Rational(1));
}

bool Assignment::isAssigned(int var) const {
    return var >= 1 && var <= numVars() && values_[static_cast<std::size_t>(var)] != kUnassigned;
}

bool Assignment::value(int var) const {
    if (!isAssigned(var)) throw std::invalid_argument("variable x" + std::to_string(var) + " is unassigned");
    return values_[static_cast<std::size_t>(var)] == 1;
}

void Assignment::set(int var, bool value) {
    if (var < 1) throw std::out_of_range("variable index must be positive");
    if (var > numVars()) values_.resize(static_cast<std::size_t>(var) + 1, kUnassigned);
    values_[static_cast<std::size_t>(var)] = value ? 1 : 0;
}

void Assignment::unset(int var) {
    if (var >= 1 && var <= numVars()) values_[static_cast<std::size_t>(var)] = kUnassigned;
}

Assignment Assignment::fromMask(int numVars, std::uint64_t mask) {
    Assignment a(numVars);
    for (int v = 1; v <= numVars; ++v) a.set(v, (mask >> (v - 1)) & 1U);
    return a;
}

NormalizeResult normalize(const PBConstraint& c) {
    // Bring everything to `sum >= degree` or `sum = degree` with signed coefficients.
    BigInt sign = 1;
    BigInt degree = c.degree;
    RelOp op = c.op;
    switch (c.op) {
        case RelOp::LT: sign = -1; degree = -c.degree + 1; op = RelOp::GE; break;
        case RelOp::LE: sign = -1; degree = -c.degree; op = RelOp::GE; break;
        case RelOp::GT: degree = c.degree + 1; op = RelOp::GE; break;
        case RelOp::GE:
        case RelOp::EQ: break;
    }

    // Coefficient of the positive literal of each variable; ~x = 1 - x moves a constant to the right.
    std::map<int, BigInt> coefOfVar;
    for (const auto& t : c.terms) {
        if (t.lit.var < 1) throw std::invalid_argument("variable index must be positive");
        BigInt a = sign * t.coef;
        if (t.lit.positive) {
            coefOfVar[t.lit.var] += a;
        } else {
            coefOfVar[t.lit.var] -= a;
            degree -= a;
        }
    }

    PBConstraint out;
    out.op = op;
    for (auto& [var, a] : coefOfVar) {
        if (a > 0) {
            out.terms.push_back({a, posLit(var)});
        } else if (a < 0) {
            // a*x = a + |a|*~x
            out.terms.push_back({-a, negLit(var)});
            degree -= a;
        }
    }
    out.degree = degree;

    BigInt sum = out.coefSum();
    if (op == RelOp::GE) {
        if (degree <= 0) return AlwaysTrue{};
        if (degree > sum) return AlwaysFalse{};
    } else {
        if (degree < 0 || degree > sum) return AlwaysFalse{};
        if (out.terms.empty()) return AlwaysTrue{};
    }
    return out;
}

std::optional<PBFormula> normalizeFormula(const PBFormula& formula) {
    PBFormula out;
    out.numVars = formula.numVars;
    for (const auto& c : formula.constraints) {
        auto r = normalize(c);
        if (std::holds_alternative<AlwaysFalse>(r)) return std::nullopt;
        if (auto* n = std::get_if<PBConstraint>(&r)) out.constraints.push_back(std::move(*n));
    }
    for (Literal lit : formula.fixedLiterals) {
        auto next = unitPropagate(out, lit);
        if (!next) return std::nullopt;
        out = std::move(*next);
        if (std::find(out.fixedLiterals.begin(), out.fixedLiterals.end(), lit.negated()) != out.fixedLiterals.end())
            return std::nullopt;
        if (std::find(out.fixedLiterals.begin(), out.fixedLiterals.end(), lit) == out.fixedLiterals.end())
            out.fixedLiterals.push_back(lit);
    }
    return out;
}

std::optional<PBFormula> unitPropagate(const PBFormula& formula, Literal lit) {
    PBFormula out;
    out.numVars = formula.numVars;
    out.fixedLiterals = formula.fixedLiterals;
    out.constraints.reserve(formula.constraints.size());

    for (const auto& c : formula.constraints) {
        if (c.op != RelOp::EQ && c.op != RelOp::GE)
            throw std::invalid_argument("unitPropagate expects normalized constraints");
        auto it = std::find_if(c.terms.begin(), c.terms.end(), [&](const Term& t) { return t.lit.var == lit.var; });
        if (it == c.terms.end()) {
            out.constraints.push_back(c);
            continue;
        }

        PBConstraint reduced;
        reduced.op = c.op;
        reduced.degree = c.degree;
        if (it->lit == lit) reduced.degree -= it->coef;
        reduced.terms.reserve(c.terms.size() - 1);
        for (auto t = c.terms.begin(); t != c.terms.end(); ++t)
            if (t != it) reduced.terms.push_back(*t);

        BigInt sum = reduced.coefSum();
        if (reduced.op == RelOp::GE) {
            if (reduced.degree <= 0) continue;
            if (sum < reduced.degree) return std::nullopt;
        } else {
            if (reduced.degree < 0 || reduced.degree > sum) return std::nullopt;
            if (reduced.degree == 0 && reduced.terms.empty()) continue;
        }
        out.constraints.push_back(std::move(reduced));
    }
    return out;
}

bool evaluate(const PBConstraint& c, const Assignment& assignment) {
    BigInt lhs = 0;
    for (const auto& t : c.terms)
        if (assignment.satisfies(t.lit)) lhs += t.coef;
    switch (c.op) {
        case RelOp::LT: return lhs < c.degree;
        case RelOp::LE: return lhs <= c.degree;
        case RelOp::EQ: return lhs == c.degree;
        case RelOp::GE: return lhs >= c.degree;
        case RelOp::GT: return lhs > c.degree;
    }
    return false;
}

bool evaluate(const PBFormula& formula, const Assignment& assignment) {
    for (Literal lit : formula.fixedLiterals)
        if (!assignment.satisfies(lit)) return false;
    for (const auto& c : formula.constraints)
        if (!evaluate(c, assignment)) return false;
    return true;
}

}  // namespace pbcount
