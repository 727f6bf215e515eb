#include "pbcount/opb.hpp"

#include <cctype>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace pbcount {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class TokKind { Integer, Literal, Op, Semicolon, Objective, End };

struct Token {
    TokKind kind = TokKind::End;
    std::string text;
    int column = 0;
};

class LineLexer {
public:
    LineLexer(std::string_view line, int lineNo) : line_(line), lineNo_(lineNo) {}

    Token next() {
        while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
        Token tok;
        tok.column = static_cast<int>(pos_) + 1;
        if (pos_ >= line_.size()) return tok;

        char c = line_[pos_];
        if (c == ';') {
            ++pos_;
            tok.kind = TokKind::Semicolon;
            tok.text = ";";
            return tok;
        }
        if (c == '>' || c == '<' || c == '=') {
            std::size_t start = pos_++;
            if (c != '=' && pos_ < line_.size() && line_[pos_] == '=') ++pos_;
            tok.kind = TokKind::Op;
            tok.text = std::string(line_.substr(start, pos_ - start));
            return tok;
        }
        if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_++;
            while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_]))) ++pos_;
            tok.text = std::string(line_.substr(start, pos_ - start));
            if (tok.text == "+" || tok.text == "-") {
                // a bare sign in front of a literal stands for a unit coefficient
                std::size_t ahead = pos_;
                while (ahead < line_.size() && std::isspace(static_cast<unsigned char>(line_[ahead]))) ++ahead;
                if (ahead >= line_.size() || (line_[ahead] != 'x' && line_[ahead] != '~'))
                    fail("sign without digits", tok.column);
                tok.text += '1';
            }
            tok.kind = TokKind::Integer;
            return tok;
        }
        if (c == '~' || c == 'x') {
            std::size_t start = pos_;
            if (c == '~') ++pos_;
            if (pos_ >= line_.size() || line_[pos_] != 'x') fail("expected variable after '~'", tok.column);
            ++pos_;
            std::size_t digitsStart = pos_;
            while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_]))) ++pos_;
            if (digitsStart == pos_) fail("expected variable index", static_cast<int>(digitsStart) + 1);
            tok.kind = TokKind::Literal;
            tok.text = std::string(line_.substr(start, pos_ - start));
            return tok;
        }
        if (line_.substr(pos_, 4) == "min:" || line_.substr(pos_, 4) == "max:") {
            pos_ += 4;
            tok.kind = TokKind::Objective;
            return tok;
        }
        fail(std::string("unexpected character '") + c + "'", tok.column);
    }

    [[noreturn]] void fail(const std::string& message, int column) const {
        throw ParseError(message, lineNo_, column);
    }

private:
    std::string_view line_;
    int lineNo_;
    std::size_t pos_ = 0;
};

std::optional<RelOp> parseOp(std::string_view text) {
    if (text == ">=") return RelOp::GE;
    if (text == "<=") return RelOp::LE;
    if (text == "=") return RelOp::EQ;
    if (text == ">") return RelOp::GT;
    if (text == "<") return RelOp::LT;
    return std::nullopt;
}

BigInt parseBigInt(const std::string& text) { return parseDecimalInteger(text); }

std::vector<std::string> splitWords(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream is{std::string(s)};
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

struct WeightDirective {
    int var;
    Rational pos;
    Rational neg;
    int line;
};

/// `w <var> <pos> <neg>`; the caller has already stripped any comment prefix.
WeightDirective parseWeightDirective(const std::vector<std::string>& words, int lineNo, int column) {
    if (words.size() != 4 || words[0] != "w")
        throw ParseError("weight directive must be 'w <var> <pos> <neg>'", lineNo, column);
    int var = 0;
    try {
        std::size_t used = 0;
        var = std::stoi(words[1], &used);
        if (used != words[1].size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
        throw ParseError("bad variable index '" + words[1] + "'", lineNo, column);
    }
    if (var <= 0) throw ParseError("variable index must be positive", lineNo, column);
    WeightDirective d{var, 0, 0, lineNo};
    try {
        d.pos = parseRational(words[2]);
        d.neg = parseRational(words[3]);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("non-finite or malformed weight: ") + e.what(), lineNo, column);
    }
    return d;
}

void applyDirectives(const std::vector<WeightDirective>& directives, WeightFunction& weights) {
    std::map<int, int> seen;
    for (const auto& d : directives) {
        if (auto [it, fresh] = seen.emplace(d.var, d.line); !fresh)
            throw ParseError("duplicate weight for x" + std::to_string(d.var) + " (first on line " +
                                 std::to_string(it->second) + ")",
                             d.line, 1);
        if (d.var > weights.numVars())
            throw ParseError("weight for x" + std::to_string(d.var) + " exceeds variable count " +
                                 std::to_string(weights.numVars()),
                             d.line, 1);
        weights.set(d.var, d.pos, d.neg);
    }
}

std::optional<long> headerField(std::string_view text, std::string_view key) {
    auto at = text.find(key);
    if (at == std::string_view::npos) return std::nullopt;
    std::string rest(text.substr(at + key.size()));
    try {
        return std::stol(rest);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace

ParsedInstance parseOpb(std::istream& in) {
    ParsedInstance result;
    std::vector<WeightDirective> directives;
    std::optional<long> headerVars, headerConstraints;
    int maxVar = 0;

    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view view(line);
        auto first = view.find_first_not_of(" \t");
        if (first == std::string_view::npos) continue;

        if (view[first] == '*') {
            std::string_view body = view.substr(first + 1);
            if (body.find("#variable=") != std::string_view::npos) {
                headerVars = headerField(body, "#variable=");
                headerConstraints = headerField(body, "#constraint=");
                continue;
            }
            auto words = splitWords(body);
            if (!words.empty() && words[0] == "w") {
                directives.push_back(parseWeightDirective(words, lineNo, static_cast<int>(first) + 1));
                continue;
            }
            if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
            result.comments.emplace_back(body);
            continue;
        }

        LineLexer lex(view, lineNo);
        Token tok = lex.next();
        if (tok.kind == TokKind::Objective) {
            result.warnings.push_back("line " + std::to_string(lineNo) + ": objective ignored");
            continue;
        }

        PBConstraint c;
        std::optional<BigInt> pendingCoef;
        int pendingColumn = 0;
        for (;; tok = lex.next()) {
            if (tok.kind == TokKind::Integer) {
                if (pendingCoef) lex.fail("coefficient without variable", pendingColumn);
                pendingCoef = parseBigInt(tok.text);
                pendingColumn = tok.column;
            } else if (tok.kind == TokKind::Literal) {
                bool positive = tok.text.front() != '~';
                std::string digits = tok.text.substr(positive ? 1 : 2);
                if (digits.size() > 9) lex.fail("variable index too large", tok.column);
                int var = std::stoi(digits);
                if (var <= 0) lex.fail("variable index must be positive", tok.column);
                maxVar = std::max(maxVar, var);
                c.terms.push_back({pendingCoef.value_or(BigInt(1)), Literal{var, positive}});
                pendingCoef.reset();
            } else if (tok.kind == TokKind::Op) {
                if (pendingCoef) lex.fail("coefficient without variable", pendingColumn);
                auto op = parseOp(tok.text);
                if (!op) lex.fail("unknown operator '" + tok.text + "'", tok.column);
                c.op = *op;
                break;
            } else if (tok.kind == TokKind::End) {
                lex.fail("missing relational operator", tok.column);
            } else {
                lex.fail("unexpected token '" + tok.text + "'", tok.column);
            }
        }

        tok = lex.next();
        if (tok.kind != TokKind::Integer) lex.fail("expected integer degree", tok.column);
        c.degree = parseBigInt(tok.text);
        tok = lex.next();
        if (tok.kind != TokKind::Semicolon) lex.fail("missing ';' terminator", tok.column);
        tok = lex.next();
        if (tok.kind != TokKind::End) lex.fail("trailing input after ';'", tok.column);
        result.formula.constraints.push_back(std::move(c));
    }

    int maxDirectiveVar = 0;
    for (const auto& d : directives) maxDirectiveVar = std::max(maxDirectiveVar, d.var);
    int numVars = std::max(maxVar, maxDirectiveVar);
    if (headerVars) {
        if (*headerVars < numVars)
            result.warnings.push_back("header declares " + std::to_string(*headerVars) +
                                      " variables but x" + std::to_string(numVars) + " is used");
        numVars = std::max<long>(numVars, *headerVars);
    }
    if (headerConstraints && *headerConstraints != static_cast<long>(result.formula.constraints.size()))
        result.warnings.push_back("header declares " + std::to_string(*headerConstraints) + " constraints, found " +
                                  std::to_string(result.formula.constraints.size()));

    result.formula.numVars = numVars;
    result.weights = WeightFunction(numVars);
    applyDirectives(directives, result.weights);
    return result;
}

ParsedInstance parseOpb(std::string_view text) {
    std::istringstream is{std::string(text)};
    return parseOpb(is);
}

WeightFunction parseWeights(std::istream& in, int numVars) {
    std::vector<WeightDirective> directives;
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto words = splitWords(line);
        if (words.empty()) continue;
        auto first = line.find_first_not_of(" \t");
        directives.push_back(parseWeightDirective(words, lineNo, static_cast<int>(first) + 1));
    }
    WeightFunction weights(numVars);
    applyDirectives(directives, weights);
    return weights;
}

WeightFunction parseWeights(std::string_view text, int numVars) {
    std::istringstream is{std::string(text)};
    return parseWeights(is, numVars);
}

namespace {

void writeConstraint(std::ostream& out, const PBConstraint& c) {
    for (const auto& t : c.terms) out << t.coef << ' ' << (t.lit.positive ? "x" : "~x") << t.lit.var << ' ';
    out << to_string(c.op) << ' ' << c.degree << " ;\n";
}

}  // namespace

void serializeOpb(const ParsedInstance& instance, std::ostream& out) {
    const auto& f = instance.formula;
    out << "* #variable= " << f.numVars << " #constraint= " << f.constraints.size() + f.fixedLiterals.size()
        << '\n';
    for (const auto& comment : instance.comments) out << "* " << comment << '\n';
    for (int v = 1; v <= instance.weights.numVars(); ++v)
        if (!instance.weights.isDefault(v))
            out << "* w " << v << ' ' << formatRational(instance.weights.pos(v)) << ' '
                << formatRational(instance.weights.neg(v)) << '\n';
    for (const auto& c : f.constraints) writeConstraint(out, c);
    for (Literal lit : f.fixedLiterals) writeConstraint(out, PBConstraint{{{1, lit}}, RelOp::GE, 1});
}

std::string serializeOpb(const ParsedInstance& instance) {
    std::ostringstream os;
    serializeOpb(instance, os);
    return os.str();
}

}  // namespace pbcount
