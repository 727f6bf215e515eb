#pragma once

#include "pbcount/formula.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pbcount {

/// Syntax error in an OPB or weights file. Line and column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line, int column);

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

struct ParsedInstance {
    PBFormula formula;
    WeightFunction weights;
    /// Comment lines other than the size header and weight directives, without the leading `*`.
    std::vector<std::string> comments;
    /// Non-fatal issues, e.g. header counts that disagree with the body.
    std::vector<std::string> warnings;
};

/// Reads the OPB format:
///
///     * #variable= 3 #constraint= 2
///     * w 1 0.3 0.7
///     +2 x1 +3 x2 >= 4 ;
///     1 x1 1 ~x2 = 1 ;
///
/// One statement per line, terminated by `;`. Operators are kept as written
/// (no normalization). An objective line (`min:` / `max:`) is ignored with a
/// warning. `* w <var> <pos> <neg>` comment lines set literal weights.
ParsedInstance parseOpb(std::istream& in);
ParsedInstance parseOpb(std::string_view text);

/// Reads `w <var> <pos> <neg>` lines; `#` starts a comment. Unmentioned
/// variables weigh (1, 1).
WeightFunction parseWeights(std::istream& in, int numVars);
WeightFunction parseWeights(std::string_view text, int numVars);

/// Canonical OPB text: size header, preserved comments, weight directives for
/// non-default variables, one line per constraint, then one `1 x<k> >= 1 ;`
/// (or `1 ~x<k> >= 1 ;`) line per fixed literal.
void serializeOpb(const ParsedInstance& instance, std::ostream& out);
std::string serializeOpb(const ParsedInstance& instance);

}  // namespace pbcount
