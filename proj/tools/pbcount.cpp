// Command-line weighted model counter for OPB files.

#include "pbcount/encode.hpp"
#include "pbcount/engine.hpp"
#include "pbcount/opb.hpp"
#include "pbcount/oracle.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParseError = 2,
    kTimeout = 3,
    kResourceExhausted = 4,
    kOracleMismatch = 5,
};

struct RunConfig {
    std::string input;
    std::string weightsPath;
    pbcount::PreprocessMode pre = pbcount::PreprocessMode::Full;
    pbcount::DiagramOrderHeuristic diagramOrder = pbcount::DiagramOrderHeuristic::Mcs;
    pbcount::ClusterOrderHeuristic clusterOrder = pbcount::ClusterOrderHeuristic::LexP;
    pbcount::NumericMode mode = pbcount::NumericMode::Float64;
    std::size_t deletionCap = 20;
    double timeoutSeconds = 0;
    std::size_t maxNodes = 0;
    bool verbose = false;
    bool stats = false;
    std::string emitCnf;
    bool oracle = false;
};

std::string readAll(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void writeCnf(const std::string& path, const pbcount::ParsedInstance& instance) {
    pbcount::CnfInstance cnf;
    if (auto normalized = pbcount::normalizeFormula(instance.formula)) {
        cnf = pbcount::encodeCountingSafe(*normalized, instance.weights);
    } else {
        cnf = pbcount::encodeCountingSafe(pbcount::PBFormula{{}, instance.formula.numVars, {}}, instance.weights);
        cnf.clauses.emplace_back();
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    pbcount::emitWeightedDimacs(cnf, out);
}

bool oracleAgrees(const pbcount::NumericValue& value, const pbcount::Rational& expected) {
    if (const auto* exact = std::get_if<pbcount::Rational>(&value)) return *exact == expected;
    double got = std::get<double>(value);
    double want = pbcount::toDouble(expected);
    return std::abs(got - want) <= 1e-9 * std::max(std::abs(got), std::abs(want));
}

int run(const RunConfig& rc) {
    pbcount::ParsedInstance instance;
    try {
        instance = pbcount::parseOpb(readAll(rc.input));
        if (!rc.weightsPath.empty())
            instance.weights = pbcount::parseWeights(readAll(rc.weightsPath), instance.formula.numVars);
    } catch (const pbcount::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParseError;
    }
    for (const auto& w : instance.warnings) std::cerr << "warning: " << w << '\n';

    if (!rc.emitCnf.empty()) writeCnf(rc.emitCnf, instance);

    pbcount::CountConfig config;
    config.preprocess = pbcount::PreprocessConfig::fromMode(rc.pre);
    config.preprocess.deletionLiteralCap = rc.deletionCap;
    config.diagramOrder = rc.diagramOrder;
    config.clusterOrder = rc.clusterOrder;
    config.mode = rc.mode;
    config.maxNodes = rc.maxNodes;
    if (rc.timeoutSeconds > 0)
        config.timeout = std::chrono::milliseconds(static_cast<long long>(rc.timeoutSeconds * 1000));

    pbcount::CountResult result;
    try {
        result = pbcount::count(instance.formula, instance.weights, config);
    } catch (const pbcount::TimeoutError&) {
        std::cout << "s timeout\n";
        return kTimeout;
    } catch (const pbcount::ResourceExhausted& e) {
        std::cout << "c " << e.what() << "\ns memout\n";
        return kResourceExhausted;
    }

    if (rc.verbose) {
        std::cout << "c variables " << instance.formula.numVars << '\n';
        std::cout << "c constraints " << instance.formula.constraints.size() << '\n';
        std::cout << "c backbone literals " << result.report.backboneLiterals.size() << '\n';
        std::cout << "c deleted constraints " << result.report.deletedConstraints << '\n';
        if (result.report.unsatisfiable) std::cout << "c unsatisfiable\n";
    }
    if (rc.stats) {
        const auto& s = result.stats;
        std::cout << "c stats nodes_created " << s.nodesCreated << '\n'
                  << "c stats peak_live_diagrams " << s.peakLiveDiagrams << '\n'
                  << "c stats clusters " << s.clusters << '\n'
                  << "c stats constraints_after_preprocessing " << s.constraints << '\n'
                  << "c stats free_variables " << s.freeVariables << '\n'
                  << "c stats preprocess_seconds " << s.preprocessSeconds << '\n'
                  << "c stats build_seconds " << s.buildSeconds << '\n'
                  << "c stats solve_seconds " << s.solveSeconds << '\n';
    }

    int code = kOk;
    if (rc.oracle) {
        try {
            pbcount::Rational expected = pbcount::bruteForceCount(instance.formula, instance.weights);
            bool agrees = oracleAgrees(result.value, expected);
            std::cout << "c oracle " << pbcount::formatRational(expected) << (agrees ? " agrees" : " DISAGREES")
                      << '\n';
            if (!agrees) code = kOracleMismatch;
        } catch (const pbcount::BudgetExceeded& e) {
            std::cout << "c oracle skipped: " << e.what() << '\n';
        }
    }

    std::cout << "s wmc " << pbcount::formatValue(result.value) << '\n';
    if (rc.mode == pbcount::NumericMode::Rational)
        std::cout << "c wmc approx " << pbcount::formatDouble(pbcount::toDouble(result.value)) << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted model counting on pseudo-Boolean formulas"};
    RunConfig rc;

    const std::map<std::string, pbcount::PreprocessMode> preModes{
        {"none", pbcount::PreprocessMode::None},
        {"backbone", pbcount::PreprocessMode::Backbone},
        {"full", pbcount::PreprocessMode::Full}};
    const std::map<std::string, pbcount::DiagramOrderHeuristic> diagramOrders{
        {"mcs", pbcount::DiagramOrderHeuristic::Mcs}, {"index", pbcount::DiagramOrderHeuristic::Index}};
    const std::map<std::string, pbcount::ClusterOrderHeuristic> clusterOrders{
        {"lexp", pbcount::ClusterOrderHeuristic::LexP}, {"index", pbcount::ClusterOrderHeuristic::Index}};
    const std::map<std::string, pbcount::NumericMode> modes{
        {"float", pbcount::NumericMode::Float64}, {"rational", pbcount::NumericMode::Rational}};

    app.add_option("input", rc.input, "OPB file, or - for stdin")->required();
    app.add_option("-w,--weights", rc.weightsPath, "Weights file with 'w <var> <pos> <neg>' lines");
    app.add_option("--pre", rc.pre, "Preprocessing: none, backbone, full")
        ->transform(CLI::CheckedTransformer(preModes, CLI::ignore_case));
    app.add_option("--dorder", rc.diagramOrder, "Diagram variable order: mcs, index")
        ->transform(CLI::CheckedTransformer(diagramOrders, CLI::ignore_case));
    app.add_option("--corder", rc.clusterOrder, "Cluster variable order: lexp, index")
        ->transform(CLI::CheckedTransformer(clusterOrders, CLI::ignore_case));
    app.add_option("--mode", rc.mode, "Arithmetic: float, rational")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
    app.add_option("--del-cap", rc.deletionCap, "Skip deletion for constraints with more literals")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--timeout", rc.timeoutSeconds, "Time limit in seconds (0 = none)")->check(CLI::NonNegativeNumber);
    app.add_option("--max-nodes", rc.maxNodes, "Diagram node limit (0 = none)");
    app.add_flag("-v,--verbose", rc.verbose, "Print preprocessing report");
    app.add_flag("--stats", rc.stats, "Print statistics");
    app.add_option("--emit-cnf", rc.emitCnf, "Write a counting-safe weighted DIMACS encoding");
    app.add_flag("--oracle", rc.oracle, "Cross-check against exhaustive enumeration (small inputs)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        return run(rc);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
