#include "pbcount/oracle.hpp"
#include "pbcount/preprocess.hpp"
#include "support/builders.hpp"
#include "support/random_formula.hpp"

#include <doctest.h>

#include <algorithm>

using namespace pbcount;
using namespace pbcount::testing;

namespace {

PBFormula example2() {
    return formula(4, {pb({{3, 1}, {4, 2}}, RelOp::GE, 4), pb({{3, 1}, {1, 3}, {1, 4}}, RelOp::GE, 4),
                       pb({{3, 2}, {1, 3}, {1, 4}}, RelOp::GE, 4)});
}

std::vector<Literal> sorted(std::vector<Literal> v) {
    std::sort(v.begin(), v.end());
    return v;
}

bool sameModels(const PBFormula& a, const PBFormula& b) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << a.numVars); ++m) {
        auto x = Assignment::fromMask(a.numVars, m);
        if (evaluate(a, x) != evaluate(b, x)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("backbone examples") {
    auto [out, report] = addBackbone(formula(2, {pb({{3, 1}, {4, 2}}, RelOp::GE, 4)}));
    CHECK(report.backboneLiterals == std::vector<Literal>{posLit(2)});
    CHECK(out.constraints.empty());
    CHECK(out.fixedLiterals == std::vector<Literal>{posLit(2)});
    auto w = weights(2, {{1, {"0.3", "0.7"}}, {2, {"0.25", "0.5"}}});
    CHECK(bruteForceCount(out, w) == Rational(1, 4));

    CHECK(addBackbone(formula(2, {pb({{1, 1}, {1, 2}}, RelOp::GE, 1)})).second.backboneLiterals.empty());
    CHECK(addBackbone(formula(1, {pb({{1, 1}}, RelOp::GE, 1), pb({{1, -1}}, RelOp::GE, 1)})).second.unsatisfiable);
}

TEST_CASE("deletion examples") {
    auto phi = example2();
    auto [out, report] = deleteConstraint(phi);
    CHECK(report.deletedConstraints == 1);
    REQUIRE(out.constraints.size() == 2);
    CHECK(out.constraints[0] == phi.constraints[1]);
    CHECK(out.constraints[1] == phi.constraints[2]);
    CHECK(bruteForceCount(out, WeightFunction(4)) == bruteForceCount(phi, WeightFunction(4)));

    CHECK(deleteConstraint(formula(1, {pb({{1, 1}}, RelOp::GE, 1)})).second.deletedConstraints == 0);
    auto dup = deleteConstraint(formula(2, {pb({{1, 1}, {1, 2}}, RelOp::GE, 1), pb({{1, 1}, {1, 2}}, RelOp::GE, 1)}));
    CHECK(dup.second.deletedConstraints == 1);
    CHECK(dup.first.constraints.size() == 1);
}

TEST_CASE("deletion follows implications along a path") {
    // ~x1 forces x2, which forces x3; neither step violates a bound on its own
    auto phi = formula(3, {pb({{1, 1}, {1, 3}}, RelOp::GE, 1), pb({{1, 1}, {1, 2}}, RelOp::GE, 1),
                           pb({{1, -2}, {1, 3}}, RelOp::GE, 1)});
    auto [out, report] = deleteConstraint(phi);
    CHECK(report.deletedConstraints == 1);
    CHECK(out.constraints.size() == 2);
    CHECK(out.constraints[0] == phi.constraints[1]);
}

TEST_CASE("deletion skips long constraints") {
    auto phi = formula(3, {pb({{1, 1}, {1, 2}, {1, 3}}, RelOp::GE, 1), pb({{1, 1}, {1, 2}, {1, 3}}, RelOp::GE, 1)});
    CHECK(deleteConstraint(phi, 2).second.deletedConstraints == 0);
    CHECK(deleteConstraint(phi, 3).second.deletedConstraints == 1);
}

TEST_CASE("pipeline configurations") {
    auto phi = example2();
    auto [none, r0] = preprocess(phi, PreprocessConfig::fromMode(PreprocessMode::None));
    CHECK(none == phi);
    CHECK(r0.backboneLiterals.empty());

    auto [bb, r1] = preprocess(phi, PreprocessConfig::fromMode(PreprocessMode::Backbone));
    CHECK(sorted(r1.backboneLiterals) == std::vector<Literal>{posLit(1), posLit(2)});
    CHECK(r1.deletedConstraints == 0);

    auto [full, r2] = preprocess(phi, PreprocessConfig::fromMode(PreprocessMode::Full));
    CHECK(r2.deletedConstraints == 1);
    for (const auto& c : full.constraints) CHECK(c != phi.constraints[0]);
    CHECK(bruteForceCount(full, WeightFunction(4)) == 3);
}

TEST_CASE("preprocessing preserves models and counts") {
    std::mt19937_64 rng(71);
    for (int iter = 0; iter < 200; ++iter) {
        auto phi = randomNormalizedFormula(rng);
        if (!phi) continue;
        auto w = randomWeights(rng, phi->numVars);
        Rational expected = bruteForceCount(*phi, w);
        for (auto mode : {PreprocessMode::None, PreprocessMode::Backbone, PreprocessMode::Full}) {
            auto [out, report] = preprocess(*phi, PreprocessConfig::fromMode(mode));
            if (report.unsatisfiable) {
                REQUIRE(expected == 0);
                continue;
            }
            REQUIRE(sameModels(*phi, out));
            REQUIRE(bruteForceCount(out, w) == expected);
            for (const auto& c : out.constraints) REQUIRE(c.isNormalized());
        }
        auto [bbOut, bbReport] = addBackbone(*phi);
        if (!bbReport.unsatisfiable)
            REQUIRE(sorted(bbReport.backboneLiterals) == sorted(bruteForceBackbone(*phi)));
    }
}

TEST_CASE("every deleted constraint is entailed by the survivors") {
    std::mt19937_64 rng(72);
    for (int iter = 0; iter < 200; ++iter) {
        auto phi = randomNormalizedFormula(rng);
        if (!phi || phi->constraints.size() < 2) continue;
        auto [out, report] = deleteConstraint(*phi);
        for (const auto& c : phi->constraints)
            if (std::find(out.constraints.begin(), out.constraints.end(), c) == out.constraints.end())
                REQUIRE(bruteForceEntails(out, c));
    }
}
