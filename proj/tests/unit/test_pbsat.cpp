#include "pbcount/oracle.hpp"
#include "pbcount/pbsat.hpp"
#include "support/builders.hpp"
#include "support/random_formula.hpp"

#include <doctest.h>

using namespace pbcount;
using namespace pbcount::testing;

namespace {

bool hasModel(const PBFormula& f, std::optional<Literal> lit = std::nullopt) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << f.numVars); ++m) {
        auto a = Assignment::fromMask(f.numVars, m);
        if ((!lit || a.satisfies(*lit)) && evaluate(f, a)) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("solve examples") {
    auto r = solve(formula(2, {pb({{3, 1}, {4, 2}}, RelOp::GE, 4)}));
    REQUIRE(r);
    CHECK(r->value(2));
    CHECK_FALSE(solve(formula(1, {pb({{1, 1}}, RelOp::GE, 1), pb({{1, -1}}, RelOp::GE, 1)})));
    auto e = solve(formula(3, {}));
    REQUIRE(e);
    for (int v = 1; v <= 3; ++v) CHECK_FALSE(e->value(v));
}

TEST_CASE("solveAssuming examples") {
    CHECK_FALSE(solveAssuming(formula(2, {pb({{3, 1}, {4, 2}}, RelOp::GE, 4)}), negLit(2)));
    auto r = solveAssuming(formula(2, {pb({{1, 1}, {1, 2}}, RelOp::GE, 1)}), negLit(1));
    REQUIRE(r);
    CHECK(r->value(2));
    CHECK_FALSE(r->value(1));
    auto e = solveAssuming(formula(1, {}), posLit(1));
    REQUIRE(e);
    CHECK(e->value(1));
}

TEST_CASE("equality propagation") {
    auto f = formula(3, {pb({{2, 1}, {1, 2}, {1, 3}}, RelOp::EQ, 2)});
    PbPropagator p(f);
    REQUIRE(p.propagate());
    REQUIRE(p.assign(posLit(2)));
    REQUIRE(p.propagate());
    CHECK(p.isAssigned(1));
    CHECK_FALSE(p.value(1));
    CHECK(p.isAssigned(3));
    CHECK(p.value(3));
    p.backtrack(0);
    CHECK_FALSE(p.isAssigned(2));
}

TEST_CASE("solver agrees with enumeration") {
    std::mt19937_64 rng(61);
    for (int iter = 0; iter < 300; ++iter) {
        auto f = randomNormalizedFormula(rng);
        if (!f) continue;
        auto r = solve(*f);
        REQUIRE(r.has_value() == hasModel(*f));
        if (r) REQUIRE(evaluate(*f, *r));
        Literal lit{uniformInt(rng, 1, f->numVars), uniformInt(rng, 0, 1) == 1};
        auto ra = solveAssuming(*f, lit);
        REQUIRE(ra.has_value() == hasModel(*f, lit));
        if (ra) {
            REQUIRE(ra->satisfies(lit));
            REQUIRE(evaluate(*f, *ra));
        }
    }
}

TEST_CASE("propagated literals hold in every extension model") {
    std::mt19937_64 rng(62);
    for (int iter = 0; iter < 200; ++iter) {
        auto f = randomNormalizedFormula(rng, {.maxVars = 10});
        if (!f) continue;
        PbPropagator p(*f);
        Literal lit{uniformInt(rng, 1, f->numVars), uniformInt(rng, 0, 1) == 1};
        bool ok = p.propagate() && p.assign(lit) && p.propagate();
        if (!ok) {
            REQUIRE_FALSE(hasModel(*f, lit));
            continue;
        }
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << f->numVars); ++m) {
            auto a = Assignment::fromMask(f->numVars, m);
            if (!a.satisfies(lit) || !evaluate(*f, a)) continue;
            for (Literal t : p.trail()) REQUIRE(a.satisfies(t));
        }
    }
}

TEST_CASE("solver honours the deadline") {
    Limits limits;
    limits.deadline = Clock::now() - std::chrono::seconds(1);
    DpllSolver solver(limits);
    PBFormula f;
    f.numVars = 40;
    for (int v = 1; v < 40; ++v) f.constraints.push_back(pb({{1, v}, {1, v + 1}}, RelOp::GE, 1));
    CHECK_THROWS_AS(solver.solve(f, {}), TimeoutError);
}
