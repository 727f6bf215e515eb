#include "pbcount/build_add.hpp"
#include "pbcount/dd.hpp"
#include "support/builders.hpp"
#include "support/random_add.hpp"
#include "support/random_formula.hpp"

#include <doctest.h>

#include <sstream>

using namespace pbcount;
using namespace pbcount::testing;

namespace {

Assignment full(int n, std::uint64_t mask) { return Assignment::fromMask(n, mask); }

template <class V>
bool sameFunction(const AddManager<V>& m, Add f, Add g, int n) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
        if (m.evaluate(f, full(n, mask)) != m.evaluate(g, full(n, mask))) return false;
    return true;
}

}  // namespace

TEST_CASE("diagram order") {
    auto o = DiagramVarOrder::fromSequence({3, 1, 2});
    CHECK(o.rank(3) == 0);
    CHECK(o.varAt(2) == 2);
    CHECK_THROWS_AS(DiagramVarOrder::fromSequence({1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(DiagramVarOrder::fromSequence({1, 3}), std::invalid_argument);
}

TEST_CASE("terminals are canonical") {
    AddManager<double> m(DiagramVarOrder::identity(2));
    CHECK(m.terminal(1.0) == m.terminal(1.0));
    CHECK(m.terminal(1.0) == m.one());
    CHECK(m.terminal(0.0) != m.terminal(1.0));
    CHECK(m.terminal(-0.0) == m.zero());
    Add t = m.terminal(0.3);
    for (std::uint64_t mask = 0; mask < 4; ++mask) CHECK(m.evaluate(t, full(2, mask)) == 0.3);
    CHECK(m.evaluate(m.terminal(0.5), full(2, 1)) == 0.5);
}

TEST_CASE("ite reduction and ordering") {
    AddManager<double> m(DiagramVarOrder::identity(3));
    CHECK(m.ite(1, m.one(), m.one()) == m.one());
    Add x1 = m.ite(1, m.one(), m.zero());
    CHECK(m.evaluate(x1, full(1, 1)) == 1.0);
    CHECK(m.evaluate(x1, full(1, 0)) == 0.0);
    CHECK(m.ite(1, m.one(), m.zero()) == x1);

    Add a = m.ite(2, m.terminal(2.0), m.one());
    Add f = m.ite(1, a, m.zero());
    CHECK(m.var(f) == 1);
    CHECK(m.support(f) == std::vector<int>{1, 2});
    CHECK_THROWS_AS(m.ite(2, f, m.zero()), std::logic_error);
    CHECK_THROWS_AS(m.value(f), std::logic_error);
    CHECK_THROWS_AS(m.var(m.one()), std::logic_error);
}

TEST_CASE("product") {
    AddManager<double> m(DiagramVarOrder::identity(2));
    Add f = constructConstraintAdd(m, pb({{2, 1}, {3, 2}}, RelOp::GE, 4));
    CHECK(m.product(f, m.one()) == f);
    CHECK(m.product(f, m.zero()) == m.zero());
    Add pos = constructConstraintAdd(m, pb({{1, 1}}, RelOp::GE, 1));
    Add neg = constructConstraintAdd(m, pb({{1, -1}}, RelOp::GE, 1));
    CHECK(m.product(pos, neg) == m.zero());
    CHECK(m.sum(pos, neg) == m.one());
    CHECK(m.scale(pos, 0.0) == m.zero());
}

TEST_CASE("projectWeighted") {
    AddManager<double> m(DiagramVarOrder::identity(2));
    Add x1 = constructConstraintAdd(m, pb({{1, 1}}, RelOp::GE, 1));
    CHECK(m.projectWeighted(x1, 1, 0.3, 0.7) == m.terminal(0.3));
    CHECK(m.projectWeighted(m.one(), 1, 0.3, 0.7) == m.terminal(1.0));
    // projecting an absent variable scales by pos + neg
    CHECK(m.projectWeighted(x1, 2, 0.5, 1.5) == m.scale(x1, 2.0));
    CHECK(m.projectWeighted(x1, 2, 0.25, 0.75) == x1);

    AddManager<Rational> q(DiagramVarOrder::identity(2));
    Add g = constructConstraintAdd(q, pb({{1, 1}, {1, 2}}, RelOp::GE, 1));
    Add total = q.projectWeighted(q.projectWeighted(g, 1, Rational(3, 10), Rational(7, 10)), 2, Rational(6, 10),
                                  Rational(4, 10));
    CHECK(q.value(total) == Rational(72, 100));
}

TEST_CASE("projection commutes") {
    std::mt19937_64 rng(31);
    AddManager<Rational> m(DiagramVarOrder::fromSequence({2, 4, 1, 3, 5}));
    for (int i = 0; i < 200; ++i) {
        Add f = randomAdd(m, rng, randomSubset(rng, 5, 5));
        int x = uniformInt(rng, 1, 5), y = uniformInt(rng, 1, 4);
        if (y >= x) ++y;
        Rational px(uniformInt(rng, 1, 9), 10), py(uniformInt(rng, 1, 9), 10);
        Add a = m.projectWeighted(m.projectWeighted(f, x, px, 1 - px), y, py, 1 - py);
        Add b = m.projectWeighted(m.projectWeighted(f, y, py, 1 - py), x, px, 1 - px);
        CHECK(a == b);
    }
}

TEST_CASE("product and sum are commutative, associative and canonical") {
    std::mt19937_64 rng(32);
    AddManager<Rational> m(DiagramVarOrder::fromSequence({3, 1, 4, 2}));
    for (int i = 0; i < 200; ++i) {
        Add f = randomAdd(m, rng, randomSubset(rng, 4, 3));
        Add g = randomAdd(m, rng, randomSubset(rng, 4, 3));
        Add h = randomAdd(m, rng, randomSubset(rng, 4, 3));
        CHECK(m.product(f, g) == m.product(g, f));
        CHECK(m.product(m.product(f, g), h) == m.product(f, m.product(g, h)));
        CHECK(m.sum(f, g) == m.sum(g, f));
        CHECK(m.sum(m.sum(f, g), h) == m.sum(f, m.sum(g, h)));
        for (std::uint64_t mask = 0; mask < 16; ++mask) {
            auto a = full(4, mask);
            REQUIRE(m.evaluate(m.product(f, g), a) == m.evaluate(f, a) * m.evaluate(g, a));
        }
    }
}

TEST_CASE("early projection past a factor without the variable") {
    std::mt19937_64 rng(33);
    AddManager<Rational> m(DiagramVarOrder::identity(6));
    for (int i = 0; i < 200; ++i) {
        Add f = randomAdd(m, rng, randomSubset(rng, 6, 4));
        auto fv = m.support(f);
        if (fv.empty()) continue;
        int x = fv[static_cast<std::size_t>(uniformInt(rng, 0, static_cast<int>(fv.size()) - 1))];
        std::vector<int> gVars;
        for (int v = 1; v <= 6; ++v)
            if (v != x && uniformInt(rng, 0, 1)) gVars.push_back(v);
        Add g = gVars.empty() ? m.terminal(Rational(2)) : randomAdd(m, rng, gVars);
        Add late = m.projectWeighted(m.product(f, g), x, Rational(1, 4), Rational(3, 4));
        Add early = m.product(m.projectWeighted(f, x, Rational(1, 4), Rational(3, 4)), g);
        CHECK(late == early);
    }
}

TEST_CASE("evaluate of a constraint diagram") {
    AddManager<double> m(DiagramVarOrder::identity(2));
    Add f = constructConstraintAdd(m, pb({{2, 1}, {3, 2}}, RelOp::GE, 4));
    CHECK(m.evaluate(f, full(2, 0b11)) == 1.0);
    CHECK(m.evaluate(f, full(2, 0b10)) == 0.0);
}

TEST_CASE("zero paths") {
    AddManager<double> m(DiagramVarOrder::identity(2));
    Add f = constructConstraintAdd(m, pb({{2, 1}, {3, 2}}, RelOp::GE, 4));
    auto paths = m.zeroPaths(f);
    REQUIRE(paths.size() == 2);
    CHECK(paths[0] == std::vector<Literal>{negLit(1)});
    CHECK(paths[1] == std::vector<Literal>{posLit(1), negLit(2)});
    CHECK(m.zeroPaths(m.one()).empty());
    auto z = m.zeroPaths(m.zero());
    REQUIRE(z.size() == 1);
    CHECK(z[0].empty());
}

TEST_CASE("zero path visitor can prune and stop") {
    AddManager<double> m(DiagramVarOrder::identity(3));
    Add f = constructConstraintAdd(m, pb({{1, 1}, {1, 2}, {1, 3}}, RelOp::GE, 3));
    struct Pruner : ZeroPathVisitor {
        int seen = 0;
        bool enter(Literal lit) override { return lit != negLit(1); }
        void leave(Literal) override {}
        bool onZeroPath(std::span<const Literal> path) override {
            ++seen;
            CHECK(path.front() == posLit(1));
            return true;
        }
    } pruner;
    m.forEachZeroPath(f, pruner);
    CHECK(pruner.seen == 2);

    struct Stopper : ZeroPathVisitor {
        int seen = 0;
        bool enter(Literal) override { return true; }
        void leave(Literal) override {}
        bool onZeroPath(std::span<const Literal>) override { return ++seen < 1; }
    } stopper;
    m.forEachZeroPath(f, stopper);
    CHECK(stopper.seen == 1);
}

TEST_CASE("node counts and dot output") {
    AddManager<double> m(DiagramVarOrder::identity(2));
    CHECK(m.nodeCount(m.one()) == 1);
    CHECK(m.nodeCount(m.ite(1, m.one(), m.zero())) == 3);
    Add f = constructConstraintAdd(m, pb({{2, 1}, {3, 2}}, RelOp::GE, 4));
    CHECK(m.nodeCount(f) == 4);
    std::ostringstream os;
    m.writeDot(f, os);
    CHECK(os.str().find("digraph") != std::string::npos);
}

TEST_CASE("node limit") {
    AddManager<double> m(DiagramVarOrder::identity(20));
    Limits limits;
    limits.maxNodes = 10;
    m.setLimits(limits);
    PBConstraint c;
    c.degree = 10;
    for (int v = 1; v <= 20; ++v) c.terms.push_back({1, posLit(v)});
    CHECK_THROWS_AS(constructConstraintAdd(m, c), ResourceExhausted);
}

TEST_CASE("float and rational managers agree on random functions") {
    std::mt19937_64 rng(34);
    AddManager<double> d(DiagramVarOrder::identity(4));
    AddManager<Rational> q(DiagramVarOrder::identity(4));
    for (int i = 0; i < 50; ++i) {
        auto vars = randomSubset(rng, 4, 4);
        auto seed = rng();
        std::mt19937_64 r1(seed), r2(seed);
        Add fd = randomAdd(d, r1, vars), fq = randomAdd(q, r2, vars);
        CHECK(d.nodeCount(fd) == q.nodeCount(fq));
        CHECK(sameFunction(d, fd, fd, 4));
    }
}
