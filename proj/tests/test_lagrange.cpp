#include "ccf/corpus.hpp"
#include "ccf/error.hpp"
#include "ccf/lagrange.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace ccf;
using namespace ccf::testing;

namespace {

SurdContextPtr i_sqrt2() {
    Ring r = Ring::Zi;
    return std::make_shared<SurdContext>(RingElement(r, 1), RingElement(r, 0), RingElement(r, 2), RootSelector::PlusIm);
}

SurdContextPtr one_plus_sqrt2() {
    Ring r = Ring::E;
    return std::make_shared<SurdContext>(RingElement(r, 1), RingElement(r, -2), RingElement(r, -1), RootSelector::PlusAbs);
}

RingElement zi(long x, long y) { return {Ring::Zi, x, y}; }
RingElement ee(long x, long y = 0) { return {Ring::E, x, y}; }

RingElement disc(const QuadraticTriple& t) { return t.B * t.B - RingElement(t.A.ring(), 4) * t.A * t.C; }

}  // namespace

TEST_CASE("triples along the i sqrt 2 expansion") {
    auto ctx = i_sqrt2();
    QuadraticTriple t0 = triple_at(*ctx, QPairState::init(zi(0, 1)));
    CHECK(t0.A == zi(1, 0));

    auto steps = expand_with_triples(ctx, AlgorithmSpec::nearest_integer(Ring::Zi), 20);
    REQUIRE(steps.size() == 20);
    for (std::size_t n = 0; n < steps.size(); ++n) {
        const auto& s = steps[n];
        CHECK(disc(s.triple) == zi(-8, 0));
        CHECK(s.root_ok);
        CHECK(s.discriminant_ok);
        CHECK(s.chain_ok);
        CHECK(s.within_bound);
        CHECK_FALSE(s.triple.A.is_zero());
        if (n > 0) CHECK(s.triple.C == steps[n - 1].triple.A);
        // A_n z_{n+1}^2 + B_n z_{n+1} + C_n = 0 recomputed here
        const SurdElement& z = *steps[n + 1 < steps.size() ? n + 1 : n].step.z;
        if (n + 1 < steps.size()) {
            SurdElement v = z * z * s.triple.A + z * s.triple.B + s.triple.C;
            CHECK(v.is_zero());
        }
    }
}

TEST_CASE("triples for the fixed point 1 + sqrt 2 repeat up to sign") {
    auto ctx = one_plus_sqrt2();
    auto rep = expand_quotients(std::vector<RingElement>(12, ee(2)), ctx);
    for (const auto& st : rep.steps) {
        QuadraticTriple t = triple_at(*ctx, st.qpair);
        RingElement s = t.A;  // +-1
        CHECK(s.norm() == 1);
        CHECK(t.B == ee(-2) * s);
        CHECK(t.C == ee(-1) * s);
    }
}

TEST_CASE("period detection examples") {
    PeriodResult p = detect_period(i_sqrt2(), AlgorithmSpec::nearest_integer(Ring::Zi));
    CHECK(p.m == 1);
    CHECK(p.k == 2);
    CHECK(p.preperiod == std::vector<RingElement>{zi(0, 1)});
    CHECK(p.cycle == std::vector<RingElement>{zi(0, -2), zi(0, 2)});
    CHECK(p.replay_verified);
    CHECK(p.identities_ok);
    CHECK(p.triples_ok);

    PeriodResult q = detect_period(one_plus_sqrt2(), AlgorithmSpec::nearest_integer(Ring::E));
    CHECK(q.m == 0);
    CHECK(q.k == 1);
    CHECK(q.cycle == std::vector<RingElement>{ee(2)});
}

TEST_CASE("reconstruction from a period") {
    auto c1 = surd_from_period({}, {ee(2)}, Ring::E);
    CHECK(contexts_equivalent(*c1, *one_plus_sqrt2()));
    QuadraticTriple t = period_polynomial({}, {ee(2)});
    CHECK(t.A * ee(-2) == t.B);
    CHECK(t.A * ee(-1) == t.C);

    auto c2 = surd_from_period({zi(0, 1)}, {zi(0, -2), zi(0, 2)}, Ring::Zi);
    CHECK(contexts_equivalent(*c2, *i_sqrt2()));

    // [j; j, j, ...] is z = j + 1/z, i.e. z^2 - j z - 1 = 0, whose roots are
    // rho and -conj(rho): both lie in K.
    RingElement j(Ring::E, -1, 2);
    QuadraticTriple tj = period_polynomial({}, {j});
    CHECK(tj.A * -j == tj.B);
    CHECK(tj.A * ee(-1) == tj.C);
    CHECK_THROWS_AS(surd_from_period({}, {j}, Ring::E), InputError);
    CHECK_THROWS_AS(surd_from_period({}, {}, Ring::E), InputError);
}

TEST_CASE("property: corpus surds round-trip through their periods") {
    auto alg = AlgorithmSpec::nearest_integer(Ring::E);
    for (std::size_t i = 0; i < 25; ++i) {
        auto ctx = random_surd(Ring::E, 51, i, 12);
        PeriodResult p = detect_period(ctx, alg);
        CHECK(p.replay_verified);
        CHECK(p.triples_ok);
        CHECK(p.identities_ok);
        CHECK(p.condition_c_all);
        CHECK(p.hypothesis_verified);
        if (p.triples_bound) CHECK(Rational(p.max_A_norm) <= *p.triples_bound * *p.triples_bound);
        auto rebuilt = surd_from_period(p.preperiod, p.cycle, Ring::E);
        CHECK(contexts_equivalent(*ctx, *rebuilt));
        // the rebuilt context expands to the same stream
        PeriodResult again = detect_period(rebuilt, alg);
        CHECK(again.preperiod == p.preperiod);
        CHECK(again.cycle == p.cycle);
    }
}

TEST_CASE("contexts are equivalent only for the same root") {
    Ring r = Ring::Zi;
    auto up = i_sqrt2();
    auto down = std::make_shared<SurdContext>(RingElement(r, 1), RingElement(r, 0), RingElement(r, 2), RootSelector::MinusIm);
    auto scaled = std::make_shared<SurdContext>(RingElement(r, 0, 3), RingElement(r, 0), RingElement(r, 0, 6), RootSelector::PlusIm);
    CHECK_FALSE(contexts_equivalent(*up, *down));
    CHECK(contexts_equivalent(*up, *scaled));
}

TEST_CASE("period detection never claims aperiodicity") {
    auto ctx = random_surd(Ring::E, 1, 49, 20);
    CHECK_THROWS_AS(detect_period(ctx, AlgorithmSpec::nearest_integer(Ring::E), 50), BudgetExhausted);
}

TEST_CASE("first repeat") {
    auto ctx = i_sqrt2();
    auto z = SurdElement::z(ctx);
    std::vector<SurdElement> zs{z, z * zi(0, 1), z * zi(2, 0), z * zi(0, 1)};
    auto rep = first_repeat(zs);
    REQUIRE(rep);
    CHECK(rep->first == 1);
    CHECK(rep->second == 3);
    CHECK_FALSE(first_repeat({z, -z}));
}
