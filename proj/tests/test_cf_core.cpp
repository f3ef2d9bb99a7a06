#include "ccf/corpus.hpp"
#include "ccf/error.hpp"
#include "ccf/expansion.hpp"
#include "oracle.hpp"
#include "support.hpp"

#include <doctest.h>

#include <complex>

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

std::complex<long double> value(const RingElement& e) {
    FieldElement f = e.to_field();
    long double s = std::sqrt(static_cast<long double>(info(e.ring()).radicand));
    return {static_cast<long double>(to_double(f.re())), static_cast<long double>(to_double(f.eta())) * s};
}

// Condition C on complex values; nullopt when too close to call in floating point.
std::optional<bool> condition_c_float(const RingElement& prev, const RingElement& next) {
    auto a = value(prev), b = value(next);
    long double nb = std::norm(b);
    if (nb >= 4 + 1e-9L) return true;
    if (std::abs(nb - 4) < 1e-9L) return true;
    long double lhs = std::abs((nb - 1) * a + std::conj(b));
    if (std::abs(lhs - nb) < 1e-9L) return std::nullopt;
    return lhs >= nb;
}

}  // namespace

TEST_CASE("convergent recurrence") {
    QPairState s = QPairState::init(zi(0, 1));
    CHECK(s.p_cur == zi(0, 1));
    CHECK(s.q_cur == zi(1, 0));
    CHECK(s.p_prev == zi(1, 0));
    CHECK(s.q_prev == zi(0, 0));
    s = qpair_step(s, zi(0, -2));
    CHECK(s.p_cur == zi(3, 0));
    CHECK(s.q_cur == zi(0, -2));
    s = qpair_step(s, zi(0, 2));
    CHECK(s.p_cur == zi(0, 7));
    CHECK(s.q_cur == zi(5, 0));
    CHECK(s.determinant_ok());
}

TEST_CASE("property: determinant identity for random streams") {
    Gen gen(31);
    for (int it = 0; it < 2000; ++it) {
        Ring r = gen.ring();
        QPairState s = QPairState::init(gen.ring_element(r, 5));
        for (int n = 1; n <= 12; ++n) {
            s = qpair_step(s, gen.nonzero(r, 5));
            CHECK(s.determinant() == RingElement(r, n % 2 == 1 ? 1 : -1));
            CHECK(s.determinant_ok());
        }
    }
}

TEST_CASE("condition C examples") {
    CHECK(condition_c_check(zi(1, 1), zi(1, -1)));
    CHECK(condition_c_check(zi(1, 1), zi(-1, -1)));
    CHECK(condition_c_check(zi(1, 1), zi(2, 0)));
    CHECK(condition_c_check(zi(1, 1), zi(-1, 1)) == false);  // |(1 + i) + (-1 - i)| = 0 < 2
    CHECK_THROWS(condition_c_check(zi(1, 0), zi(1, 1)));
}

TEST_CASE("property: condition C agrees with complex arithmetic") {
    Gen gen(32);
    int decided = 0;
    for (int it = 0; it < 10000; ++it) {
        Ring r = gen.ring();
        RingElement a = gen.ring_element(r, 4), b = gen.ring_element(r, 4);
        if (a.norm() <= 1 || b.norm() <= 1) continue;
        auto expect = condition_c_float(a, b);
        if (!expect) continue;
        ++decided;
        CHECK(condition_c_check(a, b) == *expect);
    }
    CHECK(decided > 5000);
}

TEST_CASE("gaussian expansion of i sqrt 2") {
    auto ctx = i_sqrt2();
    auto alg = AlgorithmSpec::nearest_integer(Ring::Zi);
    ExpansionOptions opts;
    opts.max_steps = 12;
    ExpansionReport rep = expand_exact(ctx, alg, opts);
    auto q = rep.quotients();
    REQUIRE(q.size() == 12);
    CHECK(q[0] == zi(0, 1));
    for (std::size_t n = 1; n < q.size(); ++n) CHECK(q[n] == (n % 2 == 1 ? zi(0, -2) : zi(0, 2)));

    // z_1 = -i (sqrt 2 + 1), z_2 = i (sqrt 2 + 1), z_3 = z_1
    auto z = SurdElement::z(ctx);
    auto s2p1 = z * zi(0, -1) + zi(1, 0);  // sqrt 2 + 1
    CHECK(surd_eq(*rep.steps[1].z, s2p1 * zi(0, -1)));
    CHECK(surd_eq(*rep.steps[2].z, s2p1 * zi(0, 1)));
    CHECK(surd_eq(*rep.steps[3].z, *rep.steps[1].z));

    // q_2 z - p_2 = 5 i sqrt 2 - 7 i = (z_1 z_2 z_3)^-1
    const QPairState& s2 = rep.steps[2].qpair;
    auto resid = z * s2.q_cur - SurdElement::constant(ctx, s2.p_cur);
    CHECK(surd_eq(resid, z * zi(5, 0) - SurdElement::constant(ctx, zi(0, 7))));
    CHECK(surd_eq(resid * (*rep.steps[1].z * *rep.steps[2].z * *rep.steps[3].z), SurdElement::constant(ctx, zi(1, 0))));
    // n = 0: q_0 z - p_0 = z_1^-1
    CHECK(surd_eq((z - zi(0, 1)) * *rep.steps[1].z, SurdElement::constant(ctx, zi(1, 0))));

    for (const auto& st : rep.steps) {
        CHECK(st.determinant_ok);
        CHECK(st.residual_ok == Tri::Yes);
        CHECK(st.mobius_ok == Tri::Yes);
    }
    CHECK(rep.identities_ok());

    // error bound at n = 2: (r / (1 - r)) / 25 with r = sqrt(2)/2
    QuadReal r = covering_radius(Ring::Zi);
    auto bound = error_bound(s2, r);
    REQUIRE(bound);
    CHECK(*bound == r / (QuadReal(1) - r) / QuadReal(25));
    CHECK(rep.steps[2].error_bound);
    CHECK(*rep.steps[2].error_bound == *bound);
    CHECK(error_bound(QPairState::init(zi(0, 1)), r).has_value());
}

TEST_CASE("error bound constants") {
    QuadReal r = covering_radius(Ring::E);
    QuadReal c = r / (QuadReal(1) - r);
    CHECK(c == QuadReal(Rational(1, 2), Rational(1, 2), 3));
    // no bound when |q_{n-1}| >= |q_n|
    QPairState s = QPairState::init(RingElement(Ring::E, 0));
    s = qpair_step(s, RingElement(Ring::E, 0, 1));  // q_1 = rho, |q_1| = |q_0|
    CHECK_FALSE(error_bound(s, r));
}

TEST_CASE("forced stream [2, 2, ...] for 1 + sqrt 2") {
    auto ctx = one_plus_sqrt2();
    std::vector<RingElement> twos(30, RingElement(Ring::E, 2));
    ExpansionReport rep = expand_quotients(twos, ctx);
    CHECK(rep.identities_ok());
    Big z = 1 + boost::multiprecision::sqrt(Big(2));
    Big last = 10;
    for (std::size_t n = 0; n < rep.steps.size(); ++n) {
        const auto& s = rep.steps[n].qpair;
        if (n >= 1) CHECK(rep.steps[n].q_norm > rep.steps[n - 1].q_norm);
        Big err = boost::multiprecision::abs(z - big(s.p_cur.to_field().re()) / big(s.q_cur.to_field().re()));
        CHECK(err < last);
        last = err;
        if (n >= 1) {
            Rational ratio(rep.steps[n].q_norm, rep.steps[n - 1].q_norm);
            ratio.canonicalize();
            CHECK(ratio > Rational(9, 4));
        }
    }
    CHECK(last < Big("1e-20"));
    CHECK(surd_eq(*rep.steps[5].z, SurdElement::z(ctx)));
}

TEST_CASE("property: random Eisenstein surds satisfy every per-step identity") {
    auto alg = AlgorithmSpec::nearest_integer(Ring::E);
    ExpansionOptions opts;
    opts.max_steps = 30;
    for (std::size_t i = 0; i < 60; ++i) {
        auto ctx = random_surd(Ring::E, 33, i, 20);
        ExpansionReport rep = expand_exact(ctx, alg, opts);
        CHECK(rep.identities_ok());
        CHECK(rep.condition_c_all());
        CHECK(rep.monotone());
        for (const auto& st : rep.steps) {
            CHECK(st.residual_ok == Tri::Yes);
            CHECK(st.mobius_ok == Tri::Yes);
            if (st.n >= 1) CHECK(st.condition_c == Tri::Yes);
            if (st.error_bound) CHECK(st.error_certified == Tri::Yes);
        }
    }
}

TEST_CASE("property: a convergent numerator larger than 1/|z_1| forces a nonzero denominator") {
    int premise = 0;
    for (Ring r : kAllRings) {
        auto alg = AlgorithmSpec::nearest_integer(r);
        ExpansionOptions opts;
        opts.max_steps = 15;
        for (std::size_t i = 0; i < 6; ++i) {
            auto ctx = random_surd(r, 36, i, 20);
            ExpansionReport rep = expand_exact(ctx, alg, opts);
            REQUIRE(rep.steps.size() > 1);
            Interval z1_sq = rep.steps[1].z->to_box(ctx->root_box(200), 200).abs_sq();
            for (const auto& st : rep.steps) {
                if (Rational(abs_sq(st.qpair.p_cur)) * z1_sq.lo <= 1) continue;
                ++premise;
                CHECK_FALSE(st.qpair.q_cur.is_zero());
            }
        }
    }
    CHECK(premise > 300);
}

TEST_CASE("property: numeric mode reproduces exact digits on surds of every ring") {
    for (Ring r : kAllRings) {
        if (r == Ring::Zi3) continue;
        auto alg = AlgorithmSpec::nearest_integer(r);
        ExpansionOptions opts;
        opts.max_steps = 40;
        for (std::size_t i = 0; i < 8; ++i) {
            auto ctx = random_surd(r, 34, i, 20);
            auto exact = expand_exact(ctx, alg, opts);
            auto num = expand_numeric(NumericSource::surd(ctx), alg, opts);
            CHECK(exact.quotients() == num.quotients());
        }
    }
}

TEST_CASE("numeric mode error bounds against a high-precision oracle") {
    auto alg = AlgorithmSpec::nearest_integer(Ring::E);
    ExpansionOptions opts;
    opts.max_steps = 40;
    opts.precision = 256;
    auto rep = expand_numeric(NumericSource::parse("1.23+0.77i"), alg, opts);
    REQUIRE(rep.steps.size() == 40);
    BigComplex z{Big("1.23"), Big("0.77")};
    QuadReal c(Rational(1, 2), Rational(1, 2), 3);
    int bounded = 0;
    for (const auto& st : rep.steps) {
        CHECK(st.determinant_ok);
        if (!st.error_bound) continue;
        ++bounded;
        CHECK(st.error_certified == Tri::Yes);
        CHECK(*st.error_bound == c / QuadReal(Rational(st.q_norm)));
        BigComplex p = big(st.qpair.p_cur.to_field()), q = big(st.qpair.q_cur.to_field());
        Big err = abs(z - p / q);
        CHECK(err <= Big(st.error_bound->to_double()) * (1 + Big("1e-12")));
    }
    CHECK(bounded >= 35);
    CHECK(rep.monotone());
}

TEST_CASE("numeric mode parsing and budgets") {
    CHECK_THROWS_AS(NumericSource::parse("1.2+x"), InputError);
    CHECK_THROWS_AS(NumericSource::parse(""), InputError);
    auto alg = AlgorithmSpec::nearest_integer(Ring::E);
    ExpansionOptions opts;
    opts.max_steps = 50;
    opts.precision = 64;
    opts.precision_cap = 64;
    auto ctx = random_surd(Ring::E, 35, 0, 20);
    CHECK_THROWS_AS(expand_numeric(NumericSource::surd(ctx), alg, opts), BudgetExhausted);
}
