#include "ccf/corpus.hpp"
#include "ccf/error.hpp"
#include "ccf/growth.hpp"
#include "oracle.hpp"
#include "support.hpp"

#include <doctest.h>

#include <sstream>

using namespace ccf;
using namespace ccf::testing;

namespace {

RingElement ee(long x, long y = 0) { return {Ring::E, x, y}; }
const RingElement kJ(Ring::E, -1, 2);

SurdContextPtr one_plus_sqrt2() {
    Ring r = Ring::E;
    return std::make_shared<SurdContext>(RingElement(r, 1), RingElement(r, -2), RingElement(r, -1), RootSelector::PlusAbs);
}

Big magnitude(const RingElement& e) { return abs(big(e.to_field())); }

}  // namespace

TEST_CASE("rho powers") {
    RingElement rho(Ring::E, 0, 1);
    RingElement acc(Ring::E, 1);
    for (int k = 0; k < 6; ++k) {
        CHECK(rho_power(k) == acc);
        CHECK(rho_power(k - 6) == acc);
        acc *= rho;
    }
    CHECK(acc == ee(1));
}

TEST_CASE("succession rule examples") {
    SuccessionVerdict a = succession_check(kJ, ee(0) - kJ - kJ);
    CHECK(a.rule == SuccessionVerdict::Rule::UnitTimesJ);
    CHECK(a.k == 0);
    CHECK(a.x == 0);
    CHECK(a.y == -4);
    CHECK(a.pass);

    SuccessionVerdict b = succession_check(kJ, kJ);
    CHECK(b.x == 0);
    CHECK(b.y == 2);
    CHECK_FALSE(b.pass);

    SuccessionVerdict c = succession_check(ee(2), ee(-2));
    CHECK(c.rule == SuccessionVerdict::Rule::UnitTimesTwo);
    CHECK(c.x == -4);
    CHECK_FALSE(c.pass);

    CHECK(succession_check(ee(3), ee(2)).rule == SuccessionVerdict::Rule::None);
    CHECK(succession_check(ee(3), ee(2)).pass);
    CHECK_THROWS_AS(succession_check(RingElement(Ring::Zi, 2), RingElement(Ring::Zi, 2)), InputError);
}

TEST_CASE("property: succession coordinates reproduce a_{n+1} rho^k") {
    Gen gen(61);
    for (int it = 0; it < 10000; ++it) {
        int k = static_cast<int>(gen.integer(0, 5));
        RingElement a = gen.integer(0, 1) ? kJ * rho_power(k) : ee(2) * rho_power(k);
        RingElement next = gen.nonzero(Ring::E, 6);
        SuccessionVerdict v = succession_check(a, next);
        REQUIRE(v.rule != SuccessionVerdict::Rule::None);
        CHECK(v.k == k);
        // 2 a_{n+1} rho^k = x + y j
        CHECK(ee(2) * next * rho_power(k) == RingElement(Ring::E, v.x) + RingElement(Ring::E, v.y) * kJ);
        if (v.rule == SuccessionVerdict::Rule::UnitTimesJ)
            CHECK(v.pass == (abs(v.x) <= 4 - 3 * v.y));
        else
            CHECK(v.pass == (v.x >= -2));
    }
}

TEST_CASE("growth audit of random Eisenstein expansions") {
    auto alg = AlgorithmSpec::nearest_integer(Ring::E);
    ExpansionOptions opts;
    opts.max_steps = 200;
    std::size_t applied = 0;
    for (std::size_t i = 0; i < 20; ++i) {
        auto rep = expand_exact(random_surd(Ring::E, 62, i, 20), alg, opts);
        GrowthReport g = growth_check(rep);
        CHECK(g.ok());
        applied += g.succession_applied;
        REQUIRE(g.rows.size() == rep.steps.size() - 2);
        Integer base = std::min(rep.steps[0].q_norm, rep.steps[1].q_norm);
        for (const auto& row : g.rows) {
            CHECK(row.ratio_sq > Rational(9, 4));
            CHECK(row.theorem_ok);
            CHECK(row.telescoping_ok);
            // |q_{n+1}|^2 >= (9/4)^floor((n+1)/2) min(|q_0|^2, |q_1|^2)
            Rational lower = pow(Rational(9, 4), static_cast<unsigned>((row.n + 1) / 2)) * Rational(base);
            CHECK(Rational(rep.steps[row.n + 1].q_norm) >= lower);
            if (row.succession.rule != SuccessionVerdict::Rule::None) CHECK(row.succession.pass);
            // remark bound against floating evaluation
            Big diff = magnitude(row.a_n * row.a_next + ee(1)) - magnitude(row.a_next);
            if (row.remark_bound_sq) {
                CHECK(diff > 0);
                CHECK(boost::multiprecision::abs(big(row.remark_bound_sq->rational_part()) +
                                                 big(row.remark_bound_sq->surd_part()) *
                                                     boost::multiprecision::sqrt(Big(row.remark_bound_sq->radicand().get_str())) -
                                                 diff * diff) < Big("1e-60"));
            } else {
                CHECK(diff <= 0);
            }
            if (row.remark_applicable) {
                CHECK(row.remark_ok == Tri::Yes);
                if (boost::multiprecision::abs(diff - Big(3) / 2) > Big("1e-40"))
                    CHECK((row.remark_exceeds == Tri::Yes) == (diff > Big(3) / 2));
            }
        }
    }
    CHECK(applied > 0);
}

TEST_CASE("forced stream [2, 2, ...] grows by more than 3/2 every two steps") {
    auto rep = expand_quotients(std::vector<RingElement>(25, ee(2)), one_plus_sqrt2());
    CHECK_THROWS_AS(growth_check(rep), InputError);
    GrowthReport g = growth_check(rep, true);
    CHECK(g.theorem_violations == 0);
    // q_n are the Pell numbers 1, 2, 5, 12, 29, ...
    std::vector<Integer> pell{1, 2};
    while (pell.size() < rep.steps.size()) pell.push_back(2 * pell.back() + pell[pell.size() - 2]);
    for (const auto& row : g.rows) {
        Rational expect(pell[row.n + 1] * pell[row.n + 1], pell[row.n - 1] * pell[row.n - 1]);
        expect.canonicalize();
        CHECK(row.ratio_sq == expect);
        CHECK(row.ratio_sq >= 25);
    }
}

TEST_CASE("growth audit refuses other rings") {
    auto ctx = std::make_shared<SurdContext>(RingElement(Ring::Zi, 1), RingElement(Ring::Zi, 0), RingElement(Ring::Zi, 2),
                                             RootSelector::PlusIm);
    ExpansionOptions opts;
    opts.max_steps = 10;
    auto rep = expand_exact(ctx, AlgorithmSpec::nearest_integer(Ring::Zi), opts);
    CHECK_THROWS_AS(growth_check(rep), InputError);
    CHECK_THROWS_AS(growth_check(rep, true), InputError);
}

TEST_CASE("growth CSV") {
    ExpansionOptions opts;
    opts.max_steps = 30;
    auto rep = expand_exact(random_surd(Ring::E, 63, 0, 20), AlgorithmSpec::nearest_integer(Ring::E), opts);
    std::string csv = growth_csv(growth_check(rep));
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,ratio_sq,remark63_bound_sq,succession_rule_applied");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 3);
    }
    CHECK(rows == 28);
}
