#include "ccf/algorithm.hpp"
#include "ccf/disk.hpp"
#include "ccf/error.hpp"
#include "ccf/expansion.hpp"
#include "ccf/growth.hpp"
#include "ccf/io.hpp"
#include "ccf/verify.hpp"
#include "oracle.hpp"
#include "support.hpp"

#include <doctest.h>

#include <fstream>

using namespace ccf;
using namespace ccf::testing;

namespace {

const RingElement kJ(Ring::E, -1, 2);
const QuadReal kLambda(Rational(5, 4), Rational(-1, 4), 13);

ComplexBox point(const Rational& re, const Rational& im) { return {re, re, im, im}; }

// Voronoi split of the parallelogram {0, 1, rho, 1 + rho}: P_v holds the
// points at least as close to v as to the other corners.
PartitionSpec voronoi_partition(const Rational& radius) {
    PartitionSpec spec;
    spec.ring = Ring::E;
    std::vector<RingElement> corners{{Ring::E, 0, 0}, {Ring::E, 1, 0}, {Ring::E, 0, 1}, {Ring::E, 1, 1}};
    for (const auto& v : corners) {
        PartitionCell cell;
        cell.vertex = v;
        for (const auto& w : corners) {
            if (w == v) continue;
            // |z - v|^2 <= |z - w|^2  <=>  2 Re(z conj(w - v)) <= |w|^2 - |v|^2
            FieldElement d = (w - v).to_field();
            cell.halfplanes.push_back({2 * d.re(), 6 * d.eta(), Rational(w.norm() - v.norm())});
        }
        spec.cells.push_back(cell);
    }
    spec.radius = QuadReal(radius);
    return spec;
}

AlgorithmSpec negative_control() {
    std::ifstream probe(CCF_DATA_DIR "/partition_r099.json");
    REQUIRE(probe.good());
    return AlgorithmSpec::partition(parse_partition(read_json_file(CCF_DATA_DIR "/partition_r099.json")));
}

Disk random_disk(Gen& gen) {
    for (;;) {
        FieldElement c = gen.field_element(Ring::E, 3, 5);
        Rational r_sq = gen.rational(2, 7);
        if (r_sq <= 0) continue;
        if (abs_sq(c) > r_sq) return Disk::around(c, QuadReal(r_sq));
    }
}

}  // namespace

TEST_CASE("nearest-integer digits") {
    auto e = AlgorithmSpec::nearest_integer(Ring::E);
    CHECK(e.apply(point(0, Rational(8, 5)), 64) == kJ);
    auto g = AlgorithmSpec::nearest_integer(Ring::Zi);
    bool tie = false;
    CHECK(g.apply(point(Rational(1, 2), Rational(1, 2)), 64, &tie) == RingElement(Ring::Zi, 0));
    CHECK(tie);
    CHECK(g.apply(FieldElement(Ring::Zi, Rational(1, 2), Rational(1, 2))) == RingElement(Ring::Zi, 0));
    CHECK_FALSE(g.apply(ComplexBox(Rational(1, 4), Rational(3, 4), 0, 0), 64).has_value());
}

TEST_CASE("partition algorithm") {
    auto alg = AlgorithmSpec::partition(voronoi_partition(Rational(3, 5)));
    CHECK(alg.geometry().validated);
    CHECK(alg.geometry().radius_sq == Rational(1, 3));
    CHECK(alg.radius_sq() == Rational(9, 25));
    CHECK(alg.apply(FieldElement::from_coords(Ring::E, Rational(1, 10), Rational(1, 20))) == RingElement(Ring::E, 0));
    CHECK(alg.apply(FieldElement::from_coords(Ring::E, Rational(51, 10), Rational(1, 20))) == RingElement(Ring::E, 5));

    // a radius below the covering radius of the cells is rejected
    CHECK_THROWS_AS(AlgorithmSpec::partition(voronoi_partition(Rational(1, 2))), InputError);

    // the Voronoi split agrees with nearest-integer away from ties
    auto ni = AlgorithmSpec::nearest_integer(Ring::E);
    Gen gen(41);
    for (int it = 0; it < 3000; ++it) {
        FieldElement z = gen.field_element(Ring::E, 3, 97);
        bool tie = false;
        RingElement a = ni.apply(z, &tie);
        if (!tie) CHECK(alg.apply(z) == a);
    }

    PartitionSpec gap = voronoi_partition(Rational(3, 5));
    gap.cells.pop_back();
    CHECK_THROWS_AS(AlgorithmSpec::partition(gap), InputError);
}

TEST_CASE("disk inversion examples") {
    Disk b = invert_disk(Disk::around(FieldElement(Ring::E, 2), QuadReal(1)));
    CHECK(b.cx == QuadReal(Rational(2, 3)));
    CHECK(b.ceta == QuadReal(0));
    CHECK(b.radius_sq == QuadReal(Rational(1, 9)));
    CHECK_THROWS_AS(invert_disk(Disk::around(FieldElement(Ring::E, -1), QuadReal(1))), std::domain_error);

    for (int k = 0; k < 6; ++k) {
        FieldElement c = (rho_power(k) * kJ).to_field();
        Disk inv = invert_disk(Disk::around(c, kLambda));
        QuadReal den = QuadReal(3) - kLambda;
        CHECK(inv.cx == QuadReal(c.re()) / den);
        CHECK(inv.ceta == QuadReal(-c.eta()) / den);
        CHECK(inv.radius_sq == kLambda / (den * den));
    }
}

TEST_CASE("property: inverting a disk twice is the identity and maps boundary points") {
    Gen gen(42);
    for (int it = 0; it < 10000; ++it) {
        Disk d = random_disk(gen);
        Disk back = invert_disk(invert_disk(d));
        CHECK(back.cx == d.cx);
        CHECK(back.ceta == d.ceta);
        CHECK(back.radius_sq == d.radius_sq);
        // inside points map inside
        FieldElement c = FieldElement::from_coords(Ring::E, d.cx.rational_part(), d.ceta.rational_part());
        if (!c.is_zero()) CHECK(invert_disk(d).contains(c.inverse()));
    }
}

TEST_CASE("nearest-integer Eisenstein algorithm satisfies both verifiers") {
    auto alg = AlgorithmSpec::nearest_integer(Ring::E);
    Cor52Result c = verify_cor52(alg);
    CHECK(c.overall() == Verdict::Pass);
    CHECK(compare(QuadReal(Rational(1, 3)), c.lambda) < 0);
    Thm51Result t = verify_thm51(alg);
    CHECK(t.a == Verdict::Pass);
    CHECK(t.b == Verdict::Pass);
    CHECK(t.c == Verdict::Pass);
    CHECK(t.clauses.size() == 18);
    CHECK_THROWS_AS(verify_thm51(AlgorithmSpec::nearest_integer(Ring::Zi)), InputError);
}

TEST_CASE("corollary thresholds") {
    CHECK(verify_cor52(CellBounds{QuadReal(Rational(121, 400)), QuadReal(Rational(121, 400))}).overall() == Verdict::Pass);
    CHECK(verify_thm51(CellBounds{QuadReal(Rational(121, 400)), QuadReal(Rational(121, 400))}).overall() == Verdict::Pass);

    Cor52Result j60 = verify_cor52(CellBounds{QuadReal(Rational(1, 3)), QuadReal(Rational(9, 25))});
    CHECK(j60.a == Verdict::Pass);
    CHECK(j60.b == Verdict::Fail);

    QuadReal golden_sq(Rational(3, 2), Rational(-1, 2), 5);
    CHECK(verify_cor52(CellBounds{golden_sq, QuadReal(Rational(1, 3))}).a == Verdict::Boundary);
    CHECK(verify_cor52(CellBounds{QuadReal(Rational(618 * 618, 1000000)), QuadReal(Rational(1, 3))}).a == Verdict::Pass);
    CHECK(verify_cor52(CellBounds{QuadReal(Rational(619 * 619, 1000000)), QuadReal(Rational(1, 3))}).a == Verdict::Fail);
    CHECK(verify_cor52(CellBounds{QuadReal(Rational(1, 3)), kLambda}).b == Verdict::Boundary);
}

TEST_CASE("property: corollary criteria imply the theorem conditions") {
    Gen gen(43);
    for (int it = 0; it < 300; ++it) {
        Rational r_sq(gen.integer(1, 3485), 10000);
        r_sq.canonicalize();
        CellBounds b{QuadReal(r_sq), QuadReal(r_sq)};
        REQUIRE(verify_cor52(b).overall() == Verdict::Pass);
        CHECK(verify_thm51(b).overall() == Verdict::Pass);
    }
}

TEST_CASE("Voronoi partition declared at radius 3/5 is never refuted") {
    auto alg = AlgorithmSpec::partition(voronoi_partition(Rational(3, 5)));
    CHECK(verify_cor52(alg).b == Verdict::Fail);
    Thm51Result t = verify_thm51(alg);
    CHECK(t.a == Verdict::Pass);
    CHECK(t.overall() != Verdict::Fail);
}

TEST_CASE("negative control: cells of radius 0.99 fail condition (c) with a witness") {
    AlgorithmSpec alg = negative_control();
    CHECK(alg.radius_sq() == QuadReal(Rational(9801, 10000)));
    Thm51Result t = verify_thm51(alg);
    CHECK(t.a == Verdict::Pass);
    CHECK(t.c == Verdict::Fail);
    CHECK(t.overall() == Verdict::Fail);
    int witnesses = 0;
    for (const auto& cl : t.clauses) {
        if (cl.verdict != Verdict::Fail) continue;
        REQUIRE(cl.witness);
        ++witnesses;
        // Replay the digits of 1/zeta: 0, then f(zeta), then the j-cell digit.
        const Witness& w = *cl.witness;
        FieldElement z0 = w.point.inverse();
        CHECK(alg.apply(z0).is_zero());
        FieldElement z1 = (z0 - alg.apply(z0).to_field()).inverse();
        CHECK(z1 == w.point);
        RingElement a1 = alg.apply(z1);
        CHECK(a1 == rho_power(-cl.k) * cl.t);
        FieldElement z2 = (z1 - a1.to_field()).inverse();
        RingElement a2 = alg.apply(z2);
        CHECK(a2 == rho_power(cl.k) * kJ);
        // the succession (a1, a2) breaks Condition C
        CHECK_FALSE(condition_c_check(a1, a2));
        // and the point lies in both modelled sets
        CHECK(cl.inverted.contains(w.point));
        CHECK(cl.cell.contains(w.point));
    }
    CHECK(witnesses > 0);
}

TEST_CASE("growth polynomial") {
    GrowthPolynomialCheck g = check_growth_polynomial();
    CHECK(g.all());
    Gen gen(44);
    for (int it = 0; it < 1000; ++it) {
        Rational s = gen.rational(5, 13);
        Rational p = 4 * s * s * s - 22 * s * s + 33 * s - 9;
        CHECK(p == (s - 3) * (4 * s * s - 10 * s + 3));
        CHECK(p == (3 - s) * (3 - s) * s + 3 * (2 - s) * (2 - s) * s - (3 - 2 * s) * (3 - 2 * s));
    }
    Big lam = (5 - boost::multiprecision::sqrt(Big(13))) / 4;
    CHECK(boost::multiprecision::abs(4 * lam * lam * lam - 22 * lam * lam + 33 * lam - 9) < Big("1e-90"));
}

TEST_CASE("j-clause sweep matches the closed-form threshold") {
    SweepResult s = sweep_j_clause(1000);
    CHECK(s.ok());
    CHECK(s.points == 999);
    CHECK(s.last_pass == Rational(94, 125));
    Big threshold = (boost::multiprecision::sqrt(Big(13)) - 1) / (2 * boost::multiprecision::sqrt(Big(3)));
    CHECK(big(s.last_pass) <= threshold);
    CHECK(threshold < big(s.last_pass) + Big("0.001"));
    // independent sign of sqrt(3) r^2 + r - sqrt(3) at each grid point
    for (unsigned i = 1; i < 1000; i += 7) {
        Rational r(i, 1000);
        r.canonicalize();
        Big rb = big(r), s3 = boost::multiprecision::sqrt(Big(3));
        bool expect = s3 * rb * rb + rb - s3 < 0;
        CHECK((reach_sign(clause_disk(0, kJ, QuadReal(r * r)), QuadReal(1) / QuadReal(r * r)) < 0) == expect);
    }
}
