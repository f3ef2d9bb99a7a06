#include "ccf/growth.hpp"

#include "ccf/error.hpp"

#include <algorithm>
#include <sstream>

namespace ccf {

namespace {

const RingElement kJ(Ring::E, -1, 2);

Integer ipow(long base, std::size_t e) {
    Integer r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

RingElement rho_power(int k) {
    static const std::array<RingElement, 6> powers{
        RingElement(Ring::E, 1, 0),  RingElement(Ring::E, 0, 1),  RingElement(Ring::E, -1, 1),
        RingElement(Ring::E, -1, 0), RingElement(Ring::E, 0, -1), RingElement(Ring::E, 1, -1),
    };
    return powers[static_cast<std::size_t>(((k % 6) + 6) % 6)];
}

std::string SuccessionVerdict::to_string() const {
    if (rule == Rule::None) return "none";
    std::string s = rule == Rule::UnitTimesJ ? "j-unit" : "two-unit";
    return s + "(k=" + std::to_string(k) + " x=" + x.get_str() + " y=" + y.get_str() + "):" + (pass ? "pass" : "fail");
}

SuccessionVerdict succession_check(const RingElement& a_n, const RingElement& a_next) {
    if (a_n.ring() != Ring::E || a_next.ring() != Ring::E)
        throw InputError("succession rules apply to Eisenstein integers only");
    SuccessionVerdict v;
    const RingElement two(Ring::E, 2);
    for (int k = 0; k < 6 && v.rule == SuccessionVerdict::Rule::None; ++k) {
        if (a_n == kJ * rho_power(k))
            v.rule = SuccessionVerdict::Rule::UnitTimesJ;
        else if (a_n == two * rho_power(k))
            v.rule = SuccessionVerdict::Rule::UnitTimesTwo;
        else
            continue;
        v.k = k;
    }
    if (v.rule == SuccessionVerdict::Rule::None) return v;
    FieldElement w = (a_next * rho_power(v.k)).to_field();
    Rational x = 2 * w.re();
    Rational y = 2 * w.eta();
    v.x = x.get_num();
    v.y = y.get_num();
    if (v.rule == SuccessionVerdict::Rule::UnitTimesJ) {
        Integer ax = v.x < 0 ? Integer(-v.x) : v.x;
        v.pass = ax <= 4 - 3 * v.y;
    } else {
        v.pass = v.x >= -2;
    }
    return v;
}

GrowthReport growth_check(const ExpansionReport& report, bool allow_any_stream) {
    if (report.ring != Ring::E) throw InputError("growth audit requires the Eisenstein ring (got " + std::string(ring_name(report.ring)) + ")");
    if (!allow_any_stream && report.algorithm != "nearest")
        throw InputError("growth audit requires the nearest-integer algorithm (got " + report.algorithm + ")");

    GrowthReport g;
    const auto& st = report.steps;
    if (st.size() < 2) return g;
    Integer base = std::min(st[0].q_norm, st[1].q_norm);
    for (std::size_t n = 1; n + 1 < st.size(); ++n) {
        GrowthRow row;
        row.n = n;
        row.a_n = st[n].a;
        row.a_next = st[n + 1].a;
        const Integer& next = st[n + 1].q_norm;
        const Integer& prev = st[n - 1].q_norm;
        row.ratio_sq = Rational(next, prev);
        row.ratio_sq.canonicalize();
        row.theorem_ok = 4 * next > 9 * prev;
        std::size_t m = (n + 1) / 2;
        row.telescoping_ok = ipow(4, m) * next >= ipow(9, m) * base;

        Integer prev2 = n >= 2 ? st[n - 2].q_norm : Integer(0);
        row.remark_applicable = prev2 <= prev;
        Rational A((row.a_n * row.a_next + RingElement(Ring::E, 1)).norm());
        Rational B(row.a_next.norm());
        if (A > B) row.remark_bound_sq = QuadReal(A + B) - 2 * QuadReal::sqrt_of(A * B);
        if (row.remark_applicable) {
            bool ok = !row.remark_bound_sq || QuadReal(row.ratio_sq) >= *row.remark_bound_sq;
            row.remark_ok = ok ? Tri::Yes : Tri::No;
            Rational d = A - B - Rational(9, 4);
            row.remark_exceeds = (d > 0 && d * d > 9 * B) ? Tri::Yes : Tri::No;
            if (!ok) ++g.remark_failures;
        }

        row.succession = succession_check(row.a_n, row.a_next);
        if (row.succession.rule != SuccessionVerdict::Rule::None) {
            ++g.succession_applied;
            if (!row.succession.pass) ++g.succession_failures;
        }
        if (!row.theorem_ok) ++g.theorem_violations;
        if (!row.telescoping_ok) ++g.telescoping_violations;
        if (!g.min_ratio_sq || row.ratio_sq < *g.min_ratio_sq) g.min_ratio_sq = row.ratio_sq;
        g.rows.push_back(std::move(row));
    }
    return g;
}

std::string growth_csv(const GrowthReport& g) {
    std::ostringstream out;
    out << "n,ratio_sq,remark63_bound_sq,succession_rule_applied\n";
    for (const auto& r : g.rows) {
        out << r.n << ',' << ccf::to_string(r.ratio_sq) << ','
            << (r.remark_bound_sq ? r.remark_bound_sq->to_string() : std::string("none")) << ','
            << r.succession.to_string() << '\n';
    }
    return out.str();
}

}  // namespace ccf
