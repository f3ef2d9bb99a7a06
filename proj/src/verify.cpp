#include "ccf/verify.hpp"

#include "ccf/error.hpp"
#include "ccf/growth.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>

namespace ccf {

namespace {

const RingElement kJ(Ring::E, -1, 2);
constexpr unsigned kWitnessLevels = 5;
constexpr std::size_t kMaxGridPoints = 400000;

struct Region {
    std::vector<Disk> inside;  ///< closed disks the point must lie in
    QuadReal min_abs_sq;       ///< |ζ|^2 >= this
};

bool in_region(const Region& reg, const FieldElement& z) {
    for (const auto& d : reg.inside)
        if (!d.contains(z)) return false;
    return QuadReal(abs_sq(z)) >= reg.min_abs_sq;
}

// Exact points of K on grids of spacing 1/(6 * 2^m) in (re, eta), inside the
// modelled region, for which `actual` confirms the counterexample.
std::optional<FieldElement> search_grid(const Region& reg, const std::function<bool(const FieldElement&)>& actual) {
    const double sd = std::sqrt(3.0);
    double xlo = -1e9, xhi = 1e9, elo = -1e9, ehi = 1e9;
    for (const auto& d : reg.inside) {
        double r = std::sqrt(std::max(0.0, d.radius_sq.to_double()));
        double cx = d.cx.to_double(), ce = d.ceta.to_double();
        xlo = std::max(xlo, cx - r);
        xhi = std::min(xhi, cx + r);
        elo = std::max(elo, ce - r / sd);
        ehi = std::min(ehi, ce + r / sd);
    }
    if (xlo > xhi + 1e-12 || elo > ehi + 1e-12) return std::nullopt;
    for (unsigned m = 0; m <= kWitnessLevels; ++m) {
        long scale = 6L << m;
        long ix0 = static_cast<long>(std::floor(xlo * scale)) - 1, ix1 = static_cast<long>(std::ceil(xhi * scale)) + 1;
        long ie0 = static_cast<long>(std::floor(elo * scale)) - 1, ie1 = static_cast<long>(std::ceil(ehi * scale)) + 1;
        if (static_cast<std::size_t>(ix1 - ix0 + 1) * static_cast<std::size_t>(ie1 - ie0 + 1) > kMaxGridPoints) break;
        for (long ie = ie0; ie <= ie1; ++ie) {
            for (long ix = ix0; ix <= ix1; ++ix) {
                if (m > 0 && ix % 2 == 0 && ie % 2 == 0) continue;  // seen at the coarser level
                double x = static_cast<double>(ix) / scale, e = static_cast<double>(ie) / scale;
                bool near = true;
                for (const auto& d : reg.inside) {
                    double dx = x - d.cx.to_double(), de = e - d.ceta.to_double();
                    if (dx * dx + 3 * de * de > d.radius_sq.to_double() + 1e-9) near = false;
                }
                if (!near || x * x + 3 * e * e < reg.min_abs_sq.to_double() - 1e-9) continue;
                Rational zx(ix, scale), ze(ie, scale);
                zx.canonicalize();
                ze.canonicalize();
                FieldElement z = FieldElement::from_coords(Ring::E, zx, ze);
                if (in_region(reg, z) && actual(z)) return z;
            }
        }
    }
    return std::nullopt;
}

// Φ = C_f(0) for the translation-invariant algorithms implemented here, so
// 1/ζ ∈ Φ exactly when f(1/ζ) = 0.
bool in_inverse_fundamental_set(const AlgorithmSpec& alg, const FieldElement& z) {
    if (z.is_zero()) return false;
    return alg.apply(z.inverse()).is_zero();
}

ClauseResult check_clause(int k, const RingElement& t, const CellBounds& bounds) {
    ClauseResult res;
    res.k = k;
    res.t = t;
    res.shifted = rho_power(-k) * t;
    res.inverted = clause_disk(k, t, bounds.j_radius_sq);
    res.cell = Disk::around(res.shifted.to_field(), bounds.radius_sq);
    QuadReal outer_sq = QuadReal(1) / bounds.radius_sq;

    int contained = reach_sign(res.inverted, outer_sq);
    int disjoint = overlap_sign(res.inverted, res.cell);
    if (contained < 0) {
        res.verdict = Verdict::Pass;
        res.method = "contained";
        return res;
    }
    if (disjoint < 0) {
        res.verdict = Verdict::Pass;
        res.method = "disjoint";
        return res;
    }
    if (bounds.algorithm) {
        const AlgorithmSpec& alg = *bounds.algorithm;
        RingElement jk = rho_power(k) * kJ;
        Region reg{{res.inverted, res.cell}, outer_sq};
        auto hit = search_grid(reg, [&](const FieldElement& z) {
            if (!(alg.apply(z) == res.shifted)) return false;
            FieldElement w = z - res.shifted.to_field();
            if (w.is_zero() || !(alg.apply(w.inverse()) == jk)) return false;
            return in_inverse_fundamental_set(alg, z);
        });
        if (hit) {
            res.verdict = Verdict::Fail;
            res.method = "witness";
            res.witness = Witness{*hit, res.shifted, jk,
                                  "f(z) = " + res.shifted.to_string() + ", f(1/(z - f(z))) = " + jk.to_string() +
                                      ", f(1/z) = 0"};
            return res;
        }
    }
    res.method = "none";
    res.verdict = (contained == 0 || disjoint == 0) ? Verdict::Boundary : Verdict::Inconclusive;
    return res;
}

using Poly = std::vector<Rational>;  // coefficients, constant term first

Poly trim(Poly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

Poly mul(const Poly& x, const Poly& y) {
    if (x.empty() || y.empty()) return {};
    Poly r(x.size() + y.size() - 1, Rational(0));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
    return trim(r);
}

Poly add(Poly x, const Poly& y, const Rational& scale = 1) {
    if (x.size() < y.size()) x.resize(y.size(), Rational(0));
    for (std::size_t i = 0; i < y.size(); ++i) x[i] += scale * y[i];
    return trim(x);
}

QuadReal eval(const Poly& p, const QuadReal& s) {
    QuadReal acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * s + QuadReal(*it);
    return acc;
}

const Poly kGrowthPoly{-9, 33, -22, 4};

}  // namespace

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Boundary: return "boundary";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

Verdict combine(Verdict x, Verdict y) {
    auto rank = [](Verdict v) {
        switch (v) {
            case Verdict::Pass: return 0;
            case Verdict::Inconclusive: return 1;
            case Verdict::Boundary: return 2;
            case Verdict::Fail: return 3;
        }
        return 3;
    };
    return rank(x) >= rank(y) ? x : y;
}

CellBounds CellBounds::of(const AlgorithmSpec& alg) {
    if (alg.ring() != Ring::E) throw InputError("disk-geometry verifiers support the Eisenstein ring only");
    return {alg.radius_sq(), alg.j_radius() * alg.j_radius(), &alg};
}

Disk clause_disk(int k, const RingElement& t, const QuadReal& rj_sq) {
    Disk jcell = Disk::around((rho_power(k) * kJ).to_field(), rj_sq);
    return invert_disk(jcell).translated((rho_power(-k) * t).to_field());
}

Thm51Result verify_thm51(const CellBounds& bounds) {
    Thm51Result res;
    res.radius_sq = bounds.radius_sq;
    res.j_radius_sq = bounds.j_radius_sq;
    if (bounds.radius_sq.sign() <= 0 || bounds.j_radius_sq.sign() <= 0) throw InputError("unverifiable shape: cell radius must be positive");

    res.a = bounds.radius_sq < QuadReal(1) ? Verdict::Pass : Verdict::Fail;
    if (res.a == Verdict::Fail) {
        res.b = res.c = Verdict::Inconclusive;
        return res;
    }

    // ζ ∈ Φ^-1 has |ζ| >= 1/R and f(ζ) lies within R of ζ, so |f(ζ)| >= 1/R - R.
    int s = sign_sqrt_minus(bounds.radius_sq, QuadReal(1) - bounds.radius_sq);
    if (s < 0) {
        res.b = Verdict::Pass;
    } else {
        res.b = s == 0 ? Verdict::Boundary : Verdict::Inconclusive;
        if (bounds.algorithm) {
            const AlgorithmSpec& alg = *bounds.algorithm;
            for (int k = 0; k < 6 && !res.b_witness; ++k) {
                RingElement u = rho_power(k);
                Region reg{{Disk::around(u.to_field(), bounds.radius_sq)}, QuadReal(1) / bounds.radius_sq};
                auto hit = search_grid(reg, [&](const FieldElement& z) {
                    return alg.apply(z) == u && in_inverse_fundamental_set(alg, z);
                });
                if (hit) {
                    res.b = Verdict::Fail;
                    res.b_witness = Witness{*hit, u, RingElement(Ring::E, 0), "f(z) = " + u.to_string() + " is a unit, f(1/z) = 0"};
                }
            }
        }
    }

    const std::array<RingElement, 3> ts{RingElement(Ring::E, -2, 2), kJ, RingElement(Ring::E, 0, 2)};
    std::vector<std::future<ClauseResult>> jobs;
    for (int k = 0; k < 6; ++k)
        for (const auto& t : ts) jobs.push_back(std::async(std::launch::async, check_clause, k, t, std::cref(bounds)));
    res.c = Verdict::Pass;
    for (auto& j : jobs) {
        res.clauses.push_back(j.get());
        res.c = combine(res.c, res.clauses.back().verdict);
    }
    return res;
}

Thm51Result verify_thm51(const AlgorithmSpec& alg) { return verify_thm51(CellBounds::of(alg)); }

Cor52Result verify_cor52(const CellBounds& bounds) {
    Cor52Result res;
    res.radius_sq = bounds.radius_sq;
    res.j_radius_sq = bounds.j_radius_sq;
    res.bound_a_sq = QuadReal(Rational(3, 2), Rational(-1, 2), 5);
    res.lambda = QuadReal(Rational(5, 4), Rational(-1, 4), 13);
    auto verdict = [](const QuadReal& r_sq, const QuadReal& bound_sq) {
        int c = compare(r_sq, bound_sq);
        return c < 0 ? Verdict::Pass : (c == 0 ? Verdict::Boundary : Verdict::Fail);
    };
    res.a = verdict(bounds.radius_sq, res.bound_a_sq);
    res.b = verdict(bounds.j_radius_sq, res.lambda);
    return res;
}

Cor52Result verify_cor52(const AlgorithmSpec& alg) { return verify_cor52(CellBounds::of(alg)); }

GrowthPolynomialCheck check_growth_polynomial() {
    GrowthPolynomialCheck res;
    const Poly s{0, 1};
    res.factorization = mul(Poly{-3, 1}, Poly{3, -10, 4}) == kGrowthPoly;

    Poly three_minus_s{3, -1}, two_minus_s{2, -1}, three_minus_2s{3, -2};
    Poly derived = mul(mul(three_minus_s, three_minus_s), s);
    derived = add(derived, mul(mul(two_minus_s, two_minus_s), s), 3);
    derived = add(derived, mul(three_minus_2s, three_minus_2s), -1);
    res.derivation = derived == kGrowthPoly;

    QuadReal lambda(Rational(5, 4), Rational(-1, 4), 13);
    res.root_lambda = eval(kGrowthPoly, lambda).sign() == 0;
    res.root_mu = eval(kGrowthPoly, lambda.conjugate()).sign() == 0;
    res.sign_low = eval(kGrowthPoly, QuadReal(Rational(3, 10))).sign() < 0;
    res.sign_high = eval(kGrowthPoly, QuadReal(Rational(31, 10))).sign() > 0;
    return res;
}

SweepResult sweep_j_clause(unsigned steps) {
    SweepResult res;
    res.threshold_sq = QuadReal(Rational(7, 6), Rational(-1, 6), 13);
    for (unsigned i = 1; i < steps; ++i) {
        Rational r(i, steps);
        r.canonicalize();
        QuadReal r_sq(r * r);
        Disk d = clause_disk(0, kJ, r_sq);
        bool geometric = reach_sign(d, QuadReal(1) / r_sq) < 0;
        bool closed_form = QuadReal(r, r * r - 1, 3).sign() < 0;
        ++res.points;
        if (geometric == closed_form) ++res.agreements;
        if (geometric) res.last_pass = r;
    }
    Rational step(1, steps);
    Rational next = res.last_pass + step;
    res.threshold_matches = QuadReal(res.last_pass * res.last_pass) <= res.threshold_sq &&
                            QuadReal(next * next) > res.threshold_sq;
    return res;
}

}  // namespace ccf
