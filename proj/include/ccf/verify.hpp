#pragma once

// Sufficient conditions for monotone |q_n| under Eisenstein algorithms,
// decided with exact disk geometry. Cells are modelled by enclosing disks;
// when the model cannot separate two sets, a grid of exact points is searched
// for a genuine counterexample using the algorithm itself.

#include "ccf/algorithm.hpp"
#include "ccf/disk.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ccf {

enum class Verdict { Pass, Fail, Boundary, Inconclusive };
std::string_view verdict_name(Verdict v);
/// Fail dominates Boundary dominates Inconclusive dominates Pass.
Verdict combine(Verdict x, Verdict y);

/// Every cell C_f(a) lies in the closed disk B(a, sqrt(radius_sq)); the
/// cells at rho^k j lie in B(rho^k j, sqrt(j_radius_sq)).
struct CellBounds {
    QuadReal radius_sq;
    QuadReal j_radius_sq;
    /// When set, used to confirm counterexamples by actual digit computation.
    const AlgorithmSpec* algorithm = nullptr;

    /// Throws InputError for non-Eisenstein algorithms.
    static CellBounds of(const AlgorithmSpec& alg);
};

/// A point lying in both sets of a clause, confirmed with the algorithm.
struct Witness {
    FieldElement point;
    RingElement a_n;     ///< digit of the point
    RingElement a_next;  ///< digit of the next iterate
    std::string description;
};

/// Condition (c) for one (k, t): the sets rho^-k t + C_f(rho^k j)^-1 and
/// C_f(rho^-k t) ∩ Φ^-1 are disjoint.
struct ClauseResult {
    int k = 0;
    RingElement t;         ///< t in {-1+j, j, 1+j}
    RingElement shifted;   ///< rho^-k t
    Verdict verdict = Verdict::Inconclusive;
    std::string method;    ///< "contained", "disjoint", "witness" or "none"
    Disk inverted;         ///< rho^-k t + B(rho^k j, R_j)^-1
    Disk cell;             ///< B(rho^-k t, R)
    std::optional<Witness> witness;
};

struct Thm51Result {
    QuadReal radius_sq;
    QuadReal j_radius_sq;
    Verdict a = Verdict::Inconclusive;  ///< Φ ⊂ B(0, r), r < 1
    Verdict b = Verdict::Inconclusive;  ///< |f(ζ)| > 1 on Φ^-1
    Verdict c = Verdict::Inconclusive;
    std::optional<Witness> b_witness;
    std::vector<ClauseResult> clauses;  ///< k = 0..5 by t = -1+j, j, 1+j
    Verdict overall() const { return combine(combine(a, b), c); }
};

Thm51Result verify_thm51(const CellBounds& bounds);
Thm51Result verify_thm51(const AlgorithmSpec& alg);

struct Cor52Result {
    QuadReal radius_sq;
    QuadReal j_radius_sq;
    QuadReal bound_a_sq;  ///< ((sqrt 5 - 1)/2)^2 = (3 - sqrt 5)/2
    QuadReal lambda;      ///< (5 - sqrt 13)/4
    Verdict a = Verdict::Inconclusive;
    Verdict b = Verdict::Inconclusive;
    Verdict overall() const { return combine(a, b); }
};

/// Cells inside the open disks B(a, (sqrt 5 - 1)/2) and B(rho^k j, sqrt lambda).
Cor52Result verify_cor52(const CellBounds& bounds);
Cor52Result verify_cor52(const AlgorithmSpec& alg);

/// The inverted j-cell disk for clause (k, t) with j-cell radius^2 rj_sq.
Disk clause_disk(int k, const RingElement& t, const QuadReal& rj_sq);

struct GrowthPolynomialCheck {
    bool factorization = false;  ///< 4s^3 - 22s^2 + 33s - 9 = (s - 3)(4s^2 - 10s + 3)
    bool derivation = false;     ///< (3-s)^2 s + 3(2-s)^2 s - (3-2s)^2 = P(s)
    bool root_lambda = false;    ///< P((5 - sqrt 13)/4) = 0
    bool root_mu = false;        ///< P((5 + sqrt 13)/4) = 0
    bool sign_low = false;       ///< P(3/10) < 0
    bool sign_high = false;      ///< P(31/10) > 0
    bool all() const { return factorization && derivation && root_lambda && root_mu && sign_low && sign_high; }
};

GrowthPolynomialCheck check_growth_polynomial();

/// Compares the geometric t = j, k = 0 containment test with the closed form
/// sqrt(3) r^2 + r - sqrt(3) < 0 for r = i/steps, 0 < i < steps.
struct SweepResult {
    std::size_t points = 0;
    std::size_t agreements = 0;
    Rational last_pass;   ///< largest r where the geometric test passes
    QuadReal threshold_sq;  ///< ((sqrt 13 - 1)/(2 sqrt 3))^2 = (7 - sqrt 13)/6
    bool threshold_matches = false;  ///< last_pass <= threshold < last_pass + 1/steps
    bool ok() const { return agreements == points && threshold_matches; }
};

SweepResult sweep_j_clause(unsigned steps = 1000);

}  // namespace ccf
