#pragma once

// Growth of |q_n| for the Eisenstein nearest-integer algorithm: the
// succession rules for consecutive quotients and |q_{n+1}/q_{n-1}| > 3/2.

#include "ccf/expansion.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ccf {

struct SuccessionVerdict {
    enum class Rule { None, UnitTimesJ, UnitTimesTwo };
    Rule rule = Rule::None;
    int k = 0;  ///< a_n = j rho^k or 2 rho^k
    Integer x;  ///< a_{n+1} rho^k = (x + y j) / 2
    Integer y;
    bool pass = true;  ///< vacuous when rule == None

    std::string to_string() const;
};

/// rho^k for k mod 6, in Eisenstein coordinates.
RingElement rho_power(int k);

/// If a_n = j rho^k: |x| <= 4 - 3y. If a_n = 2 rho^k: x >= -2.
/// Throws InputError when the elements are not Eisenstein integers.
SuccessionVerdict succession_check(const RingElement& a_n, const RingElement& a_next);

struct GrowthRow {
    std::size_t n = 0;
    RingElement a_n;
    RingElement a_next;
    Rational ratio_sq;       ///< |q_{n+1}|^2 / |q_{n-1}|^2
    bool theorem_ok = false;  ///< 4 |q_{n+1}|^2 > 9 |q_{n-1}|^2
    bool telescoping_ok = false;  ///< 4^m |q_{n+1}|^2 >= 9^m min(|q_0|^2, |q_1|^2), m = floor((n+1)/2)
    bool remark_applicable = false;  ///< |q_{n-2}| <= |q_{n-1}|
    /// (|a_n a_{n+1} + 1| - |a_{n+1}|)^2 when that difference is positive.
    std::optional<QuadReal> remark_bound_sq;
    Tri remark_ok = Tri::NotApplicable;        ///< ratio >= |a_n a_{n+1} + 1| - |a_{n+1}|
    Tri remark_exceeds = Tri::NotApplicable;   ///< |a_n a_{n+1} + 1| - |a_{n+1}| > 3/2
    SuccessionVerdict succession;
};

struct GrowthReport {
    std::vector<GrowthRow> rows;
    std::optional<Rational> min_ratio_sq;
    std::size_t theorem_violations = 0;
    std::size_t telescoping_violations = 0;
    std::size_t succession_failures = 0;
    std::size_t succession_applied = 0;
    std::size_t remark_failures = 0;

    bool ok() const {
        return theorem_violations == 0 && telescoping_violations == 0 && succession_failures == 0 && remark_failures == 0;
    }
};

/// Audits an Eisenstein expansion. Refuses (InputError) other rings, and
/// other algorithms unless allow_any_stream is set.
GrowthReport growth_check(const ExpansionReport& report, bool allow_any_stream = false);

/// CSV with columns n, ratio_sq, remark63_bound_sq, succession_rule_applied.
std::string growth_csv(const GrowthReport& g);

}  // namespace ccf
