#pragma once

// Iteration z_{n+1} = (z_n - a_n)^{-1} with a_n = f(z_n), the convergent
// recurrences, and the per-step diagnostics: identity checks, Condition C,
// monotonicity of |q_n| and the convergent error bound.

#include "ccf/algorithm.hpp"
#include "ccf/qpair.hpp"
#include "ccf/surd.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ccf {

/// Verdict that may not apply at a given step.
enum class Tri { NotApplicable, Yes, No };
std::string_view tri_name(Tri t);

/// |a_next| >= 2, or |(|a_next|^2 - 1) a_prev + conj(a_next)| >= |a_next|^2.
/// Both norms must exceed 1 (throws std::domain_error otherwise).
bool condition_c_check(const RingElement& a_prev, const RingElement& a_next);

/// Condition C restricted to what step n of `quotients` can witness: n = 0 is
/// not applicable, n = 1 checks |a_1| > 1, n >= 2 checks the pair (a_{n-1}, a_n).
Tri condition_c_at(const std::vector<RingElement>& quotients, std::size_t n);

/// (r / (1 - r)) |q_n|^-2 when |q_{n-1}| < |q_n| and r < 1.
std::optional<QuadReal> error_bound(const QPairState& s, const QuadReal& r);

struct ExpansionStep {
    std::size_t n = 0;
    RingElement a;
    std::optional<SurdElement> z;     ///< exact mode: z_n
    std::optional<ComplexBox> z_box;  ///< numeric mode: enclosure of z_n that fixed a_n
    unsigned bits = 0;                ///< numeric mode: working precision
    bool tie = false;                 ///< a_n was chosen by the tie rule
    QPairState qpair;
    Integer q_norm;  ///< |q_n|^2
    Tri condition_c = Tri::NotApplicable;
    bool determinant_ok = true;
    Tri residual_ok = Tri::NotApplicable;  ///< (q_n z - p_n) z_1...z_{n+1} = (-1)^n
    Tri mobius_ok = Tri::NotApplicable;    ///< (z_{n+1} q_n + q_{n-1}) z = z_{n+1} p_n + p_{n-1}
    std::optional<QuadReal> error_bound;   ///< (r/(1-r)) |q_n|^-2
    Tri error_certified = Tri::NotApplicable;  ///< |z - p_n/q_n| <= error_bound shown
    std::optional<Rational> sharp_bound;   ///< |q_n|^-2 (|z_{n+1}| - |q_{n-1}/q_n|)^-1, rounded up
};

struct ExpansionReport {
    Ring ring = Ring::Zi;
    std::string mode;       ///< "exact", "numeric" or "quotients"
    std::string algorithm;  ///< "nearest", "partition" or "forced"
    std::string tie_rule;
    QuadReal radius;        ///< certified fundamental-set radius (0 when forced)
    std::vector<ExpansionStep> steps;
    std::string termination;  ///< "step-limit", "error-target", "period"
    unsigned max_bits = 0;
    unsigned restarts = 0;

    std::vector<RingElement> quotients() const;
    /// Every applicable Condition C verdict is Yes.
    bool condition_c_all() const;
    /// Indices n >= 1 with |q_{n+1}|^2 <= |q_n|^2.
    std::vector<std::size_t> monotonicity_violations() const;
    bool monotone() const { return monotonicity_violations().empty(); }
    /// No identity check came out No.
    bool identities_ok() const;
    /// Condition C everywhere must imply monotone |q_n|.
    bool monotonicity_consistent() const { return !condition_c_all() || monotone(); }
};

struct ExpansionOptions {
    std::size_t max_steps = 10000;
    std::optional<Rational> error_target;
    unsigned precision = 256;
    unsigned precision_cap = 4096;
    bool check_identities = true;
    bool certify_error = true;
};

/// Exact stepping in K(z); used directly by the periodicity code.
class ExactExpander {
public:
    ExactExpander(SurdContextPtr ctx, const AlgorithmSpec& alg, ExpansionOptions opts = {});

    /// Produces step n (choosing a_n) and advances to z_{n+1}.
    ExpansionStep next();
    /// Same, with a_n supplied instead of chosen.
    ExpansionStep next_forced(const RingElement& a);

    std::size_t index() const { return n_; }
    const SurdElement& current() const { return zn_; }
    SurdEvaluator& evaluator() { return ev_; }
    const std::vector<RingElement>& quotients() const { return quotients_; }

private:
    ExpansionStep advance(const RingElement& a, bool tie);

    SurdContextPtr ctx_;
    const AlgorithmSpec* alg_;
    ExpansionOptions opts_;
    SurdEvaluator ev_;
    SurdElement z_;
    SurdElement zn_;
    SurdElement product_;  ///< z_1 ... z_n
    std::optional<QPairState> qp_;
    std::optional<QuadReal> factor_;  ///< r / (1 - r)
    std::vector<RingElement> quotients_;
    std::size_t n_ = 0;
};

/// Exact-mode expansion of the selected root of ctx.
ExpansionReport expand_exact(const SurdContextPtr& ctx, const AlgorithmSpec& alg, const ExpansionOptions& opts = {});

/// A complex number known through certified enclosures.
class NumericSource {
public:
    static NumericSource point(const Rational& re, const Rational& im);
    static NumericSource surd(SurdContextPtr ctx);
    /// Parses "1.23+0.77i", "-2i", "0.5" exactly.
    static NumericSource parse(std::string_view text);

    ComplexBox box(unsigned bits) const;
    std::string to_string() const { return text_; }

private:
    std::function<ComplexBox(unsigned)> fn_;
    std::string text_;
};

/// Certified numeric expansion. Restarts at doubled precision when a digit
/// is unresolved; throws DigitUnresolved past opts.precision_cap.
ExpansionReport expand_numeric(const NumericSource& z, const AlgorithmSpec& alg, const ExpansionOptions& opts = {});

/// Convergent data for a given quotient stream. When ctx is given, z_n is
/// iterated exactly with these digits and the identities are checked.
ExpansionReport expand_quotients(const std::vector<RingElement>& quotients, const SurdContextPtr& ctx = nullptr,
                                 const ExpansionOptions& opts = {});

}  // namespace ccf
