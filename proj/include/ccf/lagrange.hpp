#pragma once

// Periodicity of expansions of quadratic surds: the quadratic satisfied by
// each z_{n+1}, exact detection of z_{m+k} = z_m, and reconstruction of the
// surd from an eventually periodic quotient stream.

#include "ccf/expansion.hpp"

#include <optional>
#include <vector>

namespace ccf {

/// A_n z_{n+1}^2 + B_n z_{n+1} + C_n = 0.
struct QuadraticTriple {
    RingElement A;
    RingElement B;
    RingElement C;
};

/// A_n = a p_n^2 + b p_n q_n + c q_n^2, C_n = A_{n-1},
/// B_n = 2a p_n p_{n-1} + b (p_n q_{n-1} + q_n p_{n-1}) + 2c q_n q_{n-1}.
QuadraticTriple triple_at(const SurdContext& ctx, const QPairState& s);

/// Upper bound alpha^-1 |2az+b| + alpha^-2 |a| |q_n|^-2 on |A_n| with
/// alpha = 1/r - 1, rounded up to a rational. Needs 0 < r < 1.
std::optional<Rational> triple_bound(const SurdContext& ctx, const QuadReal& r, const Integer& q_norm);

struct TripleStep {
    ExpansionStep step;
    QuadraticTriple triple;
    bool root_ok = false;          ///< A_n z_{n+1}^2 + B_n z_{n+1} + C_n = 0 exactly
    bool discriminant_ok = false;  ///< B_n^2 - 4 A_n C_n = b^2 - 4ac
    bool chain_ok = false;         ///< C_n = A_{n-1}
    std::optional<Rational> bound;
    bool within_bound = true;      ///< |A_n|^2 <= bound^2
};

/// Exact expansion with the quadratic of every z_{n+1}. Throws
/// InvariantViolation if some A_n vanishes.
std::vector<TripleStep> expand_with_triples(const SurdContextPtr& ctx, const AlgorithmSpec& alg, std::size_t steps);

struct PeriodResult {
    std::size_t m = 0;  ///< preperiod: smallest index with z_{m+k} = z_m
    std::size_t k = 0;  ///< period
    std::vector<RingElement> preperiod;
    std::vector<RingElement> cycle;
    std::string fingerprint;         ///< z_m as exact coordinates
    bool replay_verified = false;    ///< one more cycle reproduced z_m and the digits
    bool condition_c_all = false;    ///< Condition C held at every computed step
    bool hypothesis_verified = false;  ///< Condition C everywhere and r < 1
    bool identities_ok = false;
    bool triples_ok = false;         ///< root, discriminant and chain checks all held
    std::size_t distinct_states = 0;
    std::size_t steps_used = 0;
    Integer max_A_norm;              ///< max |A_n|^2 seen
    std::optional<Rational> triples_bound;  ///< max of the reported bounds
    ExpansionReport report;          ///< steps 0 .. m+2k-1
};

/// Runs the exact expansion until a state repeats. Never claims aperiodicity:
/// throws BudgetExhausted("no period found within budget ...") instead.
PeriodResult detect_period(const SurdContextPtr& ctx, const AlgorithmSpec& alg, std::size_t max_steps = 10000);

/// Coefficients (A, B, C) of the quadratic over the ring satisfied by
/// [d_0; d_1, ..., d_{m-1}, c_0, ..., c_{k-1}, c_0, ...], without checking
/// irreducibility. The purely periodic part w satisfies
/// q_{k-1} w^2 + (q_{k-2} - p_{k-1}) w - p_{k-2} = 0.
QuadraticTriple period_polynomial(const std::vector<RingElement>& preperiod, const std::vector<RingElement>& cycle);

/// Context for the number with the given eventually periodic expansion.
/// Throws InputError("input stream corresponds to an element of K") when the
/// quadratic is reducible.
SurdContextPtr surd_from_period(const std::vector<RingElement>& preperiod, const std::vector<RingElement>& cycle, Ring ring);

/// Same root of proportional minimal polynomials.
bool contexts_equivalent(const SurdContext& x, const SurdContext& y);

/// Whether the given points (as exact field elements of one context) form a
/// finite repeating set: returns the first index n with z_n equal to an
/// earlier entry.
std::optional<std::pair<std::size_t, std::size_t>> first_repeat(const std::vector<SurdElement>& zs);

}  // namespace ccf
