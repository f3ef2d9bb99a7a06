#pragma once

// Exact arithmetic in K(z) = K[X]/(aX^2 + bX + c) for an irreducible quadratic
// over K, together with a certified box around the chosen complex root z.

#include "ccf/interval.hpp"
#include "ccf/ring.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>

namespace ccf {

/// How to pick one of the two roots without writing a box by hand.
enum class RootSelector { PlusIm, MinusIm, PlusRe, MinusRe, PlusAbs, MinusAbs };

RootSelector parse_root_selector(std::string_view text);

/// Square root of x in K, if one exists.
std::optional<FieldElement> sqrt_in_field(const FieldElement& x);

class SurdContext {
public:
    /// Throws InputError when a = 0, the polynomial has a root in K, or the
    /// bracket does not isolate exactly one root.
    SurdContext(RingElement a, RingElement b, RingElement c, const ComplexBox& bracket);
    SurdContext(RingElement a, RingElement b, RingElement c, RootSelector selector);
    /// The root (-b + branch * sqrt(disc)) / 2a with the principal square root.
    SurdContext(RingElement a, RingElement b, RingElement c, int branch);

    Ring ring() const { return a_.ring(); }
    const RingElement& a() const { return a_; }
    const RingElement& b() const { return b_; }
    const RingElement& c() const { return c_; }
    RingElement discriminant() const { return b_ * b_ - RingElement(ring(), 4) * a_ * c_; }

    /// Box isolating the selected root (as validated at construction).
    const ComplexBox& bracket() const { return bracket_; }
    /// +1 or -1: the root is (-b + branch * sqrt(disc)) / 2a with the
    /// principal square root.
    int branch() const { return branch_; }

    /// Enclosures of the selected root and of its conjugate root.
    ComplexBox root_box(unsigned bits) const { return root_box(bits, branch_); }
    ComplexBox other_root_box(unsigned bits) const { return root_box(bits, -branch_); }
    ComplexBox root_box(unsigned bits, int branch) const;

private:
    void check_irreducible() const;

    RingElement a_, b_, c_;
    ComplexBox bracket_;
    int branch_ = 1;
};

using SurdContextPtr = std::shared_ptr<const SurdContext>;

/// Box of width <= target_width containing the selected root. Pure and
/// deterministic.
ComplexBox refine_bracket(const SurdContext& ctx, const Rational& target_width);

/// alpha + beta * z inside a fixed SurdContext.
class SurdElement {
public:
    SurdElement() = default;
    SurdElement(SurdContextPtr ctx, FieldElement alpha, FieldElement beta);

    static SurdElement z(SurdContextPtr ctx);
    static SurdElement constant(SurdContextPtr ctx, const FieldElement& value);
    static SurdElement constant(SurdContextPtr ctx, const RingElement& value) {
        return constant(std::move(ctx), value.to_field());
    }

    const FieldElement& alpha() const { return alpha_; }
    const FieldElement& beta() const { return beta_; }
    const SurdContextPtr& context() const { return ctx_; }
    Ring ring() const { return alpha_.ring(); }

    bool is_zero() const { return alpha_.is_zero() && beta_.is_zero(); }
    /// Element of K, i.e. beta == 0.
    bool in_field() const { return beta_.is_zero(); }

    SurdElement& operator+=(const SurdElement& o);
    SurdElement& operator-=(const SurdElement& o);
    SurdElement& operator*=(const SurdElement& o);
    friend SurdElement operator+(SurdElement x, const SurdElement& y) { return x += y; }
    friend SurdElement operator-(SurdElement x, const SurdElement& y) { return x -= y; }
    friend SurdElement operator*(SurdElement x, const SurdElement& y) { return x *= y; }
    SurdElement operator-() const { return {ctx_, -alpha_, -beta_}; }

    SurdElement operator+(const RingElement& r) const { return {ctx_, alpha_ + r.to_field(), beta_}; }
    SurdElement operator-(const RingElement& r) const { return {ctx_, alpha_ - r.to_field(), beta_}; }
    SurdElement operator*(const RingElement& r) const { return {ctx_, alpha_ * r.to_field(), beta_ * r.to_field()}; }

    /// Throws std::domain_error("division by zero in quotient algebra").
    SurdElement inverse() const;

    /// Conjugate over K: alpha + beta * z' where z' is the other root.
    SurdElement algebraic_conjugate() const;

    /// Norm from K(z) to K: (this) * (algebraic conjugate).
    FieldElement norm() const;

    /// Monic minimal polynomial X^2 + p X + q over K (requires beta != 0).
    std::pair<FieldElement, FieldElement> minimal_polynomial() const;

    /// Containment-correct enclosure given an enclosure of z.
    ComplexBox to_box(const ComplexBox& zbox, unsigned bits) const;

    /// "alpha_u,alpha_v + beta_u,beta_v * z" with rational coordinates.
    std::string to_string() const;

    friend bool operator==(const SurdElement& x, const SurdElement& y) {
        return x.alpha_ == y.alpha_ && x.beta_ == y.beta_;
    }

private:
    SurdContextPtr ctx_;
    FieldElement alpha_;
    FieldElement beta_;
};

SurdElement surd_add(const SurdElement& u, const SurdElement& v);
SurdElement surd_mul(const SurdElement& u, const SurdElement& v);
SurdElement surd_inv(const SurdElement& u);
/// Exact coordinate equality; {1, z} is a K-basis of K(z).
bool surd_eq(const SurdElement& u, const SurdElement& v);

struct SurdElementHash {
    std::size_t operator()(const SurdElement& e) const;
};

/// Adaptive enclosures and exact sign decisions for elements of one context.
/// Caches root boxes; not thread-safe, use one evaluator per thread.
class SurdEvaluator {
public:
    explicit SurdEvaluator(SurdContextPtr ctx, unsigned initial_bits = 96);

    const SurdContextPtr& context() const { return ctx_; }

    /// Enclosure of w with width <= target.
    ComplexBox box(const SurdElement& w, const Rational& target);
    /// Enclosure at the given root precision.
    ComplexBox box_at(const SurdElement& w, unsigned bits);

    /// Exact sign of Re(w). Terminates for every w, including Re(w) = 0.
    int sign_re(const SurdElement& w);
    /// Exact sign of Im(w).
    int sign_im(const SurdElement& w);

    unsigned max_bits_used() const { return max_bits_; }

private:
    const ComplexBox& zbox(unsigned bits);

    SurdContextPtr ctx_;
    unsigned initial_bits_;
    unsigned max_bits_ = 0;
    std::map<unsigned, ComplexBox> cache_;
};

}  // namespace ccf
