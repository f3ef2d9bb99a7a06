#include "ccf/numeric.hpp"

#include "ccf/error.hpp"

#include <cctype>

namespace ccf {

namespace {

Integer parse_integer(std::string_view text) {
    if (text.empty()) throw InputError("empty integer literal");
    std::size_t i = 0;
    if (text[0] == '+' || text[0] == '-') i = 1;
    if (i == text.size()) throw InputError("malformed integer literal '" + std::string(text) + "'");
    for (std::size_t k = i; k < text.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(text[k])))
            throw InputError("malformed integer literal '" + std::string(text) + "'");
    }
    std::string s(text[0] == '+' ? text.substr(1) : text);
    return Integer(s, 10);
}

Integer pow10(unsigned e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw InputError("empty rational literal");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Integer num = parse_integer(text.substr(0, slash));
        Integer den = parse_integer(text.substr(slash + 1));
        if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    long exponent = 0;
    std::string_view mantissa = text;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        Integer ex = parse_integer(text.substr(e + 1));
        if (!ex.fits_slong_p() || abs(ex) > 100000)
            throw InputError("exponent out of range in '" + std::string(text) + "'");
        exponent = ex.get_si();
        mantissa = text.substr(0, e);
    }

    std::string digits;
    bool negative = false;
    std::size_t i = 0;
    if (!mantissa.empty() && (mantissa[0] == '+' || mantissa[0] == '-')) {
        negative = mantissa[0] == '-';
        i = 1;
    }
    bool seen_point = false;
    bool seen_digit = false;
    for (; i < mantissa.size(); ++i) {
        char c = mantissa[i];
        if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) --exponent;
        } else {
            throw InputError("malformed number '" + std::string(text) + "'");
        }
    }
    if (!seen_digit) throw InputError("malformed number '" + std::string(text) + "'");

    Integer m(digits, 10);
    if (negative) m = -m;
    Rational q;
    if (exponent >= 0) {
        q = Rational(m * pow10(static_cast<unsigned>(exponent)));
    } else {
        q = Rational(m, pow10(static_cast<unsigned>(-exponent)));
        q.canonicalize();
    }
    return q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

int sign(const Rational& q) { return sgn(q); }
int sign(const Integer& z) { return sgn(z); }

Integer floor(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

std::size_t bit_length(const Integer& z) {
    if (z == 0) return 0;
    return mpz_sizeinbase(z.get_mpz_t(), 2);
}

namespace {

// Fractional bit count giving `bits` significant bits for q.
unsigned long scale_for(const Rational& q, unsigned bits) {
    if (q == 0) return bits;
    long mag = static_cast<long>(bit_length(q.get_num())) - static_cast<long>(bit_length(q.get_den()));
    long s = static_cast<long>(bits) - mag;
    return s < static_cast<long>(bits) / 2 ? bits / 2 : static_cast<unsigned long>(s);
}

}  // namespace

Rational round_down(const Rational& q, unsigned bits) {
    if (q.get_den() == 1) return q;
    unsigned long s = scale_for(q, bits);
    Integer scaled = q.get_num();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), s);
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
    Integer den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), s);
    Rational r(f, den);
    r.canonicalize();
    return r;
}

Rational round_up(const Rational& q, unsigned bits) {
    if (q.get_den() == 1) return q;
    unsigned long s = scale_for(q, bits);
    Integer scaled = q.get_num();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), s);
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
    Integer den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), s);
    Rational r(c, den);
    r.canonicalize();
    return r;
}

void sqrt_bounds(const Rational& q, unsigned bits, Rational& lo, Rational& hi) {
    if (q < 0) throw std::domain_error("sqrt_bounds of a negative rational");
    if (q == 0) {
        lo = 0;
        hi = 0;
        return;
    }
    Rational exact;
    if (exact_sqrt(q, exact)) {
        lo = exact;
        hi = exact;
        return;
    }
    // sqrt(n/d) = sqrt(n*d)/d; scale by 4^bits before the integer root.
    Integer nd = q.get_num() * q.get_den();
    mpz_mul_2exp(nd.get_mpz_t(), nd.get_mpz_t(), 2UL * bits);
    Integer root;
    mpz_sqrt(root.get_mpz_t(), nd.get_mpz_t());
    Integer den = q.get_den();
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
    lo = Rational(root, den);
    lo.canonicalize();
    hi = Rational(root + 1, den);
    hi.canonicalize();
}

bool exact_sqrt(const Rational& q, Rational& root) {
    if (q < 0) return false;
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return false;
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    root = Rational(n, d);
    root.canonicalize();
    return true;
}

void split_square(const Integer& n, Integer& s, Integer& d) {
    if (n <= 0) throw std::domain_error("split_square expects a positive integer");
    s = 1;
    d = n;
    if (mpz_perfect_square_p(d.get_mpz_t())) {
        mpz_sqrt(s.get_mpz_t(), d.get_mpz_t());
        d = 1;
        return;
    }
    for (Integer p = 2; p * p <= d; ++p) {
        Integer pp = p * p;
        while (mpz_divisible_p(d.get_mpz_t(), pp.get_mpz_t())) {
            d /= pp;
            s *= p;
        }
        // Past this bound d may keep a square factor. Values stay exact; only
        // the canonical form is lost.
        if (p > 1000000) break;
    }
}

Rational pow(const Rational& q, unsigned e) {
    Rational r = 1;
    for (unsigned i = 0; i < e; ++i) r *= q;
    return r;
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace ccf
