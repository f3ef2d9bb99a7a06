#pragma once

// Seeded generators for the property tests.

#include "ccf/ring.hpp"

#include <cstdint>
#include <random>

namespace ccf::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    Rational rational(long bound, long max_den) {
        Rational q(integer(-bound * max_den, bound * max_den), integer(1, max_den));
        q.canonicalize();
        return q;
    }

    RingElement ring_element(Ring r, long bound) { return {r, integer(-bound, bound), integer(-bound, bound)}; }

    RingElement nonzero(Ring r, long bound) {
        for (;;) {
            RingElement e = ring_element(r, bound);
            if (!e.is_zero()) return e;
        }
    }

    FieldElement field_element(Ring r, long bound, long max_den) {
        return {r, rational(bound, max_den), rational(bound, max_den)};
    }

    Ring ring() { return kAllRings[static_cast<std::size_t>(integer(0, 5))]; }

private:
    std::mt19937_64 rng_;
};

inline Ring E = Ring::E;
inline Ring Zi = Ring::Zi;

}  // namespace ccf::testing
