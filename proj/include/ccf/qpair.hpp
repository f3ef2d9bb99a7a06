#pragma once

// Convergent numerators and denominators from a stream of partial quotients:
// p_{n+1} = a_{n+1} p_n + p_{n-1}, q_{n+1} = a_{n+1} q_n + q_{n-1}.

#include "ccf/ring.hpp"

#include <cstddef>

namespace ccf {

struct QPairState {
    RingElement p_prev;
    RingElement p_cur;
    RingElement q_prev;
    RingElement q_cur;
    std::size_t n = 0;

    /// p_{-1} = 1, p_0 = a0, q_{-1} = 0, q_0 = 1.
    static QPairState init(const RingElement& a0);

    /// p_n q_{n-1} - q_n p_{n-1}; equals (-1)^(n-1).
    RingElement determinant() const;
    bool determinant_ok() const;
};

QPairState qpair_step(const QPairState& s, const RingElement& a);

}  // namespace ccf
