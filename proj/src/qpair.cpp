#include "ccf/qpair.hpp"

namespace ccf {

QPairState QPairState::init(const RingElement& a0) {
    Ring r = a0.ring();
    return {RingElement(r, 1), a0, RingElement(r, 0), RingElement(r, 1), 0};
}

RingElement QPairState::determinant() const { return p_cur * q_prev - q_cur * p_prev; }

bool QPairState::determinant_ok() const {
    long expected = n % 2 == 1 ? 1 : -1;
    return determinant() == RingElement(p_cur.ring(), expected);
}

QPairState qpair_step(const QPairState& s, const RingElement& a) {
    return {s.p_cur, a * s.p_cur + s.p_prev, s.q_cur, a * s.q_cur + s.q_prev, s.n + 1};
}

}  // namespace ccf
