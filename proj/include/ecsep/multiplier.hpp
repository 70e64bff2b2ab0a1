#pragma once

#include "ecsep/curve.hpp"

namespace ecsep {

// The window of admissible group orders at scale r: all k with
// |k| <= r + 1 + 2*sqrt(r).
struct HasseWindow {
    Int r;
    Int bound;  // r + 1 + floor(2*sqrt(r))

    // r = ceil(c * sqrt(N)) with the context's scale c, computed exactly.
    static HasseWindow at_scale(const SemiprimeContext& ctx);
    static HasseWindow from_r(Int r);
};

// M_t = prod over primes l <= t of l^(nu_l), nu_l the largest k with
// l^k <= window bound.
struct Multiplier {
    unsigned long t = 0;
    std::vector<std::pair<unsigned long, unsigned>> factors;  // (l, nu_l) ascending
    Int value{1};
};

unsigned hasse_exponent(unsigned long l, const HasseWindow& w);

Multiplier build_multiplier(unsigned long t, const HasseWindow& w);

struct SeparationReport {
    enum class Kind { Separated, NonSeparating, StillFinite };
    Kind kind = Kind::StillFinite;
    Int g;                     // Separated: the revealed divisor
    unsigned long at_prime = 0;  // Separated: the stage that revealed it
    unsigned long t_min = 0;     // Separated or NonSeparating
    Int order;                   // NonSeparating: d = ord Q_p = ord Q_q
    std::vector<std::pair<unsigned long, unsigned>> order_factors;

    bool separated() const { return kind == Kind::Separated; }
    bool non_separating() const { return kind == Kind::NonSeparating; }
    bool still_finite() const { return kind == Kind::StillFinite; }
};

// Applies the prime-power stages of the multiplier in ascending order.
// A revealed factor gives Separated with t_min at the revealing stage. A
// global zero point gives t_min at the current stage and hands off to
// recover_order. A point that survives every stage gives StillFinite.
SeparationReport staged_multiply(const CurveW& E, const PointZN& Q, unsigned long t_max,
                                 const HasseWindow& w, const SemiprimeContext& ctx);

// Per-prime exponent recovery for a point known to vanish under M_B, batched
// by a divide-and-conquer remainder tree so the cost stays near
// log(M_B) * log(pi(B)) group operations. A factor event at any stage turns
// into Separated; otherwise the result is NonSeparating with
// d = ord Q_p = ord Q_q fully factored.
SeparationReport recover_order(const CurveW& E, const PointZN& Q, unsigned long B,
                               const HasseWindow& w, const SemiprimeContext& ctx);

}  // namespace ecsep
