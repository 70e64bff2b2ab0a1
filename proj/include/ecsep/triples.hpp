#pragma once

#include "ecsep/curve.hpp"
#include "ecsep/fp.hpp"

namespace ecsep {

// Deterministic stream of uniform residues, seedable for reproducible runs.
class RandState {
public:
    explicit RandState(unsigned long seed) : rng_(gmp_randinit_mt) { rng_.seed(seed); }
    explicit RandState(const Int& seed) : rng_(gmp_randinit_mt) { rng_.seed(seed); }

    // uniform in [0, n)
    Int uniform(const Int& n) { return rng_.get_z_range(n); }

private:
    gmp_randclass rng_;
};

// (x, y, b1, b2) with Q = (x, y) on the root-form curve (b1, b2), the shift
// x - b1 a Jacobi non-residue, and the curve nondegenerate mod N.
struct AdmissibleTriple {
    Int x, y, b1, b2;
    CurveE2 curve;
    PointZN point() const { return PointZN{false, x, y}; }
};

struct TripleOutcome {
    enum class Kind { Triple, Factor, Exhausted };
    Kind kind = Kind::Exhausted;
    AdmissibleTriple triple;
    Int g;  // Factor: divisor revealed while sampling
    unsigned long draws = 0;

    bool is_triple() const { return kind == Kind::Triple; }
    bool is_factor() const { return kind == Kind::Factor; }
};

// Rejection-samples (x, b1, t) and completes to an admissible triple via
// c = t^2/(x-b1), b2 = (c*x - x - b1)/(1+c), y = t*(x-b2). Non-unit
// denominators with proper gcd short-circuit to Factor.
TripleOutcome generate_triple(const SemiprimeContext& ctx, RandState& rng,
                              unsigned long max_draws = 10000);

// All residues u mod N with u^2 + b1*u - (x^2 + x*b1 - y^2/(x-b1)) = 0,
// i.e. the candidate b2 values putting (x, y) on the curve (b1, u).
// Componentwise square roots through the oracle, recombined by CRT; 1, 2 or
// 4 roots depending on how the discriminant vanishes.
struct B2Roots {
    enum class Kind { Roots, NotSquare, Factor };
    Kind kind = Kind::NotSquare;
    std::vector<Int> roots;
    Int g;
};

B2Roots solve_b2_quadratic(const Int& x, const Int& y, const Int& b1,
                           const SemiprimeContext& ctx);

// A point of E(F_r) is twice another point iff none of the three root shifts
// x - b1, x - b2, x + b1 + b2 is a non-residue. The identity is always a
// double.
bool is_halvable(const fp::CurveE2Fp& c, const fp::PointFp& P);

// Checks the order-separation criterion on one triple: with labels chosen so
// the shift x - b1 is a non-residue mod P and a residue mod Q, and both group
// orders having 2-adic valuation exactly 2, the point's 2-adic order drops on
// the Q side precisely when x - b2 is a residue mod Q.
struct SeparationPredicateReport {
    bool applicable = false;
    bool swapped = false;     // labels P, Q are ctx q, p rather than p, q
    int legendre_p = 0;       // (x - b1 | P)
    int legendre_q = 0;       // (x - b1 | Q)
    int legendre_shift_q = 0; // (x - b2 | Q)
    unsigned nu2_order_p = 0, nu2_order_q = 0;  // group orders
    unsigned nu2_point_p = 0, nu2_point_q = 0;  // point orders
    bool lhs = false;  // nu2(ord Q_P) > nu2(ord Q_Q)
    bool rhs = false;  // x - b2 is a residue mod Q
    bool agree = false;
};

SeparationPredicateReport separation_predicate(const AdmissibleTriple& tr,
                                               const SemiprimeContext& ctx);

// Samples triples and counts how often the two point orders differ in their
// 2-adic valuation (the event the staged multiplication converts into a
// revealed factor).
struct SeparationEstimate {
    unsigned long samples = 0;     // generation attempts
    unsigned long admissible = 0;  // triples actually produced
    unsigned long separating = 0;
    double frequency = 0.0;
    double half_width = 0.0;  // normal-approx 95% interval
};

SeparationEstimate estimate_separating_fraction(const SemiprimeContext& ctx,
                                                unsigned long samples, unsigned long seed);

}  // namespace ecsep
