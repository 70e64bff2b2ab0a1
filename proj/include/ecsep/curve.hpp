#pragma once

#include <variant>

#include "ecsep/bigmod.hpp"
#include "ecsep/fp.hpp"

namespace ecsep {

// Root form y^2 = (x-b1)(x-b2)(x+b1+b2). The zero-sum roots force full
// 2-torsion, so the reduced group order is even at every prime of good
// reduction.
struct CurveE2 {
    Int b1, b2;

    Int b3(const Int& N) const { return mod(-(b1 + b2), N); }
};

// Short Weierstrass form y^2 = x^3 + B1 x + B2.
struct CurveW {
    Int B1, B2;
};

struct PointZN {
    bool identity = true;
    Int x, y;

    static PointZN O() { return {}; }
    static PointZN finite(Int x, Int y) { return {false, std::move(x), std::move(y)}; }
    bool operator==(const PointZN&) const = default;
};

struct AddOutcome {
    enum class Kind { Point, Factor, EqualOrders };
    Kind kind;
    PointZN pt;  // Point only
    Int g;       // Factor only

    static AddOutcome point(PointZN P) { return {Kind::Point, std::move(P), Int(0)}; }
    static AddOutcome factor(Int g) { return {Kind::Factor, PointZN::O(), std::move(g)}; }
    static AddOutcome equal_orders() { return {Kind::EqualOrders, PointZN::O(), Int(0)}; }

    bool is_point() const { return kind == Kind::Point; }
    bool is_factor() const { return kind == Kind::Factor; }
    bool is_equal_orders() const { return kind == Kind::EqualOrders; }
};

// Outcome of constructing a curve whose validity check can itself reveal a
// factor: Curve on success, Factor(g) when the degeneracy gcd is proper,
// Degenerate when the roots collide modulo every prime divisor.
struct CurveCheck {
    enum class Kind { Curve, Factor, Degenerate };
    Kind kind;
    CurveE2 curve;
    Int g;
};

CurveCheck make_e2(Int b1, Int b2, const SemiprimeContext& ctx);

CurveW e2_to_weierstrass(const CurveE2& c, const Int& N);

bool on_curve(const PointZN& P, const CurveW& c, const Int& N);
bool on_curve(const PointZN& P, const CurveE2& c, const Int& N);

// Group law with gcd dispatch. Mixed reductions surface as Factor; a sum that
// is the zero point at every prime surfaces as EqualOrders.
AddOutcome add(const PointZN& P, const PointZN& Q, const CurveW& c, const SemiprimeContext& ctx);

// Left-to-right double-and-add. m = 0 or P = O gives Point(O). A finite P with
// m*P equal to the zero point at every prime gives EqualOrders. Factor aborts
// immediately.
AddOutcome scalar_mul(const Int& m, const PointZN& P, const CurveW& c, const SemiprimeContext& ctx);

// (tau^2 B1, tau^3 B2), or the revealed factor when gcd(tau, N) is proper.
std::variant<CurveW, Int> twist(const CurveW& c, const Int& tau, const SemiprimeContext& ctx);

// Componentwise ground truth for a point and curve, oracle mode only.
struct OracleReduction {
    fp::CurveFp curve_p, curve_q;
    fp::PointFp Qp, Qq;
    fp::u64 order_p, order_q;    // group orders
    long trace_p, trace_q;       // a_r = r + 1 - #E(F_r)
    fp::u64 ord_Qp, ord_Qq;      // point orders
};

OracleReduction oracle_reduce(const PointZN& P, const CurveW& c, const SemiprimeContext& ctx);
OracleReduction oracle_reduce(const PointZN& P, const CurveE2& c, const SemiprimeContext& ctx);

// Number of group-law evaluations on this thread since the last reset.
// Supports the per-trial work accounting in the pipeline.
std::uint64_t add_counter();
void reset_add_counter();

}  // namespace ecsep
