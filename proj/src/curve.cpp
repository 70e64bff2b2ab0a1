#include "ecsep/curve.hpp"

namespace ecsep {

namespace {
thread_local std::uint64_t g_add_counter = 0;
}

std::uint64_t add_counter() { return g_add_counter; }
void reset_add_counter() { g_add_counter = 0; }

CurveCheck make_e2(Int b1, Int b2, const SemiprimeContext& ctx) {
    b1 = mod(b1, ctx.N);
    b2 = mod(b2, ctx.N);
    Int t = mod((b1 - b2) * (2 * b1 + b2) % ctx.N * (2 * b2 + b1), ctx.N);
    Int g = gcd(t, ctx.N);
    if (g == 1) return {CurveCheck::Kind::Curve, CurveE2{std::move(b1), std::move(b2)}, Int(0)};
    if (g == ctx.N) return {CurveCheck::Kind::Degenerate, CurveE2{}, Int(0)};
    return {CurveCheck::Kind::Factor, CurveE2{}, std::move(g)};
}

CurveW e2_to_weierstrass(const CurveE2& c, const Int& N) {
    Int s = c.b1 + c.b2;
    Int prod = c.b1 * c.b2;
    return {mod(prod - s * s, N), mod(prod * s, N)};
}

bool on_curve(const PointZN& P, const CurveW& c, const Int& N) {
    if (P.identity) return true;
    Int lhs = mod(P.y * P.y, N);
    Int rhs = mod(P.x * P.x % N * P.x + c.B1 * P.x + c.B2, N);
    return lhs == rhs;
}

bool on_curve(const PointZN& P, const CurveE2& c, const Int& N) {
    if (P.identity) return true;
    Int lhs = mod(P.y * P.y, N);
    Int rhs = mod(mod((P.x - c.b1) * (P.x - c.b2), N) * mod(P.x + c.b1 + c.b2, N), N);
    return lhs == rhs;
}

namespace {

// Chord or tangent step with slope numerator/denominator already chosen.
// The caller guarantees the denominator is a unit.
PointZN line_step(const Int& num, const Int& den_inv, const PointZN& P, const PointZN& Q,
                  const Int& N) {
    Int lam = mod(num * den_inv, N);
    Int x3 = mod(lam * lam - P.x - Q.x, N);
    Int y3 = mod(lam * (P.x - x3) - P.y, N);
    return PointZN::finite(std::move(x3), std::move(y3));
}

}  // namespace

AddOutcome add(const PointZN& P, const PointZN& Q, const CurveW& c, const SemiprimeContext& ctx) {
    ++g_add_counter;
    if (P.identity) return AddOutcome::point(Q);
    if (Q.identity) return AddOutcome::point(P);
    const Int& N = ctx.N;

    Int g1 = gcd(mod(Q.x - P.x, N), N);
    if (g1 != 1 && g1 != N) return AddOutcome::factor(std::move(g1));
    if (g1 == 1) {
        // distinct x at both primes, chord
        InverseOutcome inv = inverse_or_factor(Q.x - P.x, ctx);
        if (inv.is_factor()) return AddOutcome::factor(std::move(inv.value));
        return AddOutcome::point(line_step(Q.y - P.y, inv.value, P, Q, N));
    }
    // x_P = x_Q at both primes
    Int g2 = gcd(mod(P.y + Q.y, N), N);
    if (g2 == N) return AddOutcome::equal_orders();  // Q = -P at both primes
    if (g2 != 1) return AddOutcome::factor(std::move(g2));
    // Q = P at both primes and y is nonzero at both, tangent
    Int g3 = gcd(mod(2 * P.y, N), N);
    if (g3 == N) return AddOutcome::equal_orders();
    if (g3 != 1) return AddOutcome::factor(std::move(g3));
    InverseOutcome inv = inverse_or_factor(2 * P.y, ctx);
    if (inv.is_factor()) return AddOutcome::factor(std::move(inv.value));
    return AddOutcome::point(line_step(3 * P.x * P.x + c.B1, inv.value, P, P, N));
}

AddOutcome scalar_mul(const Int& m, const PointZN& P, const CurveW& c, const SemiprimeContext& ctx) {
    if (m < 0) throw std::invalid_argument("scalar must be nonnegative");
    if (m == 0 || P.identity) return AddOutcome::point(PointZN::O());

    PointZN acc = PointZN::O();
    mp_bitcnt_t nbits = mpz_sizeinbase(m.get_mpz_t(), 2);
    for (mp_bitcnt_t i = nbits; i-- > 0;) {
        AddOutcome dbl = add(acc, acc, c, ctx);
        if (dbl.is_factor()) return dbl;
        acc = dbl.is_equal_orders() ? PointZN::O() : dbl.pt;
        if (mpz_tstbit(m.get_mpz_t(), i)) {
            AddOutcome sum = add(acc, P, c, ctx);
            if (sum.is_factor()) return sum;
            acc = sum.is_equal_orders() ? PointZN::O() : sum.pt;
        }
    }
    if (acc.identity) return AddOutcome::equal_orders();  // m*P = O at both primes
    return AddOutcome::point(std::move(acc));
}

std::variant<CurveW, Int> twist(const CurveW& c, const Int& tau, const SemiprimeContext& ctx) {
    Int g = gcd(mod(tau, ctx.N), ctx.N);
    if (g != 1) return g;
    Int t2 = mod(tau * tau, ctx.N);
    Int t3 = mod(t2 * tau, ctx.N);
    return CurveW{mod(t2 * c.B1, ctx.N), mod(t3 * c.B2, ctx.N)};
}

OracleReduction oracle_reduce(const PointZN& P, const CurveW& c, const SemiprimeContext& ctx) {
    if (!ctx.has_oracle()) throw std::logic_error("oracle_reduce requires the oracle factorization");
    if (ctx.p() > 10000000 || ctx.q() > 10000000)
        throw std::invalid_argument("oracle primes too large for componentwise counting");

    auto reduce_one = [&](const Int& r) {
        fp::u64 rr = r.get_ui();
        fp::CurveFp cr{rr, mod(c.B1, r).get_ui(), mod(c.B2, r).get_ui()};
        fp::PointFp Pr = P.identity
                             ? fp::PointFp::infinity()
                             : fp::PointFp::at(mod(P.x, r).get_ui(), mod(P.y, r).get_ui());
        return std::make_pair(cr, Pr);
    };
    auto [cp, Pp] = reduce_one(ctx.p());
    auto [cq, Pq] = reduce_one(ctx.q());
    if (!fp::on_curve(cp, Pp) || !fp::on_curve(cq, Pq))
        throw std::invalid_argument("point does not reduce onto the curve");

    OracleReduction out;
    out.curve_p = cp;
    out.curve_q = cq;
    out.Qp = Pp;
    out.Qq = Pq;
    out.order_p = fp::curve_order(cp);
    out.order_q = fp::curve_order(cq);
    out.trace_p = static_cast<long>(cp.p + 1) - static_cast<long>(out.order_p);
    out.trace_q = static_cast<long>(cq.p + 1) - static_cast<long>(out.order_q);
    out.ord_Qp = fp::point_order(cp, Pp, out.order_p);
    out.ord_Qq = fp::point_order(cq, Pq, out.order_q);
    return out;
}

OracleReduction oracle_reduce(const PointZN& P, const CurveE2& c, const SemiprimeContext& ctx) {
    return oracle_reduce(P, e2_to_weierstrass(c, ctx.N), ctx);
}

}  // namespace ecsep
