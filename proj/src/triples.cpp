#include "ecsep/triples.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ecsep {

TripleOutcome generate_triple(const SemiprimeContext& ctx, RandState& rng,
                              unsigned long max_draws) {
    const Int& N = ctx.N;
    TripleOutcome out;
    for (unsigned long draw = 1; draw <= max_draws; ++draw) {
        out.draws = draw;
        Int x = rng.uniform(N);
        Int b1 = rng.uniform(N);
        Int t = rng.uniform(N);
        if (t == 0) continue;

        Int d1 = mod(x - b1, N);
        if (d1 == 0) continue;
        int j = jacobi(d1, N);
        if (j == 0) {
            out.kind = TripleOutcome::Kind::Factor;
            out.g = gcd(d1, N);
            return out;
        }
        if (j != -1) continue;

        InverseOutcome iv = inverse_or_factor(d1, ctx);
        Int c = mod(t * t * iv.value, N);

        InverseOutcome ic = inverse_or_factor(1 + c, ctx);
        if (ic.is_zero()) continue;
        if (ic.is_factor()) {
            out.kind = TripleOutcome::Kind::Factor;
            out.g = ic.value;
            return out;
        }
        Int b2 = mod((c * x - x - b1) * ic.value, N);
        Int y = mod(t * (x - b2), N);

        Int wedge = mod(mod(b2 - b1, N) * mod(2 * b1 + b2, N) % N * mod(2 * b2 + b1, N), N);
        Int g = gcd(wedge, N);
        if (g == N) continue;
        if (g > 1) {
            out.kind = TripleOutcome::Kind::Factor;
            out.g = g;
            return out;
        }

        Int lhs = mod(y * y, N);
        Int rhs = mod(mod((x - b1) * (x - b2), N) * mod(x + b1 + b2, N), N);
        if (lhs != rhs) throw std::logic_error("triple parametrization left the curve");

        out.kind = TripleOutcome::Kind::Triple;
        out.triple = AdmissibleTriple{x, y, b1, b2, CurveE2{b1, b2}};
        return out;
    }
    out.kind = TripleOutcome::Kind::Exhausted;
    return out;
}

namespace {

// roots of u^2 + b1*u - C over F_r, as residues
std::vector<unsigned long> component_roots(unsigned long b1r, unsigned long Cr,
                                           unsigned long r, bool& square) {
    using namespace fp;
    unsigned long disc = addm(mulm(b1r, b1r, r), mulm(4 % r, Cr, r), r);
    std::vector<unsigned long> roots;
    square = true;
    unsigned long inv2 = invm(2 % r, r);
    unsigned long nb1 = subm(0, b1r, r);
    if (disc == 0) {
        roots.push_back(mulm(nb1, inv2, r));
        return roots;
    }
    auto s = sqrtm(disc, r);
    if (!s) {
        square = false;
        return roots;
    }
    roots.push_back(mulm(addm(nb1, *s, r), inv2, r));
    roots.push_back(mulm(subm(nb1, *s, r), inv2, r));
    return roots;
}

}  // namespace

B2Roots solve_b2_quadratic(const Int& x, const Int& y, const Int& b1,
                           const SemiprimeContext& ctx) {
    if (!ctx.has_oracle()) throw std::logic_error("solve_b2_quadratic needs the factor oracle");
    B2Roots out;
    Int dx = mod(x - b1, ctx.N);
    if (dx == 0) throw std::invalid_argument("x must differ from b1");
    Int g = gcd(dx, ctx.N);
    if (g > 1) {
        out.kind = B2Roots::Kind::Factor;
        out.g = g;
        return out;
    }
    InverseOutcome iv = inverse_or_factor(dx, ctx);
    Int C = mod(x * x + x * b1 - y * y * iv.value, ctx.N);

    unsigned long p = ctx.p().get_ui();
    unsigned long q = ctx.q().get_ui();
    bool sq_p = false, sq_q = false;
    auto rp = component_roots(mod(b1, p).get_ui(), mod(C, p).get_ui(), p, sq_p);
    auto rq = component_roots(mod(b1, q).get_ui(), mod(C, q).get_ui(), q, sq_q);
    if (!sq_p || !sq_q) {
        out.kind = B2Roots::Kind::NotSquare;
        return out;
    }

    for (unsigned long up : rp)
        for (unsigned long uq : rq) {
            Int u = crt_combine(Int(static_cast<long>(up)), Int(static_cast<long>(uq)), ctx);
            if (mod(u * u + b1 * u - C, ctx.N) != 0)
                throw std::logic_error("b2 root fails its quadratic");
            out.roots.push_back(u);
        }
    std::sort(out.roots.begin(), out.roots.end());
    out.roots.erase(std::unique(out.roots.begin(), out.roots.end()), out.roots.end());
    out.kind = B2Roots::Kind::Roots;
    return out;
}

bool is_halvable(const fp::CurveE2Fp& c, const fp::PointFp& P) {
    using namespace fp;
    if (P.inf) return true;
    unsigned long r = c.r;
    unsigned long s1 = subm(P.x, c.b1 % r, r);
    unsigned long s2 = subm(P.x, c.b2 % r, r);
    unsigned long s3 = subm(P.x, c.b3(), r);
    return legendre(s1, r) >= 0 && legendre(s2, r) >= 0 && legendre(s3, r) >= 0;
}

SeparationPredicateReport separation_predicate(const AdmissibleTriple& tr,
                                               const SemiprimeContext& ctx) {
    if (!ctx.has_oracle()) throw std::logic_error("separation_predicate needs the factor oracle");
    SeparationPredicateReport rep;

    unsigned long p = ctx.p().get_ui();
    unsigned long q = ctx.q().get_ui();
    int sp = fp::legendre(mod(tr.x - tr.b1, p).get_ui(), p);
    int sq = fp::legendre(mod(tr.x - tr.b1, q).get_ui(), q);

    bool pattern = false;
    if (sp == -1 && sq == 1) {
        rep.swapped = false;
        pattern = true;
    } else if (sp == 1 && sq == -1) {
        rep.swapped = true;
        pattern = true;
    }
    unsigned long P_side = rep.swapped ? q : p;
    unsigned long Q_side = rep.swapped ? p : q;
    rep.legendre_p = rep.swapped ? sq : sp;
    rep.legendre_q = rep.swapped ? sp : sq;

    OracleReduction red = oracle_reduce(tr.point(), tr.curve, ctx);
    unsigned long E_P = rep.swapped ? red.order_q : red.order_p;
    unsigned long E_Q = rep.swapped ? red.order_p : red.order_q;
    unsigned long oQ_P = rep.swapped ? red.ord_Qq : red.ord_Qp;
    unsigned long oQ_Q = rep.swapped ? red.ord_Qp : red.ord_Qq;

    rep.nu2_order_p = fp::valuation(E_P, 2);
    rep.nu2_order_q = fp::valuation(E_Q, 2);
    rep.nu2_point_p = fp::valuation(oQ_P, 2);
    rep.nu2_point_q = fp::valuation(oQ_Q, 2);
    (void)P_side;

    rep.legendre_shift_q = fp::legendre(mod(tr.x - tr.b2, Q_side).get_ui(), Q_side);

    // The residue test predicts the valuation drop only when both 2-Sylow
    // subgroups are exactly (Z/2)^2; larger Sylow groups admit non-halvable
    // points of submaximal depth.
    rep.applicable = pattern && rep.nu2_order_p == 2 && rep.nu2_order_q == 2;
    rep.lhs = rep.nu2_point_p > rep.nu2_point_q;
    rep.rhs = rep.legendre_shift_q == 1;
    rep.agree = rep.lhs == rep.rhs;
    return rep;
}

SeparationEstimate estimate_separating_fraction(const SemiprimeContext& ctx,
                                                unsigned long samples, unsigned long seed) {
    if (!ctx.has_oracle()) throw std::logic_error("estimate needs the factor oracle");
    if (samples == 0) throw std::invalid_argument("need at least one sample");
    RandState rng(seed);
    SeparationEstimate est;
    est.samples = samples;
    for (unsigned long i = 0; i < samples; ++i) {
        TripleOutcome out = generate_triple(ctx, rng);
        if (!out.is_triple()) continue;
        ++est.admissible;
        OracleReduction red = oracle_reduce(out.triple.point(), out.triple.curve, ctx);
        if (fp::valuation(red.ord_Qp, 2) != fp::valuation(red.ord_Qq, 2)) ++est.separating;
    }
    if (est.admissible > 0) {
        double f = static_cast<double>(est.separating) / static_cast<double>(est.admissible);
        est.frequency = f;
        est.half_width = 1.96 * std::sqrt(f * (1.0 - f) / static_cast<double>(est.admissible));
    }
    return est;
}

}  // namespace ecsep
