#include "ecsep/multiplier.hpp"

#include <stdexcept>

namespace ecsep {

namespace {

Int pow_ui(unsigned long base, unsigned exp) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

Int window_bound(const Int& r) {
    return r + 1 + isqrt(4 * r);
}

}  // namespace

HasseWindow HasseWindow::at_scale(const SemiprimeContext& ctx) {
    // smallest r with r^2 * den^2 >= num^2 * N, i.e. r = ceil(c * sqrt(N))
    Int num = ctx.hasse_scale_c.get_num();
    Int den = ctx.hasse_scale_c.get_den();
    Int target = num * num * ctx.N;
    Int den2 = den * den;
    Int r = isqrt(target / den2);
    while (r * r * den2 < target) ++r;
    while (r > 1 && (r - 1) * (r - 1) * den2 >= target) --r;
    return from_r(r);
}

HasseWindow HasseWindow::from_r(Int r) {
    if (r < 1) throw std::invalid_argument("window scale must be positive");
    HasseWindow w;
    w.bound = window_bound(r);
    w.r = std::move(r);
    return w;
}

unsigned hasse_exponent(unsigned long l, const HasseWindow& w) {
    if (l < 2) throw std::invalid_argument("prime expected");
    unsigned k = 0;
    Int pw{static_cast<long>(l)};
    while (pw <= w.bound) {
        ++k;
        pw *= static_cast<long>(l);
    }
    return k;
}

Multiplier build_multiplier(unsigned long t, const HasseWindow& w) {
    if (t < 2) throw std::invalid_argument("multiplier needs t >= 2");
    Multiplier m;
    m.t = t;
    for (unsigned long l : sieve_primes(t)) {
        unsigned e = hasse_exponent(l, w);
        m.factors.emplace_back(l, e);
        if (e > 0) m.value *= pow_ui(l, e);
    }
    return m;
}

SeparationReport staged_multiply(const CurveW& E, const PointZN& Q, unsigned long t_max,
                                 const HasseWindow& w, const SemiprimeContext& ctx) {
    if (Q.identity) throw std::invalid_argument("staged_multiply needs a finite point");
    Multiplier m = build_multiplier(t_max, w);
    PointZN cur = Q;
    for (const auto& [l, e] : m.factors) {
        if (e == 0) continue;
        AddOutcome out = scalar_mul(pow_ui(l, e), cur, E, ctx);
        if (out.is_factor()) {
            SeparationReport rep;
            rep.kind = SeparationReport::Kind::Separated;
            rep.g = out.g;
            rep.at_prime = l;
            rep.t_min = l;
            return rep;
        }
        if (out.is_equal_orders()) return recover_order(E, Q, l, w, ctx);
        cur = out.pt;
    }
    SeparationReport rep;
    rep.kind = SeparationReport::Kind::StillFinite;
    return rep;
}

namespace {

// Remainder-tree walk over the multiplier's prime powers. Each recursion step
// applies the complement half's powers so a leaf sees M/l^(nu_l) * Q and can
// read off the exponent of l in ord Q by repeated multiplication by l.
struct OrderRecovery {
    const CurveW& E;
    const SemiprimeContext& ctx;
    const std::vector<std::pair<unsigned long, unsigned>>& factors;
    std::vector<unsigned> exponents;
    SeparationReport separated;
    bool found_factor = false;

    OrderRecovery(const CurveW& e, const SemiprimeContext& c,
                  const std::vector<std::pair<unsigned long, unsigned>>& f)
        : E(e), ctx(c), factors(f), exponents(f.size(), 0) {}

    // Multiplies R by l^e; false when a factor surfaced (recovery stops).
    bool apply(PointZN& R, unsigned long l, unsigned e) {
        if (e == 0 || R.identity) return true;
        AddOutcome out = scalar_mul(pow_ui(l, e), R, E, ctx);
        if (out.is_factor()) {
            separated.kind = SeparationReport::Kind::Separated;
            separated.g = out.g;
            separated.at_prime = l;
            separated.t_min = l;
            found_factor = true;
            return false;
        }
        R = out.is_equal_orders() ? PointZN::O() : out.pt;
        return true;
    }

    bool leaf(PointZN R, std::size_t i) {
        auto [l, e_max] = factors[i];
        for (unsigned k = 1; k <= e_max; ++k) {
            AddOutcome out = scalar_mul(Int{static_cast<long>(l)}, R, E, ctx);
            if (out.is_factor()) {
                separated.kind = SeparationReport::Kind::Separated;
                separated.g = out.g;
                separated.at_prime = l;
                separated.t_min = l;
                found_factor = true;
                return false;
            }
            if (out.is_equal_orders()) {
                exponents[i] = k;
                return true;
            }
            R = out.pt;
        }
        throw std::invalid_argument("recover_order: point survives the full multiplier");
    }

    bool walk(PointZN R, std::size_t lo, std::size_t hi) {
        if (R.identity) return true;  // exponents in [lo,hi) stay 0
        if (hi - lo == 1) return leaf(std::move(R), lo);
        std::size_t mid = lo + (hi - lo) / 2;
        PointZN left = R;
        for (std::size_t i = mid; i < hi && !left.identity; ++i)
            if (!apply(left, factors[i].first, factors[i].second)) return false;
        if (!walk(std::move(left), lo, mid)) return false;
        PointZN right = std::move(R);
        for (std::size_t i = lo; i < mid && !right.identity; ++i)
            if (!apply(right, factors[i].first, factors[i].second)) return false;
        return walk(std::move(right), mid, hi);
    }
};

}  // namespace

SeparationReport recover_order(const CurveW& E, const PointZN& Q, unsigned long B,
                               const HasseWindow& w, const SemiprimeContext& ctx) {
    if (Q.identity) throw std::invalid_argument("recover_order needs a finite point");
    Multiplier m = build_multiplier(B, w);
    std::vector<std::pair<unsigned long, unsigned>> active;
    for (const auto& f : m.factors)
        if (f.second > 0) active.push_back(f);
    if (active.empty()) throw std::invalid_argument("recover_order: empty multiplier");

    OrderRecovery rec(E, ctx, active);
    if (!rec.walk(Q, 0, active.size())) return rec.separated;

    SeparationReport rep;
    rep.kind = SeparationReport::Kind::NonSeparating;
    rep.order = 1;
    for (std::size_t i = 0; i < active.size(); ++i) {
        if (rec.exponents[i] == 0) continue;
        unsigned long l = active[i].first;
        rep.order *= pow_ui(l, rec.exponents[i]);
        rep.order_factors.emplace_back(l, rec.exponents[i]);
        rep.t_min = l;
    }
    if (rep.order == 1)
        throw std::invalid_argument("recover_order: inconsistent vanishing state");
    return rep;
}

}  // namespace ecsep
