#include "ecsep/consistent.hpp"

#include <array>
#include <stdexcept>

namespace ecsep {

std::optional<BaseDigits> digits_base_d(const Int& N, const Int& d) {
    if (d < 2 || N < 1) return std::nullopt;
    if (d * d > N || N >= d * d * d) return std::nullopt;
    BaseDigits out;
    Int rest;
    mpz_fdiv_qr(rest.get_mpz_t(), out.c0.get_mpz_t(), N.get_mpz_t(), d.get_mpz_t());
    mpz_fdiv_qr(out.c2.get_mpz_t(), out.c1.get_mpz_t(), rest.get_mpz_t(), d.get_mpz_t());
    return out;
}

namespace {

// -num/den reduced to -t/r with r >= 1
struct ReducedRoot {
    Int r, t;
};

std::optional<ReducedRoot> reduce_root(const Int& num, const Int& den) {
    if (den == 0) return std::nullopt;
    Int g = gcd(num, den);
    ReducedRoot rr;
    rr.r = den / g;
    rr.t = -num / g;
    if (rr.r < 0) {
        rr.r = -rr.r;
        rr.t = -rr.t;
    }
    if (rr.t == 0) return std::nullopt;
    return rr;
}

}  // namespace

std::optional<BaseDDecomposition> solve_digit_quadratic(const Int& c2, const Int& c1,
                                                        const Int& c0, const Int& d,
                                                        const Int& N) {
    if (c2 < 1 || d < 2) return std::nullopt;
    Int disc = c1 * c1 - 4 * c2 * c0;
    if (disc < 0) return std::nullopt;
    auto s = isqrt_exact(disc);
    if (!s) return std::nullopt;

    auto root1 = reduce_root(-c1 + *s, 2 * c2);
    auto root2 = reduce_root(-c1 - *s, 2 * c2);
    if (!root1 || !root2) return std::nullopt;

    BaseDDecomposition out;
    out.r_p = root1->r;
    out.t_p = root1->t;
    out.r_q = root2->r;
    out.t_q = root2->t;
    out.p = d * out.r_p + out.t_p;
    out.q = d * out.r_q + out.t_q;
    if (out.p <= 1 || out.q <= 1 || out.p >= N || out.q >= N) return std::nullopt;
    if (out.p == out.q || out.p * out.q != N) return std::nullopt;
    if (out.p > out.q) {
        std::swap(out.p, out.q);
        std::swap(out.r_p, out.r_q);
        std::swap(out.t_p, out.t_q);
    }
    return out;
}

DecomposeOutcome consistent_decompose(const Int& N, const Int& d, const SemiprimeContext& ctx) {
    (void)ctx;
    DecomposeOutcome out;
    Int g = gcd(d, N);
    if (g > 1 && g < N) {
        out.kind = DecomposeOutcome::Kind::Factored;
        out.p = g;
        out.q = N / g;
        if (out.p > out.q) std::swap(out.p, out.q);
        out.parts = BaseDDecomposition{out.p, out.q, 0, 0, 0, 0};
        return out;
    }

    auto digits = digits_base_d(N, d);
    if (!digits) return out;
    const Int &c2 = digits->c2, &c1 = digits->c1, &c0 = digits->c0;

    // The true signed profile differs from the canonical digits by at most one
    // borrow out of the low position and one out of the middle position.
    std::array<std::array<Int, 3>, 4> profiles = {{
        {c2, c1, c0},
        {c2, c1 + 1, c0 - d},
        {c2 + 1, c1 - d, c0},
        {c2 + 1, c1 + 1 - d, c0 - d},
    }};
    for (const auto& pr : profiles) {
        if (abs(pr[1]) >= d || abs(pr[2]) >= d) continue;
        if (pr[0] < 1 || pr[0] >= d) continue;
        auto dec = solve_digit_quadratic(pr[0], pr[1], pr[2], d, N);
        if (dec) {
            out.kind = DecomposeOutcome::Kind::Factored;
            out.parts = *dec;
            out.p = dec->p;
            out.q = dec->q;
            return out;
        }
    }
    return out;
}

std::vector<Int> giant_step_candidates(const Int& N, const Int& d, unsigned long B) {
    if (B == 0) throw std::invalid_argument("candidate count must be positive");
    Int db = d * Int(static_cast<unsigned long>(B));
    if (db * db < N) throw std::invalid_argument("d*B must reach sqrt(N)");
    std::vector<Int> out;
    out.reserve(B);
    for (unsigned long k = 1; k <= B; ++k) {
        Int cand = Int(static_cast<unsigned long>(k)) * d - 1;
        if (cand > 1) out.push_back(cand);
    }
    return out;
}

}  // namespace ecsep
