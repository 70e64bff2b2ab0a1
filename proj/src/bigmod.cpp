#include "ecsep/bigmod.hpp"

namespace ecsep {

SemiprimeContext SemiprimeContext::make(Int N, Rat theta, Rat hasse_scale_c,
                                        std::optional<std::pair<Int, Int>> oracle) {
    if (N < 5 || mpz_even_p(N.get_mpz_t()))
        throw std::invalid_argument("modulus must be odd and > 3");
    if (gcd(N, Int(6)) != 1)
        throw std::invalid_argument("modulus must be coprime to 6");
    if (theta <= 1)
        throw std::invalid_argument("balance bound must exceed 1");
    if (hasse_scale_c <= 0)
        throw std::invalid_argument("window scale must be positive");
    if (oracle) {
        const auto& [p, q] = *oracle;
        if (p * q != N || p == q || p <= 3 || q <= 3)
            throw std::invalid_argument("oracle pair must be distinct factors of N, both > 3");
    }
    SemiprimeContext ctx;
    ctx.N = std::move(N);
    ctx.theta = std::move(theta);
    ctx.hasse_scale_c = std::move(hasse_scale_c);
    ctx.oracle = std::move(oracle);
    return ctx;
}

const Int& SemiprimeContext::p() const {
    if (!oracle) throw std::logic_error("oracle factorization not present");
    return oracle->first;
}

const Int& SemiprimeContext::q() const {
    if (!oracle) throw std::logic_error("oracle factorization not present");
    return oracle->second;
}

Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int mod(const Int& a, const Int& n) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    return r;
}

InverseOutcome inverse_or_factor(const Int& a, const SemiprimeContext& ctx) {
    Int r = mod(a, ctx.N);
    if (r == 0) return InverseOutcome::zero();
    Int g = gcd(r, ctx.N);
    if (g != 1) return InverseOutcome::factor(std::move(g));
    Int inv;
    mpz_invert(inv.get_mpz_t(), r.get_mpz_t(), ctx.N.get_mpz_t());
    return InverseOutcome::unit(std::move(inv));
}

int jacobi(const Int& a, const Int& n) {
    if (n < 3 || mpz_even_p(n.get_mpz_t()))
        throw std::invalid_argument("jacobi denominator must be odd and >= 3");
    return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

Int isqrt(const Int& a) {
    if (a < 0) throw std::invalid_argument("isqrt of negative value");
    Int s;
    mpz_sqrt(s.get_mpz_t(), a.get_mpz_t());
    return s;
}

std::optional<Int> isqrt_exact(const Int& a) {
    if (a < 0) return std::nullopt;
    Int s = isqrt(a);
    if (s * s == a) return s;
    return std::nullopt;
}

Int iroot(const Int& a, unsigned long k) {
    if (a < 0 || k == 0) throw std::invalid_argument("iroot domain");
    Int r;
    mpz_root(r.get_mpz_t(), a.get_mpz_t(), k);
    return r;
}

Int crt_combine(const Int& a_p, const Int& a_q, const SemiprimeContext& ctx) {
    if (!ctx.has_oracle()) throw std::logic_error("crt_combine requires the oracle factorization");
    const Int& p = ctx.p();
    const Int& q = ctx.q();
    Int pinv;
    if (mpz_invert(pinv.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t()) == 0)
        throw std::logic_error("oracle primes not coprime");
    Int rp = mod(a_p, p);
    Int rq = mod(a_q, q);
    // x = rp + p * ((rq - rp) * p^-1 mod q)
    Int t = mod((rq - rp) * pinv, q);
    return rp + p * t;
}

std::vector<unsigned long> sieve_primes(unsigned long bound) {
    if (bound < 2) throw std::invalid_argument("sieve bound must be >= 2");
    std::vector<bool> composite(bound + 1, false);
    std::vector<unsigned long> primes;
    for (unsigned long i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        if (i <= bound / i)
            for (unsigned long j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return primes;
}

}  // namespace ecsep
