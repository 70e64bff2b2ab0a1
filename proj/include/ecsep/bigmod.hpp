#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ecsep {

using Int = mpz_class;
using Rat = mpq_class;

// Modulus N = p*q with its working parameters. The oracle factorization is
// test-only; attack paths must never touch it.
struct SemiprimeContext {
    Int N;
    Rat theta{4};          // balance bound, p < q < theta*p
    Rat hasse_scale_c{1};  // window scale, r = ceil(c * sqrt(N))
    std::optional<std::pair<Int, Int>> oracle;  // (p, q) with p*q = N

    static SemiprimeContext make(Int N, Rat theta = Rat(4), Rat hasse_scale_c = Rat(1),
                                 std::optional<std::pair<Int, Int>> oracle = std::nullopt);

    bool has_oracle() const { return oracle.has_value(); }
    const Int& p() const;
    const Int& q() const;
};

struct InverseOutcome {
    enum class Kind { Unit, Factor, Zero };
    Kind kind;
    Int value;  // the inverse for Unit, the divisor for Factor, unused for Zero

    static InverseOutcome unit(Int v) { return {Kind::Unit, std::move(v)}; }
    static InverseOutcome factor(Int g) { return {Kind::Factor, std::move(g)}; }
    static InverseOutcome zero() { return {Kind::Zero, Int(0)}; }

    bool is_unit() const { return kind == Kind::Unit; }
    bool is_factor() const { return kind == Kind::Factor; }
    bool is_zero() const { return kind == Kind::Zero; }
};

Int gcd(const Int& a, const Int& b);

// Reduce a into [0, n). n > 0.
Int mod(const Int& a, const Int& n);

// Unit(v) with a*v = 1 mod N, Factor(g) when 1 < gcd(a,N) < N, Zero when a = 0 mod N.
InverseOutcome inverse_or_factor(const Int& a, const SemiprimeContext& ctx);

// Jacobi symbol (a/n) by binary reciprocity. n must be odd and >= 3.
int jacobi(const Int& a, const Int& n);

// Floor square root.
Int isqrt(const Int& a);

// The exact square root when a is a perfect square, absent otherwise.
std::optional<Int> isqrt_exact(const Int& a);

// Floor k-th root.
Int iroot(const Int& a, unsigned long k);

// Unique x mod N with x = a_p mod p and x = a_q mod q. Oracle mode only.
Int crt_combine(const Int& a_p, const Int& a_q, const SemiprimeContext& ctx);

// All primes <= bound, ascending. bound >= 2.
std::vector<unsigned long> sieve_primes(unsigned long bound);

}  // namespace ecsep
