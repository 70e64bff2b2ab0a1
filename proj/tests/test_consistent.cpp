#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <numeric>
#include <random>

#include "ecsep/consistent.hpp"
#include "ecsep/fp.hpp"

using namespace ecsep;

namespace {

SemiprimeContext demo_ctx() {
    return SemiprimeContext::make(Int("3839985129719"), Rat(4), Rat(3, 4),
                                  std::pair<Int, Int>{Int(1959583), Int(1959593)});
}

}  // namespace

TEST_CASE("three-digit expansion on known values") {
    auto d0 = digits_base_d(Int("3839985129719"), Int(279936));
    REQUIRE(d0.has_value());
    CHECK(d0->c2 == 49);
    CHECK(d0->c1 == 504);
    CHECK(d0->c0 == 1271);

    auto d1 = digits_base_d(Int(100), Int(10));
    REQUIRE(d1.has_value());
    CHECK(d1->c2 == 1);
    CHECK(d1->c1 == 0);
    CHECK(d1->c0 == 0);

    // out of range: N needs exactly three digits
    CHECK(!digits_base_d(Int(99), Int(10)).has_value());
    CHECK(!digits_base_d(Int(1000), Int(10)).has_value());
    CHECK(!digits_base_d(Int(10), Int(1)).has_value());
}

TEST_CASE("digit expansion reassembles for random in-range input") {
    std::mt19937_64 gen(8080);
    for (int it = 0; it < 1000; ++it) {
        Int d(static_cast<unsigned long>(2 + gen() % 5000));
        Int lo = d * d;
        Int span = d * d * d - lo;
        Int N = lo + Int(static_cast<unsigned long>(gen() % 1000000007)) % span;
        auto dg = digits_base_d(N, d);
        REQUIRE(dg.has_value());
        CHECK(dg->c2 * d * d + dg->c1 * d + dg->c0 == N);
        CHECK(dg->c0 >= 0);
        CHECK(dg->c0 < d);
        CHECK(dg->c1 >= 0);
        CHECK(dg->c1 < d);
        CHECK(dg->c2 >= 1);
        CHECK(dg->c2 < d);
    }
}

TEST_CASE("digit quadratic recovers the demo factors") {
    Int N("3839985129719"), d(279936);
    auto s = solve_digit_quadratic(Int(49), Int(504), Int(1271), d, N);
    REQUIRE(s.has_value());
    CHECK(s->p == 1959583);
    CHECK(s->q == 1959593);
    CHECK(s->r_p == 7);
    CHECK(s->t_p == 31);
    CHECK(s->r_q == 7);
    CHECK(s->t_q == 41);
    CHECK(s->p * s->q == N);
}

TEST_CASE("digit quadratic rejects double roots and non-rational roots") {
    // (z+1)^2 profile gives p = q, rejected
    Int d(100), N = Int(101) * Int(101);
    CHECK(!solve_digit_quadratic(Int(1), Int(2), Int(1), d, N).has_value());
    // irrational roots
    CHECK(!solve_digit_quadratic(Int(1), Int(1), Int(1), d, Int(10101)).has_value());
    // zero trace never accepted
    CHECK(!solve_digit_quadratic(Int(1), Int(0), Int(0), Int(10), Int(100)).has_value());
}

TEST_CASE("digit quadratic round-trips synthetic products with signed traces") {
    std::mt19937_64 gen(424242);
    int done = 0, negative = 0;
    while (done < 300) {
        long d = 300 + static_cast<long>(gen() % 4000);
        long rp = 1 + static_cast<long>(gen() % 5);
        long rq = 1 + static_cast<long>(gen() % 5);
        long cap = std::max(1L, static_cast<long>(Int(isqrt(Int(d))).get_si()) / 3);
        long tp = 1 + static_cast<long>(gen() % cap);
        long tq = 1 + static_cast<long>(gen() % cap);
        if (gen() % 2) tp = -tp;
        if (gen() % 2) tq = -tq;
        // the solver reads profiles off reduced root fractions, so a shared
        // factor between multiplier and trace cannot round-trip termwise
        if (std::gcd(rp, std::abs(tp)) != 1 || std::gcd(rq, std::abs(tq)) != 1) continue;
        Int p = Int(d) * rp + tp, q = Int(d) * rq + tq;
        if (p < 2 || q < 2 || p == q) continue;
        Int N = p * q;
        Int C2(rp * rq), C1(rp * tq + rq * tp), C0(tp * tq);
        if (C2 < 1) continue;
        auto s = solve_digit_quadratic(C2, C1, C0, Int(d), N);
        REQUIRE(s.has_value());
        Int lo = p < q ? p : q, hi = p < q ? q : p;
        CHECK(s->p == lo);
        CHECK(s->q == hi);
        // termwise structure of the profile
        CHECK(s->r_p * s->r_q == C2);
        CHECK(s->t_p * s->t_q == C0);
        CHECK(s->r_p * s->t_q + s->r_q * s->t_p == C1);
        if (tp < 0 || tq < 0) ++negative;
        ++done;
    }
    CHECK(negative > 50);
}

TEST_CASE("consistent_decompose factors the demo modulus at the recovered order") {
    auto ctx = demo_ctx();
    auto out = consistent_decompose(ctx.N, Int(279936), ctx);
    REQUIRE(out.factored());
    CHECK(out.p == 1959583);
    CHECK(out.q == 1959593);
    CHECK(out.parts.r_p == 7);
    CHECK(out.parts.t_p == 31);
}

TEST_CASE("consistent_decompose short-circuits on shared factors with d") {
    auto ctx = SemiprimeContext::make(Int(35));
    auto out = consistent_decompose(Int(35), Int(10), ctx);
    REQUIRE(out.factored());
    CHECK(out.p == 5);
    CHECK(out.q == 7);
}

TEST_CASE("consistent_decompose reaches negative traces through carry profiles") {
    // p = 2*100 - 3 = 197, q = 3*100 - 7 = 293, both prime
    Int d(100), p(197), q(293), N = p * q;
    REQUIRE(N == 57721);
    auto ctx = SemiprimeContext::make(N, Rat(4), Rat(1), std::pair<Int, Int>{p, q});
    // the canonical digits (5, 77, 21) do not solve directly
    CHECK(!solve_digit_quadratic(Int(5), Int(77), Int(21), d, N).has_value());
    auto out = consistent_decompose(N, d, ctx);
    REQUIRE(out.factored());
    CHECK(out.p == 197);
    CHECK(out.q == 293);
    CHECK(out.parts.t_p == -3);
    CHECK(out.parts.t_q == -7);
}

TEST_CASE("consistent_decompose declines when no profile works") {
    auto ctx = SemiprimeContext::make(Int(1009) * Int(2003));
    // d coprime to N, in digit range, but unrelated to the factors
    auto out = consistent_decompose(Int(1009) * Int(2003), Int(127), ctx);
    CHECK(!out.factored());
    // d too large for a three-digit read
    auto big = consistent_decompose(Int(1009) * Int(2003), Int(1500), ctx);
    CHECK(!big.factored());
}

TEST_CASE("giant step candidates enumerate k*d - 1") {
    // d = sqrt(N) exactly: a single candidate d - 1
    auto one = giant_step_candidates(Int(49), Int(7), 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == 6);

    auto eight = giant_step_candidates(Int("3839985129719"), Int(279936), 8);
    REQUIRE(eight.size() == 8);
    for (unsigned long k = 1; k <= 8; ++k) CHECK(eight[k - 1] == Int(279936) * k - 1);

    // pre: d*B must reach sqrt(N)
    CHECK_THROWS(giant_step_candidates(Int(50), Int(7), 1));
    CHECK_THROWS(giant_step_candidates(Int(49), Int(7), 0));
}

TEST_CASE("random synthetic moduli decompose at their true base") {
    std::mt19937_64 gen(5150);
    int done = 0;
    while (done < 120) {
        long d = 500 + static_cast<long>(gen() % 3000);
        long rp = 1 + static_cast<long>(gen() % 4);
        long rq = 2 + static_cast<long>(gen() % 4);
        long cap = std::max(1L, static_cast<long>(Int(isqrt(Int(d))).get_si()) / 3);
        long tp = 1 + static_cast<long>(gen() % cap);
        long tq = 1 + static_cast<long>(gen() % cap);
        if (gen() % 3 == 0) tp = -tp;
        if (gen() % 3 == 0) tq = -tq;
        Int p = Int(d) * rp + tp, q = Int(d) * rq + tq;
        if (p <= 3 || q <= 3 || p == q) continue;
        if (!fp::is_prime(p.get_ui()) || !fp::is_prime(q.get_ui())) continue;
        Int N = p * q;
        if (N < Int(d) * d || N >= Int(d) * d * d) continue;
        if (gcd(Int(d), N) != 1) continue;
        if (N % 2 == 0 || N % 3 == 0) continue;
        auto ctx = SemiprimeContext::make(N, Rat(1000), Rat(1), std::pair<Int, Int>{p, q});
        auto out = consistent_decompose(N, Int(d), ctx);
        REQUIRE(out.factored());
        Int lo = p < q ? p : q, hi = p < q ? q : p;
        CHECK(out.p == lo);
        CHECK(out.q == hi);
        ++done;
    }
}
