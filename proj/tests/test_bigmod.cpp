#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <vector>

#include "ecsep/bigmod.hpp"
#include "ecsep/fp.hpp"

using namespace ecsep;

TEST_CASE("context accepts valid semiprimes and rejects bad moduli") {
    CHECK_NOTHROW(SemiprimeContext::make(Int(35)));
    CHECK_NOTHROW(SemiprimeContext::make(Int(143)));
    CHECK_THROWS(SemiprimeContext::make(Int(15)));   // divisible by 3
    CHECK_THROWS(SemiprimeContext::make(Int(21)));
    CHECK_THROWS(SemiprimeContext::make(Int(34)));   // even
    CHECK_THROWS(SemiprimeContext::make(Int(3)));
    CHECK_THROWS(SemiprimeContext::make(Int(-35)));

    // oracle must actually factor N
    CHECK_NOTHROW(SemiprimeContext::make(Int(35), Rat(4), Rat(1), std::pair<Int, Int>{5, 7}));
    CHECK_THROWS(SemiprimeContext::make(Int(35), Rat(4), Rat(1), std::pair<Int, Int>{5, 11}));
    CHECK_THROWS(SemiprimeContext::make(Int(35), Rat(4), Rat(1), std::pair<Int, Int>{1, 35}));
}

TEST_CASE("gcd matches known values") {
    CHECK(gcd(Int(12), Int(18)) == 6);
    CHECK(gcd(Int(1), Int(3839985129719)) == 1);
    // M_B from the demo multiplier is coprime to the demo modulus
    CHECK(gcd(Int(557256278016), Int(3839985129719)) == 1);
    CHECK(gcd(Int(0), Int(7)) == 7);
}

TEST_CASE("mod always lands in [0, n)") {
    CHECK(mod(Int(-1), Int(35)) == 34);
    CHECK(mod(Int(35), Int(35)) == 0);
    CHECK(mod(Int(-36), Int(35)) == 34);
    CHECK(mod(Int(71), Int(35)) == 1);
}

TEST_CASE("inverse_or_factor splits units, zero divisors, and zero") {
    auto ctx = SemiprimeContext::make(Int(35));
    auto u = inverse_or_factor(Int(2), ctx);
    REQUIRE(u.kind == InverseOutcome::Kind::Unit);
    CHECK(u.value == 18);  // 2*18 = 36 = 1 mod 35
    auto f = inverse_or_factor(Int(5), ctx);
    REQUIRE(f.kind == InverseOutcome::Kind::Factor);
    CHECK(f.value == 5);
    auto z = inverse_or_factor(Int(0), ctx);
    CHECK(z.kind == InverseOutcome::Kind::Zero);
    auto zz = inverse_or_factor(Int(35), ctx);
    CHECK(zz.kind == InverseOutcome::Kind::Zero);
}

TEST_CASE("inverse_or_factor units multiply back to one") {
    auto ctx = SemiprimeContext::make(Int(143));
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(12345ul);
    int units = 0;
    for (int i = 0; i < 300; ++i) {
        Int a = rng.get_z_range(Int(143));
        auto r = inverse_or_factor(a, ctx);
        if (r.kind == InverseOutcome::Kind::Unit) {
            ++units;
            CHECK(mod(a * r.value, Int(143)) == 1);
        } else if (r.kind == InverseOutcome::Kind::Factor) {
            CHECK((r.value == 11 || r.value == 13));
        } else {
            CHECK(a == 0);
        }
    }
    CHECK(units > 200);
}

TEST_CASE("jacobi symbol on known inputs") {
    CHECK(jacobi(Int(1), Int(15)) == 1);
    CHECK(jacobi(Int(3), Int(15)) == 0);
    CHECK(jacobi(Int(2), Int(15)) == 1);  // (2|3)(2|5) = (-1)(-1)
    CHECK(jacobi(Int(2), Int(35)) == -1); // (2|5)(2|7) = (-1)(+1)
    CHECK_THROWS(jacobi(Int(3), Int(14)));
    CHECK_THROWS(jacobi(Int(3), Int(-7)));
    CHECK_THROWS(jacobi(Int(3), Int(1)));
}

TEST_CASE("jacobi agrees with Euler criterion on primes") {
    for (unsigned long p : {5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul}) {
        for (unsigned long a = 1; a < p; ++a) {
            int expect = fp::legendre(a, p);
            CHECK(jacobi(Int(a), Int(p)) == expect);
        }
    }
}

TEST_CASE("jacobi is multiplicative in the numerator") {
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(99ul);
    Int n(1009 * 2003);
    for (int i = 0; i < 200; ++i) {
        Int a = rng.get_z_range(n);
        Int b = rng.get_z_range(n);
        CHECK(jacobi(mod(a * b, n), n) == jacobi(a, n) * jacobi(b, n));
    }
}

TEST_CASE("isqrt and isqrt_exact on known values") {
    CHECK(isqrt(Int(4900)) == 70);
    CHECK(isqrt(Int(4899)) == 69);
    auto e = isqrt_exact(Int(4900));
    REQUIRE(e.has_value());
    CHECK(*e == 70);
    auto z = isqrt_exact(Int(0));
    REQUIRE(z.has_value());
    CHECK(*z == 0);
    CHECK(!isqrt_exact(Int(2)).has_value());
    CHECK(!isqrt_exact(Int(4901)).has_value());
}

TEST_CASE("isqrt_exact inverts squaring for large random inputs") {
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(4242ul);
    for (int i = 0; i < 10000; ++i) {
        Int s = rng.get_z_bits(128);
        auto r = isqrt_exact(s * s);
        REQUIRE(r.has_value());
        CHECK(*r == s);
        // neighbors of a square are not squares once s > 1
        if (s > 1) CHECK(!isqrt_exact(s * s - 1).has_value());
    }
}

TEST_CASE("iroot floors the k-th root") {
    CHECK(iroot(Int(1000000), 3) == 100);
    CHECK(iroot(Int(999999), 3) == 99);
    CHECK(iroot(Int(3839985129719), 4) == 1399);
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(7ul);
    for (int i = 0; i < 500; ++i) {
        Int s = rng.get_z_bits(40) + 2;
        unsigned k = 2 + static_cast<unsigned>(i % 5);
        Int r = iroot(s, k);
        Int rk, r1k;
        mpz_pow_ui(rk.get_mpz_t(), r.get_mpz_t(), k);
        mpz_pow_ui(r1k.get_mpz_t(), Int(r + 1).get_mpz_t(), k);
        CHECK(rk <= s);
        CHECK(r1k > s);
    }
}

TEST_CASE("crt_combine rebuilds residues mod 35") {
    auto ctx = SemiprimeContext::make(Int(35), Rat(4), Rat(1), std::pair<Int, Int>{5, 7});
    CHECK(crt_combine(Int(1), Int(1), ctx) == 1);
    CHECK(crt_combine(Int(0), Int(1), ctx) == 15);
    CHECK(crt_combine(Int(2), Int(3), ctx) == 17);
    // round trip both directions
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 7; ++b) {
            Int v = crt_combine(Int(a), Int(b), ctx);
            CHECK(mod(v, Int(5)) == a);
            CHECK(mod(v, Int(7)) == b);
            CHECK(v >= 0);
            CHECK(v < 35);
        }
}

TEST_CASE("sieve_primes hits the documented prefixes") {
    CHECK(sieve_primes(3) == std::vector<unsigned long>{2, 3});
    CHECK(sieve_primes(10) == std::vector<unsigned long>{2, 3, 5, 7});
    auto p100 = sieve_primes(100);
    CHECK(p100.size() == 25);
    CHECK(p100.front() == 2);
    CHECK(p100.back() == 97);
    CHECK_THROWS(sieve_primes(1));
    auto p4 = sieve_primes(4);
    CHECK(p4 == std::vector<unsigned long>{2, 3});
}

TEST_CASE("sieve_primes agrees with a primality oracle up to 10000") {
    auto ps = sieve_primes(10000);
    std::vector<unsigned long> expect;
    for (unsigned long n = 2; n <= 10000; ++n)
        if (fp::is_prime(n)) expect.push_back(n);
    CHECK(ps == expect);
}
