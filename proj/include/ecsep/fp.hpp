#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

// Ground-truth arithmetic over small prime fields. Test harness territory:
// everything here assumes the modulus is a known prime that fits in 64 bits.

namespace ecsep::fp {

using u64 = std::uint64_t;

u64 addm(u64 a, u64 b, u64 m);
u64 subm(u64 a, u64 b, u64 m);
u64 mulm(u64 a, u64 b, u64 m);
u64 powm(u64 a, u64 e, u64 m);
u64 invm(u64 a, u64 m);  // gcd(a, m) = 1 required

// Legendre symbol for odd prime p: +1 square, -1 non-square, 0 when p | a.
int legendre(u64 a, u64 p);

// Square root mod odd prime p, if one exists.
std::optional<u64> sqrtm(u64 a, u64 p);

bool is_prime(u64 n);

// Prime factorization by trial division, ascending. Meant for n <= ~10^14.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

u64 largest_prime_factor(u64 n);
unsigned valuation(u64 n, u64 l);

// y^2 = x^3 + A x + B over F_p.
struct CurveFp {
    u64 p, A, B;
};

struct PointFp {
    u64 x = 0, y = 0;
    bool inf = true;

    static PointFp infinity() { return {}; }
    static PointFp at(u64 x, u64 y) { return {x, y, false}; }
    bool operator==(const PointFp&) const = default;
};

bool on_curve(const CurveFp& c, const PointFp& P);
PointFp add(const CurveFp& c, const PointFp& P, const PointFp& Q);
PointFp mul(const CurveFp& c, u64 k, PointFp P);

// Group order #E(F_p). Point enumeration below the threshold, baby-step
// giant-step order hunting above it (p up to ~10^7).
u64 curve_order(const CurveFp& c);

// Exact order of P given the group order (or any multiple of the order of P).
u64 point_order(const CurveFp& c, const PointFp& P, u64 group_multiple);

// Every affine point plus the point at infinity. Small p only.
std::vector<PointFp> all_points(const CurveFp& c);

// Root-form curve y^2 = (x-b1)(x-b2)(x+b1+b2) reduced mod r.
struct CurveE2Fp {
    u64 r, b1, b2;

    u64 b3() const;            // the third root, -(b1+b2) mod r
    CurveFp weierstrass() const;
    bool nondegenerate() const;  // the three roots pairwise distinct mod r
};

}  // namespace ecsep::fp
