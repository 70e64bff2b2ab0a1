#include "ecsep/fp.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace ecsep::fp {

u64 addm(u64 a, u64 b, u64 m) {
    a %= m;
    b %= m;
    u64 s = a + b;
    if (s >= m || s < a) s -= m;
    return s;
}

u64 subm(u64 a, u64 b, u64 m) {
    a %= m;
    b %= m;
    return a >= b ? a - b : a + (m - b);
}

u64 mulm(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a % m) * (b % m)) % m);
}

u64 powm(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulm(r, a, m);
        a = mulm(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 invm(u64 a, u64 m) {
    a %= m;
    if (a == 0) throw std::invalid_argument("invm of zero");
    std::int64_t t = 0, newt = 1;
    u64 r = m, newr = a;
    while (newr != 0) {
        u64 qt = r / newr;
        std::int64_t tmpt = t - static_cast<std::int64_t>(qt) * newt;
        t = newt;
        newt = tmpt;
        u64 tmpr = r - qt * newr;
        r = newr;
        newr = tmpr;
    }
    if (r != 1) throw std::invalid_argument("invm of non-unit");
    return t < 0 ? static_cast<u64>(t + static_cast<std::int64_t>(m)) : static_cast<u64>(t);
}

int legendre(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    u64 e = powm(a, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

std::optional<u64> sqrtm(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (legendre(a, p) != 1) return std::nullopt;
    if (p % 4 == 3) return powm(a, (p + 1) / 4, p);
    // Tonelli-Shanks
    u64 s = p - 1;
    unsigned e = 0;
    while (s % 2 == 0) {
        s /= 2;
        ++e;
    }
    u64 n = 2;
    while (legendre(n, p) != -1) ++n;
    u64 x = powm(a, (s + 1) / 2, p);
    u64 b = powm(a, s, p);
    u64 g = powm(n, s, p);
    unsigned r = e;
    while (true) {
        u64 t = b;
        unsigned mexp = 0;
        while (t != 1) {
            t = mulm(t, t, p);
            ++mexp;
            if (mexp == r) return std::nullopt;  // unreachable for prime p
        }
        if (mexp == 0) return x;
        u64 gs = powm(g, u64(1) << (r - mexp - 1), p);
        g = mulm(gs, gs, p);
        x = mulm(x, gs, p);
        b = mulm(b, g, p);
        r = mexp;
    }
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % sp == 0) return n == sp;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powm(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulm(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    if (n == 0) throw std::invalid_argument("factorize(0)");
    for (u64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d) continue;
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

u64 largest_prime_factor(u64 n) {
    auto f = factorize(n);
    if (f.empty()) throw std::invalid_argument("no prime factors");
    return f.back().first;
}

unsigned valuation(u64 n, u64 l) {
    unsigned v = 0;
    while (n % l == 0) {
        n /= l;
        ++v;
    }
    return v;
}

bool on_curve(const CurveFp& c, const PointFp& P) {
    if (P.inf) return true;
    u64 lhs = mulm(P.y, P.y, c.p);
    u64 rhs = addm(mulm(mulm(P.x, P.x, c.p), P.x, c.p), addm(mulm(c.A, P.x, c.p), c.B, c.p), c.p);
    return lhs == rhs;
}

PointFp add(const CurveFp& c, const PointFp& P, const PointFp& Q) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    u64 p = c.p;
    if (P.x == Q.x) {
        if (addm(P.y, Q.y, p) == 0) return PointFp::infinity();
        // doubling; y != 0 here
        u64 num = addm(mulm(3, mulm(P.x, P.x, p), p), c.A, p);
        u64 lam = mulm(num, invm(addm(P.y, P.y, p), p), p);
        u64 x3 = subm(mulm(lam, lam, p), addm(P.x, Q.x, p), p);
        u64 y3 = subm(mulm(lam, subm(P.x, x3, p), p), P.y, p);
        return PointFp::at(x3, y3);
    }
    u64 lam = mulm(subm(Q.y, P.y, p), invm(subm(Q.x, P.x, p), p), p);
    u64 x3 = subm(mulm(lam, lam, p), addm(P.x, Q.x, p), p);
    u64 y3 = subm(mulm(lam, subm(P.x, x3, p), p), P.y, p);
    return PointFp::at(x3, y3);
}

PointFp mul(const CurveFp& c, u64 k, PointFp P) {
    PointFp acc = PointFp::infinity();
    while (k) {
        if (k & 1) acc = add(c, acc, P);
        P = add(c, P, P);
        k >>= 1;
    }
    return acc;
}

namespace {

constexpr u64 kEnumLimit = 100000;

u64 isqrt_u64(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

u64 curve_order_enumerate(const CurveFp& c) {
    std::vector<char> issq(c.p, 0);
    for (u64 t = 0; t < c.p; ++t) issq[mulm(t, t, c.p)] = 1;
    u64 count = 1;  // infinity
    for (u64 x = 0; x < c.p; ++x) {
        u64 f = addm(mulm(mulm(x, x, c.p), x, c.p), addm(mulm(c.A, x, c.p), c.B, c.p), c.p);
        if (f == 0)
            count += 1;
        else if (issq[f])
            count += 2;
    }
    return count;
}

u64 curve_order_count_slow(const CurveFp& c) {
    u64 count = 1;
    for (u64 x = 0; x < c.p; ++x) {
        u64 f = addm(mulm(mulm(x, x, c.p), x, c.p), addm(mulm(c.A, x, c.p), c.B, c.p), c.p);
        if (f == 0)
            count += 1;
        else
            count += 1 + legendre(f, c.p);
    }
    return count;
}

u64 point_key(const CurveFp& c, const PointFp& P) {
    return P.inf ? c.p * c.p + 1 : P.x * c.p + P.y;
}

// Some m in [lo, hi] with m*P = O. Exists whenever the group order lies in the
// window, which Hasse guarantees.
u64 find_annihilator(const CurveFp& c, const PointFp& P, u64 lo, u64 hi) {
    u64 span = hi - lo + 1;
    u64 w = isqrt_u64(span) + 1;
    std::unordered_map<u64, u64> baby;
    baby.reserve(w * 2);
    PointFp S = mul(c, lo, P);
    PointFp step = P;
    for (u64 a = 0; a < w; ++a) {
        baby.emplace(point_key(c, S), a);  // S = (lo + a) P; first a wins
        S = add(c, S, step);
    }
    PointFp W = mul(c, w, P);
    PointFp G = PointFp::infinity();  // G = -(b*w) P
    PointFp Wneg = W.inf ? W : PointFp::at(W.x, W.y ? c.p - W.y : 0);
    for (u64 b = 0; b * w <= span + w; ++b) {
        auto it = baby.find(point_key(c, G));
        if (it != baby.end()) {
            u64 m = lo + it->second + b * w;
            if (m >= lo && m <= hi && mul(c, m, P).inf) return m;
        }
        G = add(c, G, Wneg);
    }
    throw std::logic_error("annihilator search failed");
}

u64 curve_order_bsgs(const CurveFp& c) {
    u64 p = c.p;
    u64 s = 2 * isqrt_u64(p);
    while ((s + 1) * (s + 1) <= 4 * p) ++s;  // s = floor(2*sqrt(p))
    u64 lo = p + 1 - s, hi = p + 1 + s;
    std::mt19937_64 rng(p * 0x9e3779b97f4a7c15ull ^ c.A ^ (static_cast<u64>(c.B) << 20));
    u64 L = 1;
    for (int iter = 0; iter < 64; ++iter) {
        // random affine point
        PointFp P;
        while (true) {
            u64 x = rng() % p;
            u64 f = addm(mulm(mulm(x, x, p), x, p), addm(mulm(c.A, x, p), c.B, p), p);
            if (f == 0) {
                P = PointFp::at(x, 0);
                break;
            }
            if (auto y = sqrtm(f, p)) {
                P = PointFp::at(x, *y);
                break;
            }
        }
        u64 m0 = find_annihilator(c, P, lo, hi);
        u64 op = point_order(c, P, m0);
        L = std::lcm(L, op);
        u64 klo = (lo + L - 1) / L, khi = hi / L;
        if (klo == khi) return klo * L;
    }
    // Exponent too small to pin the order from point orders alone; count directly.
    return curve_order_count_slow(c);
}

}  // namespace

u64 curve_order(const CurveFp& c) {
    if (c.p <= kEnumLimit) return curve_order_enumerate(c);
    return curve_order_bsgs(c);
}

u64 point_order(const CurveFp& c, const PointFp& P, u64 group_multiple) {
    if (P.inf) return 1;
    if (!mul(c, group_multiple, P).inf) throw std::invalid_argument("not a multiple of the point order");
    u64 ord = group_multiple;
    for (auto [l, e] : factorize(group_multiple)) {
        (void)e;
        while (ord % l == 0 && mul(c, ord / l, P).inf) ord /= l;
    }
    return ord;
}

std::vector<PointFp> all_points(const CurveFp& c) {
    std::vector<PointFp> pts;
    pts.push_back(PointFp::infinity());
    for (u64 x = 0; x < c.p; ++x) {
        u64 f = addm(mulm(mulm(x, x, c.p), x, c.p), addm(mulm(c.A, x, c.p), c.B, c.p), c.p);
        if (f == 0) {
            pts.push_back(PointFp::at(x, 0));
        } else if (auto y = sqrtm(f, c.p)) {
            pts.push_back(PointFp::at(x, *y));
            pts.push_back(PointFp::at(x, c.p - *y));
        }
    }
    return pts;
}

u64 CurveE2Fp::b3() const { return subm(0, addm(b1, b2, r), r); }

CurveFp CurveE2Fp::weierstrass() const {
    u64 s = addm(b1, b2, r);
    u64 prod = mulm(b1, b2, r);
    u64 A = subm(prod, mulm(s, s, r), r);
    u64 B = mulm(prod, s, r);
    return {r, A, B};
}

bool CurveE2Fp::nondegenerate() const {
    u64 t = mulm(subm(b1, b2, r), mulm(addm(mulm(2, b1, r), b2, r), addm(mulm(2, b2, r), b1, r), r), r);
    return t != 0;
}

}  // namespace ecsep::fp
