#include "ecsep/smallroots.hpp"

#include <algorithm>
#include <stdexcept>

namespace ecsep {

namespace {

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int round_nearest(Rat x) {
    x += Rat(1, 2);
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), mpq_numref(x.get_mpq_t()), mpq_denref(x.get_mpq_t()));
    return q;
}

Rat abs_rat(const Rat& x) { return x < 0 ? Rat(-x) : x; }

void check_square(const IntegerLattice& L) {
    std::size_t n = L.dim();
    if (n == 0) throw std::invalid_argument("empty lattice");
    for (const auto& row : L.rows)
        if (row.size() != n) throw std::invalid_argument("lattice basis must be square");
}

// mu[k][j] and |b*_k|^2 for row k, rows 0..k-1 already done
void incremental_gs(std::size_t k, const std::vector<std::vector<Int>>& b,
                    std::vector<std::vector<Rat>>& mu, std::vector<Rat>& Bgs) {
    std::vector<Rat> c(k);
    for (std::size_t j = 0; j < k; ++j) {
        Rat cj{dot(b[k], b[j])};
        for (std::size_t i = 0; i < j; ++i) cj -= mu[j][i] * c[i];
        c[j] = cj;
        mu[k][j] = cj / Bgs[j];
    }
    Rat bb{dot(b[k], b[k])};
    for (std::size_t j = 0; j < k; ++j) bb -= mu[k][j] * c[j];
    Bgs[k] = bb;
    if (Bgs[k] <= 0) throw std::invalid_argument("linearly dependent lattice basis");
}

}  // namespace

IntegerLattice lll_reduce(const IntegerLattice& basis, const Rat& delta) {
    check_square(basis);
    if (delta <= Rat(1, 4) || delta >= 1)
        throw std::invalid_argument("delta must lie in (1/4, 1)");
    std::size_t n = basis.dim();
    std::vector<std::vector<Int>> b = basis.rows;
    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n));
    std::vector<Rat> Bgs(n);

    Bgs[0] = Rat{dot(b[0], b[0])};
    if (Bgs[0] <= 0) throw std::invalid_argument("linearly dependent lattice basis");

    auto red = [&](std::size_t k, std::size_t l) {
        if (abs_rat(mu[k][l]) <= Rat(1, 2)) return;
        Int q = round_nearest(mu[k][l]);
        for (std::size_t i = 0; i < b[k].size(); ++i) b[k][i] -= q * b[l][i];
        mu[k][l] -= Rat{q};
        for (std::size_t i = 0; i < l; ++i) mu[k][i] -= Rat{q} * mu[l][i];
    };

    std::size_t k = 1, kmax = 0;
    while (k < n) {
        if (k > kmax) {
            kmax = k;
            incremental_gs(k, b, mu, Bgs);
        }
        red(k, k - 1);
        if (Bgs[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * Bgs[k - 1]) {
            std::swap(b[k], b[k - 1]);
            for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
            Rat m = mu[k][k - 1];
            Rat Bnew = Bgs[k] + m * m * Bgs[k - 1];
            mu[k][k - 1] = m * Bgs[k - 1] / Bnew;
            Bgs[k] = Bgs[k - 1] * Bgs[k] / Bnew;
            Bgs[k - 1] = Bnew;
            for (std::size_t i = k + 1; i <= kmax; ++i) {
                Rat t = mu[i][k];
                mu[i][k] = mu[i][k - 1] - m * t;
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
            }
            k = k > 1 ? k - 1 : 1;
        } else {
            for (std::size_t l = k - 1; l-- > 0;) red(k, l);
            ++k;
        }
    }
    IntegerLattice out;
    out.rows = std::move(b);
    return out;
}

namespace {

// exact determinant by fraction-free elimination
Int bareiss_det(std::vector<std::vector<Int>> a) {
    std::size_t n = a.size();
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : Int(-a[n - 1][n - 1]);
}

// solves x * O = r exactly; false when O is singular
bool solve_row(const std::vector<std::vector<Int>>& O, const std::vector<Int>& r,
               std::vector<Rat>& x) {
    std::size_t n = O.size();
    // transpose system: O^T * x^T = r^T
    std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) A[i][j] = Rat{O[j][i]};
        A[i][n] = Rat{r[i]};
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && A[piv][col] == 0) ++piv;
        if (piv == n) return false;
        std::swap(A[col], A[piv]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || A[i][col] == 0) continue;
            Rat f = A[i][col] / A[col][col];
            for (std::size_t j = col; j <= n; ++j) A[i][j] -= f * A[col][j];
        }
    }
    x.assign(n, Rat{});
    for (std::size_t i = 0; i < n; ++i) x[i] = A[i][n] / A[i][i];
    return true;
}

}  // namespace

LLLCheck lll_verify(const IntegerLattice& original, const IntegerLattice& reduced,
                    const Rat& delta) {
    check_square(original);
    check_square(reduced);
    LLLCheck out;
    if (original.dim() != reduced.dim()) return out;
    std::size_t n = reduced.dim();

    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n));
    std::vector<Rat> Bgs(n);
    Bgs[0] = Rat{dot(reduced.rows[0], reduced.rows[0])};
    if (Bgs[0] <= 0) return out;
    for (std::size_t k = 1; k < n; ++k) incremental_gs(k, reduced.rows, mu, Bgs);

    out.size_reduced = true;
    for (std::size_t i = 1; i < n && out.size_reduced; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (abs_rat(mu[i][j]) > Rat(1, 2)) {
                out.size_reduced = false;
                break;
            }
    out.lovasz = true;
    for (std::size_t k = 1; k < n; ++k)
        if (Bgs[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * Bgs[k - 1]) {
            out.lovasz = false;
            break;
        }

    Int detO = bareiss_det(original.rows);
    Int detR = bareiss_det(reduced.rows);
    if (detO == 0 || abs(detO) != abs(detR)) return out;
    bool integral = true;
    for (std::size_t i = 0; i < n && integral; ++i) {
        std::vector<Rat> x;
        if (!solve_row(original.rows, reduced.rows[i], x)) {
            integral = false;
            break;
        }
        for (const Rat& c : x)
            if (c.get_den() != 1) {
                integral = false;
                break;
            }
    }
    out.same_lattice = integral;
    return out;
}

namespace {

int sign_at(const std::vector<Int>& c, const Int& z) {
    Int v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * z + c[i];
    return sgn(v);
}

std::vector<Int> derivative(const std::vector<Int>& c) {
    std::vector<Int> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(Int(static_cast<long>(i)) * c[i]);
    while (!d.empty() && d.back() == 0) d.pop_back();
    return d;
}

// Floors of the real roots of c inside [lo, hi], plus the segmentation marks
// used to find them. Overlisting is fine; callers test candidates exactly.
std::vector<Int> root_floor_marks(const std::vector<Int>& c, const Int& lo, const Int& hi) {
    std::vector<Int> marks;
    if (c.size() <= 1) return marks;
    if (c.size() == 2) {
        // c1*z + c0 = 0
        Int f;
        mpz_fdiv_q(f.get_mpz_t(), Int(-c[0]).get_mpz_t(), c[1].get_mpz_t());
        if (f >= lo - 1 && f <= hi) marks.push_back(f);
        return marks;
    }
    std::vector<Int> crit = root_floor_marks(derivative(c), lo, hi);
    std::vector<Int> bounds;
    bounds.push_back(lo - 1);
    for (const Int& m : crit)
        if (m > lo - 1 && m < hi) bounds.push_back(m);
    bounds.push_back(hi);
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

    for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
        Int a = bounds[s] + 1, b = bounds[s + 1];
        if (a > b) continue;
        marks.push_back(a);
        marks.push_back(b);
        int sa = sign_at(c, a), sb = sign_at(c, b);
        if (sa == 0 || sb == 0 || sa == sb) continue;
        Int x = a, y = b;
        while (y - x > 1) {
            Int midpt = (x + y) / 2;
            int sm = sign_at(c, midpt);
            if (sm == 0) {
                x = midpt;
                break;
            }
            (sm == sa ? x : y) = midpt;
        }
        marks.push_back(x);
    }
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
    return marks;
}

}  // namespace

std::vector<Int> integer_roots(const std::vector<Int>& coeffs, const Int& lo, const Int& hi) {
    std::vector<Int> c = coeffs;
    while (!c.empty() && c.back() == 0) c.pop_back();
    std::vector<Int> roots;
    if (c.empty() || lo > hi) return roots;
    if (c.size() == 1) return roots;

    std::vector<Int> cand = root_floor_marks(c, lo, hi);
    cand.push_back(lo);
    cand.push_back(hi);
    std::size_t base = cand.size();
    for (std::size_t i = 0; i < base; ++i) cand.push_back(cand[i] + 1);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (const Int& z : cand)
        if (z >= lo && z <= hi && sign_at(c, z) == 0) roots.push_back(z);
    return roots;
}

namespace {

Int binom(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Int pow_int(const Int& b, unsigned e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

}  // namespace

std::optional<Int> factor_high_bits(const HighBitsInstance& inst, unsigned m, unsigned t) {
    const Int& N = inst.N;
    const Int& pt = inst.pt;
    const Int& X = inst.X;
    if (N < 4 || pt < 2 || X < 1) throw std::invalid_argument("bad high-bits instance");
    // Radius must stay within a fourth root of N, up to the integer ceiling:
    // X <= ceil(N^(1/4)), i.e. (X-1)^4 < N.
    if (pow_int(X - 1, 4) >= N) throw std::invalid_argument("radius too large: X must stay within the fourth root of N");
    if (m < 1 || m + t + 1 > 12) throw std::invalid_argument("unsupported lattice shape");

    if (mpz_divisible_p(N.get_mpz_t(), pt.get_mpz_t()) && pt > 1 && pt < N) return pt;

    std::size_t ncols = m + t + 1;
    std::vector<Int> Xpow(ncols);
    Xpow[0] = 1;
    for (std::size_t j = 1; j < ncols; ++j) Xpow[j] = Xpow[j - 1] * X;

    IntegerLattice L;
    for (unsigned i = 0; i <= m; ++i) {
        std::vector<Int> row(ncols, Int(0));
        Int Nm = pow_int(N, m - i);
        for (unsigned j = 0; j <= i; ++j)
            row[j] = Nm * binom(i, j) * pow_int(pt, i - j) * Xpow[j];
        L.rows.push_back(std::move(row));
    }
    for (unsigned j = 1; j <= t; ++j) {
        std::vector<Int> row(ncols, Int(0));
        for (unsigned u = 0; u <= m; ++u)
            row[j + u] = binom(m, u) * pow_int(pt, m - u) * Xpow[j + u];
        L.rows.push_back(std::move(row));
    }

    IntegerLattice R = lll_reduce(L);
    for (const auto& row : R.rows) {
        std::vector<Int> poly(ncols);
        bool zero = true;
        for (std::size_t j = 0; j < ncols; ++j) {
            if (!mpz_divisible_p(row[j].get_mpz_t(), Xpow[j].get_mpz_t()))
                throw std::logic_error("reduced row leaves the scaled polynomial lattice");
            mpz_divexact(poly[j].get_mpz_t(), row[j].get_mpz_t(), Xpow[j].get_mpz_t());
            if (poly[j] != 0) zero = false;
        }
        if (zero) continue;
        for (const Int& x0 : integer_roots(poly, -X, X)) {
            Int cand = pt + x0;
            if (cand > 1 && cand < N && mpz_divisible_p(N.get_mpz_t(), cand.get_mpz_t()))
                return cand;
        }
    }
    return std::nullopt;
}

std::optional<Int> factor_high_bits(const HighBitsInstance& inst) {
    auto r = factor_high_bits(inst, 3, 3);
    if (!r) r = factor_high_bits(inst, 5, 4);
    // Last rung: radii at the very edge of the fourth-root window need the
    // extra lattice headroom.
    if (!r) r = factor_high_bits(inst, 6, 5);
    return r;
}

std::optional<std::pair<Int, Int>> sweep_high_bits(const Int& N, const Int& d, unsigned long B,
                                                  const SemiprimeContext& ctx) {
    if (d < 2 || B == 0) throw std::invalid_argument("bad sweep parameters");
    Int db = d * Int(static_cast<unsigned long>(B));
    if (db * db < N) throw std::invalid_argument("d*B must reach sqrt(N)");

    // full radius ceil(2*N^(1/4)) + 1
    Int t4 = 2 * iroot(N, 4);
    while (pow_int(t4, 4) < 16 * N) ++t4;
    Int X_wide = t4 + 1;

    Int w9 = iroot(N, 9);
    Int W = w9 * w9 / 2;
    if (W < 1) W = 1;
    while (W > 1 && pow_int(W, 4) >= N) W /= 2;
    if (pow_int(W, 4) >= N) return std::nullopt;  // N too small for any window

    Int tn = ctx.theta.get_num(), td = ctx.theta.get_den();
    Int lo_div = isqrt(N * td / tn);
    if (lo_div > 1) --lo_div;
    Int hi_div = isqrt(N * tn / td) + 1;

    Int step = 2 * W + 1;
    for (unsigned long k = 1; k <= B; ++k) {
        Int pt = Int(static_cast<unsigned long>(k)) * d - 1;
        if (pt < 2) continue;
        if (pt + X_wide < lo_div || pt - X_wide > hi_div) continue;
        for (Int c0 = pt - X_wide + W; c0 - W <= pt + X_wide; c0 += step) {
            if (c0 < 2 || c0 + W < lo_div) continue;
            if (c0 - W > hi_div) break;
            auto hit = factor_high_bits(HighBitsInstance{N, c0, W});
            if (hit) {
                Int p = *hit, q = N / p;
                if (p > q) std::swap(p, q);
                return std::make_pair(p, q);
            }
        }
    }
    return std::nullopt;
}

}  // namespace ecsep
