#include "ecsep/smoothlab.hpp"

#include "ecsep/fp.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>
#include <random>
#include <stdexcept>

namespace ecsep {

Int smooth_part(const Int& m, unsigned long B) {
    if (m < 1) throw std::invalid_argument("smooth_part needs m >= 1");
    Int rest = m, out = 1;
    for (unsigned long l : sieve_primes(B)) {
        while (mpz_divisible_ui_p(rest.get_mpz_t(), l)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), l);
            out *= static_cast<long>(l);
        }
        if (rest == 1) break;
    }
    return out;
}

namespace {

// s >= m^(num/den) by cross-powering; both sides >= 1
bool meets_power(const Int& s, const Int& m, const Rat& beta) {
    Int num = beta.get_num(), den = beta.get_den();
    if (num == 0) return true;
    Int lhs, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), s.get_mpz_t(), den.get_ui());
    mpz_pow_ui(rhs.get_mpz_t(), m.get_mpz_t(), num.get_ui());
    return lhs >= rhs;
}

// qualifying count in [lo, hi] by trial-division sieve over primes <= B
unsigned long sieve_segment(const Int& lo, const Int& hi,
                            const std::vector<unsigned long>& primes, const Rat& beta) {
    std::size_t len = static_cast<std::size_t>(Int(hi - lo + 1).get_ui());
    std::vector<Int> rest(len), smooth(len, Int(1));
    for (std::size_t i = 0; i < len; ++i) rest[i] = lo + static_cast<long>(i);
    for (unsigned long l : primes) {
        Int first = lo + mod(-lo, l);  // smallest multiple of l in [lo, ...]
        for (Int m = first; m <= hi; m += static_cast<long>(l)) {
            std::size_t i = static_cast<std::size_t>(Int(m - lo).get_ui());
            while (mpz_divisible_ui_p(rest[i].get_mpz_t(), l)) {
                mpz_divexact_ui(rest[i].get_mpz_t(), rest[i].get_mpz_t(), l);
                smooth[i] *= static_cast<long>(l);
            }
        }
    }
    unsigned long v = 0;
    for (std::size_t i = 0; i < len; ++i)
        if (meets_power(smooth[i], lo + static_cast<long>(i), beta)) ++v;
    return v;
}

}  // namespace

SmoothnessSample count_v(const Int& x, unsigned long B, const Rat& beta) {
    if (x < 16) throw std::invalid_argument("count_v needs x >= 16");
    if (B < 1) throw std::invalid_argument("smoothness bound must be >= 1");
    if (beta < 0 || beta > 1) throw std::invalid_argument("beta must lie in [0,1]");
    Int s = isqrt(x);
    Int lo = x + 1 - s, hi = x + 1 + s;
    Int total = hi - lo + 1;
    if (total > 100000000) throw std::invalid_argument("interval exceeds the sieve budget");

    std::vector<unsigned long> primes = B >= 2 ? sieve_primes(B) : std::vector<unsigned long>{};
    const long block = 1 << 16;
    std::vector<std::future<unsigned long>> parts;
    for (Int a = lo; a <= hi; a += block) {
        Int b = a + (block - 1);
        if (b > hi) b = hi;
        parts.push_back(std::async(std::launch::async, [a, b, &primes, &beta] {
            return sieve_segment(a, b, primes, beta);
        }));
    }
    SmoothnessSample out;
    out.x = x;
    out.B = B;
    out.beta = beta;
    out.total = total.get_ui();
    for (auto& fut : parts) out.v += fut.get();
    out.f = static_cast<double>(out.v) / static_cast<double>(out.total);
    return out;
}

LFunctionPoint LFunctionPoint::make(const Rat& alpha, const Int& x) {
    if (alpha <= 0) throw std::invalid_argument("alpha must be positive");
    if (x < 3) throw std::invalid_argument("scale too small for log log");
    LFunctionPoint pt;
    pt.alpha = alpha;
    pt.x = x;
    double lx = std::log(x.get_d());
    pt.value = std::exp(alpha.get_d() * std::sqrt(lx * std::log(lx)));
    return pt;
}

namespace {

double theta_bound(const Rat& alpha, const Rat& beta, const Rat& theta, const Int& x) {
    double lx = std::log(x.get_d());
    double w = std::sqrt(lx * std::log(lx));
    double c = (1.0 - theta.get_d() * (1.0 - beta.get_d())) / (2.0 * alpha.get_d());
    return std::exp(-c * w);
}

}  // namespace

ConjectureTable conjecture_table(const std::vector<Int>& x_list, const Rat& alpha,
                                 const Rat& beta, std::vector<Rat> theta_grid) {
    if (x_list.empty()) throw std::invalid_argument("need at least one scale");
    if (theta_grid.empty()) theta_grid.push_back(Rat(0));
    std::sort(theta_grid.begin(), theta_grid.end());

    ConjectureTable table;
    table.alpha = alpha;
    table.beta = beta;

    std::vector<SmoothnessSample> samples;
    for (const Int& x : x_list) {
        double L = LFunctionPoint::make(alpha, x).value;
        unsigned long B = L < 2.0 ? 1 : static_cast<unsigned long>(L);
        samples.push_back(count_v(x, B, beta));
    }

    for (const Rat& theta : theta_grid) {
        bool all = true;
        for (const auto& smp : samples)
            if (smp.f < theta_bound(alpha, beta, theta, smp.x)) {
                all = false;
                break;
            }
        if (all) {
            table.theta = theta;
            break;
        }
    }

    Rat shown = table.theta ? *table.theta : theta_grid.front();
    for (const auto& smp : samples) {
        ConjectureRow row;
        row.x = smp.x;
        row.B = smp.B;
        row.beta = beta;
        row.v = smp.v;
        row.total = smp.total;
        row.f = smp.f;
        row.bound = theta_bound(alpha, beta, shown, smp.x);
        row.pass = row.f >= row.bound;
        row.dense_enough = smp.dense_enough();
        table.rows.push_back(row);
    }
    return table;
}

void write_csv(const ConjectureTable& table, std::ostream& os) {
    os << "x,B,beta,v,total,f,bound(theta),pass\n";
    for (const auto& row : table.rows) {
        os << row.x.get_str() << ',' << row.B << ',' << row.beta.get_str() << ',' << row.v
           << ',' << row.total << ',' << row.f << ',' << row.bound << ','
           << (row.pass ? 1 : 0) << '\n';
    }
}

std::vector<unsigned long> sample_curve_orders(unsigned long r, unsigned count,
                                               unsigned long seed) {
    if (!fp::is_prime(r) || r < 5) throw std::invalid_argument("r must be a prime >= 5");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<unsigned long> dist(1, r - 1);
    std::vector<unsigned long> orders;
    while (orders.size() < count) {
        fp::CurveE2Fp c{r, dist(rng), dist(rng)};
        if (!c.nondegenerate()) continue;
        orders.push_back(fp::curve_order(c.weierstrass()));
    }
    return orders;
}

}  // namespace ecsep
