#pragma once

#include "ecsep/bigmod.hpp"

#include <iosfwd>
#include <optional>

namespace ecsep {

// Largest B-smooth divisor of m.
Int smooth_part(const Int& m, unsigned long B);

// Census of one interval m in [x+1-floor(sqrt(x)), x+1+floor(sqrt(x))]:
// how many m have smooth part at least m^beta.
struct SmoothnessSample {
    Int x;
    unsigned long B = 0;
    Rat beta;
    unsigned long v = 0;      // qualifying m
    unsigned long total = 0;  // interval size 2*floor(sqrt(x)) + 1
    double f = 0.0;           // v / total
    bool dense_enough() const { return v >= 3; }
};

SmoothnessSample count_v(const Int& x, unsigned long B, const Rat& beta);

// L(alpha, x) = exp(alpha * sqrt(log x * log log x))
struct LFunctionPoint {
    Rat alpha;
    Int x;
    double value = 0.0;
    static LFunctionPoint make(const Rat& alpha, const Int& x);
};

struct ConjectureRow {
    Int x;
    unsigned long B = 0;
    Rat beta;
    unsigned long v = 0;
    unsigned long total = 0;
    double f = 0.0;
    double bound = 0.0;  // L(alpha,x)^-((1 - theta*(1-beta)) / (2*alpha))
    bool pass = false;   // f >= bound
    bool dense_enough = false;
};

struct ConjectureTable {
    Rat alpha, beta;
    std::vector<ConjectureRow> rows;
    std::optional<Rat> theta;  // least grid value whose bound holds at every scale
};

// Smoothness frequencies at B = floor(L(alpha, x)) per scale, against the
// exponential lower bound at the fitted theta (grid front when nothing fits).
// Descriptive only; nothing is asserted.
ConjectureTable conjecture_table(const std::vector<Int>& x_list, const Rat& alpha,
                                 const Rat& beta, std::vector<Rat> theta_grid);

// columns: x,B,beta,v,total,f,bound(theta),pass
void write_csv(const ConjectureTable& table, std::ostream& os);

// Group orders of random nondegenerate root-form curves over F_r, for
// comparing the interval census against actual order samples.
std::vector<unsigned long> sample_curve_orders(unsigned long r, unsigned count,
                                               unsigned long seed);

}  // namespace ecsep
