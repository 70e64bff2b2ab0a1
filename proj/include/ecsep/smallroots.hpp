#pragma once

#include "ecsep/bigmod.hpp"

#include <optional>

namespace ecsep {

// Row-major integer lattice basis; rows are the basis vectors.
struct IntegerLattice {
    std::vector<std::vector<Int>> rows;
    std::size_t dim() const { return rows.size(); }
};

// Exact Lenstra-Lenstra-Lovasz reduction over mpq Gram-Schmidt data.
// delta defaults to 3/4. Throws on a non-square or linearly dependent basis.
IntegerLattice lll_reduce(const IntegerLattice& basis, const Rat& delta = Rat(3, 4));

struct LLLCheck {
    bool size_reduced = false;
    bool lovasz = false;
    bool same_lattice = false;  // unimodular transform between the bases
    bool ok() const { return size_reduced && lovasz && same_lattice; }
};

// Recomputes Gram-Schmidt data of `reduced` from scratch and verifies the
// reduction conditions exactly; same_lattice checks that `reduced` spans the
// lattice of `original` via an integral change of basis with determinant +-1.
LLLCheck lll_verify(const IntegerLattice& original, const IntegerLattice& reduced,
                    const Rat& delta = Rat(3, 4));

// All integer roots of sum_i coeffs[i] * z^i inside [lo, hi], found by
// isolating monotone stretches through the derivative tower and bisecting.
std::vector<Int> integer_roots(const std::vector<Int>& coeffs, const Int& lo, const Int& hi);

// N = p*q with p in [pt - X, pt + X] for the approximation pt; X^4 < N keeps
// the shifted-polynomial construction inside its proven range.
struct HighBitsInstance {
    Int N;
    Int pt;  // approximation to p
    Int X;   // search radius
};

// Builds the lattice of x-scaled shift polynomials N^(m-i)*(x+pt)^i and
// (x+pt)^m*x^j, reduces it, and reads p - pt out of the short rows' integer
// roots. Returns the divisor of N it finds.
std::optional<Int> factor_high_bits(const HighBitsInstance& inst, unsigned m, unsigned t);

// Default schedule: dimension 7 (m=3, t=3), escalating to dimension 10
// (m=5, t=4) and then 12 (m=6, t=5) when the smaller lattices miss.
std::optional<Int> factor_high_bits(const HighBitsInstance& inst);

// Sweeps the candidates k*d - 1 (k = 1..B) as high-bit approximations with
// radius ceil(2*N^(1/4)) + 1, splitting each radius into chunks small enough
// for the core invariant X^4 < N. Candidates outside the balance bounds
// sqrt(N)/theta .. theta*sqrt(N) are skipped. Returns (p, q) with p < q.
std::optional<std::pair<Int, Int>> sweep_high_bits(const Int& N, const Int& d, unsigned long B,
                                                  const SemiprimeContext& ctx);

}  // namespace ecsep
