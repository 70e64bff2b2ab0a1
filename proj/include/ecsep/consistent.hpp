#pragma once

#include "ecsep/bigmod.hpp"

#include <optional>

namespace ecsep {

// N written as c2*d^2 + c1*d + c0 with 0 <= c0, c1 < d and 1 <= c2 < d.
struct BaseDigits {
    Int c2, c1, c0;
};

// Requires d^2 <= N < d^3 so N has exactly three digits.
std::optional<BaseDigits> digits_base_d(const Int& N, const Int& d);

// p = d*r_p + t_p, q = d*r_q + t_q recovered from one signed digit profile.
struct BaseDDecomposition {
    Int p, q;
    Int r_p, t_p, r_q, t_q;
};

// Treats (c2, c1, c0) as the coefficients of c2*z^2 + c1*z + c0 and accepts
// when both rational roots -t/r are exact, t nonzero of either sign, and the
// rebuilt p*q equals N. Digits may be signed: carry-adjusted profiles feed in
// here.
std::optional<BaseDDecomposition> solve_digit_quadratic(const Int& c2, const Int& c1,
                                                        const Int& c0, const Int& d,
                                                        const Int& N);

struct DecomposeOutcome {
    enum class Kind { Factored, NotConsistent };
    Kind kind = Kind::NotConsistent;
    Int p, q;  // Factored: p < q
    BaseDDecomposition parts;
    bool factored() const { return kind == Kind::Factored; }
};

// Attempts to read p and q off the base-d digits of N directly. Signed digit
// profiles reachable by single carries in the middle and low position are
// swept; a shared factor between d and N short-circuits.
DecomposeOutcome consistent_decompose(const Int& N, const Int& d, const SemiprimeContext& ctx);

// Candidate high parts k*d - 1 for k = 1..B, for the known-high-bits
// fallback when d is too small for a three-digit read but (d*B)^2 > N.
std::vector<Int> giant_step_candidates(const Int& N, const Int& d, unsigned long B);

}  // namespace ecsep
