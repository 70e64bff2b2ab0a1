#pragma once

#include "ecsep/consistent.hpp"
#include "ecsep/multiplier.hpp"
#include "ecsep/smallroots.hpp"
#include "ecsep/triples.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>

namespace ecsep {

struct PipelineConfig {
    // prime-bound ladder; a fixed budget of fresh triples is tried per rung
    std::vector<unsigned long> b_schedule{2000, 8000, 32000, 128000, 512000, 1000000};
    unsigned long trial_budget = 32;
    unsigned long seed = 1;
    Rat hasse_scale_c{1};
    Rat consistency_threshold_exponent{3, 8};  // skip decomposition when d <= N^this
    unsigned long coppersmith_cofactor_bound = 16;
    unsigned workers = 1;
};

enum class TrialOutcome { Separated, Consistent, CoppersmithHit, StillFinite, NotConsistent };
const char* to_string(TrialOutcome o);

struct TrialRecord {
    unsigned long trial = 0;  // 1-based global id
    unsigned long b = 0;      // rung
    Int x, y, b1, b2;         // the sampled triple
    unsigned long t_min = 0;  // 0 = no non-finite event
    TrialOutcome outcome = TrialOutcome::StillFinite;
    Int d;       // recovered common order, 0 when none
    Int factor;  // verified divisor, 0 when none
    double ms = 0.0;
    unsigned long adds = 0;  // curve group operations spent
};

struct PipelineResult {
    bool factored = false;
    Int p, q;  // p < q when factored
    std::vector<TrialRecord> log;
};

// End-to-end factoring loop: sample triple, staged multiply, recover the
// common order, then base-d decomposition with the high-bits sweep as
// fallback. Deterministic for fixed (N, cfg), worker count included: per-trial
// seeds derive from (seed, trial id) and the lowest successful id wins.
PipelineResult run_pipeline(const Int& N, const PipelineConfig& cfg);

// One object per line: {trial, b, t_min, outcome, d, factor, ms};
// big integers as decimal strings, absent values as null.
void write_json_lines(const PipelineResult& res, std::ostream& os);

// Ground-truth classification of a curve/point pair at bound B:
//   SeparatesBelowB  - staged multiplication up to B reveals a factor
//   ConsistentAtB    - equal orders d with P+(d) <= B and d large enough
//                      for the three-digit read
//   SmoothShareAtB   - gcd(M_B, E_r) >= E_r / B on some side
struct PairClassification {
    enum class Clause { SeparatesBelowB, ConsistentAtB, SmoothShareAtB, None };
    Clause clause = Clause::None;
    Int ord_p, ord_q;
    unsigned long t_min = 0;
    unsigned long l_min = 0;  // least prime with split valuations, 0 = orders equal
};

PairClassification classify_pair(const CurveE2& E, const PointZN& Q, unsigned long B,
                                 const SemiprimeContext& ctx);

// Replays the pinned worked example (N = 3839985129719) and compares every
// intermediate value; any mismatch flips ok to false.
struct DemoCheck {
    std::string name, expected, actual;
    bool ok = false;
};
struct DemoTranscript {
    std::vector<DemoCheck> checks;
    bool all_ok = false;
    Int p, q;
};
DemoTranscript demo_example();

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace ecsep
