#pragma once

#include <cstdint>
#include <vector>

#include "sublis/core.hpp"
#include "sublis/oracle.hpp"
#include "sublis/rational.hpp"

// Randomized safety testing and splitter search. All procedures draw their
// randomness from ledger streams keyed by their arguments, so repeated calls
// with the same arguments reproduce the same answer and the same queries.

namespace sublis {

// Estimate of Z(s, C) = viol(s, C) - mu * |F cap C|. Exact scan when
// m >= w(C); otherwise the average of m per-index contributions scaled by
// w(C) / m. Queries through the counted interface either way.
Rational approx_z(const SequenceOracle& oracle, const RandomnessLedger& ledger, u64 s,
                  const Box& c, u64 m, const Rational& mu);

// Defaults are formula-faithful (caps never bind at small widths, so the
// behavior is the definition verbatim); the estimator passes tightened caps.
struct SafetyTestParams {
    Rational mu;                   // violation weight
    Rational l;                    // acceptance threshold, >= 1 after guards
    Rational log_n;                // log2 of the root width, quarter precision
    u64 m_cap = 1u << 20;          // per-strip sample budget
    u64 ladder_linear = 1u << 20;  // consecutive width multiples before doubling
    // Threshold floor for sampled probes only (m < w(S)): accept against
    // max((4/3) L, coarse_rate * w(S)). A capped m cannot resolve rates below
    // m^{-1/2}, so without the floor wide strips reject on noise. Zero keeps
    // the plain threshold; exact probes always use (4/3) L.
    Rational coarse_rate = Rational(0);
};

// Tested strip widths adjacent to s inside R: multiples of ceil(L/3), the
// first ladder_linear consecutively, then doubling, always ending at the
// widest multiple that fits. Returned in the probe order (narrow to wide).
std::vector<u64> safety_ladder(u64 max_width, const Rational& l, u64 ladder_linear);

// Accepts s iff every probed adjacent strip S has approx_z < (4/3) L, using
// m = min(w(S), m_cap, ceil(10 ((log_n) w(S) / L)^2)) samples per strip.
// Left strips are probed narrow to wide, then right strips; the first strip
// at or above the threshold rejects immediately.
bool test_safe(const SequenceOracle& oracle, const RandomnessLedger& ledger, u64 s, const Box& r,
               const SafetyTestParams& safety);

struct SplitterParams {
    SafetyTestParams safety;
    Rational rho;        // balance margin
    u64 max_candidates;  // candidate draws before giving up
};

struct SplitterResult {
    bool found = false;
    u64 s = 0;
    u64 tried = 0;  // candidates examined
};

// Draws candidates uniformly from the rho-balanced indices of T and returns
// the first whose point lies in T and that passes test_safe on strip(T | B).
SplitterResult find_splitter(const SequenceOracle& oracle, const RandomnessLedger& ledger,
                             const Box& t, const Box& b, const SplitterParams& params);

// Candidate budget: min(ceil(10 log_n^2 / rho), ceil(6 / rho)), at least 1.
u64 splitter_candidate_budget(const Rational& log_n, const Rational& rho);

}  // namespace sublis
