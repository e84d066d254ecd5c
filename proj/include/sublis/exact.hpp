#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sublis/core.hpp"
#include "sublis/oracle.hpp"
#include "sublis/rational.hpp"

namespace sublis {

// Monotone means nondecreasing throughout: a longest increasing subsequence
// admits equal consecutive values.

struct LisResult {
    u64 length = 0;
    std::vector<u64> witness;  // indices of one optimal subsequence, ascending
};

// Patience sorting, O(n log n), with witness reconstruction.
LisResult lis_exact(const std::vector<u64>& values);

// Quadratic reference DP; refuses inputs beyond `cap` (default 4096).
u64 lis_exact_dp(const std::vector<u64>& values, u64 cap = 4096);

// loss(f) = n - lis(f); distance to monotonicity eps_f = loss / n.
struct ExactSummary {
    u64 n = 0;
    u64 lis = 0;
    u64 loss = 0;
};
ExactSummary exact_summary(const std::vector<u64>& values);

struct BoxLis {
    LisResult lis;          // restricted to points inside the box
    u64 points_in_box = 0;  // |B cap F|
    u64 loss() const { return points_in_box - lis.length; }
};

// Exact lis over the points of `b`, by scanning X(b). Uncounted raw access.
BoxLis lis_in_box_exact(const SequenceOracle& oracle, const Box& b);

// Number of points of `strip` (a box) in violation with F(s), i.e. incomparable
// with it; s itself never counts.
u64 count_violations_exact(const SequenceOracle& oracle, u64 s, const Box& strip);

// Z(s, S) = viol(s, S) - mu * |F cap S| for one strip.
Rational z_value_exact(const SequenceOracle& oracle, u64 s, const Box& strip, const Rational& mu);

// ---------------------------------------------------------------------------
// Adequate splitters, by definition: s is (mu, L, rho)-adequate for box T
// within R = strip(T | B) when F(s) lies in T, s is rho-balanced in X(T), and
// every R-strip adjacent to s satisfies viol(s, S) <= mu |F cap S| + L.
// ---------------------------------------------------------------------------
struct AdequacyReport {
    std::vector<u64> adequate;       // all adequate splitters, ascending
    u64 balanced_candidates = 0;     // |X_rho(T)|
    u64 unbalanced_nondegenerate = 0;
};
AdequacyReport enumerate_adequate_splitters(const SequenceOracle& oracle, const Box& t,
                                            const Box& b, const Rational& mu,
                                            const Rational& l, const Rational& rho);

// Whether s is (mu, L)-safe for R (every adjacent R-strip accepting).
bool is_safe_exact(const SequenceOracle& oracle, u64 s, const Box& r, const Rational& mu,
                   const Rational& l);

// ---------------------------------------------------------------------------
// Dichotomy checker. Given a strip decomposition of R and a compatible chain,
// classify each index x whose point F(x) lands in its chain box (the
// D-indices) as safe or unsafe at threshold (mu, s(x)), s(x) the width of x's
// strip; then verify
//   chi_out >= mu/(1-mu) * |U|   and   chi_in <= (1-mu) chi + mu |S|,
// where chi = |R cap F|, chi_in counts the F-points inside the chain union
// (so chi_in = |S| + |U|) and chi_out = chi - chi_in.
// ---------------------------------------------------------------------------
struct DichotomyReport {
    bool holds = false;
    u64 safe = 0;            // |S|
    u64 unsafe = 0;          // |U|
    u64 chi = 0;             // F-points in R
    u64 chi_in = 0;          // F-points inside the chain union, = |S| + |U|
    u64 chi_out = 0;
};
DichotomyReport check_dichotomy(const SequenceOracle& oracle, const StripDecomposition& strips,
                                const BoxChain& chain, const Rational& mu);

// ---------------------------------------------------------------------------
// Grid approximation checker. Requires grid to be an alpha-fine B-grid
// (verified by brute force; error otherwise): columns hit every index interval
// of size exceeding alpha*w(B), and ys is an (alpha/columns)-value net for B.
// Then verifies some source-to-sink chain of the grid digraph misses at most
// alpha*w(B) points of a longest increasing sequence of B. The constructive
// chain from the proof is tried first, then an exact max-coverage search.
// ---------------------------------------------------------------------------
struct GridApproxReport {
    bool holds = false;
    bool used_fallback = false;
    u64 lis_points = 0;
    u64 missed = 0;          // by the best chain found
    BoxChain chain;
};
GridApproxReport check_grid_approx(const SequenceOracle& oracle, const Box& b, const Grid& grid,
                                   const Rational& alpha);

// Brute-force grid fineness and value-net validity (used by checkers/tests).
bool grid_is_fine(const SequenceOracle& oracle, const Box& b, const Grid& grid,
                  const Rational& alpha);
bool net_is_valid(const SequenceOracle& oracle, const Box& b, const std::vector<u64>& net,
                  const Rational& alpha);

}  // namespace sublis
