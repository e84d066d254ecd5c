#pragma once

#include "sublis/estimator.hpp"
#include "sublis/oracle.hpp"
#include "sublis/rational.hpp"

// Distance to monotonicity eps_f = (n - lis)/n, bracketed by a doubling
// search: iteration j runs the improved estimator at additive precision
// delta_bar_j = tau_bar/2^j (amplified by a median of independent trials),
// converts the estimate to a loss fraction and stops once the bracket's
// multiplicative width is within 1 + tau.

namespace sublis {

struct DistanceParams {
    Rational q = Rational(1, 8);  // tau_bar = q * tau
    u64 trials = 9;               // median amplification per iteration, odd
    u64 max_iterations = 30;
    Rational floor = Rational(0);  // eps resolution; 0 picks 1/n at run time
    Rational c2 = Rational(8);
    GuardConfig guards;
    // Per-iteration sample floor: the estimate must resolve delta_bar_j, so
    // the sigma cap is raised to ceil(sigma_scale/delta_bar_j), capped below.
    u64 sigma_scale = 4;
    u64 sigma_cap_max = 4096;
};

struct DistanceEstimate {
    Rational eps_low;
    Rational eps_high;
    u64 iterations = 0;
    Rational final_delta_bar;
    bool converged = false;
    u64 total_queries = 0;
    u64 distinct_queries = 0;
};

// post: eps_low <= eps_high; converged implies eps_high <= (1+tau) eps_low or
// eps_high below the floor (in which case eps_low = 0). Each iteration forks
// the ledger on a disjoint sub-key, so reruns with the same master seed are
// identical.
DistanceEstimate estimate_distance(const SequenceOracle& oracle, const RandomnessLedger& ledger,
                                   const Rational& tau, const DistanceParams& params = {});

}  // namespace sublis
