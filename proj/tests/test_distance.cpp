#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "sublis/distance.hpp"
#include "sublis/exact.hpp"
#include "sublis/harness.hpp"
#include "sublis/oracle.hpp"

using namespace sublis;

namespace {

std::vector<u64> sorted_values(u64 n) {
    std::vector<u64> v(n);
    for (u64 i = 0; i < n; ++i) v[i] = i + 1;
    return v;
}

}  // namespace

TEST_CASE("a sorted sequence converges to distance zero") {
    SequenceOracle o(sorted_values(2048));
    RandomnessLedger ledger(17);
    DistanceEstimate d = estimate_distance(o, ledger, Rational(1, 2));
    CHECK(d.converged);
    CHECK(d.eps_low == Rational(0));
    // the bracket fell under the floor 1/n
    CHECK(d.eps_high < Rational(1, 2048));
    CHECK(d.iterations >= 1);
}

TEST_CASE("bracket order and query accounting hold on corrupted input") {
    std::vector<u64> vals = gen_corrupted_monotone(4096, Rational(1, 5), 11);
    SequenceOracle o(vals);
    RandomnessLedger ledger(23);
    DistanceEstimate d = estimate_distance(o, ledger, Rational(1, 2));
    CHECK(d.eps_low <= d.eps_high);
    CHECK(d.distinct_queries <= 4096);
    CHECK(d.distinct_queries <= d.total_queries);
    if (d.converged) {
        Rational eps(static_cast<std::int64_t>(4096 - lis_exact(vals).length), 4096);
        // converged brackets either contain the truth or sit within the
        // multiplicative tolerance of it; at this size containment holds.
        CHECK(d.eps_low <= eps);
        CHECK(eps <= d.eps_high);
        CHECK(d.eps_high <= (Rational(1) + Rational(1, 2)) * d.eps_low);
    }
}

TEST_CASE("distance estimation reruns bit-identically for a fixed master seed") {
    std::vector<u64> vals = gen_corrupted_monotone(2048, Rational(1, 10), 5);

    SequenceOracle o1(vals);
    RandomnessLedger l1(77);
    DistanceEstimate d1 = estimate_distance(o1, l1, Rational(1, 2));

    SequenceOracle o2(vals);
    RandomnessLedger l2(77);
    DistanceEstimate d2 = estimate_distance(o2, l2, Rational(1, 2));

    CHECK(d1.eps_low == d2.eps_low);
    CHECK(d1.eps_high == d2.eps_high);
    CHECK(d1.iterations == d2.iterations);
    CHECK(d1.converged == d2.converged);
    CHECK(d1.total_queries == d2.total_queries);
    CHECK(d1.distinct_queries == d2.distinct_queries);
}

TEST_CASE("invalid distance parameters throw") {
    SequenceOracle o(sorted_values(64));
    RandomnessLedger ledger(1);
    CHECK_THROWS_AS(estimate_distance(o, ledger, Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(estimate_distance(o, ledger, Rational(-1, 2)), std::invalid_argument);
    DistanceParams p;
    p.trials = 4;  // must be odd
    CHECK_THROWS_AS(estimate_distance(o, ledger, Rational(1, 2), p), std::invalid_argument);
    DistanceParams q;
    q.q = Rational(0);
    CHECK_THROWS_AS(estimate_distance(o, ledger, Rational(1, 2), q), std::invalid_argument);
}
