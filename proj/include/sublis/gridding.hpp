#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sublis/core.hpp"
#include "sublis/oracle.hpp"
#include "sublis/rational.hpp"

// Value nets, grid construction and grid-digraph chains. Nets and grids query
// through the counted interface; randomness comes from ledger streams keyed
// by the box and the parameters, so rebuilding is reproducible.

namespace sublis {

// Defaults are formula-faithful; the estimator passes tightened caps.
struct NetParams {
    u64 size_cap = 1u << 20;  // quantile count cap (formula: 4 ceil(1/alpha))
    u64 m_cap = 1u << 16;     // per-quantile sample spacing cap
};

struct NetResult {
    std::vector<u64> values;  // sorted subset of Y(B) containing y_T(B)
    u64 s = 0;                // quantile count used
    u64 m = 0;                // sample spacing used (sampled construction)
    u64 samples = 0;          // oracle queries spent building the net
    bool exact = false;       // full-population order-statistic construction
    Rational xi_effective;    // failure probability implied by the used m
};

// Value net for B at popularity threshold alpha, reliable except with
// probability xi (before capping; the effective bound is reported). Draws
// s*m - 1 value samples from X(B), sorts them and keeps every m-th; when the
// population is no larger than the sample budget, reads all of X(B) and keeps
// every ceil(alpha w)-th order statistic instead, which is always a net.
NetResult build_net(const SequenceOracle& oracle, const RandomnessLedger& ledger, const Box& b,
                    const Rational& alpha, const Rational& xi, const NetParams& params);

struct GridResult {
    Grid grid;
    bool full_refinement = false;
    NetResult net;
};

// Grid for B that is alpha-fine when the net build succeeds. Narrow boxes
// (w <= 1/alpha) get full refinement: every interior index is a column and
// the realized values of X(B) inside Y(B), plus y_T(B), form a perfect net.
// Otherwise columns sit at x_L + floor(i alpha w) and the net is built at
// popularity alpha^2/2.
GridResult build_grid(const SequenceOracle& oracle, const RandomnessLedger& ledger, const Box& b,
                      const Rational& alpha, const Rational& xi, const NetParams& params);

struct ChainResult {
    BoxChain chain;
    Rational value;
};

// Maximum-weight source-to-sink path in the grid digraph: one net value per
// column, nondecreasing; arcs between adjacent columns plus corner arcs from
// P_BL and to P_TR. weight is called once per arc box; ties prefer the
// lexicographically smallest level sequence, so the result is deterministic
// for fixed weights.
ChainResult best_grid_chain(const Box& b, const Grid& grid,
                            const std::function<Rational(const Box&)>& weight);

}  // namespace sublis
