#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sublis/core.hpp"
#include "sublis/exact.hpp"
#include "sublis/gridding.hpp"
#include "sublis/oracle.hpp"
#include "sublis/rational.hpp"
#include "sublis/splitter.hpp"

// The top-level randomized estimator. approx_lis samples indices and
// classifies each by descending through critical boxes: terminal_box shrinks
// the current box around safe splitters, grid_chain covers the terminal box
// with a chain of grid boxes, and classification recurses into the chain box
// of the queried index with one level less. Both variants share everything but
// the terminal-box loop: the basic one stops at the first splitter failure,
// the improved one escalates its width threshold and retries with a coarser
// safety ladder.

namespace sublis {

enum class Variant { basic, improved };

// One clamp applied while deriving parameters, kept for reporting. Formula
// values can exceed 64-bit rationals, so they travel as doubles.
struct ParameterAdjustment {
    std::string name;
    double formula = 0;
    Rational effective;
    std::string reason;
};

// Desk-scale caps layered over the parameter tables. The tables are written
// for asymptotic constants; evaluated verbatim they demand more samples than
// the whole input at any feasible n. Every binding cap is recorded in
// ParameterSet::adjustments, and every field can be overridden from the CLI.
// faithful() returns sentinels that never bind, for tests exercising the
// formulas themselves. Verbatim formulas keep exact rationals only while
// xi = alpha^5 / C fits 64 bits; construction throws on overflow rather
// than round.
struct GuardConfig {
    u64 sigma_cap = 24;                        // per-box classification samples
    Rational alpha_min_root = Rational(1, 2);  // alpha floor = root^4 = 1/16
    Rational gamma_floor_root = Rational(1, 8);  // gamma floor = root^4 = 1/4096
    Rational rho_min = Rational(1, 16);
    Rational rho_max = Rational(1, 4);
    Rational omega_min = Rational(4);
    Rational omega_max = Rational(64);
    u64 net_size_cap = 12;        // quantiles per sampled value net
    u64 net_m_cap = 128;          // sample spacing per quantile
    u64 safety_m_cap = 6;         // samples per safety probe
    u64 safety_ladder_linear = 2;  // ladder rungs probed before doubling
    Rational coarse_rate = Rational(1, 4);  // sampled-probe threshold floor
    u64 exact_cutoff = 524288;     // non-root boxes this narrow are scanned exactly
    u64 classify_budget = 50000000;  // executed classify calls before aborting

    Rational alpha_min() const { return alpha_min_root * alpha_min_root * alpha_min_root * alpha_min_root; }
    Rational gamma_floor() const { return gamma_floor_root * gamma_floor_root * gamma_floor_root * gamma_floor_root; }
    static GuardConfig faithful();
};

// Global parameters, fixed once at the root. Effective values are exact
// rationals; the pre-guard formula values are carried as doubles for the
// report. alpha is kept a fourth power of alpha_root so the improved balance
// ladder rho_of(j) = gamma_of(j)^{1/4} stays exactly representable.
struct ParameterSet {
    Variant variant = Variant::improved;
    u64 n = 0;
    u64 valbound = 0;
    Rational tau_bar;
    Rational delta_bar;  // improved only
    u64 t_max = 0;
    Rational psi;        // improved only; 0 in basic
    Rational log_n;      // log2(n), quarter precision, fixed at the root
    u64 sigma = 0;
    Rational alpha;
    Rational alpha_root;  // alpha^{1/4}
    Rational omega;
    Rational eta;         // carried for reporting; consumed only by the analysis
    Rational gamma;       // basic splitter threshold coefficient
    Rational rho;         // basic balance parameter
    Rational c1, c2;
    Rational xi;          // net failure parameter handed to build_grid
    GuardConfig guards;

    double sigma_formula = 0;
    double alpha_formula = 0;
    double omega_formula = 0;
    double gamma_formula = 0;
    double rho_formula = 0;
    std::vector<ParameterAdjustment> adjustments;

    Rational mu_of(u64 r) const { return Rational(2, static_cast<std::int64_t>(r) + 3); }
    // Improved threshold ladder 16^j alpha / log_n^4, floored by the guard and
    // capped at 1; basic callers use .gamma directly.
    Rational gamma_of(u64 j) const;
    // Improved balance ladder gamma_of(j)^{1/4} = 2^j alpha_root / log_n,
    // clamped to [rho_min, rho_max].
    Rational rho_of(u64 j) const;
    // Analysis accessors used by tests: tau_t = 4/t, delta_t = t/Psi
    // (improved) or t/log_n (basic).
    Rational tau_t(u64 t) const;
    Rational delta_t(u64 t) const;

    SafetyTestParams safety_for(const Rational& mu, const Rational& l) const;
};

// log2(n) rounded down to a quarter: the largest q/4 with 2^q <= n^4.
// Exact integer computation; requires n < 2^31 (any in-memory array is).
Rational log2_quarter(u64 n);

ParameterSet make_basic_params(u64 n, u64 valbound, const Rational& tau_bar,
                               const Rational& c1 = Rational(2),
                               const GuardConfig& guards = GuardConfig{});
ParameterSet make_improved_params(u64 n, u64 valbound, const Rational& tau_bar,
                                  const Rational& delta_bar, const Rational& c2 = Rational(8),
                                  const GuardConfig& guards = GuardConfig{});

struct EstimateReport {
    Rational estimate_exact;  // g w / sigma, unrounded
    double estimate = 0;      // rounded half-even at the reporting boundary
    u64 total_queries = 0;
    u64 distinct_queries = 0;
    u64 classify_calls = 0;                    // executed (non-memoized)
    std::vector<u64> classify_calls_by_level;  // index = level t
    u64 max_phase_reached = 0;                 // improved terminal boxes
    double wall_time_seconds = 0;
};

// Memo tables and counters for one run. Every procedure is a pure function of
// (oracle, ledger, params); the context stores each first result so repeated
// calls are lookups, matching the convention that a recursive call with the
// same arguments is the same call.
class EstimatorContext {
  public:
    EstimatorContext(const SequenceOracle& oracle, const RandomnessLedger& ledger,
                     const ParameterSet& params)
        : oracle(oracle), ledger(ledger), params(params) {}

    const SequenceOracle& oracle;
    const RandomnessLedger& ledger;
    const ParameterSet& params;

    Point point_of(u64 x) { return {x, oracle.query(x)}; }

    u64 classify_executed = 0;
    std::vector<u64> classify_by_level;
    u64 max_phase = 0;

    std::map<std::vector<u64>, Rational> alis_memo;
    std::map<std::vector<u64>, ChainResult> chain_memo;
    std::map<std::vector<u64>, bool> classify_memo;
    std::map<std::vector<u64>, SplitterResult> splitter_memo;
    std::map<std::vector<u64>, GridResult> grid_memo;
    std::map<std::vector<u64>, LisResult> scan_memo;
};

// Estimate of lis within B using level-t classification: g w(B) / sigma over
// sigma sampled indices, exact for width-1 boxes, exhaustive when sigma
// covers X(B), and an exact counted scan for non-root boxes at or below the
// exact_cutoff guard.
Rational approx_lis(EstimatorContext& ctx, const Box& b, u64 t);

bool classify(EstimatorContext& ctx, u64 x, const Box& b, u64 t);

// Chain box of x in the grid chain of x's terminal box.
Box critical_box(EstimatorContext& ctx, u64 x, const Box& b, u64 t);

Box terminal_box_basic(EstimatorContext& ctx, u64 x, const Box& b, u64 t);
Box terminal_box_improved(EstimatorContext& ctx, u64 x, const Box& b, u64 t);

// Chain of grid boxes across t_box weighted by approx_lis at level t-1.
// Full-refinement grids shortcut to the exact witness chain, which equals the
// digraph optimum because the arc weights are exact at these widths.
const ChainResult& grid_chain(EstimatorContext& ctx, const Box& t_box, u64 t);

EstimateReport run_estimate(const SequenceOracle& oracle, const RandomnessLedger& ledger,
                            const ParameterSet& params);

EstimateReport basic_main(const SequenceOracle& oracle, const RandomnessLedger& ledger,
                          const Rational& tau_bar, const Rational& c1 = Rational(2),
                          const GuardConfig& guards = GuardConfig{});
EstimateReport improved_main(const SequenceOracle& oracle, const RandomnessLedger& ledger,
                             const Rational& tau_bar, const Rational& delta_bar,
                             const Rational& c2 = Rational(8),
                             const GuardConfig& guards = GuardConfig{});

// Median of `trials` runs (trials odd), each on the ledger's fork of its
// trial index.
Rational amplify_median(const std::function<Rational(const RandomnessLedger&)>& run,
                        const RandomnessLedger& ledger, u64 trials);

// Round half-even at the reporting boundary.
double round_half_even(const Rational& r);

}  // namespace sublis
