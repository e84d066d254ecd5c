#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sublis/estimator.hpp"
#include "sublis/oracle.hpp"
#include "sublis/rational.hpp"

// Input generators (including the adversarial staircase and three-block
// constructions), the naive scaled-sample baseline, the experiment runner and
// query-scaling sweep, and JSON/CSV report emission.

namespace sublis {

enum class GenKind {
    staircase,
    three_block,
    corrupted_monotone,
    random_permutation,
    sorted_array,
    reversed_array,
    file_input,
};

std::string gen_kind_name(GenKind k);
GenKind gen_kind_from_name(const std::string& name);

struct GeneratorSpec {
    GenKind kind = GenKind::sorted_array;
    u64 K = 2;      // staircase block size
    u64 t = 0;      // staircase block count; 0 derives it from n
    u64 r = 1;      // three_block unit
    bool prime = false;  // three_block: emit f' instead of f
    u64 n = 0;      // corrupted/permutation/sorted/reversed length
    Rational eps;   // corrupted fraction
    u64 seed = 0;   // generation seed when the runner supplies none
    std::string path;  // file input

    std::string str() const;
};

struct GeneratedInput {
    std::vector<u64> values;
    std::optional<u64> exact_lis;  // known by construction
};

// f(iK+j+1) = iK - j + K for blocks i < t, offsets j < K; lis = t.
std::vector<u64> gen_staircase(u64 k, u64 t);

struct ThreeBlock {
    std::vector<u64> f;
    std::vector<u64> f_prime;
    u64 lis_f = 0;        // 4r
    u64 lis_f_prime = 0;  // 2r
};
// n = 6r. Block 1: 100r+1..101r. Block 2: 1, 101r+1, 2, 101r+2, ...
// f's block 3: arithmetic progression from r+1 with step 32 (inside r+1..99r);
// f''s block 3: a staircase over the same range. f and f' agree on the first
// 3r entries.
ThreeBlock gen_three_block(u64 r);

// Identity with ceil(eps*n) seed-chosen positions rewritten to seed-chosen
// values in [1, n].
std::vector<u64> gen_corrupted_monotone(u64 n, const Rational& eps, u64 seed);
std::vector<u64> gen_random_permutation(u64 n, u64 seed);
std::vector<u64> gen_sorted(u64 n);
std::vector<u64> gen_reversed(u64 n);

// Materialize a spec; seed overrides spec.seed for the seeded kinds.
GeneratedInput generate(const GeneratorSpec& spec, u64 seed);

// Scaled sample: lis of m positions drawn without replacement, kept in index
// order, scaled by n/m.
double naive_estimate(const SequenceOracle& oracle, const RandomnessLedger& ledger, u64 m);

enum class Algo { basic, improved, naive };
std::string algo_name(Algo a);
Algo algo_from_name(const std::string& name);

struct RunConfig {
    Algo algo = Algo::improved;
    Rational tau = Rational(1, 5);    // tau_bar for both estimator variants
    Rational delta = Rational(1, 5);  // delta_bar, improved only
    Rational c1 = Rational(2);
    Rational c2 = Rational(8);
    u64 trials = 1;     // odd; >1 wraps the run in amplify_median
    u64 naive_m = 256;  // naive sample size ...
    u64 naive_m_scale = 0;  // ... or n/naive_m_scale when nonzero
    GuardConfig guards;
    u64 exact_cap = 65536;  // compute exact lis when n <= cap
    bool parallel = true;
};

struct EstimateRow {
    u64 seed = 0;
    double estimate = 0;
    u64 total_queries = 0;
    u64 distinct_queries = 0;
    double wall_time = 0;
};

struct QueryStats {
    u64 median_total = 0;
    u64 min_total = 0;
    u64 max_total = 0;
    u64 median_distinct = 0;
};

struct ExperimentSummary {
    double median_estimate = 0;
    std::optional<double> median_abs_error;  // present with exact_lis
    QueryStats query_stats;
};

struct ExperimentResult {
    GeneratorSpec generator;
    u64 n = 0;
    std::optional<u64> exact_lis;  // per-construction, or patience under the
                                   // cap; median across seeded instances
    std::vector<EstimateRow> estimates;
    ExperimentSummary summary;
};

ExperimentResult run_experiment(const GeneratorSpec& spec, const RunConfig& cfg,
                                const std::vector<u64>& seeds);

struct ScalingRow {
    u64 n = 0;
    u64 median_total_queries = 0;
    u64 median_distinct_queries = 0;
    double ratio = 0;  // vs the previous row's median total; 0 on the first
};

std::vector<ScalingRow> query_scaling(const GeneratorSpec& family, const RunConfig& cfg,
                                      const std::vector<u64>& sizes, const std::vector<u64>& seeds);

// Reports. Timing fields are emitted only when with_timing is set, so default
// reports are byte-stable across reruns.
nlohmann::json generator_to_json(const GeneratorSpec& spec);
GeneratorSpec generator_from_json(const nlohmann::json& j);
nlohmann::json experiment_to_json(const ExperimentResult& r, bool with_timing = false);
ExperimentResult experiment_from_json(const nlohmann::json& j);
std::string experiment_to_csv(const ExperimentResult& r);
nlohmann::json scaling_to_json(const GeneratorSpec& family, const std::vector<ScalingRow>& rows);
std::string scaling_to_csv(const std::vector<ScalingRow>& rows);

bool operator==(const GeneratorSpec& a, const GeneratorSpec& b);
bool operator==(const EstimateRow& a, const EstimateRow& b);
bool operator==(const QueryStats& a, const QueryStats& b);
bool operator==(const ExperimentSummary& a, const ExperimentSummary& b);
bool operator==(const ExperimentResult& a, const ExperimentResult& b);

}  // namespace sublis
