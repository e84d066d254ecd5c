#include "sublis/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numeric>
#include <stdexcept>

#include "sublis/exact.hpp"

namespace sublis {

std::string gen_kind_name(GenKind k) {
    switch (k) {
        case GenKind::staircase: return "staircase";
        case GenKind::three_block: return "three_block";
        case GenKind::corrupted_monotone: return "corrupted_monotone";
        case GenKind::random_permutation: return "random_permutation";
        case GenKind::sorted_array: return "sorted";
        case GenKind::reversed_array: return "reversed";
        case GenKind::file_input: return "file";
    }
    throw std::logic_error("unknown generator kind");
}

GenKind gen_kind_from_name(const std::string& name) {
    if (name == "staircase") return GenKind::staircase;
    if (name == "three_block" || name == "three-block") return GenKind::three_block;
    if (name == "corrupted_monotone" || name == "corrupted-monotone")
        return GenKind::corrupted_monotone;
    if (name == "random_permutation" || name == "permutation") return GenKind::random_permutation;
    if (name == "sorted") return GenKind::sorted_array;
    if (name == "reversed") return GenKind::reversed_array;
    if (name == "file") return GenKind::file_input;
    throw std::invalid_argument("unknown generator kind: " + name);
}

std::string GeneratorSpec::str() const {
    switch (kind) {
        case GenKind::staircase:
            return "staircase(K=" + std::to_string(K) + ",t=" + std::to_string(t) + ")";
        case GenKind::three_block:
            return std::string(prime ? "three_block_prime(r=" : "three_block(r=") +
                   std::to_string(r) + ")";
        case GenKind::corrupted_monotone:
            return "corrupted_monotone(n=" + std::to_string(n) + ",eps=" + eps.str() + ")";
        case GenKind::random_permutation:
            return "random_permutation(n=" + std::to_string(n) + ")";
        case GenKind::sorted_array: return "sorted(n=" + std::to_string(n) + ")";
        case GenKind::reversed_array: return "reversed(n=" + std::to_string(n) + ")";
        case GenKind::file_input: return "file(" + path + ")";
    }
    throw std::logic_error("unknown generator kind");
}

std::vector<u64> gen_staircase(u64 k, u64 t) {
    if (k == 0 || t == 0) throw std::invalid_argument("staircase: K and t must be positive");
    std::vector<u64> v(k * t);
    for (u64 i = 0; i < t; ++i)
        for (u64 j = 0; j < k; ++j) v[i * k + j] = i * k + k - j;
    return v;
}

ThreeBlock gen_three_block(u64 r) {
    if (r == 0) throw std::invalid_argument("three_block: r must be positive");
    u64 n = 6 * r;
    ThreeBlock tb;
    tb.f.assign(n, 0);
    for (u64 i = 0; i < r; ++i) tb.f[i] = 100 * r + 1 + i;
    for (u64 j = 1; j <= r; ++j) {
        tb.f[r + 2 * (j - 1)] = j;
        tb.f[r + 2 * (j - 1) + 1] = 101 * r + j;
    }
    tb.f_prime = tb.f;
    // f's tail climbs r+1..99r in steps of 32 (3r terms stay under 99r);
    // f''s tail is a 3-wide staircase over the same range, so only r of its
    // entries chain.
    for (u64 i = 0; i < 3 * r; ++i) tb.f[3 * r + i] = r + 1 + 32 * i;
    std::vector<u64> st = gen_staircase(3, r);
    for (u64 i = 0; i < 3 * r; ++i) tb.f_prime[3 * r + i] = st[i] + r;
    tb.lis_f = 4 * r;
    tb.lis_f_prime = 2 * r;
    return tb;
}

std::vector<u64> gen_corrupted_monotone(u64 n, const Rational& eps, u64 seed) {
    if (n == 0) throw std::invalid_argument("corrupted_monotone: n must be positive");
    if (eps < Rational(0) || eps > Rational(1))
        throw std::invalid_argument("corrupted_monotone: eps must lie in [0,1]");
    std::vector<u64> v(n);
    std::iota(v.begin(), v.end(), u64{1});
    u64 k = static_cast<u64>((eps * Rational(static_cast<std::int64_t>(n))).ceil());
    if (k == 0) return v;
    RandomnessLedger ledger(seed);
    RandomStream stream = ledger.stream_for(Pid::GenCorrupted, ArgKey{}.u(n).rat(eps));
    std::vector<u64> pos = sample_indices_distinct(stream, IndexInterval{0, n}, k);
    for (u64 x : pos) v[x - 1] = 1 + stream.next_below(n);
    return v;
}

std::vector<u64> gen_random_permutation(u64 n, u64 seed) {
    if (n == 0) throw std::invalid_argument("permutation: n must be positive");
    std::vector<u64> v(n);
    std::iota(v.begin(), v.end(), u64{1});
    RandomnessLedger ledger(seed);
    RandomStream stream = ledger.stream_for(Pid::GenPermutation, ArgKey{}.u(n));
    for (u64 i = n - 1; i > 0; --i) {
        u64 j = stream.next_below(i + 1);
        std::swap(v[i], v[j]);
    }
    return v;
}

std::vector<u64> gen_sorted(u64 n) {
    if (n == 0) throw std::invalid_argument("sorted: n must be positive");
    std::vector<u64> v(n);
    std::iota(v.begin(), v.end(), u64{1});
    return v;
}

std::vector<u64> gen_reversed(u64 n) {
    if (n == 0) throw std::invalid_argument("reversed: n must be positive");
    std::vector<u64> v(n);
    for (u64 i = 0; i < n; ++i) v[i] = n - i;
    return v;
}

GeneratedInput generate(const GeneratorSpec& spec, u64 seed) {
    GeneratedInput out;
    switch (spec.kind) {
        case GenKind::staircase: {
            u64 k = spec.K == 0 ? 1 : spec.K;
            u64 t = spec.t != 0 ? spec.t : std::max<u64>(1, spec.n / k);
            out.values = gen_staircase(k, t);
            out.exact_lis = t;
            break;
        }
        case GenKind::three_block: {
            ThreeBlock tb = gen_three_block(spec.r);
            out.values = spec.prime ? std::move(tb.f_prime) : std::move(tb.f);
            out.exact_lis = spec.prime ? tb.lis_f_prime : tb.lis_f;
            break;
        }
        case GenKind::corrupted_monotone:
            out.values = gen_corrupted_monotone(spec.n, spec.eps, seed);
            break;
        case GenKind::random_permutation:
            out.values = gen_random_permutation(spec.n, seed);
            break;
        case GenKind::sorted_array:
            out.values = gen_sorted(spec.n);
            out.exact_lis = spec.n;
            break;
        case GenKind::reversed_array:
            out.values = gen_reversed(spec.n);
            out.exact_lis = 1;
            break;
        case GenKind::file_input:
            out.values = load_array(spec.path);
            break;
    }
    return out;
}

double naive_estimate(const SequenceOracle& oracle, const RandomnessLedger& ledger, u64 m) {
    u64 n = oracle.n();
    if (m == 0 || m > n) throw std::invalid_argument("naive: need 1 <= m <= n");
    RandomStream stream = ledger.stream_for(Pid::NaiveSample, ArgKey{}.u(n).u(m));
    std::vector<u64> xs = sample_indices_distinct(stream, IndexInterval{0, n}, m);
    std::vector<u64> vals;
    vals.reserve(m);
    for (u64 x : xs) vals.push_back(oracle.query(x));
    LisResult lr = lis_exact(vals);
    return static_cast<double>(n) * static_cast<double>(lr.length) / static_cast<double>(m);
}

std::string algo_name(Algo a) {
    switch (a) {
        case Algo::basic: return "basic";
        case Algo::improved: return "improved";
        case Algo::naive: return "naive";
    }
    throw std::logic_error("unknown algo");
}

Algo algo_from_name(const std::string& name) {
    if (name == "basic") return Algo::basic;
    if (name == "improved") return Algo::improved;
    if (name == "naive") return Algo::naive;
    throw std::invalid_argument("unknown algo: " + name);
}

namespace {

u64 lower_median(std::vector<u64> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    return v[(v.size() - 1) / 2];
}

double median_double(std::vector<double> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    size_t k = v.size() / 2;
    if (v.size() % 2 == 1) return v[k];
    return (v[k - 1] + v[k]) / 2.0;
}

struct RowOut {
    EstimateRow row;
    std::optional<u64> exact;
    u64 n = 0;
};

RowOut run_one_seed(const GeneratorSpec& spec, const RunConfig& cfg, u64 seed) {
    GeneratedInput gi = generate(spec, seed);
    SequenceOracle oracle(std::move(gi.values));
    RandomnessLedger ledger(seed);

    RowOut out;
    out.n = oracle.n();
    out.row.seed = seed;
    out.exact = gi.exact_lis;
    if (!out.exact && oracle.n() <= cfg.exact_cap) out.exact = lis_exact(oracle.raw_values()).length;

    auto t0 = std::chrono::steady_clock::now();
    switch (cfg.algo) {
        case Algo::basic: {
            ParameterSet p =
                make_basic_params(oracle.n(), oracle.valbound(), cfg.tau, cfg.c1, cfg.guards);
            auto one = [&](const RandomnessLedger& l) {
                return run_estimate(oracle, l, p).estimate_exact;
            };
            Rational est = cfg.trials <= 1 ? one(ledger) : amplify_median(one, ledger, cfg.trials);
            out.row.estimate = round_half_even(est);
            break;
        }
        case Algo::improved: {
            ParameterSet p = make_improved_params(oracle.n(), oracle.valbound(), cfg.tau, cfg.delta,
                                                  cfg.c2, cfg.guards);
            auto one = [&](const RandomnessLedger& l) {
                return run_estimate(oracle, l, p).estimate_exact;
            };
            Rational est = cfg.trials <= 1 ? one(ledger) : amplify_median(one, ledger, cfg.trials);
            out.row.estimate = round_half_even(est);
            break;
        }
        case Algo::naive: {
            u64 m = cfg.naive_m_scale != 0 ? std::max<u64>(1, oracle.n() / cfg.naive_m_scale)
                                           : cfg.naive_m;
            m = std::min(m, oracle.n());
            out.row.estimate = naive_estimate(oracle, ledger, m);
            break;
        }
    }
    auto t1 = std::chrono::steady_clock::now();
    out.row.total_queries = oracle.total_queries();
    out.row.distinct_queries = oracle.distinct_queries();
    out.row.wall_time = std::chrono::duration<double>(t1 - t0).count();
    return out;
}

}  // namespace

ExperimentResult run_experiment(const GeneratorSpec& spec, const RunConfig& cfg,
                                const std::vector<u64>& seeds) {
    if (seeds.empty()) throw std::invalid_argument("run_experiment: need at least one seed");
    std::vector<RowOut> rows(seeds.size());
    if (cfg.parallel && seeds.size() > 1) {
        std::vector<std::future<RowOut>> futs;
        futs.reserve(seeds.size());
        for (u64 s : seeds)
            futs.push_back(std::async(std::launch::async,
                                      [&spec, &cfg, s] { return run_one_seed(spec, cfg, s); }));
        for (size_t i = 0; i < futs.size(); ++i) rows[i] = futs[i].get();
    } else {
        for (size_t i = 0; i < seeds.size(); ++i) rows[i] = run_one_seed(spec, cfg, seeds[i]);
    }

    ExperimentResult res;
    res.generator = spec;
    res.n = rows[0].n;
    std::vector<u64> exacts;
    std::vector<double> ests;
    std::vector<u64> totals, distincts;
    for (auto& r : rows) {
        res.estimates.push_back(r.row);
        if (r.exact) exacts.push_back(*r.exact);
        ests.push_back(r.row.estimate);
        totals.push_back(r.row.total_queries);
        distincts.push_back(r.row.distinct_queries);
    }
    if (exacts.size() == rows.size()) res.exact_lis = lower_median(exacts);
    res.summary.median_estimate = median_double(ests);
    if (res.exact_lis)
        res.summary.median_abs_error =
            std::fabs(res.summary.median_estimate - static_cast<double>(*res.exact_lis));
    res.summary.query_stats.median_total = lower_median(totals);
    res.summary.query_stats.min_total = *std::min_element(totals.begin(), totals.end());
    res.summary.query_stats.max_total = *std::max_element(totals.begin(), totals.end());
    res.summary.query_stats.median_distinct = lower_median(distincts);
    return res;
}

std::vector<ScalingRow> query_scaling(const GeneratorSpec& family, const RunConfig& cfg,
                                      const std::vector<u64>& sizes,
                                      const std::vector<u64>& seeds) {
    if (!std::is_sorted(sizes.begin(), sizes.end()))
        throw std::invalid_argument("query_scaling: sizes must be ascending");
    std::vector<ScalingRow> rows;
    u64 prev = 0;
    for (u64 n : sizes) {
        GeneratorSpec spec = family;
        spec.n = n;
        ExperimentResult res = run_experiment(spec, cfg, seeds);
        ScalingRow row;
        row.n = n;
        row.median_total_queries = res.summary.query_stats.median_total;
        row.median_distinct_queries = res.summary.query_stats.median_distinct;
        row.ratio = prev == 0 ? 0.0
                              : static_cast<double>(row.median_total_queries) /
                                    static_cast<double>(prev);
        prev = row.median_total_queries;
        rows.push_back(row);
    }
    return rows;
}

nlohmann::json generator_to_json(const GeneratorSpec& spec) {
    return nlohmann::json{
        {"kind", gen_kind_name(spec.kind)},
        {"K", spec.K},
        {"t", spec.t},
        {"r", spec.r},
        {"prime", spec.prime},
        {"n", spec.n},
        {"eps", {{"num", spec.eps.num}, {"den", spec.eps.den}}},
        {"seed", spec.seed},
        {"path", spec.path},
    };
}

GeneratorSpec generator_from_json(const nlohmann::json& j) {
    GeneratorSpec spec;
    spec.kind = gen_kind_from_name(j.at("kind").get<std::string>());
    spec.K = j.at("K").get<u64>();
    spec.t = j.at("t").get<u64>();
    spec.r = j.at("r").get<u64>();
    spec.prime = j.at("prime").get<bool>();
    spec.n = j.at("n").get<u64>();
    spec.eps = Rational(j.at("eps").at("num").get<std::int64_t>(),
                        j.at("eps").at("den").get<std::int64_t>());
    spec.seed = j.at("seed").get<u64>();
    spec.path = j.at("path").get<std::string>();
    return spec;
}

nlohmann::json experiment_to_json(const ExperimentResult& r, bool with_timing) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& e : r.estimates) {
        nlohmann::json row{
            {"seed", e.seed},
            {"estimate", e.estimate},
            {"total_queries", e.total_queries},
            {"distinct_queries", e.distinct_queries},
        };
        if (with_timing) row["wall_time"] = e.wall_time;
        rows.push_back(std::move(row));
    }
    nlohmann::json summary{
        {"median_estimate", r.summary.median_estimate},
        {"query_stats",
         {{"median_total", r.summary.query_stats.median_total},
          {"min_total", r.summary.query_stats.min_total},
          {"max_total", r.summary.query_stats.max_total},
          {"median_distinct", r.summary.query_stats.median_distinct}}},
    };
    if (r.summary.median_abs_error) summary["median_abs_error"] = *r.summary.median_abs_error;
    nlohmann::json out{
        {"generator", generator_to_json(r.generator)},
        {"n", r.n},
        {"estimates", std::move(rows)},
        {"summary", std::move(summary)},
    };
    if (r.exact_lis) out["exact_lis"] = *r.exact_lis;
    return out;
}

ExperimentResult experiment_from_json(const nlohmann::json& j) {
    ExperimentResult r;
    r.generator = generator_from_json(j.at("generator"));
    r.n = j.at("n").get<u64>();
    if (j.contains("exact_lis")) r.exact_lis = j.at("exact_lis").get<u64>();
    for (const auto& row : j.at("estimates")) {
        EstimateRow e;
        e.seed = row.at("seed").get<u64>();
        e.estimate = row.at("estimate").get<double>();
        e.total_queries = row.at("total_queries").get<u64>();
        e.distinct_queries = row.at("distinct_queries").get<u64>();
        if (row.contains("wall_time")) e.wall_time = row.at("wall_time").get<double>();
        r.estimates.push_back(e);
    }
    const auto& s = j.at("summary");
    r.summary.median_estimate = s.at("median_estimate").get<double>();
    if (s.contains("median_abs_error"))
        r.summary.median_abs_error = s.at("median_abs_error").get<double>();
    const auto& q = s.at("query_stats");
    r.summary.query_stats.median_total = q.at("median_total").get<u64>();
    r.summary.query_stats.min_total = q.at("min_total").get<u64>();
    r.summary.query_stats.max_total = q.at("max_total").get<u64>();
    r.summary.query_stats.median_distinct = q.at("median_distinct").get<u64>();
    return r;
}

std::string experiment_to_csv(const ExperimentResult& r) {
    std::string out = "seed,estimate,total_queries,distinct_queries\n";
    char buf[160];
    for (const auto& e : r.estimates) {
        std::snprintf(buf, sizeof(buf), "%llu,%.17g,%llu,%llu\n",
                      static_cast<unsigned long long>(e.seed), e.estimate,
                      static_cast<unsigned long long>(e.total_queries),
                      static_cast<unsigned long long>(e.distinct_queries));
        out += buf;
    }
    return out;
}

nlohmann::json scaling_to_json(const GeneratorSpec& family, const std::vector<ScalingRow>& rows) {
    nlohmann::json jrows = nlohmann::json::array();
    for (const auto& r : rows)
        jrows.push_back({{"n", r.n},
                         {"median_total_queries", r.median_total_queries},
                         {"median_distinct_queries", r.median_distinct_queries},
                         {"ratio", r.ratio}});
    return nlohmann::json{{"generator", generator_to_json(family)}, {"rows", std::move(jrows)}};
}

std::string scaling_to_csv(const std::vector<ScalingRow>& rows) {
    std::string out = "n,median_total_queries,median_distinct_queries,ratio\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%llu,%llu,%llu,%.6g\n",
                      static_cast<unsigned long long>(r.n),
                      static_cast<unsigned long long>(r.median_total_queries),
                      static_cast<unsigned long long>(r.median_distinct_queries), r.ratio);
        out += buf;
    }
    return out;
}

bool operator==(const GeneratorSpec& a, const GeneratorSpec& b) {
    return a.kind == b.kind && a.K == b.K && a.t == b.t && a.r == b.r && a.prime == b.prime &&
           a.n == b.n && a.eps == b.eps && a.seed == b.seed && a.path == b.path;
}

bool operator==(const EstimateRow& a, const EstimateRow& b) {
    return a.seed == b.seed && a.estimate == b.estimate && a.total_queries == b.total_queries &&
           a.distinct_queries == b.distinct_queries && a.wall_time == b.wall_time;
}

bool operator==(const QueryStats& a, const QueryStats& b) {
    return a.median_total == b.median_total && a.min_total == b.min_total &&
           a.max_total == b.max_total && a.median_distinct == b.median_distinct;
}

bool operator==(const ExperimentSummary& a, const ExperimentSummary& b) {
    return a.median_estimate == b.median_estimate && a.median_abs_error == b.median_abs_error &&
           a.query_stats == b.query_stats;
}

bool operator==(const ExperimentResult& a, const ExperimentResult& b) {
    return a.generator == b.generator && a.n == b.n && a.exact_lis == b.exact_lis &&
           a.estimates == b.estimates && a.summary == b.summary;
}

}  // namespace sublis
