#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sublis/distance.hpp"
#include "sublis/estimator.hpp"
#include "sublis/exact.hpp"
#include "sublis/gridding.hpp"
#include "sublis/harness.hpp"
#include "sublis/oracle.hpp"
#include "sublis/splitter.hpp"

using namespace sublis;

namespace {

u64 env_seed() {
    const char* s = std::getenv("SUBLIS_SEED");
    if (!s || !*s) return 1;
    return std::strtoull(s, nullptr, 10);
}

double finite(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? 1e308 : -1e308;
}

// Guard overrides shared by the estimating subcommands. -1 keeps the default.
struct GuardFlags {
    bool faithful = false;
    std::int64_t sigma_cap = -1;
    std::int64_t safety_m_cap = -1;
    std::int64_t ladder_linear = -1;
    std::int64_t exact_cutoff = -1;
    std::int64_t classify_budget = -1;
    std::int64_t net_size_cap = -1;
    std::int64_t net_m_cap = -1;
    std::string coarse_rate;

    void attach(CLI::App* cmd) {
        cmd->add_flag("--faithful", faithful,
                      "evaluate the parameter tables without desk-scale caps (small inputs only)");
        cmd->add_option("--sigma-cap", sigma_cap, "cap on per-box classification samples");
        cmd->add_option("--safety-m-cap", safety_m_cap, "cap on per-strip safety samples");
        cmd->add_option("--ladder-linear", ladder_linear,
                        "strip widths probed consecutively before doubling");
        cmd->add_option("--exact-cutoff", exact_cutoff,
                        "non-root boxes this narrow are scanned exactly");
        cmd->add_option("--classify-budget", classify_budget,
                        "executed classification calls before aborting");
        cmd->add_option("--net-size-cap", net_size_cap, "cap on value-net quantiles");
        cmd->add_option("--net-m-cap", net_m_cap, "cap on value-net sample spacing");
        cmd->add_option("--coarse-rate", coarse_rate,
                        "sampled safety probes accept below this violation rate (decimal)");
    }

    GuardConfig resolve() const {
        GuardConfig g = faithful ? GuardConfig::faithful() : GuardConfig{};
        if (sigma_cap >= 0) g.sigma_cap = static_cast<u64>(sigma_cap);
        if (safety_m_cap >= 0) g.safety_m_cap = static_cast<u64>(safety_m_cap);
        if (ladder_linear >= 0) g.safety_ladder_linear = static_cast<u64>(ladder_linear);
        if (exact_cutoff >= 0) g.exact_cutoff = static_cast<u64>(exact_cutoff);
        if (classify_budget >= 0) g.classify_budget = static_cast<u64>(classify_budget);
        if (net_size_cap >= 0) g.net_size_cap = static_cast<u64>(net_size_cap);
        if (net_m_cap >= 0) g.net_m_cap = static_cast<u64>(net_m_cap);
        if (!coarse_rate.empty()) g.coarse_rate = parse_decimal(coarse_rate);
        return g;
    }
};

nlohmann::json params_to_json(const ParameterSet& p) {
    nlohmann::json adjustments = nlohmann::json::array();
    for (const auto& a : p.adjustments)
        adjustments.push_back({{"name", a.name},
                               {"formula", finite(a.formula)},
                               {"effective", a.effective.str()},
                               {"reason", a.reason}});
    return nlohmann::json{
        {"variant", p.variant == Variant::basic ? "basic" : "improved"},
        {"n", p.n},
        {"valbound", p.valbound},
        {"tau_bar", p.tau_bar.str()},
        {"delta_bar", p.delta_bar.str()},
        {"t_max", p.t_max},
        {"psi", p.psi.str()},
        {"log_n", p.log_n.str()},
        {"sigma", {{"formula", finite(p.sigma_formula)}, {"effective", p.sigma}}},
        {"alpha", {{"formula", finite(p.alpha_formula)}, {"effective", p.alpha.str()}}},
        {"omega", {{"formula", finite(p.omega_formula)}, {"effective", p.omega.str()}}},
        {"gamma", {{"formula", finite(p.gamma_formula)}, {"effective", p.gamma.str()}}},
        {"rho", {{"formula", finite(p.rho_formula)}, {"effective", p.rho.str()}}},
        {"eta", p.eta.str()},
        {"xi", p.xi.str()},
        {"adjustments", std::move(adjustments)},
    };
}

void warn_adjustments(const ParameterSet& p) {
    for (const auto& a : p.adjustments)
        std::cerr << "adjust: " << a.name << " " << a.formula << " -> " << a.effective.str()
                  << " (" << a.reason << ")\n";
}

int cmd_exact(const std::string& input) {
    std::vector<u64> values = load_array(input);
    ExactSummary es = exact_summary(values);
    std::printf("n: %llu\nlis: %llu\nloss: %llu\neps_f: %.10g\n",
                (unsigned long long)es.n, (unsigned long long)es.lis, (unsigned long long)es.loss,
                es.n ? (double)es.loss / (double)es.n : 0.0);
    return 0;
}

struct EstimateOpts {
    std::string input, algo = "improved", tau = "0.2", delta, c1 = "2", c2 = "8";
    u64 seed = 0, trials = 1, naive_m = 256;
    bool json = false, timing = false;
    GuardFlags guards;
};

int cmd_estimate(const EstimateOpts& o) {
    SequenceOracle oracle(load_array(o.input));
    RandomnessLedger ledger(o.seed);
    Algo algo = algo_from_name(o.algo);
    Rational tau = parse_decimal(o.tau);
    Rational delta = o.delta.empty() ? tau : parse_decimal(o.delta);
    nlohmann::json out{{"n", oracle.n()}, {"algo", o.algo}, {"seed", o.seed}};

    if (algo == Algo::naive) {
        u64 m = std::min<u64>(o.naive_m, oracle.n());
        auto t0 = std::chrono::steady_clock::now();
        double est = naive_estimate(oracle, ledger, m);
        auto t1 = std::chrono::steady_clock::now();
        out["m"] = m;
        out["estimate"] = est;
        out["total_queries"] = oracle.total_queries();
        out["distinct_queries"] = oracle.distinct_queries();
        if (o.timing) out["wall_time"] = std::chrono::duration<double>(t1 - t0).count();
        if (o.json) {
            std::cout << out.dump(2) << "\n";
        } else {
            std::printf("n: %llu\nestimate: %.10g\ntotal_queries: %llu\ndistinct_queries: %llu\n",
                        (unsigned long long)oracle.n(), est,
                        (unsigned long long)oracle.total_queries(),
                        (unsigned long long)oracle.distinct_queries());
        }
        return 0;
    }

    GuardConfig guards = o.guards.resolve();
    ParameterSet p = algo == Algo::basic
                         ? make_basic_params(oracle.n(), oracle.valbound(), tau,
                                             parse_decimal(o.c1), guards)
                         : make_improved_params(oracle.n(), oracle.valbound(), tau, delta,
                                                parse_decimal(o.c2), guards);
    if (!o.json) warn_adjustments(p);

    double estimate;
    std::string estimate_exact;
    double wall = 0;
    if (o.trials <= 1) {
        EstimateReport rep = run_estimate(oracle, ledger, p);
        estimate = rep.estimate;
        estimate_exact = rep.estimate_exact.str();
        wall = rep.wall_time_seconds;
        out["classify_calls"] = rep.classify_calls;
        out["max_phase_reached"] = rep.max_phase_reached;
    } else {
        auto t0 = std::chrono::steady_clock::now();
        Rational est = amplify_median(
            [&](const RandomnessLedger& l) { return run_estimate(oracle, l, p).estimate_exact; },
            ledger, o.trials);
        auto t1 = std::chrono::steady_clock::now();
        estimate = round_half_even(est);
        estimate_exact = est.str();
        wall = std::chrono::duration<double>(t1 - t0).count();
    }
    out["tau_bar"] = tau.str();
    if (algo == Algo::improved) out["delta_bar"] = delta.str();
    out["trials"] = o.trials;
    out["estimate"] = estimate;
    out["estimate_exact"] = estimate_exact;
    out["total_queries"] = oracle.total_queries();
    out["distinct_queries"] = oracle.distinct_queries();
    out["parameters"] = params_to_json(p);
    if (o.timing) out["wall_time"] = wall;
    if (o.json) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::printf("n: %llu\nestimate: %.10g\nestimate_exact: %s\ntotal_queries: %llu\n"
                    "distinct_queries: %llu\n",
                    (unsigned long long)oracle.n(), estimate, estimate_exact.c_str(),
                    (unsigned long long)oracle.total_queries(),
                    (unsigned long long)oracle.distinct_queries());
    }
    return 0;
}

struct DistanceOpts {
    std::string input, tau, q = "0.125";
    u64 seed = 0, trials = 9, max_iterations = 30;
    bool json = false, timing = false;
    GuardFlags guards;
};

int cmd_distance(const DistanceOpts& o) {
    SequenceOracle oracle(load_array(o.input));
    RandomnessLedger ledger(o.seed);
    DistanceParams dp;
    dp.q = parse_decimal(o.q);
    dp.trials = o.trials;
    dp.max_iterations = o.max_iterations;
    dp.guards = o.guards.resolve();
    auto t0 = std::chrono::steady_clock::now();
    DistanceEstimate de = estimate_distance(oracle, ledger, parse_decimal(o.tau), dp);
    auto t1 = std::chrono::steady_clock::now();
    if (o.json) {
        nlohmann::json out{
            {"n", oracle.n()},
            {"tau", parse_decimal(o.tau).str()},
            {"seed", o.seed},
            {"eps_low", de.eps_low.to_double()},
            {"eps_high", de.eps_high.to_double()},
            {"eps_low_exact", de.eps_low.str()},
            {"eps_high_exact", de.eps_high.str()},
            {"iterations", de.iterations},
            {"final_delta_bar", de.final_delta_bar.str()},
            {"converged", de.converged},
            {"total_queries", de.total_queries},
            {"distinct_queries", de.distinct_queries},
        };
        if (o.timing) out["wall_time"] = std::chrono::duration<double>(t1 - t0).count();
        std::cout << out.dump(2) << "\n";
    } else {
        std::printf("eps_low: %.10g (%s)\neps_high: %.10g (%s)\niterations: %llu\n"
                    "final_delta_bar: %s\nconverged: %s\ntotal_queries: %llu\n",
                    de.eps_low.to_double(), de.eps_low.str().c_str(), de.eps_high.to_double(),
                    de.eps_high.str().c_str(), (unsigned long long)de.iterations,
                    de.final_delta_bar.str().c_str(), de.converged ? "true" : "false",
                    (unsigned long long)de.total_queries);
    }
    return de.converged ? 0 : 3;
}

struct GenOpts {
    std::string kind, eps = "0.1", out;
    u64 K = 2, t = 8, r = 1, n = 1024, gen_seed = 0;
    bool prime = false;
};

int cmd_gen(const GenOpts& o) {
    GeneratorSpec spec;
    spec.kind = gen_kind_from_name(o.kind);
    spec.K = o.K;
    spec.t = o.t;
    spec.r = o.r;
    spec.n = o.n;
    spec.prime = o.prime;
    spec.eps = parse_decimal(o.eps);
    GeneratedInput gi = generate(spec, o.gen_seed);
    save_array(o.out, gi.values);
    std::printf("wrote %s: %s, n=%llu", o.out.c_str(), spec.str().c_str(),
                (unsigned long long)gi.values.size());
    if (gi.exact_lis) std::printf(", lis=%llu", (unsigned long long)*gi.exact_lis);
    std::printf("\n");
    return 0;
}

struct BenchOpts {
    std::string kind = "corrupted_monotone", eps = "0.1", algo = "improved", tau = "0.2", delta,
                c1 = "2", c2 = "8", out, csv;
    std::vector<u64> sizes;
    u64 K = 2, t = 0, r = 1, n = 4096, seed = 0, seeds = 5, trials = 1, naive_m = 256,
        naive_m_scale = 0;
    bool prime = false, timing = false, serial = false;
    GuardFlags guards;
};

int cmd_bench(const BenchOpts& o) {
    GeneratorSpec spec;
    spec.kind = gen_kind_from_name(o.kind);
    spec.K = o.K;
    spec.t = o.t;
    spec.r = o.r;
    spec.n = o.n;
    spec.prime = o.prime;
    spec.eps = parse_decimal(o.eps);

    RunConfig cfg;
    cfg.algo = algo_from_name(o.algo);
    cfg.tau = parse_decimal(o.tau);
    cfg.delta = o.delta.empty() ? cfg.tau : parse_decimal(o.delta);
    cfg.c1 = parse_decimal(o.c1);
    cfg.c2 = parse_decimal(o.c2);
    cfg.trials = o.trials;
    cfg.naive_m = o.naive_m;
    cfg.naive_m_scale = o.naive_m_scale;
    cfg.guards = o.guards.resolve();
    cfg.parallel = !o.serial;

    std::vector<u64> seeds;
    for (u64 i = 1; i <= o.seeds; ++i) seeds.push_back(o.seed + i);

    nlohmann::json config{{"algo", o.algo},         {"tau", cfg.tau.str()},
                          {"delta", cfg.delta.str()}, {"trials", o.trials},
                          {"seeds", seeds},         {"generator", generator_to_json(spec)}};
    nlohmann::json report;
    if (o.sizes.empty()) {
        ExperimentResult res = run_experiment(spec, cfg, seeds);
        report = nlohmann::json{{"config", std::move(config)},
                                {"experiment", experiment_to_json(res, o.timing)}};
        if (!o.csv.empty()) {
            std::ofstream f(o.csv);
            f << experiment_to_csv(res);
        }
        std::printf("%s n=%llu median_estimate=%.10g median_queries=%llu\n",
                    spec.str().c_str(), (unsigned long long)res.n, res.summary.median_estimate,
                    (unsigned long long)res.summary.query_stats.median_total);
    } else {
        std::vector<ScalingRow> rows = query_scaling(spec, cfg, o.sizes, seeds);
        report = nlohmann::json{{"config", std::move(config)}, {"scaling", scaling_to_json(spec, rows)}};
        if (!o.csv.empty()) {
            std::ofstream f(o.csv);
            f << scaling_to_csv(rows);
        }
        for (const auto& r : rows)
            std::printf("n=%llu median_queries=%llu ratio=%.3f\n", (unsigned long long)r.n,
                        (unsigned long long)r.median_total_queries, r.ratio);
    }
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f) throw std::invalid_argument("bench: cannot open output file " + o.out);
        f << report.dump(2) << "\n";
    }
    return 0;
}

struct VerifyOpts {
    std::string suite;
    u64 instances = 100, seed = 0;
};

std::vector<u64> verify_input(u64 which, u64 n, u64 seed) {
    switch (which % 3) {
        case 0: return gen_random_permutation(n, seed);
        case 1: return gen_corrupted_monotone(n, Rational(3, 10), seed);
        default: return gen_staircase(2, std::max<u64>(1, n / 2));
    }
}

int cmd_verify(const VerifyOpts& o) {
    u64 n_pass = 0, n_run = 0;
    bool hard_fail = false;
    if (o.suite == "splitter") {
        u64 found = 0, adequate2l = 0;
        for (u64 i = 1; i <= o.instances; ++i) {
            u64 n = 32 + (i % 4) * 32;
            SequenceOracle oracle(verify_input(i, n, o.seed ^ (i * 0x9e3779b97f4a7c15ull)));
            Box u = oracle.universe();
            u64 t = 1 + i % 5;
            Rational mu = Rational(2, static_cast<std::int64_t>(t) + 3);
            Rational l(1 + static_cast<std::int64_t>(i % 3));
            Rational rho(1, 8);
            AdequacyReport rep = enumerate_adequate_splitters(oracle, u, u, mu, l, rho);
            u64 need = static_cast<u64>((rho * Rational(static_cast<std::int64_t>(n))).ceil());
            if (rep.adequate.size() < need) continue;
            ++n_run;
            SafetyTestParams st;
            st.mu = mu;
            st.l = l;
            st.log_n = log2_quarter(n);
            st.m_cap = u64{1} << 20;
            st.ladder_linear = u64{1} << 20;
            st.coarse_rate = Rational(0);
            SplitterParams sp{st, rho, splitter_candidate_budget(st.log_n, rho)};
            RandomnessLedger lg(o.seed);
            SplitterResult res = find_splitter(oracle, lg.fork(i), u, u, sp);
            if (!res.found) continue;
            ++found;
            AdequacyReport rep2 =
                enumerate_adequate_splitters(oracle, u, u, mu, Rational(2) * l, rho);
            if (std::binary_search(rep2.adequate.begin(), rep2.adequate.end(), res.s))
                ++adequate2l;
        }
        std::printf("splitter: certified instances %llu, found %llu, adequate-at-2L %llu\n",
                    (unsigned long long)n_run, (unsigned long long)found,
                    (unsigned long long)adequate2l);
        return (n_run == 0 || (found * 10 >= n_run * 9 && adequate2l * 20 >= found * 19)) ? 0 : 1;
    }
    if (o.suite == "net" || o.suite == "grid" || o.suite == "grid-approx") {
        for (u64 i = 1; i <= o.instances; ++i) {
            u64 n = o.suite == "grid-approx" ? 16 + i % 17 : 64 + (i % 4) * 64;
            SequenceOracle oracle(verify_input(i, n, o.seed ^ (i * 0x9e3779b97f4a7c15ull)));
            Box u = oracle.universe();
            Rational alpha = (i % 2) ? Rational(1, 4) : Rational(1, 2);
            RandomnessLedger lg(o.seed);
            NetParams np;  // formula-faithful caps
            ++n_run;
            if (o.suite == "net") {
                NetResult nr =
                    build_net(oracle, lg.fork(i), u, alpha, Rational(1, 1000), np);
                u64 size_cap = static_cast<u64>((Rational(4) / alpha).ceil());
                if (nr.values.size() > size_cap) hard_fail = true;
                if (net_is_valid(oracle, u, nr.values, alpha)) ++n_pass;
            } else {
                GridResult gr = build_grid(oracle, lg.fork(i), u, alpha, Rational(1, 1000), np);
                if (o.suite == "grid") {
                    if (grid_is_fine(oracle, u, gr.grid, alpha)) ++n_pass;
                } else {
                    GridApproxReport rep = check_grid_approx(oracle, u, gr.grid, alpha);
                    if (rep.holds) ++n_pass;
                }
            }
        }
        std::printf("%s: %llu/%llu valid%s\n", o.suite.c_str(), (unsigned long long)n_pass,
                    (unsigned long long)n_run, hard_fail ? " (size cap violated)" : "");
        return (!hard_fail && n_pass * 100 >= n_run * 95) ? 0 : 1;
    }
    if (o.suite == "dichotomy") {
        static const Rational mus[3] = {Rational(1, 4), Rational(1, 2), Rational(2, 5)};
        for (u64 i = 1; i <= o.instances; ++i) {
            u64 n = 24 + i % 40;
            SequenceOracle oracle(verify_input(i, n, o.seed ^ (i * 0x9e3779b97f4a7c15ull)));
            Box u = oracle.universe();
            LisResult lr = lis_exact(oracle.raw_values());
            std::vector<u64> cuts;
            for (size_t k = 1; k < lr.witness.size(); k += 2) {
                u64 s = lr.witness[k];
                if (s > u.xs.x_l + 1 && s < u.xs.x_r) cuts.push_back(s);
            }
            if (cuts.empty()) continue;
            StripDecomposition strips{u, cuts};
            BoxChain chain;
            Point prev = u.bl();
            for (u64 s : cuts) {
                Point p{s, oracle.raw_value(s)};
                chain.boxes.push_back(box_spanned(prev, p));
                prev = p;
            }
            chain.boxes.push_back(box_spanned(prev, u.tr()));
            ++n_run;
            DichotomyReport rep = check_dichotomy(oracle, strips, chain, mus[i % 3]);
            if (rep.holds) ++n_pass;
        }
        std::printf("dichotomy: %llu/%llu hold\n", (unsigned long long)n_pass,
                    (unsigned long long)n_run);
        return n_pass == n_run ? 0 : 1;
    }
    throw std::invalid_argument("unknown suite: " + o.suite);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sublinear estimation of longest increasing subsequence length"};
    app.require_subcommand(1);
    u64 default_seed = env_seed();

    std::string exact_input;
    CLI::App* c_exact = app.add_subcommand("exact", "exact lis and loss by patience sort");
    c_exact->add_option("input", exact_input, "array file (text lines or .u64)")->required();

    EstimateOpts eo;
    eo.seed = default_seed;
    CLI::App* c_est = app.add_subcommand("estimate", "randomized lis estimate");
    c_est->add_option("input", eo.input)->required();
    c_est->add_option("--algo", eo.algo, "basic|improved|naive");
    c_est->add_option("--tau", eo.tau, "accuracy parameter (decimal)");
    c_est->add_option("--delta", eo.delta, "additive error (decimal, improved; default tau)");
    c_est->add_option("--seed", eo.seed, "master seed (default SUBLIS_SEED or 1)");
    c_est->add_option("--trials", eo.trials, "odd median-amplification count");
    c_est->add_option("--c1", eo.c1, "basic-variant constant");
    c_est->add_option("--c2", eo.c2, "improved-variant constant");
    c_est->add_option("--m", eo.naive_m, "naive sample size");
    c_est->add_flag("--json", eo.json);
    c_est->add_flag("--timing", eo.timing, "include wall time in the report");
    eo.guards.attach(c_est);

    DistanceOpts dopt;
    dopt.seed = default_seed;
    CLI::App* c_dist = app.add_subcommand("distance", "distance-to-monotonicity interval");
    c_dist->add_option("input", dopt.input)->required();
    c_dist->add_option("--tau", dopt.tau, "multiplicative gap (decimal)")->required();
    c_dist->add_option("--seed", dopt.seed);
    c_dist->add_option("--trials", dopt.trials, "odd per-iteration amplification");
    c_dist->add_option("--q", dopt.q, "tau_bar = q tau");
    c_dist->add_option("--max-iterations", dopt.max_iterations);
    c_dist->add_flag("--json", dopt.json);
    c_dist->add_flag("--timing", dopt.timing);
    dopt.guards.attach(c_dist);

    GenOpts go;
    go.gen_seed = default_seed;
    CLI::App* c_gen = app.add_subcommand("gen", "write a generated array file");
    c_gen->add_option("--kind", go.kind,
                      "staircase|three-block|corrupted-monotone|permutation|sorted|reversed")
        ->required();
    c_gen->add_option("--K", go.K, "staircase block size");
    c_gen->add_option("--t", go.t, "staircase block count");
    c_gen->add_option("--r", go.r, "three-block unit");
    c_gen->add_flag("--prime", go.prime, "emit the rearranged three-block variant");
    c_gen->add_option("--n", go.n, "length for corrupted/permutation/sorted/reversed");
    c_gen->add_option("--eps", go.eps, "corruption fraction (decimal)");
    c_gen->add_option("--gen-seed", go.gen_seed, "generation seed");
    c_gen->add_option("-o,--out", go.out, "output path (.u64 binary or text)")->required();

    BenchOpts bo;
    bo.seed = default_seed;
    CLI::App* c_bench = app.add_subcommand("bench", "experiments and query scaling");
    c_bench->add_option("--kind", bo.kind);
    c_bench->add_option("--K", bo.K);
    c_bench->add_option("--t", bo.t);
    c_bench->add_option("--r", bo.r);
    c_bench->add_flag("--prime", bo.prime);
    c_bench->add_option("--n", bo.n, "input length for a single-size experiment");
    c_bench->add_option("--eps", bo.eps);
    c_bench->add_option("--sizes", bo.sizes, "ascending n list for a scaling sweep")
        ->delimiter(',');
    c_bench->add_option("--algo", bo.algo, "basic|improved|naive");
    c_bench->add_option("--tau", bo.tau);
    c_bench->add_option("--delta", bo.delta);
    c_bench->add_option("--c1", bo.c1);
    c_bench->add_option("--c2", bo.c2);
    c_bench->add_option("--seed", bo.seed, "master seed; row seeds are seed+1..seed+K");
    c_bench->add_option("--seeds", bo.seeds, "number of seeds per size");
    c_bench->add_option("--trials", bo.trials);
    c_bench->add_option("--naive-m", bo.naive_m);
    c_bench->add_option("--naive-m-scale", bo.naive_m_scale, "naive m = n/scale when nonzero");
    c_bench->add_option("--out", bo.out, "JSON report path");
    c_bench->add_option("--csv", bo.csv, "CSV summary path");
    c_bench->add_flag("--timing", bo.timing, "include wall times in the report");
    c_bench->add_flag("--serial", bo.serial, "disable per-seed parallelism");
    bo.guards.attach(c_bench);

    VerifyOpts vo;
    vo.seed = default_seed;
    CLI::App* c_verify = app.add_subcommand("verify", "brute-force lemma checkers");
    c_verify->add_option("--suite", vo.suite, "splitter|net|grid|dichotomy|grid-approx")
        ->required();
    c_verify->add_option("--instances", vo.instances);
    c_verify->add_option("--seed", vo.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*c_exact) return cmd_exact(exact_input);
        if (*c_est) return cmd_estimate(eo);
        if (*c_dist) return cmd_distance(dopt);
        if (*c_gen) return cmd_gen(go);
        if (*c_bench) return cmd_bench(bo);
        if (*c_verify) return cmd_verify(vo);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
