#include "sublis/estimator.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <stdexcept>

#include "sublis/exact.hpp"

namespace sublis {

namespace {

std::vector<u64> box_key(const Box& b) {
    return {b.xs.x_l, b.xs.x_r, b.ys.y_b, b.ys.y_t};
}

void append_box(std::vector<u64>& key, const Box& b) {
    key.push_back(b.xs.x_l);
    key.push_back(b.xs.x_r);
    key.push_back(b.ys.y_b);
    key.push_back(b.ys.y_t);
}

void append_rat(std::vector<u64>& key, const Rational& r) {
    key.push_back(static_cast<u64>(r.num));
    key.push_back(static_cast<u64>(r.den));
}

Rational clamp_rat(const Rational& v, const Rational& lo, const Rational& hi) {
    return rat_max(lo, rat_min(hi, v));
}

}  // namespace

GuardConfig GuardConfig::faithful() {
    GuardConfig g;
    g.sigma_cap = u64{1} << 40;
    g.alpha_min_root = Rational(0);
    g.gamma_floor_root = Rational(0);
    g.rho_min = Rational(0);
    g.rho_max = Rational(1, 2);
    g.omega_min = Rational(0);
    g.omega_max = Rational(std::int64_t{1} << 40);
    g.net_size_cap = u64{1} << 20;
    g.net_m_cap = u64{1} << 16;
    g.safety_m_cap = u64{1} << 20;
    g.safety_ladder_linear = u64{1} << 20;
    g.coarse_rate = Rational(0);
    g.exact_cutoff = 0;
    g.classify_budget = u64{1} << 40;
    return g;
}

Rational log2_quarter(u64 n) {
    if (n == 0) throw std::invalid_argument("log2_quarter: n must be positive");
    if (n >= (u64{1} << 31)) throw std::invalid_argument("log2_quarter: n exceeds 2^31");
    unsigned __int128 p = (unsigned __int128)n * n;
    p = p * p;  // n^4 < 2^124
    int q = -1;
    while (p != 0) { p >>= 1; ++q; }
    return Rational(q, 4);
}

Rational ParameterSet::gamma_of(u64 j) const {
    if (variant == Variant::basic) return gamma;
    if (j >= 16) return Rational(1);
    Rational pow16(1);
    for (u64 i = 0; i < j; ++i) pow16 = pow16 * Rational(16);
    Rational lam4 = log_n * log_n * log_n * log_n;
    Rational raw = alpha * pow16 / lam4;
    Rational g = rat_max(raw, guards.gamma_floor());
    return rat_min(g, Rational(1));
}

Rational ParameterSet::rho_of(u64 j) const {
    if (variant == Variant::basic) return rho;
    if (j >= 16) return guards.rho_max;
    Rational pow2(1);
    for (u64 i = 0; i < j; ++i) pow2 = pow2 * Rational(2);
    Rational raw_root = alpha_root * pow2 / log_n;
    Rational r = rat_max(raw_root, guards.gamma_floor_root);
    return clamp_rat(r, guards.rho_min, guards.rho_max);
}

Rational ParameterSet::tau_t(u64 t) const {
    if (t == 0) throw std::invalid_argument("tau_t: level must be positive");
    return Rational(4, static_cast<std::int64_t>(t));
}

Rational ParameterSet::delta_t(u64 t) const {
    Rational tr(static_cast<std::int64_t>(t));
    return variant == Variant::improved ? tr / psi : tr / log_n;
}

SafetyTestParams ParameterSet::safety_for(const Rational& mu, const Rational& l) const {
    SafetyTestParams s;
    s.mu = mu;
    // Thresholds below one violation are pure noise floors; a splitter that
    // tolerates zero violations rejects everything on adversarial data.
    s.l = rat_max(l, Rational(1));
    s.log_n = log_n;
    s.m_cap = guards.safety_m_cap;
    s.ladder_linear = guards.safety_ladder_linear;
    s.coarse_rate = guards.coarse_rate;
    return s;
}

namespace {

void note(ParameterSet& p, const std::string& name, double formula, const Rational& eff,
          const std::string& reason) {
    p.adjustments.push_back({name, formula, eff, reason});
}

void common_params(ParameterSet& p, u64 n, u64 valbound, const GuardConfig& guards) {
    if (n == 0) throw std::invalid_argument("parameters: n must be positive");
    if (valbound == 0) throw std::invalid_argument("parameters: valbound must be positive");
    p.n = n;
    p.valbound = valbound;
    p.guards = guards;
    Rational lam = log2_quarter(n);
    if (lam < Rational(1)) {
        note(p, "log_n", lam.to_double(), Rational(1), "floored at 1 so table denominators stay positive");
        lam = Rational(1);
    }
    p.log_n = lam;
}

u64 cap_sigma(ParameterSet& p, double formula) {
    p.sigma_formula = formula;
    double cap = static_cast<double>(p.guards.sigma_cap);
    if (formula > cap) {
        note(p, "sigma", formula, Rational(static_cast<std::int64_t>(p.guards.sigma_cap)),
             "sample count capped at the guard");
        return p.guards.sigma_cap;
    }
    u64 s = static_cast<u64>(formula);
    if (static_cast<double>(s) < formula) ++s;
    return std::max<u64>(s, 1);
}

void derive_omega(ParameterSet& p, double formula, const Rational& raw) {
    p.omega_formula = formula;
    Rational eff = clamp_rat(raw, p.guards.omega_min, p.guards.omega_max);
    if (eff != raw)
        note(p, "omega", raw.to_double(), eff, "width threshold clamped to the guard band");
    p.omega = eff;
}

}  // namespace

ParameterSet make_basic_params(u64 n, u64 valbound, const Rational& tau_bar, const Rational& c1,
                               const GuardConfig& guards) {
    if (!(Rational(0) < tau_bar && tau_bar < Rational(1)))
        throw std::invalid_argument("parameters: tau_bar must lie in (0,1)");
    if (c1 <= Rational(0)) throw std::invalid_argument("parameters: c1 must be positive");
    ParameterSet p;
    p.variant = Variant::basic;
    common_params(p, n, valbound, guards);
    p.tau_bar = tau_bar;
    p.delta_bar = Rational(0);
    p.c1 = c1;
    p.c2 = Rational(0);
    p.psi = Rational(0);
    Rational four_over = Rational(4) / tau_bar;
    if (four_over > Rational(1000000))
        throw std::invalid_argument("parameters: tau_bar too small for a runnable level count");
    p.t_max = static_cast<u64>(four_over.ceil());

    Rational lam = p.log_n;
    Rational lam4 = lam * lam * lam * lam;
    p.sigma = cap_sigma(p, 10.0 * lam4.to_double());

    Rational c1lam = c1 * lam;
    Rational rho_raw = Rational(1) / c1lam;
    p.rho_formula = rho_raw.to_double();
    p.rho = clamp_rat(rho_raw, guards.rho_min, guards.rho_max);
    if (p.rho != rho_raw)
        note(p, "rho", rho_raw.to_double(), p.rho, "balance parameter clamped to the guard band");

    Rational alpha_raw = Rational(1) / (c1lam * c1lam * c1lam);
    p.alpha_formula = alpha_raw.to_double();
    p.gamma_formula = p.alpha_formula;  // basic table sets gamma = alpha
    Rational amin = guards.alpha_min();
    if (alpha_raw < amin || alpha_raw >= Rational(1)) {
        p.alpha = amin;
        note(p, "alpha", alpha_raw.to_double(), amin, "grid precision clamped to the guard floor");
    } else {
        p.alpha = alpha_raw;
    }
    p.alpha_root = Rational(0);  // basic has no fourth-root ladder
    Rational gfloor = guards.gamma_floor();
    p.gamma = rat_max(alpha_raw, gfloor);
    if (p.gamma != alpha_raw)
        note(p, "gamma", alpha_raw.to_double(), p.gamma, "splitter threshold floored by the guard");

    derive_omega(p, 1.0 / p.rho_formula, Rational(1) / p.rho);
    p.eta = Rational(1) / (Rational(10) * lam);
    p.xi = p.alpha * p.alpha * p.alpha * p.alpha * p.alpha / c1;
    return p;
}

ParameterSet make_improved_params(u64 n, u64 valbound, const Rational& tau_bar,
                                  const Rational& delta_bar, const Rational& c2,
                                  const GuardConfig& guards) {
    if (!(Rational(0) < tau_bar && tau_bar < Rational(1)))
        throw std::invalid_argument("parameters: tau_bar must lie in (0,1)");
    if (!(Rational(0) < delta_bar && delta_bar < Rational(1)))
        throw std::invalid_argument("parameters: delta_bar must lie in (0,1)");
    if (c2 <= Rational(0)) throw std::invalid_argument("parameters: c2 must be positive");
    ParameterSet p;
    p.variant = Variant::improved;
    common_params(p, n, valbound, guards);
    p.tau_bar = tau_bar;
    p.delta_bar = delta_bar;
    p.c1 = Rational(0);
    p.c2 = c2;
    Rational four_over = Rational(4) / tau_bar;
    if (four_over > Rational(1000000))
        throw std::invalid_argument("parameters: tau_bar too small for a runnable level count");
    p.t_max = static_cast<u64>(four_over.ceil());
    p.psi = rat_max(c2, Rational(static_cast<std::int64_t>(p.t_max)) / delta_bar);

    double psi_d = p.psi.to_double();
    p.sigma = cap_sigma(p, 100.0 * psi_d * psi_d * psi_d);

    Rational root_raw = Rational(1) / (c2 * p.psi);
    double root_d = root_raw.to_double();
    p.alpha_formula = root_d * root_d * root_d * root_d;
    Rational root_eff = root_raw;
    if (root_raw < guards.alpha_min_root || root_raw >= Rational(1)) {
        root_eff = guards.alpha_min_root;
        if (root_eff == Rational(0)) root_eff = root_raw;  // faithful sentinel
    }
    p.alpha_root = root_eff;
    p.alpha = root_eff * root_eff * root_eff * root_eff;
    if (root_eff != root_raw)
        note(p, "alpha", p.alpha_formula, p.alpha, "grid precision clamped to the guard floor");

    derive_omega(p, 1.0 / p.alpha_formula, Rational(1) / p.alpha);
    p.eta = Rational(1) / (Rational(10) * p.psi);

    Rational lam4 = p.log_n * p.log_n * p.log_n * p.log_n;
    p.gamma_formula = p.alpha_formula / lam4.to_double();
    p.gamma = p.gamma_of(0);
    if (p.gamma.to_double() > p.gamma_formula * 1.0000001)
        note(p, "gamma", p.gamma_formula, p.gamma, "splitter threshold ladder floored by the guard");
    Rational rho_raw = p.alpha_root / p.log_n;
    p.rho_formula = root_d / p.log_n.to_double();
    p.rho = p.rho_of(0);
    if (p.rho != rho_raw)
        note(p, "rho", p.rho_formula, p.rho, "balance ladder clamped to the guard band");

    p.xi = p.alpha * p.alpha * p.alpha * p.alpha * p.alpha / c2;
    return p;
}

namespace {

// Exact counted lis scan of a box, memoized; witness holds index positions.
const LisResult& counted_scan(EstimatorContext& ctx, const Box& b) {
    auto key = box_key(b);
    auto it = ctx.scan_memo.find(key);
    if (it != ctx.scan_memo.end()) return it->second;
    std::vector<u64> xs, vals;
    for (u64 x = b.xs.x_l + 1; x <= b.xs.x_r; ++x) {
        u64 v = ctx.oracle.query(x);
        if (b.ys.contains(v)) {
            xs.push_back(x);
            vals.push_back(v);
        }
    }
    LisResult inner = lis_exact(vals);
    LisResult out;
    out.length = inner.length;
    out.witness.reserve(inner.witness.size());
    for (u64 pos : inner.witness) out.witness.push_back(xs[pos - 1]);
    return ctx.scan_memo.emplace(std::move(key), std::move(out)).first->second;
}

// Chain matching the grid-digraph optimum under full refinement: every
// interior index is a column, so a path picks one value per column and every
// chain box has width 1. Holding the latest witness value across each column
// puts every witness point on its own box corner (hence classified by direct
// membership) and the membership count along the chain is exactly the scanned
// lis: counted points form a nondecreasing sequence, and every witness point
// is counted.
ChainResult witness_chain(EstimatorContext& ctx, const Box& b, const LisResult& scan) {
    ChainResult out;
    Point prev = b.bl();
    u64 cur = b.ys.y_b;
    size_t k = 0;
    for (u64 x = b.xs.x_l + 1; x < b.xs.x_r; ++x) {
        if (k < scan.witness.size() && scan.witness[k] == x) {
            cur = ctx.oracle.query(x);
            ++k;
        }
        Point p{x, cur};
        out.chain.boxes.push_back(box_spanned(prev, p));
        prev = p;
    }
    out.chain.boxes.push_back(box_spanned(prev, b.tr()));
    out.value = Rational(static_cast<std::int64_t>(scan.length));
    return out;
}

const GridResult& grid_for(EstimatorContext& ctx, const Box& b) {
    auto key = box_key(b);
    auto it = ctx.grid_memo.find(key);
    if (it != ctx.grid_memo.end()) return it->second;
    NetParams np{ctx.params.guards.net_size_cap, ctx.params.guards.net_m_cap};
    GridResult gr = build_grid(ctx.oracle, ctx.ledger, b, ctx.params.alpha, ctx.params.xi, np);
    return ctx.grid_memo.emplace(std::move(key), std::move(gr)).first->second;
}

const SplitterResult& find_splitter_memo(EstimatorContext& ctx, const Box& t_box, const Box& b,
                                         const SplitterParams& sp) {
    std::vector<u64> key;
    append_box(key, t_box);
    append_box(key, b);
    append_rat(key, sp.safety.mu);
    append_rat(key, sp.safety.l);
    append_rat(key, sp.rho);
    auto it = ctx.splitter_memo.find(key);
    if (it != ctx.splitter_memo.end()) return it->second;
    SplitterResult res = find_splitter(ctx.oracle, ctx.ledger, t_box, b, sp);
    return ctx.splitter_memo.emplace(std::move(key), res).first->second;
}

Box shrink_to_splitter(EstimatorContext& ctx, const Box& t_box, u64 x, u64 s) {
    Point fs = ctx.point_of(s);
    if (x <= s) return box_spanned(t_box.bl(), fs);
    return box_spanned(fs, t_box.tr());
}

}  // namespace

Box terminal_box_basic(EstimatorContext& ctx, u64 x, const Box& b, u64 t) {
    const ParameterSet& p = ctx.params;
    Rational mu = p.mu_of(t);
    Box cur = b;
    while (Rational(static_cast<std::int64_t>(cur.width())) > p.omega) {
        Rational l = p.gamma * Rational(static_cast<std::int64_t>(cur.width()));
        SplitterParams sp{p.safety_for(mu, l), p.rho, splitter_candidate_budget(p.log_n, p.rho)};
        const SplitterResult& res = find_splitter_memo(ctx, cur, b, sp);
        if (!res.found) break;
        cur = shrink_to_splitter(ctx, cur, x, res.s);
    }
    return cur;
}

Box terminal_box_improved(EstimatorContext& ctx, u64 x, const Box& b, u64 t) {
    const ParameterSet& p = ctx.params;
    Rational mu = p.mu_of(t);
    Box cur = b;
    u64 j = 0;
    u64 splits_this_phase = 0;
    Rational theta = p.omega;
    Rational sixteen_alpha = Rational(16) * p.alpha;
    Rational two_alpha_root = Rational(2) * p.alpha_root;
    while (Rational(static_cast<std::int64_t>(cur.width())) > theta) {
        Rational gamma_j = p.gamma_of(j);
        Rational rho_j = p.rho_of(j);
        Rational w(static_cast<std::int64_t>(cur.width()));
        Rational l = gamma_j * w;
        SplitterParams sp{p.safety_for(mu, l), rho_j, splitter_candidate_budget(p.log_n, rho_j)};
        const SplitterResult& res = find_splitter_memo(ctx, cur, b, sp);
        if (res.found) {
            if (gamma_j > sixteen_alpha)
                throw std::logic_error("terminal box: split executed at gamma_" +
                                       std::to_string(j) + " = " + gamma_j.str() +
                                       " > 16 alpha = " + sixteen_alpha.str());
            if (two_alpha_root > Rational(0) && rho_j > two_alpha_root)
                throw std::logic_error("terminal box: split executed at rho_" + std::to_string(j) +
                                       " = " + rho_j.str() +
                                       " > 2 alpha^{1/4} = " + two_alpha_root.str());
            ++splits_this_phase;
            // Faithful parameters obey the quadratic split bound; a clamped
            // balance parameter breaks its premise, so the geometric shrink
            // bound log(w)/rho backstops it there.
            Rational inv = Rational(1) / rho_j;
            Rational limit = rat_max(inv * inv, Rational(8) * p.log_n * inv);
            if (Rational(static_cast<std::int64_t>(splits_this_phase)) > limit)
                throw std::logic_error("terminal box: phase " + std::to_string(j) + " made " +
                                       std::to_string(splits_this_phase) +
                                       " splits, exceeding its bound " + limit.str());
            cur = shrink_to_splitter(ctx, cur, x, res.s);
        } else {
            theta = rat_max(theta, gamma_j * w / p.alpha);
            ++j;
            splits_this_phase = 0;
            ctx.max_phase = std::max(ctx.max_phase, j);
            if (j > 64)
                throw std::logic_error("terminal box: phase ladder exhausted without covering the box");
        }
    }
    return cur;
}

const ChainResult& grid_chain(EstimatorContext& ctx, const Box& t_box, u64 t) {
    if (t == 0) throw std::invalid_argument("grid_chain: level must be positive");
    std::vector<u64> key = box_key(t_box);
    key.push_back(t);
    auto it = ctx.chain_memo.find(key);
    if (it != ctx.chain_memo.end()) return it->second;
    const GridResult& gr = grid_for(ctx, t_box);
    ChainResult cr;
    if (gr.full_refinement) {
        cr = witness_chain(ctx, t_box, counted_scan(ctx, t_box));
    } else {
        cr = best_grid_chain(t_box, gr.grid,
                             [&](const Box& d) { return approx_lis(ctx, d, t - 1); });
    }
    return ctx.chain_memo.emplace(std::move(key), std::move(cr)).first->second;
}

Box critical_box(EstimatorContext& ctx, u64 x, const Box& b, u64 t) {
    if (t == 0) throw std::invalid_argument("critical_box: level must be positive");
    if (b.width() <= 1) throw std::invalid_argument("critical_box: box must be wider than 1");
    Box term = ctx.params.variant == Variant::improved ? terminal_box_improved(ctx, x, b, t)
                                                       : terminal_box_basic(ctx, x, b, t);
    const ChainResult& cr = grid_chain(ctx, term, t);
    return cr.chain.box_at(x);
}

bool classify(EstimatorContext& ctx, u64 x, const Box& b, u64 t) {
    if (!b.xs.contains(x)) throw std::invalid_argument("classify: index outside the box");
    std::vector<u64> key = box_key(b);
    key.push_back(x);
    key.push_back(t);
    auto it = ctx.classify_memo.find(key);
    if (it != ctx.classify_memo.end()) return it->second;

    ++ctx.classify_executed;
    if (ctx.classify_executed > ctx.params.guards.classify_budget)
        throw std::runtime_error(
            "classify budget exhausted after " + std::to_string(ctx.classify_executed - 1) +
            " executed calls; the parameterization recurses too widely for this input "
            "(raise the budget or loosen tau/delta)");
    if (ctx.classify_by_level.size() <= t) ctx.classify_by_level.resize(t + 1, 0);
    ++ctx.classify_by_level[t];

    bool res;
    Point fx = ctx.point_of(x);
    if (!b.contains(fx)) {
        res = false;
    } else if (b.width() == 1) {
        res = true;
    } else if (t == 0) {
        res = false;
    } else {
        Box c = critical_box(ctx, x, b, t);
        res = classify(ctx, x, c, t - 1);
    }
    ctx.classify_memo.emplace(std::move(key), res);
    return res;
}

Rational approx_lis(EstimatorContext& ctx, const Box& b, u64 t) {
    if (b.degenerate()) return Rational(0);
    std::vector<u64> key = box_key(b);
    key.push_back(t);
    auto it = ctx.alis_memo.find(key);
    if (it != ctx.alis_memo.end()) return it->second;

    const ParameterSet& p = ctx.params;
    u64 w = b.width();
    Rational res;
    bool is_root = b == ctx.oracle.universe() && t == p.t_max;
    if (w == 1) {
        res = Rational(b.contains(ctx.point_of(b.xs.x_r)) ? 1 : 0);
    } else if (!is_root && w <= p.guards.exact_cutoff) {
        res = Rational(static_cast<std::int64_t>(counted_scan(ctx, b).length));
    } else if (p.sigma >= w) {
        std::int64_t g = 0;
        for (u64 x = b.xs.x_l + 1; x <= b.xs.x_r; ++x)
            if (classify(ctx, x, b, t)) ++g;
        res = Rational(g);
    } else {
        RandomStream stream = ctx.ledger.stream_for(Pid::ApproxLis, ArgKey{}.box(b).u(t));
        std::int64_t g = 0;
        for (u64 i = 0; i < p.sigma; ++i) {
            u64 x = stream.next_index(b.xs);
            if (classify(ctx, x, b, t)) ++g;
        }
        res = Rational(g) * Rational(static_cast<std::int64_t>(w)) /
              Rational(static_cast<std::int64_t>(p.sigma));
    }
    ctx.alis_memo.emplace(std::move(key), res);
    return res;
}

double round_half_even(const Rational& r) {
    std::int64_t q = r.floor();
    __int128 twice_rem = 2 * ((__int128)r.num - (__int128)q * r.den);
    if (twice_rem > r.den) return static_cast<double>(q + 1);
    if (twice_rem < r.den) return static_cast<double>(q);
    return static_cast<double>(q % 2 == 0 ? q : q + 1);
}

EstimateReport run_estimate(const SequenceOracle& oracle, const RandomnessLedger& ledger,
                            const ParameterSet& params) {
    bool prev_mode = oracle.count_revisits();
    oracle.set_count_revisits(false);
    u64 total0 = oracle.total_queries();
    u64 distinct0 = oracle.distinct_queries();
    auto t0 = std::chrono::steady_clock::now();

    EstimatorContext ctx(oracle, ledger, params);
    ctx.classify_by_level.resize(params.t_max + 1, 0);
    Rational est;
    try {
        est = approx_lis(ctx, oracle.universe(), params.t_max);
    } catch (...) {
        oracle.set_count_revisits(prev_mode);
        throw;
    }
    oracle.set_count_revisits(prev_mode);

    auto t1 = std::chrono::steady_clock::now();
    EstimateReport rep;
    rep.estimate_exact = est;
    rep.estimate = round_half_even(est);
    rep.total_queries = oracle.total_queries() - total0;
    rep.distinct_queries = oracle.distinct_queries() - distinct0;
    rep.classify_calls = ctx.classify_executed;
    rep.classify_calls_by_level = ctx.classify_by_level;
    rep.max_phase_reached = ctx.max_phase;
    rep.wall_time_seconds = std::chrono::duration<double>(t1 - t0).count();
    return rep;
}

EstimateReport basic_main(const SequenceOracle& oracle, const RandomnessLedger& ledger,
                          const Rational& tau_bar, const Rational& c1, const GuardConfig& guards) {
    ParameterSet p = make_basic_params(oracle.n(), oracle.valbound(), tau_bar, c1, guards);
    return run_estimate(oracle, ledger, p);
}

EstimateReport improved_main(const SequenceOracle& oracle, const RandomnessLedger& ledger,
                             const Rational& tau_bar, const Rational& delta_bar, const Rational& c2,
                             const GuardConfig& guards) {
    ParameterSet p = make_improved_params(oracle.n(), oracle.valbound(), tau_bar, delta_bar, c2, guards);
    return run_estimate(oracle, ledger, p);
}

Rational amplify_median(const std::function<Rational(const RandomnessLedger&)>& run,
                        const RandomnessLedger& ledger, u64 trials) {
    if (trials == 0 || trials % 2 == 0)
        throw std::invalid_argument("amplify_median: trials must be odd and positive");
    std::vector<Rational> outs;
    outs.reserve(trials);
    for (u64 i = 0; i < trials; ++i) outs.push_back(run(ledger.fork(i)));
    std::sort(outs.begin(), outs.end());
    return outs[trials / 2];
}

}  // namespace sublis
