#include "sublis/distance.hpp"

#include <stdexcept>

namespace sublis {

DistanceEstimate estimate_distance(const SequenceOracle& oracle, const RandomnessLedger& ledger,
                                   const Rational& tau, const DistanceParams& params) {
    if (tau <= Rational(0)) throw std::invalid_argument("distance: tau must be positive");
    if (params.q <= Rational(0)) throw std::invalid_argument("distance: q must be positive");
    if (params.trials == 0 || params.trials % 2 == 0)
        throw std::invalid_argument("distance: trials must be odd and positive");
    if (params.max_iterations == 0)
        throw std::invalid_argument("distance: need at least one iteration");

    u64 n = oracle.n();
    Rational nr(static_cast<std::int64_t>(n));
    Rational tau_bar = rat_min(params.q * tau, Rational(1, 2));
    Rational floor =
        params.floor > Rational(0) ? params.floor : Rational(1, static_cast<std::int64_t>(n));

    u64 total0 = oracle.total_queries();
    u64 distinct0 = oracle.distinct_queries();

    DistanceEstimate out;
    Rational delta_bar = tau_bar;
    for (u64 j = 1; j <= params.max_iterations; ++j) {
        delta_bar = delta_bar / Rational(2);

        GuardConfig guards = params.guards;
        Rational samples = Rational(static_cast<std::int64_t>(params.sigma_scale)) / delta_bar;
        u64 want = samples > Rational(static_cast<std::int64_t>(params.sigma_cap_max))
                       ? params.sigma_cap_max
                       : static_cast<u64>(samples.ceil());
        if (want > guards.sigma_cap) guards.sigma_cap = want;

        ParameterSet pset =
            make_improved_params(n, oracle.valbound(), tau_bar, delta_bar, params.c2, guards);
        RandomnessLedger iter_ledger = ledger.fork(1000000 + j);
        Rational est = amplify_median(
            [&](const RandomnessLedger& l) { return run_estimate(oracle, l, pset).estimate_exact; },
            iter_ledger, params.trials);

        Rational b = Rational(1) - est / nr;
        if (b < Rational(0)) b = Rational(0);
        Rational lo = (b - delta_bar) / (Rational(1) + tau_bar);
        if (lo < Rational(0)) lo = Rational(0);
        Rational hi = (b + delta_bar) / (Rational(1) - tau_bar);
        if (hi > Rational(1)) hi = Rational(1);

        out.eps_low = lo;
        out.eps_high = hi;
        out.iterations = j;
        out.final_delta_bar = delta_bar;
        if (hi < floor) {
            // Loss is below one element: the sequence is monotone as far as
            // the precision can tell.
            out.eps_low = Rational(0);
            out.converged = true;
            break;
        }
        if (lo > Rational(0) && hi / lo <= Rational(1) + tau) {
            out.converged = true;
            break;
        }
    }

    out.total_queries = oracle.total_queries() - total0;
    out.distinct_queries = oracle.distinct_queries() - distinct0;
    return out;
}

}  // namespace sublis
