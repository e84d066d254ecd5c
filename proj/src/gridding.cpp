#include "sublis/gridding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sublis {

namespace {

// Keep the net inside Y(B), append y_T and deduplicate.
std::vector<u64> finish_net(std::vector<u64> picks, const Box& b) {
    std::vector<u64> net;
    for (u64 v : picks)
        if (b.ys.contains(v)) net.push_back(v);
    net.push_back(b.ys.y_t);
    std::sort(net.begin(), net.end());
    net.erase(std::unique(net.begin(), net.end()), net.end());
    return net;
}

}  // namespace

NetResult build_net(const SequenceOracle& oracle, const RandomnessLedger& ledger, const Box& b,
                    const Rational& alpha, const Rational& xi, const NetParams& params) {
    if (!(Rational(0) < alpha)) throw std::invalid_argument("build_net: alpha not positive");
    if (!(Rational(0) < xi && xi < Rational(1)))
        throw std::invalid_argument("build_net: xi outside (0,1)");
    NetResult out;
    u64 w = b.width();
    if (w == 0) throw std::invalid_argument("build_net: empty box");
    if (alpha >= Rational(1)) {
        // No interval can be more than w-popular, so the top value alone nets.
        out.values = {b.ys.y_t};
        out.s = 1;
        out.exact = true;
        out.xi_effective = Rational(0);
        return out;
    }

    u64 s = 4 * static_cast<u64>((Rational(1) / alpha).ceil());
    s = std::max<u64>(std::min(s, params.size_cap), 2);
    double sd = static_cast<double>(s);
    double m_formula = sd * std::log(sd / (2.0 * xi.to_double()));
    u64 m = std::max<u64>(static_cast<u64>(std::ceil(m_formula)), 1);
    m = std::min(m, params.m_cap);
    out.s = s;
    out.m = m;
    out.xi_effective = snap(sd * std::exp(-static_cast<double>(m) / sd) / 2.0);

    u64 budget = s * m - 1;
    if (w <= budget) {
        // Population fits the sample budget: read everything and keep every
        // ceil(alpha w)-th order statistic, which is an alpha-net outright.
        std::vector<u64> vals;
        vals.reserve(w);
        for (u64 x = b.xs.x_l + 1; x <= b.xs.x_r; ++x) vals.push_back(oracle.query(x));
        std::sort(vals.begin(), vals.end());
        u64 unit = std::max<u64>(
            static_cast<u64>((alpha * Rational(static_cast<std::int64_t>(w))).ceil()), 1);
        std::vector<u64> picks;
        for (u64 i = unit; i <= w; i += unit) picks.push_back(vals[i - 1]);
        out.values = finish_net(std::move(picks), b);
        out.samples = w;
        out.exact = true;
        out.xi_effective = Rational(0);
        return out;
    }

    RandomStream stream = ledger.stream_for(
        Pid::BuildNet, ArgKey{}.box(b).rat(alpha).rat(xi).u(s).u(m));
    std::vector<u64> vals;
    vals.reserve(budget);
    for (u64 i = 0; i < budget; ++i) vals.push_back(oracle.query(stream.next_index(b.xs)));
    std::sort(vals.begin(), vals.end());
    std::vector<u64> picks;
    for (u64 i = 1; i <= s - 1; ++i) picks.push_back(vals[i * m - 1]);
    out.values = finish_net(std::move(picks), b);
    out.samples = budget;
    return out;
}

GridResult build_grid(const SequenceOracle& oracle, const RandomnessLedger& ledger, const Box& b,
                      const Rational& alpha, const Rational& xi, const NetParams& params) {
    GridResult out;
    out.grid.parent = b;
    u64 w = b.width();
    if (w == 0) throw std::invalid_argument("build_grid: empty box");

    if (Rational(static_cast<std::int64_t>(w)) * alpha <= Rational(1)) {
        // Full refinement: every interior index is a column and the realized
        // values inside Y(B) (plus y_T) are a perfect net, so grid boxes have
        // width 1 and the best chain carries the exact lis of B.
        out.full_refinement = true;
        for (u64 x = b.xs.x_l + 1; x < b.xs.x_r; ++x) out.grid.xs.push_back(x);
        std::vector<u64> vals;
        for (u64 x = b.xs.x_l + 1; x <= b.xs.x_r; ++x) vals.push_back(oracle.query(x));
        out.grid.ys = finish_net(std::move(vals), b);
        out.net.values = out.grid.ys;
        out.net.samples = w;
        out.net.exact = true;
        out.net.xi_effective = Rational(0);
        return out;
    }

    // Columns at x_L + floor(i alpha w), i < r = ceil(1/alpha); consecutive
    // gaps (and both edge gaps) stay <= alpha w + 1, so every index interval
    // with more than alpha w indices contains a column.
    u64 r = static_cast<u64>((Rational(1) / alpha).ceil());
    for (u64 i = 1; i < r; ++i) {
        Rational pos = alpha * Rational(static_cast<std::int64_t>(i * w));
        u64 c = b.xs.x_l + static_cast<u64>(pos.floor());
        if (c > b.xs.x_l && c < b.xs.x_r &&
            (out.grid.xs.empty() || out.grid.xs.back() < c))
            out.grid.xs.push_back(c);
    }
    out.net = build_net(oracle, ledger, b, alpha * alpha / Rational(2), xi, params);
    out.grid.ys = out.net.values;
    return out;
}

ChainResult best_grid_chain(const Box& b, const Grid& grid,
                            const std::function<Rational(const Box&)>& weight) {
    ChainResult out;
    std::size_t r = grid.xs.size(), k = grid.ys.size();
    if (r == 0) {
        out.chain.boxes.push_back(b);
        out.value = weight(b);
        return out;
    }
    if (k == 0) throw std::invalid_argument("best_grid_chain: grid has no values");

    auto vertex = [&](std::size_t i, std::size_t j) { return Point{grid.xs[i], grid.ys[j]}; };
    std::vector<std::vector<Rational>> dp(r, std::vector<Rational>(k, Rational(0)));
    std::vector<std::vector<std::size_t>> from(r, std::vector<std::size_t>(k, 0));
    for (std::size_t j = 0; j < k; ++j)
        dp[0][j] = weight(box_spanned(b.bl(), vertex(0, j)));
    for (std::size_t i = 1; i < r; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t j2 = 0; j2 <= j; ++j2) {
                Rational cand = dp[i - 1][j2] + weight(box_spanned(vertex(i - 1, j2), vertex(i, j)));
                if (j2 == 0 || cand > dp[i][j]) {
                    dp[i][j] = cand;
                    from[i][j] = j2;
                }
            }
        }
    }
    std::size_t arg = 0;
    Rational best;
    for (std::size_t j = 0; j < k; ++j) {
        Rational cand = dp[r - 1][j] + weight(box_spanned(vertex(r - 1, j), b.tr()));
        if (j == 0 || cand > best) {
            best = cand;
            arg = j;
        }
    }
    std::vector<std::size_t> level(r);
    level[r - 1] = arg;
    for (std::size_t i = r; i-- > 1;) level[i - 1] = from[i][level[i]];
    Point prev = b.bl();
    for (std::size_t i = 0; i < r; ++i) {
        Point cur = vertex(i, level[i]);
        out.chain.boxes.push_back(box_spanned(prev, cur));
        prev = cur;
    }
    out.chain.boxes.push_back(box_spanned(prev, b.tr()));
    out.value = best;
    return out;
}

}  // namespace sublis
