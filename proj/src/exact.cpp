#include "sublis/exact.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace sublis {

namespace {

// Patience piles over (index, value) pairs; returns 1-based positions of one
// longest nondecreasing subsequence. Placement uses the first pile whose top
// exceeds the value, so duplicates extend rather than replace.
LisResult patience(const std::vector<std::pair<u64, u64>>& pts) {
    LisResult out;
    std::size_t m = pts.size();
    if (m == 0) return out;
    std::vector<u64> tops;
    std::vector<std::size_t> top_at;             // element currently on each pile
    std::vector<std::size_t> prev(m, SIZE_MAX);  // link to top of previous pile
    for (std::size_t i = 0; i < m; ++i) {
        u64 v = pts[i].second;
        auto it = std::upper_bound(tops.begin(), tops.end(), v);
        std::size_t p = static_cast<std::size_t>(it - tops.begin());
        if (p == tops.size()) {
            tops.push_back(v);
            top_at.push_back(i);
        } else {
            tops[p] = v;
            top_at[p] = i;
        }
        if (p > 0) prev[i] = top_at[p - 1];
    }
    out.length = tops.size();
    out.witness.resize(tops.size());
    std::size_t cur = top_at.back();
    for (std::size_t k = tops.size(); k-- > 0;) {
        out.witness[k] = pts[cur].first;
        cur = prev[cur];
    }
    return out;
}

}  // namespace

LisResult lis_exact(const std::vector<u64>& values) {
    std::vector<std::pair<u64, u64>> pts;
    pts.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) pts.emplace_back(i + 1, values[i]);
    return patience(pts);
}

u64 lis_exact_dp(const std::vector<u64>& values, u64 cap) {
    u64 n = values.size();
    if (n > cap) throw std::invalid_argument("lis_exact_dp: input exceeds cap");
    if (n == 0) return 0;
    std::vector<u64> dp(n, 1);
    u64 best = 0;
    for (u64 i = 0; i < n; ++i) {
        for (u64 j = 0; j < i; ++j)
            if (values[j] <= values[i]) dp[i] = std::max(dp[i], dp[j] + 1);
        best = std::max(best, dp[i]);
    }
    return best;
}

ExactSummary exact_summary(const std::vector<u64>& values) {
    ExactSummary s;
    s.n = values.size();
    s.lis = lis_exact(values).length;
    s.loss = s.n - s.lis;
    return s;
}

BoxLis lis_in_box_exact(const SequenceOracle& oracle, const Box& b) {
    BoxLis out;
    std::vector<std::pair<u64, u64>> pts;
    u64 lo = std::max<u64>(b.xs.x_l + 1, 1);
    u64 hi = std::min<u64>(b.xs.x_r, oracle.n());
    for (u64 x = lo; x <= hi && b.xs.x_l < b.xs.x_r; ++x) {
        u64 v = oracle.raw_value(x);
        if (b.ys.contains(v)) pts.emplace_back(x, v);
    }
    out.points_in_box = pts.size();
    out.lis = patience(pts);
    return out;
}

namespace {

inline bool comparable_values(u64 x1, u64 v1, u64 x2, u64 v2) {
    if (x1 == x2) return true;
    if (x1 > x2) { std::swap(x1, x2); std::swap(v1, v2); }
    return v1 <= v2;
}

}  // namespace

u64 count_violations_exact(const SequenceOracle& oracle, u64 s, const Box& strip) {
    u64 fs = oracle.raw_value(s);
    u64 count = 0;
    u64 lo = std::max<u64>(strip.xs.x_l + 1, 1);
    u64 hi = std::min<u64>(strip.xs.x_r, oracle.n());
    for (u64 x = lo; x <= hi; ++x) {
        if (x == s) continue;
        u64 v = oracle.raw_value(x);
        if (strip.ys.contains(v) && !comparable_values(x, v, s, fs)) ++count;
    }
    return count;
}

Rational z_value_exact(const SequenceOracle& oracle, u64 s, const Box& strip, const Rational& mu) {
    u64 fs = oracle.raw_value(s);
    u64 viol = 0, inside = 0;
    u64 lo = std::max<u64>(strip.xs.x_l + 1, 1);
    u64 hi = std::min<u64>(strip.xs.x_r, oracle.n());
    for (u64 x = lo; x <= hi; ++x) {
        u64 v = oracle.raw_value(x);
        if (!strip.ys.contains(v)) continue;
        ++inside;
        if (x != s && !comparable_values(x, v, s, fs)) ++viol;
    }
    return Rational(static_cast<std::int64_t>(viol)) -
           mu * Rational(static_cast<std::int64_t>(inside));
}

bool is_safe_exact(const SequenceOracle& oracle, u64 s, const Box& r, const Rational& mu,
                   const Rational& l) {
    if (!r.xs.contains(s)) throw std::invalid_argument("is_safe_exact: s outside X(R)");
    u64 fs = oracle.raw_value(s);
    // Scaled prefix walk: for mu = p/q, a strip (a, b] is accepting iff
    // q*viol - p*inside <= L*q. Both sides tracked with exact integers.
    const std::int64_t p = mu.num, q = mu.den;
    // accept threshold: z_scaled <= l.num * q / l.den  <=>  z_scaled * l.den <= l.num * q
    auto accepting = [&](__int128 z_scaled) {
        return z_scaled * l.den <= (__int128)l.num * q;
    };

    // Left strips (a, s-1], a in [x_l, s-2]: z_scaled(a) =
    //   (q*vp[s-1] - p*ip[s-1]) - (q*vp[a] - p*ip[a]); maximize over a.
    if (s >= r.xs.x_l + 2) {
        __int128 run = 0;           // q*vp[x] - p*ip[x] walking x upward from x_l
        __int128 best_neg = 0;      // max over a of -(q*vp[a] - p*ip[a]); a = x_l gives 0
        for (u64 x = r.xs.x_l + 1; x <= s - 1; ++x) {
            u64 v = oracle.raw_value(x);
            if (r.ys.contains(v)) {
                bool viol = (x != s) && !comparable_values(x, v, s, fs);
                run += viol ? (__int128)q : 0;
                run -= p;
            }
            if (x <= s - 2) best_neg = std::max(best_neg, -run);
            // after the final x = s-1, run holds q*vp[s-1] - p*ip[s-1]
        }
        if (!accepting(run + best_neg)) return false;
    }
    // Right strips (s, b], b in [s+1, x_r]: z_scaled(b) = q*vp[b]-p*ip[b] relative to s.
    if (s < r.xs.x_r) {
        __int128 run = 0;
        __int128 best = std::numeric_limits<std::int64_t>::min();
        for (u64 x = s + 1; x <= r.xs.x_r; ++x) {
            u64 v = oracle.raw_value(x);
            if (r.ys.contains(v)) {
                bool viol = !comparable_values(x, v, s, fs);
                run += viol ? (__int128)q : 0;
                run -= p;
            }
            best = std::max(best, run);
        }
        if (!accepting(best)) return false;
    }
    return true;
}

AdequacyReport enumerate_adequate_splitters(const SequenceOracle& oracle, const Box& t,
                                            const Box& b, const Rational& mu,
                                            const Rational& l, const Rational& rho) {
    if (!b.contains_box(t)) throw std::invalid_argument("enumerate_adequate_splitters: T not inside B");
    AdequacyReport rep;
    Box r = strip_of(t, b);
    u64 w = t.width();
    // rho-balanced: s - x_l >= rho*w and x_r - s >= rho*w, exact compares.
    auto balanced = [&](u64 s) {
        Rational lhs1(static_cast<std::int64_t>(s - t.xs.x_l));
        Rational lhs2(static_cast<std::int64_t>(t.xs.x_r - s));
        Rational rw = rho * Rational(static_cast<std::int64_t>(w));
        return lhs1 >= rw && lhs2 >= rw;
    };
    for (u64 s = t.xs.x_l + 1; s <= t.xs.x_r; ++s) {
        if (!balanced(s)) {
            if (s != t.xs.x_r) ++rep.unbalanced_nondegenerate;
            continue;
        }
        ++rep.balanced_candidates;
        u64 fv = oracle.raw_value(s);
        if (!t.contains({s, fv})) continue;
        if (is_safe_exact(oracle, s, r, mu, l)) rep.adequate.push_back(s);
    }
    return rep;
}

DichotomyReport check_dichotomy(const SequenceOracle& oracle, const StripDecomposition& strips,
                                const BoxChain& chain, const Rational& mu) {
    if (!strips.valid()) throw std::invalid_argument("check_dichotomy: bad strip decomposition");
    if (!chain_compatible(chain, strips))
        throw std::invalid_argument("check_dichotomy: chain incompatible with strip decomposition");
    // mu = 0 degenerates the outside bound to chi_out >= 0, which always holds.
    if (!(Rational(0) <= mu && mu < Rational(1)))
        throw std::invalid_argument("check_dichotomy: mu outside [0,1)");

    const Box& r = strips.parent;
    std::vector<Box> ss = strips.strips();
    DichotomyReport rep;
    u64 lo = std::max<u64>(r.xs.x_l + 1, 1);
    u64 hi = std::min<u64>(r.xs.x_r, oracle.n());
    for (u64 x = lo; x <= hi; ++x) {
        u64 v = oracle.raw_value(x);
        if (!r.ys.contains(v)) continue;
        ++rep.chi;
        const Box& dbox = chain.box_at(x);
        if (!dbox.contains({x, v})) continue;  // F-point outside the chain
        bool safe = is_safe_exact(oracle, x, r, mu,
                                  Rational(static_cast<std::int64_t>(ss[strips.strip_index(x)].width())));
        if (safe) ++rep.safe; else ++rep.unsafe;
    }
    rep.chi_in = rep.safe + rep.unsafe;
    rep.chi_out = rep.chi - rep.chi_in;
    Rational bound_out = mu / (Rational(1) - mu) * Rational(static_cast<std::int64_t>(rep.unsafe));
    Rational bound_in = (Rational(1) - mu) * Rational(static_cast<std::int64_t>(rep.chi)) +
                        mu * Rational(static_cast<std::int64_t>(rep.safe));
    rep.holds = Rational(static_cast<std::int64_t>(rep.chi_out)) >= bound_out &&
                Rational(static_cast<std::int64_t>(rep.chi_in)) <= bound_in;
    return rep;
}

bool net_is_valid(const SequenceOracle& oracle, const Box& b, const std::vector<u64>& net,
                  const Rational& alpha) {
    if (net.empty()) return false;
    if (!std::is_sorted(net.begin(), net.end())) return false;
    for (u64 v : net)
        if (!b.ys.contains(v)) return false;
    if (net.back() != b.ys.y_t) return false;

    // Values realized in X(B), sorted; gap popularity via binary search.
    std::vector<u64> vals;
    u64 lo = std::max<u64>(b.xs.x_l + 1, 1);
    u64 hi = std::min<u64>(b.xs.x_r, oracle.n());
    for (u64 x = lo; x <= hi; ++x) vals.push_back(oracle.raw_value(x));
    std::sort(vals.begin(), vals.end());
    Rational threshold = alpha * Rational(static_cast<std::int64_t>(b.width()));
    auto popularity = [&](u64 a, u64 bb) -> u64 {
        if (a > bb) return 0;
        return static_cast<u64>(std::upper_bound(vals.begin(), vals.end(), bb) -
                                std::lower_bound(vals.begin(), vals.end(), a));
    };
    auto gap_ok = [&](u64 a, u64 bb) {
        // A net-free value interval must not be alpha-popular.
        if (a > bb) return true;
        return Rational(static_cast<std::int64_t>(popularity(a, bb))) < threshold;
    };
    if (net.front() > b.ys.y_b && !gap_ok(b.ys.y_b, net.front() - 1)) return false;
    for (std::size_t i = 0; i + 1 < net.size(); ++i)
        if (net[i + 1] > net[i] + 1 && !gap_ok(net[i] + 1, net[i + 1] - 1)) return false;
    return true;  // nothing above net.back() == y_t
}

bool grid_is_fine(const SequenceOracle& oracle, const Box& b, const Grid& grid,
                  const Rational& alpha) {
    // Tolerance ceil(alpha*w): equal-spaced columns can only promise gaps of
    // that size, and the chain miss bound depends on the net alone.
    u64 limit = (alpha * Rational(static_cast<std::int64_t>(b.width()))).ceil();
    auto gap_ok = [&](u64 size) { return size <= limit; };
    u64 prev = b.xs.x_l;
    for (u64 c : grid.xs) {
        if (c <= prev || c >= b.xs.x_r) return false;
        if (!gap_ok(c - 1 - prev)) return false;
        prev = c;
    }
    if (!gap_ok(b.xs.x_r - prev)) return false;
    u64 cols = std::max<std::size_t>(grid.xs.size(), 1);
    Rational net_alpha = alpha / Rational(static_cast<std::int64_t>(cols));
    return net_is_valid(oracle, b, grid.ys, net_alpha);
}

namespace {

// Chain through every grid column; ys index per column, nondecreasing.
BoxChain chain_from_levels(const Box& b, const Grid& grid, const std::vector<std::size_t>& level) {
    BoxChain chain;
    Point prev = b.bl();
    for (std::size_t i = 0; i < grid.xs.size(); ++i) {
        Point cur{grid.xs[i], grid.ys[level[i]]};
        chain.boxes.push_back(box_spanned(prev, cur));
        prev = cur;
    }
    chain.boxes.push_back(box_spanned(prev, b.tr()));
    return chain;
}

u64 count_missed(const std::vector<Point>& lis_pts, const BoxChain& chain) {
    u64 missed = 0;
    for (const Point& p : lis_pts) {
        bool inside = false;
        for (const Box& d : chain.boxes)
            if (d.contains(p)) { inside = true; break; }
        if (!inside) ++missed;
    }
    return missed;
}

}  // namespace

GridApproxReport check_grid_approx(const SequenceOracle& oracle, const Box& b, const Grid& grid,
                                   const Rational& alpha) {
    if (!grid_is_fine(oracle, b, grid, alpha))
        throw std::invalid_argument("check_grid_approx: grid is not an alpha-fine grid for B");

    GridApproxReport rep;
    BoxLis bl = lis_in_box_exact(oracle, b);
    rep.lis_points = bl.lis.length;
    std::vector<Point> lis_pts;
    for (u64 x : bl.lis.witness) lis_pts.push_back({x, oracle.raw_value(x)});
    Rational allowance = alpha * Rational(static_cast<std::int64_t>(b.width()));

    if (grid.xs.empty()) {
        rep.chain.boxes.push_back(b);
        rep.missed = 0;
        rep.holds = true;
        return rep;
    }

    // Constructive witness: P_i = least grid value at column i at or above the
    // highest lis point with index <= x_i.
    {
        std::vector<std::size_t> level(grid.xs.size(), 0);
        bool ok = true;
        std::size_t li = 0;
        u64 need = b.ys.y_b;
        for (std::size_t i = 0; i < grid.xs.size() && ok; ++i) {
            while (li < lis_pts.size() && lis_pts[li].x <= grid.xs[i]) {
                need = std::max(need, lis_pts[li].y);
                ++li;
            }
            auto it = std::lower_bound(grid.ys.begin(), grid.ys.end(), need);
            if (it == grid.ys.end()) { ok = false; break; }
            level[i] = static_cast<std::size_t>(it - grid.ys.begin());
        }
        if (ok) {
            BoxChain chain = chain_from_levels(b, grid, level);
            u64 missed = count_missed(lis_pts, chain);
            if (Rational(static_cast<std::int64_t>(missed)) <= allowance) {
                rep.chain = std::move(chain);
                rep.missed = missed;
                rep.holds = true;
                return rep;
            }
        }
    }

    // Fallback: exact max-coverage chain via DP over columns.
    rep.used_fallback = true;
    std::size_t r = grid.xs.size(), k = grid.ys.size();
    auto cover = [&](const Point& lo, const Point& hi) -> u64 {
        Box d = box_spanned(lo, hi);
        u64 c = 0;
        for (const Point& p : lis_pts)
            if (d.contains(p)) ++c;
        return c;
    };
    std::vector<std::vector<u64>> dp(r, std::vector<u64>(k, 0));
    std::vector<std::vector<std::size_t>> from(r, std::vector<std::size_t>(k, 0));
    for (std::size_t j = 0; j < k; ++j)
        dp[0][j] = cover(b.bl(), {grid.xs[0], grid.ys[j]});
    for (std::size_t i = 1; i < r; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            u64 best = 0;
            std::size_t arg = 0;
            for (std::size_t j2 = 0; j2 <= j; ++j2) {
                u64 cand = dp[i - 1][j2] + cover({grid.xs[i - 1], grid.ys[j2]},
                                                 {grid.xs[i], grid.ys[j]});
                if (cand > best) { best = cand; arg = j2; }
            }
            dp[i][j] = best;
            from[i][j] = arg;
        }
    }
    u64 best = 0;
    std::size_t arg = 0;
    for (std::size_t j = 0; j < k; ++j) {
        u64 cand = dp[r - 1][j] + cover({grid.xs[r - 1], grid.ys[j]}, b.tr());
        if (cand > best) { best = cand; arg = j; }
    }
    std::vector<std::size_t> level(r);
    level[r - 1] = arg;
    for (std::size_t i = r; i-- > 1;) level[i - 1] = from[i][level[i]];
    rep.chain = chain_from_levels(b, grid, level);
    rep.missed = count_missed(lis_pts, rep.chain);
    rep.holds = Rational(static_cast<std::int64_t>(rep.missed)) <= allowance;
    return rep;
}

}  // namespace sublis
