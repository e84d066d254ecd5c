#include "sublis/splitter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sublis {

namespace {

inline bool comparable_values(u64 x1, u64 v1, u64 x2, u64 v2) {
    if (x1 == x2) return true;
    if (x1 > x2) { std::swap(x1, x2); std::swap(v1, v2); }
    return v1 <= v2;
}

// Per-strip sample count. The formula value almost always exceeds the caps,
// so a double is precise enough; the caps keep the result deterministic.
u64 strip_sample_count(u64 strip_width, const Rational& l, const Rational& log_n, u64 m_cap) {
    double q = log_n.to_double() * static_cast<double>(strip_width) / l.to_double();
    double formula = 10.0 * q * q;
    u64 m = strip_width;
    if (formula < static_cast<double>(m)) m = static_cast<u64>(std::ceil(formula));
    m = std::min(m, m_cap);
    return std::max<u64>(m, 1);
}

}  // namespace

Rational approx_z(const SequenceOracle& oracle, const RandomnessLedger& ledger, u64 s,
                  const Box& c, u64 m, const Rational& mu) {
    u64 w = c.width();
    if (w == 0) throw std::invalid_argument("approx_z: empty strip");
    if (m == 0) throw std::invalid_argument("approx_z: zero samples");
    u64 fs = oracle.query(s);
    u64 viol = 0, inside = 0;
    if (m >= w) {
        for (u64 x = c.xs.x_l + 1; x <= c.xs.x_r; ++x) {
            u64 v = oracle.query(x);
            if (!c.ys.contains(v)) continue;
            ++inside;
            if (x != s && !comparable_values(x, v, s, fs)) ++viol;
        }
        return Rational(static_cast<std::int64_t>(viol)) -
               mu * Rational(static_cast<std::int64_t>(inside));
    }
    RandomStream stream =
        ledger.stream_for(Pid::ApproxZ, ArgKey{}.u(s).box(c).u(m).rat(mu));
    for (u64 i = 0; i < m; ++i) {
        u64 x = stream.next_index(c.xs);
        u64 v = oracle.query(x);
        if (!c.ys.contains(v)) continue;
        ++inside;
        if (x != s && !comparable_values(x, v, s, fs)) ++viol;
    }
    Rational sum = Rational(static_cast<std::int64_t>(viol)) -
                   mu * Rational(static_cast<std::int64_t>(inside));
    return Rational(static_cast<std::int64_t>(w), static_cast<std::int64_t>(m)) * sum;
}

std::vector<u64> safety_ladder(u64 max_width, const Rational& l, u64 ladder_linear) {
    std::vector<u64> widths;
    Rational third = l / Rational(3);
    u64 unit = std::max<u64>(static_cast<u64>(third.ceil()), 1);
    u64 kmax = max_width / unit;
    if (kmax == 0) return widths;
    u64 linear = std::min(kmax, std::max<u64>(ladder_linear, 1));
    for (u64 k = 1; k <= linear; ++k) widths.push_back(k * unit);
    for (u64 k = linear * 2; k < kmax; k *= 2) widths.push_back(k * unit);
    if (widths.back() != kmax * unit) widths.push_back(kmax * unit);
    return widths;
}

bool test_safe(const SequenceOracle& oracle, const RandomnessLedger& ledger, u64 s, const Box& r,
               const SafetyTestParams& safety) {
    if (!r.xs.contains(s)) throw std::invalid_argument("test_safe: s outside X(R)");
    Rational exact_threshold = Rational(4, 3) * safety.l;
    auto probe = [&](const Box& strip) {
        u64 w = strip.width();
        u64 m = strip_sample_count(w, safety.l, safety.log_n, safety.m_cap);
        Rational threshold = exact_threshold;
        if (m < w) {
            Rational floor = safety.coarse_rate * Rational(static_cast<std::int64_t>(w));
            if (floor > threshold) threshold = floor;
        }
        // Every sample contributes at most 1 - mu, so a strip too narrow to
        // reach the threshold accepts without spending any queries.
        Rational max_z = Rational(static_cast<std::int64_t>(w)) * (Rational(1) - safety.mu);
        if (max_z < threshold) return true;
        return approx_z(oracle, ledger, s, strip, m, safety.mu) < threshold;
    };
    for (u64 w : safety_ladder(s - 1 - r.xs.x_l, safety.l, safety.ladder_linear)) {
        Box strip{{s - 1 - w, s - 1}, r.ys};
        if (!probe(strip)) return false;
    }
    for (u64 w : safety_ladder(r.xs.x_r - s, safety.l, safety.ladder_linear)) {
        Box strip{{s, s + w}, r.ys};
        if (!probe(strip)) return false;
    }
    return true;
}

u64 splitter_candidate_budget(const Rational& log_n, const Rational& rho) {
    Rational formula = Rational(10) * log_n * log_n / rho;
    Rational guard = Rational(6) / rho;
    Rational budget = rat_min(formula, guard);
    return std::max<u64>(static_cast<u64>(budget.ceil()), 1);
}

SplitterResult find_splitter(const SequenceOracle& oracle, const RandomnessLedger& ledger,
                             const Box& t, const Box& b, const SplitterParams& params) {
    if (!b.contains_box(t)) throw std::invalid_argument("find_splitter: T not inside B");
    SplitterResult out;
    u64 w = t.width();
    if (w == 0) return out;
    // The balanced set counts as empty when its measure w(1 - 2 rho) is below
    // one full index, regardless of rounding.
    if (Rational(static_cast<std::int64_t>(w)) * (Rational(1) - Rational(2) * params.rho) <
        Rational(1))
        return out;
    // rho-balanced candidates: x - x_l >= rho w and x_r - x >= rho w, so x in
    // [x_l + ceil(rho w), x_r - ceil(rho w)]; empty when the margins overlap.
    u64 margin = static_cast<u64>((params.rho * Rational(static_cast<std::int64_t>(w))).ceil());
    if (2 * margin > w) return out;
    IndexInterval balanced{t.xs.x_l + margin - 1, t.xs.x_r - margin};
    if (balanced.width() == 0) return out;

    Box strip = strip_of(t, b);
    RandomStream stream = ledger.stream_for(Pid::FindSplitter, ArgKey{}.box(t).box(b));
    for (u64 i = 0; i < params.max_candidates; ++i) {
        u64 s = stream.next_index(balanced);
        ++out.tried;
        u64 v = oracle.query(s);
        if (!t.contains({s, v})) continue;
        if (test_safe(oracle, ledger, s, strip, params.safety)) {
            out.found = true;
            out.s = s;
            return out;
        }
    }
    return out;
}

}  // namespace sublis
