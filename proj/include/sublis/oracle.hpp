#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "sublis/core.hpp"
#include "sublis/rational.hpp"

namespace sublis {

// ---------------------------------------------------------------------------
// SequenceOracle: positional access to f with query accounting. total_queries
// counts every query() call; distinct_queries counts unique positions.
// valbound is the max value, computed by one full scan at construction and
// excluded from the counters. raw_value() is for exact oracles and checkers
// (reference computations), not for the estimator path.
// ---------------------------------------------------------------------------
class SequenceOracle {
  public:
    explicit SequenceOracle(std::vector<u64> values);

    u64 n() const { return n_; }
    u64 valbound() const { return valbound_; }

    u64 query(u64 x) const;          // counted; x in (0, n]
    Point point(u64 x) const { return {x, query(x)}; }

    u64 raw_value(u64 x) const;      // uncounted reference access
    const std::vector<u64>& raw_values() const { return values_; }

    Box universe() const { return Box{{0, n_}, {1, valbound_}}; }

    u64 total_queries() const { return total_.load(std::memory_order_relaxed); }
    u64 distinct_queries() const { return distinct_.load(std::memory_order_relaxed); }
    void reset_counters() const;

    // With revisit counting off, a query to an already-seen position is a
    // notebook lookup: it returns the stored value without touching total.
    // The estimator runs in this mode (it memoizes everything it reads), so
    // its total equals its distinct count; checkers leave the default on.
    void set_count_revisits(bool b) const { count_revisits_.store(b, std::memory_order_relaxed); }
    bool count_revisits() const { return count_revisits_.load(std::memory_order_relaxed); }

  private:
    std::vector<u64> values_;  // values_[x - 1] backs query(x); raw_values() is the whole sequence
    u64 n_ = 0;
    u64 valbound_ = 1;
    mutable std::atomic<u64> total_{0};
    mutable std::atomic<u64> distinct_{0};
    mutable std::atomic<bool> count_revisits_{true};
    mutable std::vector<std::atomic<bool>> seen_;
};

// ---------------------------------------------------------------------------
// RandomnessLedger: every random draw comes from a stream keyed by
// (master seed, procedure id, canonical argument encoding), so a procedure
// called twice with the same arguments sees bit-identical randomness. The
// generator is counter-mode over a 128-bit key distilled from the key words
// with the splitmix64 finalizer (pinned in README).
// ---------------------------------------------------------------------------

enum class Pid : u64 {
    ApproxZ = 1,
    FindSplitter = 2,
    BuildNet = 3,
    ApproxLis = 4,
    Amplify = 5,
    GenCorrupted = 6,
    GenPermutation = 7,
    NaiveSample = 8,
    TestInstance = 9,
};

inline u64 mix64(u64 z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Canonical little-endian word encoding of procedure arguments. Coordinates
// and counts as plain u64; rationals as reduced (numerator, denominator) with
// the numerator in two's complement.
struct ArgKey {
    std::vector<u64> words;
    ArgKey& u(u64 v) { words.push_back(v); return *this; }
    ArgKey& i(std::int64_t v) { words.push_back(static_cast<u64>(v)); return *this; }
    ArgKey& rat(const Rational& r) { i(r.num); u(static_cast<u64>(r.den)); return *this; }
    ArgKey& pt(const Point& p) { u(p.x); u(p.y); return *this; }
    ArgKey& box(const Box& b) { u(b.xs.x_l); u(b.xs.x_r); u(b.ys.y_b); u(b.ys.y_t); return *this; }
};

class RandomStream {
  public:
    RandomStream(u64 k0, u64 k1) : k0_(k0), k1_(k1) {}

    u64 next_u64() {
        u64 c = counter_++;
        u64 a = mix64(k0_ ^ (c * 0xd1342543de82ef95ULL));
        u64 b = mix64(k1_ + (c << 1 | 1));
        return mix64(a ^ (b >> 29) ^ (b << 35));
    }
    // Uniform in [0, m); m > 0. Plain modulo (bias < m / 2^64, pinned).
    u64 next_below(u64 m) { return next_u64() % m; }
    // Uniform index in the half-open interval (x_l, x_r].
    u64 next_index(const IndexInterval& iv) { return iv.x_l + 1 + next_below(iv.width()); }
    // Uniform real in [0, 1).
    double next_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  private:
    u64 k0_, k1_, counter_ = 0;
};

class RandomnessLedger {
  public:
    explicit RandomnessLedger(u64 master_seed) : master_(master_seed) {}

    u64 master_seed() const { return master_; }

    RandomStream stream_for(Pid pid, const ArgKey& key) const {
        u64 k0 = mix64(master_ ^ 0x8c7299e651e5f5a1ULL);
        u64 k1 = mix64(master_ + 0x38b8713466bef1d3ULL);
        absorb(k0, k1, static_cast<u64>(pid));
        for (u64 w : key.words) absorb(k0, k1, w);
        return RandomStream(k0, k1);
    }

    // Independent ledger for amplification trial i.
    RandomnessLedger fork(u64 trial) const {
        u64 k0 = mix64(master_ ^ 0x8c7299e651e5f5a1ULL);
        u64 k1 = mix64(master_ + 0x38b8713466bef1d3ULL);
        absorb(k0, k1, static_cast<u64>(Pid::Amplify));
        absorb(k0, k1, trial);
        return RandomnessLedger(mix64(k0 ^ (k1 << 13 | k1 >> 51)));
    }

  private:
    static void absorb(u64& k0, u64& k1, u64 w) {
        k0 = mix64(k0 ^ w) + 0xa0761d6478bd642fULL;
        k1 = mix64(k1 ^ (w << 32 | w >> 32)) + k0;
    }
    u64 master_;
};

// count indices uniform in iv with replacement.
std::vector<u64> sample_indices(RandomStream& stream, const IndexInterval& iv, u64 count);
// count distinct indices (count <= width), ascending.
std::vector<u64> sample_indices_distinct(RandomStream& stream, const IndexInterval& iv, u64 count);

// ---------------------------------------------------------------------------
// Array file I/O. Paths ending in ".u64" are little-endian binary u64; all
// other paths are text, one decimal value per line. Values must be >= 1.
// ---------------------------------------------------------------------------
std::vector<u64> load_array(const std::string& path);
void save_array(const std::string& path, const std::vector<u64>& values);

}  // namespace sublis
