#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <vector>

#include "sublis/exact.hpp"

using namespace sublis;

namespace {

std::vector<u64> random_values(u64 seed, u64 n, u64 valbound) {
    RandomnessLedger ledger(seed);
    RandomStream s = ledger.stream_for(Pid::TestInstance, ArgKey{}.u(n).u(valbound));
    std::vector<u64> v(n);
    for (u64 i = 0; i < n; ++i) v[i] = 1 + s.next_below(valbound);
    return v;
}

void check_witness(const std::vector<u64>& values, const LisResult& r) {
    REQUIRE(r.witness.size() == r.length);
    for (std::size_t i = 0; i < r.witness.size(); ++i) {
        REQUIRE(r.witness[i] >= 1);
        REQUIRE(r.witness[i] <= values.size());
        if (i > 0) {
            REQUIRE(r.witness[i] > r.witness[i - 1]);
            REQUIRE(values[r.witness[i] - 1] >= values[r.witness[i - 1] - 1]);
        }
    }
}

}  // namespace

TEST_CASE("lis on canonical arrays") {
    CHECK(lis_exact({1, 2, 3, 4, 5}).length == 5);
    CHECK(lis_exact({}).length == 0);
    CHECK(lis_exact({5, 4, 3, 2, 1}).length == 1);
    CHECK(lis_exact({2, 1, 4, 3}).length == 2);
    // nondecreasing counts: duplicates extend a sequence
    CHECK(lis_exact({2, 2, 2}).length == 3);
    CHECK(lis_exact({3, 1, 2, 2, 1}).length == 3);
}

TEST_CASE("loss and summary identity") {
    ExactSummary s = exact_summary({2, 1, 4, 3});
    CHECK(s.n == 4);
    CHECK(s.lis == 2);
    CHECK(s.loss == 2);
    s = exact_summary({1, 2, 3});
    CHECK(s.loss == 0);
}

TEST_CASE("witness is a valid optimal subsequence") {
    for (u64 seed = 0; seed < 50; ++seed) {
        std::vector<u64> v = random_values(seed, 1 + seed % 64, 16);
        LisResult r = lis_exact(v);
        check_witness(v, r);
    }
}

TEST_CASE("patience equals the quadratic dp on seeded arrays") {
    for (u64 seed = 0; seed < 300; ++seed) {
        u64 n = 1 + seed % 96;
        u64 vb = 1 + seed % 24;
        std::vector<u64> v = random_values(seed * 31 + 1, n, vb);
        CHECK(lis_exact(v).length == lis_exact_dp(v));
    }
}

TEST_CASE("dp refuses inputs beyond its cap") {
    std::vector<u64> big(10, 1);
    CHECK_THROWS(lis_exact_dp(big, 8));
    CHECK(lis_exact_dp(big, 16) == 10);
}

TEST_CASE("lis inside a box") {
    SequenceOracle o({2, 1, 4, 3});
    // width-1 box containing its point
    BoxLis one = lis_in_box_exact(o, Box{{0, 1}, {2, 2}});
    CHECK(one.lis.length == 1);
    CHECK(one.points_in_box == 1);
    // width-1 box missing its point
    CHECK(lis_in_box_exact(o, Box{{0, 1}, {3, 9}}).lis.length == 0);
    // the universe box filters nothing
    BoxLis all = lis_in_box_exact(o, o.universe());
    CHECK(all.lis.length == lis_exact(o.raw_values()).length);
    CHECK(all.points_in_box == 4);
    CHECK(all.loss() == 2);
    // value filtering: only the two low points qualify
    BoxLis low = lis_in_box_exact(o, Box{{0, 4}, {1, 2}});
    CHECK(low.points_in_box == 2);
    CHECK(low.lis.length == 1);  // (1,2) and (2,1) are incomparable
}

TEST_CASE("violations and z values") {
    SequenceOracle mono({1, 2, 3, 4, 5, 6});
    // monotone: every pair comparable, never a violation
    for (u64 s = 1; s <= 6; ++s)
        CHECK(count_violations_exact(mono, s, Box{{0, 6}, {1, 6}}) == 0);
    Rational mu(1, 4);
    CHECK(z_value_exact(mono, 3, Box{{0, 6}, {1, 6}}, mu) ==
          Rational(0) - mu * Rational(6));

    // frozen instance: s=1 against the strip (1,4] x [1,4]
    SequenceOracle o({2, 1, 4, 3});
    Box c{{1, 4}, {1, 4}};
    CHECK(count_violations_exact(o, 1, c) == 1);
    CHECK(z_value_exact(o, 1, c, mu) == Rational(1) - mu * Rational(3));
    // s never counts against itself
    // F(2) = (2,1); of the box points (1,2),(3,4),(4,3) only (1,2) violates against it.
    CHECK(count_violations_exact(o, 2, Box{{0, 4}, {1, 4}}) == 1);
}

TEST_CASE("safety by definition") {
    SequenceOracle mono({1, 2, 3, 4, 5, 6, 7, 8});
    Box r = mono.universe();
    for (u64 s = 2; s <= 7; ++s) CHECK(is_safe_exact(mono, s, r, Rational(1, 2), Rational(1)));

    SequenceOracle rev({8, 7, 6, 5, 4, 3, 2, 1});
    // the middle of a reversed array violates every neighbor
    CHECK_FALSE(is_safe_exact(rev, 4, rev.universe(), Rational(0), Rational(1)));
}

TEST_CASE("adequate splitter enumeration") {
    SequenceOracle o({1, 2, 3, 4});
    Box t = o.universe();
    // rho = 1/2 on width 4: only the exact midpoint is balanced
    AdequacyReport rep = enumerate_adequate_splitters(o, t, t, Rational(1, 2), Rational(1),
                                                      Rational(1, 2));
    CHECK(rep.balanced_candidates <= 1);
    // monotone: every balanced candidate is adequate
    CHECK(rep.adequate.size() == rep.balanced_candidates);

    AdequacyReport loose = enumerate_adequate_splitters(o, t, t, Rational(1, 2), Rational(1),
                                                        Rational(1, 4));
    CHECK(loose.balanced_candidates == 3);  // indices 2, 3 and the midpoint between
    CHECK(loose.adequate.size() == 3);
    CHECK(std::is_sorted(loose.adequate.begin(), loose.adequate.end()));
}

TEST_CASE("dichotomy on a monotone cover") {
    SequenceOracle o({1, 2, 3, 4, 5, 6, 7, 8});
    StripDecomposition sd;
    sd.parent = o.universe();
    sd.cuts = {4};
    BoxChain chain;
    chain.boxes.push_back(box_spanned({0, 1}, {4, 4}));
    chain.boxes.push_back(box_spanned({4, 4}, {8, 8}));
    REQUIRE(chain_compatible(chain, sd));

    DichotomyReport rep = check_dichotomy(o, sd, chain, Rational(1, 2));
    CHECK(rep.holds);
    CHECK(rep.chi == 8);
    CHECK(rep.chi_in == 8);
    CHECK(rep.chi_out == 0);
    CHECK(rep.unsafe == 0);
    CHECK(rep.safe == 8);

    // mu -> 0 degenerates the first inequality to chi_out >= 0
    CHECK(check_dichotomy(o, sd, chain, Rational(0)).holds);
}

TEST_CASE("dichotomy on seeded instances") {
    // the lemma is a theorem: a failure would flag an implementation bug
    for (u64 seed = 0; seed < 200; ++seed) {
        u64 n = 8 + seed % 32;
        std::vector<u64> v = random_values(seed * 17 + 3, n, n);
        SequenceOracle o(v);
        StripDecomposition sd;
        sd.parent = o.universe();
        u64 cut = 1 + seed % (n - 1);
        sd.cuts = {cut};
        // chain through a seed-chosen interior corner
        u64 mid_y = 1 + (seed * 7) % o.valbound();
        BoxChain chain;
        chain.boxes.push_back(box_spanned({0, 1}, {cut, mid_y}));
        chain.boxes.push_back(box_spanned({cut, mid_y}, {n, o.valbound()}));
        REQUIRE(chain_compatible(chain, sd));
        Rational mu = (seed % 3 == 0) ? Rational(1, 4) : (seed % 3 == 1) ? Rational(1, 2)
                                                                         : Rational(2, 5);
        CHECK(check_dichotomy(o, sd, chain, mu).holds);
    }
}

TEST_CASE("grid approximation with a fully refined grid") {
    SequenceOracle o({2, 1, 4, 3, 6, 5});
    Box b = o.universe();
    Grid g;
    g.parent = b;
    for (u64 x = 1; x < 6; ++x) g.xs.push_back(x);
    for (u64 y = 1; y <= 6; ++y) g.ys.push_back(y);
    REQUIRE(g.valid());

    GridApproxReport rep = check_grid_approx(o, b, g, Rational(1, 6));
    CHECK(rep.holds);
    CHECK(rep.missed == 0);
    CHECK(rep.lis_points == 3);
    CHECK(rep.chain.spans(b));

    // alpha = 1 makes the bound w(B): trivially holds
    CHECK(check_grid_approx(o, b, g, Rational(1)).holds);
}

TEST_CASE("grid fineness and net validity brute force") {
    SequenceOracle o({1, 2, 3, 4, 5, 6, 7, 8});
    Box b = o.universe();
    Grid g;
    g.parent = b;
    g.xs = {4};
    g.ys = {4, 8};
    // gap of 4 on both sides: fine at alpha = 1/2, not at alpha = 1/4
    Grid full = g;
    full.ys = {1, 2, 3, 4, 5, 6, 7, 8};
    CHECK(grid_is_fine(o, b, full, Rational(1, 2)));
    CHECK_FALSE(grid_is_fine(o, b, full, Rational(1, 4)));

    // identity box: every value interval of length k holds k points, so a net
    // at alpha = 1/2 needs a value in every window of five
    CHECK(net_is_valid(o, b, {4, 8}, Rational(1, 2)));
    CHECK_FALSE(net_is_valid(o, b, {8}, Rational(1, 2)));
    // y_T must be present
    CHECK_FALSE(net_is_valid(o, b, {4, 7}, Rational(1, 2)));
}
