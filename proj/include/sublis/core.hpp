#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sublis/rational.hpp"

namespace sublis {

using u64 = std::uint64_t;

// ---------------------------------------------------------------------------
// Planar model. A sequence f : (0,n] -> [1,valbound] is the point set
// F = { <x, f(x)> }. Index intervals are half open (x_L, x_R], value intervals
// closed [y_B, y_T]; a box is their product, owning its top-right corner but
// not its bottom-left one.
// ---------------------------------------------------------------------------

struct Point {
    u64 x = 0;
    u64 y = 0;
    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

// P <= Q : x(P) <= x(Q) and y(P) <= y(Q)      (comparable, weak)
// P `prec` Q : x(P) < x(Q) and y(P) <= y(Q)   (strict dominance in index)
// P `se` Q : x(P) < x(Q) and y(P) > y(Q)      (Q strictly southeast of P: violation)
// P `se_star` Q : x(P) <= x(Q) and y(P) > y(Q)
inline bool pt_leq(const Point& p, const Point& q) { return p.x <= q.x && p.y <= q.y; }
inline bool pt_prec(const Point& p, const Point& q) { return p.x < q.x && p.y <= q.y; }
inline bool pt_se(const Point& p, const Point& q) { return p.x < q.x && p.y > q.y; }
inline bool pt_se_star(const Point& p, const Point& q) { return p.x <= q.x && p.y > q.y; }

// Two distinct-index points are comparable when one strictly precedes the other.
inline bool pt_comparable(const Point& p, const Point& q) {
    return pt_prec(p, q) || pt_prec(q, p) || p == q;
}

enum class PointOrder {
    Equal,         // identical points
    Prec,          // P prec Q
    Succ,          // Q prec P
    SeViolation,   // P se Q (Q strictly SE of P)
    NwViolation,   // Q se P (Q strictly NW of P)
    StarNw,        // equal index, y(Q) > y(P): Q se_star-above P
    StarSe,        // equal index, y(Q) < y(P)
};

struct PointRelation {
    PointOrder primary = PointOrder::Equal;
    bool leq = false;       // P <= Q
    bool geq = false;       // Q <= P
    bool prec = false;      // P prec Q
    bool succ = false;      // Q prec P
    bool se = false;        // P se Q
    bool nw = false;        // Q se P
    bool se_star = false;   // P se_star Q
    bool nw_star = false;   // Q se_star P
};

PointRelation compare_points(const Point& p, const Point& q);

// The four regions anchored at P partition the plane: NW = { Q : Q se_star P },
// SW = { Q : Q <= P }, NE = { Q : P prec Q }, SE = { Q : P se Q }.
enum class Region { NW, SW, NE, SE };
Region region_of(const Point& p, const Point& q);
std::string region_name(Region r);

struct IndexInterval {
    u64 x_l = 0;  // exclusive
    u64 x_r = 0;  // inclusive
    u64 width() const { return x_r - x_l; }
    bool contains(u64 x) const { return x_l < x && x <= x_r; }
    friend bool operator==(const IndexInterval& a, const IndexInterval& b) {
        return a.x_l == b.x_l && a.x_r == b.x_r;
    }
};

struct ValueInterval {
    u64 y_b = 0;  // inclusive
    u64 y_t = 0;  // inclusive
    bool contains(u64 y) const { return y_b <= y && y <= y_t; }
    friend bool operator==(const ValueInterval& a, const ValueInterval& b) {
        return a.y_b == b.y_b && a.y_t == b.y_t;
    }
};

struct Box {
    IndexInterval xs;
    ValueInterval ys;

    u64 width() const { return xs.width(); }
    bool degenerate() const { return xs.x_l == xs.x_r; }
    Point bl() const { return {xs.x_l, ys.y_b}; }  // excluded corner
    Point tr() const { return {xs.x_r, ys.y_t}; }  // included corner
    bool contains(const Point& p) const { return xs.contains(p.x) && ys.contains(p.y); }
    bool contains_box(const Box& inner) const {
        return xs.x_l <= inner.xs.x_l && inner.xs.x_r <= xs.x_r &&
               ys.y_b <= inner.ys.y_b && inner.ys.y_t <= ys.y_t;
    }
    friend bool operator==(const Box& a, const Box& b) { return a.xs == b.xs && a.ys == b.ys; }
    friend bool operator!=(const Box& a, const Box& b) { return !(a == b); }
    std::string str() const;
};

// Box spanned by corners Q (bottom-left, excluded) and R (top-right, included).
// Requires x(Q) <= x(R) and y(Q) <= y(R); equal indices give a degenerate box.
Box box_spanned(const Point& q, const Point& r);

// Full-height strip of `b` within `outer`: same index interval, outer's values.
inline Box strip_of(const Box& b, const Box& outer) {
    return Box{b.xs, outer.ys};
}

// ---------------------------------------------------------------------------
// Box chains. boxes[i].tr() == boxes[i+1].bl() (the `next` relation); a chain
// spans B when it starts at bl(B) and ends at tr(B).
// ---------------------------------------------------------------------------

struct BoxChain {
    std::vector<Box> boxes;

    bool valid() const;
    bool spans(const Box& b) const;
    // Corner points of the chain (shared corners once).
    std::vector<Point> corner_points() const;
    // The unique chain box whose index interval contains x; throws if none.
    const Box& box_at(u64 x) const;
};

// Which box of a chain covers each index; error outside.
const Box& chain_box_at(const BoxChain& chain, u64 x);

// ---------------------------------------------------------------------------
// Strip decomposition of a box: cut indices partition X(B) into full-height
// strips. cuts are the interior right-endpoints, strictly increasing, inside
// (x_l, x_r).
// ---------------------------------------------------------------------------

struct StripDecomposition {
    Box parent;
    std::vector<u64> cuts;

    bool valid() const;
    std::vector<Box> strips() const;
    // Index of the strip containing x.
    std::size_t strip_index(u64 x) const;
};

// A chain is compatible with a decomposition when its boxes' index intervals
// are exactly the decomposition's strips.
bool chain_compatible(const BoxChain& chain, const StripDecomposition& strips);

// ---------------------------------------------------------------------------
// Grids. A B-grid is a product of interior column indices and net values;
// columns strictly inside X(B), values inside Y(B).
// ---------------------------------------------------------------------------

struct Grid {
    Box parent;
    std::vector<u64> xs;  // sorted, strictly inside (x_l, x_r)
    std::vector<u64> ys;  // sorted value net, within [y_b, y_t]

    bool valid() const;
    std::size_t columns() const { return xs.size(); }
};

}  // namespace sublis
