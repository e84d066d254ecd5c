#include "sublis/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace sublis {

PointRelation compare_points(const Point& p, const Point& q) {
    PointRelation r;
    r.leq = pt_leq(p, q);
    r.geq = pt_leq(q, p);
    r.prec = pt_prec(p, q);
    r.succ = pt_prec(q, p);
    r.se = pt_se(p, q);
    r.nw = pt_se(q, p);
    r.se_star = pt_se_star(p, q);
    r.nw_star = pt_se_star(q, p);
    if (p == q) {
        r.primary = PointOrder::Equal;
    } else if (p.x < q.x) {
        r.primary = p.y <= q.y ? PointOrder::Prec : PointOrder::SeViolation;
    } else if (p.x > q.x) {
        r.primary = q.y <= p.y ? PointOrder::Succ : PointOrder::NwViolation;
    } else {
        // Same index: only the starred relations separate them.
        r.primary = q.y > p.y ? PointOrder::StarNw : PointOrder::StarSe;
    }
    return r;
}

Region region_of(const Point& p, const Point& q) {
    if (pt_se_star(q, p)) return Region::NW;  // q strictly above, at or left of p
    if (pt_leq(q, p)) return Region::SW;
    if (pt_prec(p, q)) return Region::NE;
    return Region::SE;  // pt_se(p, q)
}

std::string region_name(Region r) {
    switch (r) {
        case Region::NW: return "NW";
        case Region::SW: return "SW";
        case Region::NE: return "NE";
        case Region::SE: return "SE";
    }
    return "?";
}

std::string Box::str() const {
    return "(" + std::to_string(xs.x_l) + "," + std::to_string(xs.x_r) + "]x[" +
           std::to_string(ys.y_b) + "," + std::to_string(ys.y_t) + "]";
}

Box box_spanned(const Point& q, const Point& r) {
    if (q.x > r.x || q.y > r.y)
        throw std::invalid_argument("box_spanned: corners not ordered: q=(" +
                                    std::to_string(q.x) + "," + std::to_string(q.y) + ") r=(" +
                                    std::to_string(r.x) + "," + std::to_string(r.y) + ")");
    return Box{{q.x, r.x}, {q.y, r.y}};
}

bool BoxChain::valid() const {
    if (boxes.empty()) return false;
    for (const Box& b : boxes)
        if (b.ys.y_b > b.ys.y_t || b.xs.x_l > b.xs.x_r) return false;
    for (std::size_t i = 0; i + 1 < boxes.size(); ++i)
        if (boxes[i].tr() != boxes[i + 1].bl()) return false;
    return true;
}

bool BoxChain::spans(const Box& b) const {
    return valid() && boxes.front().bl() == b.bl() && boxes.back().tr() == b.tr();
}

std::vector<Point> BoxChain::corner_points() const {
    std::vector<Point> pts;
    if (boxes.empty()) return pts;
    pts.push_back(boxes.front().bl());
    for (const Box& b : boxes) pts.push_back(b.tr());
    return pts;
}

const Box& BoxChain::box_at(u64 x) const {
    // Boxes are contiguous in index; binary search on the right endpoint.
    auto it = std::lower_bound(boxes.begin(), boxes.end(), x,
                               [](const Box& b, u64 v) { return b.xs.x_r < v; });
    if (it == boxes.end() || !it->xs.contains(x))
        throw std::out_of_range("index outside chain");
    return *it;
}

const Box& chain_box_at(const BoxChain& chain, u64 x) { return chain.box_at(x); }

bool StripDecomposition::valid() const {
    u64 prev = parent.xs.x_l;
    for (u64 c : cuts) {
        if (c <= prev || c >= parent.xs.x_r) return false;
        prev = c;
    }
    return parent.xs.x_l < parent.xs.x_r || cuts.empty();
}

std::vector<Box> StripDecomposition::strips() const {
    std::vector<Box> out;
    u64 left = parent.xs.x_l;
    for (u64 c : cuts) {
        out.push_back(Box{{left, c}, parent.ys});
        left = c;
    }
    out.push_back(Box{{left, parent.xs.x_r}, parent.ys});
    return out;
}

std::size_t StripDecomposition::strip_index(u64 x) const {
    if (!parent.xs.contains(x)) throw std::out_of_range("index outside decomposition");
    auto it = std::lower_bound(cuts.begin(), cuts.end(), x);
    return static_cast<std::size_t>(it - cuts.begin());
}

bool chain_compatible(const BoxChain& chain, const StripDecomposition& strips) {
    std::vector<Box> ss = strips.strips();
    if (chain.boxes.size() != ss.size()) return false;
    for (std::size_t i = 0; i < ss.size(); ++i)
        if (!(chain.boxes[i].xs == ss[i].xs)) return false;
    return chain.spans(strips.parent);
}

bool Grid::valid() const {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] <= parent.xs.x_l || xs[i] >= parent.xs.x_r) return false;
        if (i > 0 && xs[i] <= xs[i - 1]) return false;
    }
    for (std::size_t i = 0; i < ys.size(); ++i) {
        if (ys[i] < parent.ys.y_b || ys[i] > parent.ys.y_t) return false;
        if (i > 0 && ys[i] <= ys[i - 1]) return false;
    }
    return !ys.empty() || xs.empty();
}

}  // namespace sublis
