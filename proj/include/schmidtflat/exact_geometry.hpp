#pragma once

#include "schmidtflat/numeric.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace schmidtflat::geo {

// Exact rational planar geometry for the square-decomposition machinery.

struct RatVec {
    Rational x, y;

    RatVec() : x(0), y(0) {}
    RatVec(Rational xx, Rational yy) : x(std::move(xx)), y(std::move(yy)) {}
    RatVec operator+(const RatVec& o) const { return {x + o.x, y + o.y}; }
    RatVec operator-(const RatVec& o) const { return {x - o.x, y - o.y}; }
    RatVec operator*(const Rational& s) const { return {x * s, y * s}; }
    bool operator==(const RatVec& o) const { return x == o.x && y == o.y; }
    bool operator<(const RatVec& o) const { return std::tie(x, y) < std::tie(o.x, o.y); }
};

inline Rational cross(const RatVec& a, const RatVec& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const RatVec& a, const RatVec& b) { return a.x * b.x + a.y * b.y; }

inline int orient(const RatVec& a, const RatVec& b, const RatVec& c) {
    Rational v = cross(b - a, c - a);
    return v == 0 ? 0 : (v > 0 ? 1 : -1);
}

inline bool on_segment(const RatVec& a, const RatVec& b, const RatVec& p) {
    if (orient(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

enum class SegMeet { none, point, overlap };

// Classifies the intersection of two closed segments; meet_point is filled for
// the single-point case.
inline SegMeet segments_meet(const RatVec& a, const RatVec& b, const RatVec& c, const RatVec& d,
                             RatVec* meet_point = nullptr) {
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 == 0 && o2 == 0) {  // collinear
        // project on the dominant axis
        auto lo1 = std::min(a, b), hi1 = std::max(a, b);
        auto lo2 = std::min(c, d), hi2 = std::max(c, d);
        auto lo = std::max(lo1, lo2), hi = std::min(hi1, hi2);
        if (hi < lo) return SegMeet::none;
        if (lo == hi) {
            if (meet_point) *meet_point = lo;
            return SegMeet::point;
        }
        return SegMeet::overlap;
    }
    if (o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0) {
        if (meet_point) {
            Rational t = cross(c - a, d - c) / cross(b - a, d - c);
            *meet_point = a + (b - a) * t;
        }
        return SegMeet::point;
    }
    // touching cases: an endpoint lying on the other segment
    for (const auto& p : {c, d})
        if (on_segment(a, b, p)) {
            if (meet_point) *meet_point = p;
            return SegMeet::point;
        }
    for (const auto& p : {a, b})
        if (on_segment(c, d, p)) {
            if (meet_point) *meet_point = p;
            return SegMeet::point;
        }
    return SegMeet::none;
}

using Polygon = std::vector<RatVec>;  // convex, CCW

inline Rational polygon_area2(const Polygon& p) {  // twice the signed area
    Rational s(0);
    for (std::size_t i = 0; i < p.size(); ++i) s += cross(p[i], p[(i + 1) % p.size()]);
    return s;
}

// Sutherland-Hodgman clip of a convex CCW polygon against the half-plane
// cross(b - a, p - a) >= 0.
inline Polygon clip_halfplane(const Polygon& poly, const RatVec& a, const RatVec& b) {
    Polygon out;
    std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const RatVec& p = poly[i];
        const RatVec& q = poly[(i + 1) % n];
        Rational sp = cross(b - a, p - a);
        Rational sq = cross(b - a, q - a);
        if (sp >= 0) out.push_back(p);
        if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) {
            Rational t = sp / (sp - sq);
            out.push_back(p + (q - p) * t);
        }
    }
    return out;
}

inline Polygon clip_convex(const Polygon& subject, const Polygon& clip) {
    Polygon out = subject;
    std::size_t n = clip.size();
    for (std::size_t i = 0; i < n && !out.empty(); ++i)
        out = clip_halfplane(out, clip[i], clip[(i + 1) % n]);
    return out;
}

// Drops repeated vertices; keeps orientation.
inline Polygon dedup_polygon(Polygon p) {
    Polygon out;
    for (const auto& v : p)
        if (out.empty() || !(out.back() == v)) out.push_back(v);
    while (out.size() > 1 && out.front() == out.back()) out.pop_back();
    return out;
}

inline Rational intersection_area2(const Polygon& a, const Polygon& b) {
    Polygon c = clip_convex(a, b);
    if (c.size() < 3) return Rational(0);
    return polygon_area2(c);
}

// Canonical form of a convex polygon: vertices deduplicated, rotated so the
// lexicographically smallest comes first.
inline Polygon canonical_polygon(const Polygon& p) {
    Polygon q = dedup_polygon(p);
    if (q.empty()) return q;
    std::size_t best = 0;
    for (std::size_t i = 1; i < q.size(); ++i)
        if (q[i] < q[best]) best = i;
    Polygon out;
    for (std::size_t i = 0; i < q.size(); ++i) out.push_back(q[(best + i) % q.size()]);
    return out;
}

// Parameter interval of segment p + t (q - p), t in [0, 1], inside the convex
// CCW polygon. Returns nullopt for empty (or single-point) intersections.
inline std::optional<std::pair<Rational, Rational>> segment_in_polygon(const RatVec& p,
                                                                       const RatVec& q,
                                                                       const Polygon& poly) {
    Rational lo(0), hi(1);
    std::size_t n = poly.size();
    RatVec d = q - p;
    for (std::size_t i = 0; i < n; ++i) {
        const RatVec& a = poly[i];
        const RatVec& b = poly[(i + 1) % n];
        RatVec e = b - a;
        Rational denom = cross(e, d);
        Rational num = cross(e, p - a);  // signed position of p against edge
        if (denom == 0) {
            if (num < 0) return std::nullopt;  // parallel and outside
            continue;
        }
        Rational t = -num / denom;
        if (denom > 0) {
            if (t > lo) lo = t;
        } else {
            if (t < hi) hi = t;
        }
    }
    if (hi <= lo) return std::nullopt;
    return std::make_pair(lo, hi);
}

// True if the union of [lo, hi] intervals covers [0, 1] exactly (up to
// measure zero, which for closed sets means full coverage).
inline bool intervals_cover_unit(std::vector<std::pair<Rational, Rational>> iv) {
    std::sort(iv.begin(), iv.end());
    Rational reach(0);
    for (auto& [lo, hi] : iv) {
        if (lo > reach) return false;
        if (hi > reach) reach = hi;
        if (reach >= 1) return true;
    }
    return reach >= 1;
}

inline bool point_strictly_inside(const Polygon& poly, const RatVec& p) {
    std::size_t n = poly.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i)
        if (orient(poly[i], poly[(i + 1) % n], p) <= 0) return false;
    return true;
}

}  // namespace schmidtflat::geo
