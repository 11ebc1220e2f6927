#pragma once

#include "schmidtflat/angles.hpp"
#include "schmidtflat/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace schmidtflat::surface {

struct SurfaceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotConnected : SurfaceError {
    using SurfaceError::SurfaceError;
};
struct IrrationalAngle : SurfaceError {
    using SurfaceError::SurfaceError;
};
struct BadPolygon : SurfaceError {
    using SurfaceError::SurfaceError;
};

struct Vec2 {
    double x = 0, y = 0;
    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
};
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }

// A cone point or marked point of the flat surface.
struct VertexClass {
    int corner_count = 0;        // angular sectors glued here
    Rational angle_over_pi = 0;  // cone angle / pi, exact
    int abelian_order = 0;       // angle = 2 pi (k+1)
    bool is_zero = false;        // order > 0
};

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

inline std::vector<int> invert_permutation(const std::vector<int>& p) {
    std::vector<int> inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
    return inv;
}

}  // namespace detail

// Square-tiled data: unit squares indexed 0..n-1, square i's right edge glued
// to h(i)'s left edge, its top edge to v(i)'s bottom edge. Corner c of square
// i is corner index 4i + c with c in {0=SW, 1=SE, 2=NE, 3=NW}.
struct OrigamiData {
    int n = 0;
    std::vector<int> h, v, h_inv, v_inv;
    std::vector<int> corner_class;  // 4n corners -> vertex class id
};

// Triangulated translation surface used for polygon unfoldings. Gluings carry
// which-endpoint correspondence; transitions between charts are translations.
struct TriSurface {
    struct Tri {
        std::array<Vec2, 3> p;       // chart coordinates, CCW
        std::array<int, 3> vclass;   // vertex class per corner
        std::array<int, 3> nbr_tri;  // across edge k = (p[k], p[k+1])
        std::array<int, 3> nbr_edge;
        std::array<bool, 3> nbr_flip;  // true: p[k] matches nbr p[k'+1] (reversed)
    };
    std::vector<Tri> tris;
    int copies = 0;  // unfolding copies (group order)
};

enum class SurfaceKind { torus, origami, polygon };

struct PolygonSpec {
    // Interior angles as exact multiples of pi; edge lengths may be empty for
    // a triangle (first edge defaults to 1, shape solved from the angles).
    std::vector<Rational> angles_over_pi;
    std::vector<double> edge_lengths;
};

class FlatSurface {
public:
    SurfaceKind kind = SurfaceKind::torus;
    OrigamiData ori;
    TriSurface tri;
    std::vector<VertexClass> classes;
    int genus = 0;
    double area_raw = 1.0;   // before normalization
    double scale = 1.0;      // lengths multiply by this after normalization
    std::string name = "torus";

    int zero_count() const {
        int z = 0;
        for (const auto& c : classes)
            if (c.is_zero) ++z;
        return z;
    }
    int point_count() const { return static_cast<int>(classes.size()); }

    // Abelian zero orders (order-0 marked points omitted).
    std::vector<int> zero_orders() const {
        std::vector<int> out;
        for (const auto& c : classes)
            if (c.is_zero) out.push_back(c.abelian_order);
        std::sort(out.rbegin(), out.rend());
        return out;
    }

    // Enumeration cap for complex levels; the structural cap for a single
    // complex is triangulation_edges().
    int max_complex_level() const { return std::max(1, 6 * genus - 6 + point_count()); }
    int triangulation_edges() const { return 6 * genus - 6 + 3 * point_count(); }

    // Shortest saddle connection after normalization.
    double systole() const {
        if (kind != SurfaceKind::polygon) return scale;  // unit lattice vectors
        double best = 0;
        bool first = true;
        for (const auto& t : tri.tris)
            for (int k = 0; k < 3; ++k) {
                double len = std::max(std::fabs(t.p[(k + 1) % 3].x - t.p[k].x),
                                      std::fabs(t.p[(k + 1) % 3].y - t.p[k].y));
                if (first || len < best) best = len, first = false;
            }
        return best * scale;
    }

    static FlatSurface build_torus() {
        return build_origami({0}, {0}, "torus");
    }

    static FlatSurface build_origami(const std::vector<int>& h, const std::vector<int>& v,
                                     std::string name = "origami") {
        int n = static_cast<int>(h.size());
        if (n == 0 || v.size() != h.size())
            throw SurfaceError("origami permutations must act on the same nonempty set");
        auto is_perm = [n](const std::vector<int>& p) {
            std::vector<bool> seen(n, false);
            for (int x : p) {
                if (x < 0 || x >= n || seen[x]) return false;
                seen[x] = true;
            }
            return true;
        };
        if (!is_perm(h) || !is_perm(v)) throw SurfaceError("not a permutation");

        FlatSurface s;
        s.kind = n == 1 ? SurfaceKind::torus : SurfaceKind::origami;
        s.name = std::move(name);
        s.ori.n = n;
        s.ori.h = h;
        s.ori.v = v;
        s.ori.h_inv = detail::invert_permutation(h);
        s.ori.v_inv = detail::invert_permutation(v);

        // connectivity of the square graph under <h, v>
        {
            std::vector<bool> seen(n, false);
            std::vector<int> stack{0};
            seen[0] = true;
            int reached = 1;
            while (!stack.empty()) {
                int i = stack.back();
                stack.pop_back();
                for (int j : {h[i], v[i], s.ori.h_inv[i], s.ori.v_inv[i]})
                    if (!seen[j]) {
                        seen[j] = true;
                        ++reached;
                        stack.push_back(j);
                    }
            }
            if (reached != n) throw NotConnected("origami data is not connected");
        }

        // vertex classes from corner identifications
        detail::UnionFind uf(4 * n);
        constexpr int SW = 0, SE = 1, NE = 2, NW = 3;
        for (int i = 0; i < n; ++i) {
            uf.unite(4 * i + SE, 4 * h[i] + SW);
            uf.unite(4 * i + NE, 4 * h[i] + NW);
            uf.unite(4 * i + NW, 4 * v[i] + SW);
            uf.unite(4 * i + NE, 4 * v[i] + SE);
        }
        std::map<int, int> root_to_class;
        s.ori.corner_class.assign(4 * n, -1);
        for (int c = 0; c < 4 * n; ++c) {
            int r = uf.find(c);
            auto [it, fresh] = root_to_class.try_emplace(r, static_cast<int>(root_to_class.size()));
            s.ori.corner_class[c] = it->second;
            if (fresh) s.classes.push_back({});
        }
        for (int c = 0; c < 4 * n; ++c) ++s.classes[s.ori.corner_class[c]].corner_count;
        for (auto& cl : s.classes) {
            cl.angle_over_pi = Rational(cl.corner_count, 2);  // pi/2 per corner
            Rational k = cl.angle_over_pi / 2 - 1;            // angle = 2 pi (k+1)
            if (boost::multiprecision::denominator(k) != 1)
                throw SurfaceError("inconsistent cone angle");
            cl.abelian_order = static_cast<int>(boost::multiprecision::numerator(k));
            cl.is_zero = cl.abelian_order > 0;
        }

        int V = static_cast<int>(s.classes.size());
        int chi = V - 2 * n + n;
        if ((2 - chi) % 2 != 0) throw SurfaceError("odd Euler characteristic");
        s.genus = (2 - chi) / 2;
        s.area_raw = n;
        s.scale = 1.0 / std::sqrt(static_cast<double>(n));
        return s;
    }

    static FlatSurface unfold_polygon(const PolygonSpec& spec);
};

// ---------------------------------------------------------------------------
// Rational polygon unfolding
// ---------------------------------------------------------------------------

namespace detail {

// Dihedral bookkeeping: rot k = rotation by 2 pi k / N, refl m = reflection
// across the line at angle pi m / N.
struct DihedralElem {
    bool refl = false;
    int k = 0;

    bool operator<(const DihedralElem& o) const {
        return std::tie(refl, k) < std::tie(o.refl, o.k);
    }
    bool operator==(const DihedralElem& o) const = default;
};

inline DihedralElem dihedral_compose(const DihedralElem& x, const DihedralElem& y, int N) {
    auto wrap = [N](int v) { return ((v % N) + N) % N; };
    if (!x.refl && !y.refl) return {false, wrap(x.k + y.k)};
    if (!x.refl && y.refl) return {true, wrap(y.k + x.k)};
    if (x.refl && !y.refl) return {true, wrap(x.k - y.k)};
    return {false, wrap(x.k - y.k)};
}

inline void dihedral_matrix(const DihedralElem& e, int N, double m[4]) {
    if (e.refl) {
        double a = 2.0 * kPi * e.k / N;  // doubled reflection angle
        m[0] = std::cos(a);
        m[1] = std::sin(a);
        m[2] = std::sin(a);
        m[3] = -std::cos(a);
    } else {
        double a = 2.0 * kPi * e.k / N;
        m[0] = std::cos(a);
        m[1] = -std::sin(a);
        m[2] = std::sin(a);
        m[3] = std::cos(a);
    }
    for (int i = 0; i < 4; ++i) {
        if (std::fabs(m[i]) < 1e-14) m[i] = 0;
        if (std::fabs(m[i] - 1) < 1e-14) m[i] = 1;
        if (std::fabs(m[i] + 1) < 1e-14) m[i] = -1;
    }
}

inline Vec2 apply_matrix(const double m[4], const Vec2& v) {
    return {m[0] * v.x + m[1] * v.y, m[2] * v.x + m[3] * v.y};
}

// Ear-clipping triangulation of a simple polygon (indices into vertex list,
// CCW orientation assumed).
inline std::vector<std::array<int, 3>> triangulate(const std::vector<Vec2>& pts) {
    int m = static_cast<int>(pts.size());
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::array<int, 3>> tris;
    auto area2 = [&](int a, int b, int c) {
        return cross(pts[b] - pts[a], pts[c] - pts[a]);
    };
    auto inside = [&](int a, int b, int c, int p) {
        return cross(pts[b] - pts[a], pts[p] - pts[a]) > 0 &&
               cross(pts[c] - pts[b], pts[p] - pts[b]) > 0 &&
               cross(pts[a] - pts[c], pts[p] - pts[c]) > 0;
    };
    int guard = 0;
    while (idx.size() > 3) {
        if (++guard > 10000) throw BadPolygon("triangulation failed");
        bool clipped = false;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            int a = idx[(i + idx.size() - 1) % idx.size()];
            int b = idx[i];
            int c = idx[(i + 1) % idx.size()];
            if (area2(a, b, c) <= 1e-14) continue;
            bool ear = true;
            for (int p : idx)
                if (p != a && p != b && p != c && inside(a, b, c, p)) {
                    ear = false;
                    break;
                }
            if (!ear) continue;
            tris.push_back({a, b, c});
            idx.erase(idx.begin() + i);
            clipped = true;
            break;
        }
        if (!clipped) throw BadPolygon("triangulation failed (non-simple polygon?)");
    }
    tris.push_back({idx[0], idx[1], idx[2]});
    return tris;
}

}  // namespace detail

inline FlatSurface FlatSurface::unfold_polygon(const PolygonSpec& spec) {
    const int m = static_cast<int>(spec.angles_over_pi.size());
    if (m < 3) throw BadPolygon("polygon needs at least three vertices");
    Rational angle_sum(0);
    for (const auto& a : spec.angles_over_pi) {
        if (!(a > 0 && a < 1)) throw IrrationalAngle("interior angles must lie in (0, pi)");
        angle_sum += a;
    }
    if (angle_sum != Rational(m - 2))
        throw BadPolygon("interior angles must sum to (m-2) pi");

    std::vector<double> lengths = spec.edge_lengths;
    if (lengths.empty() && m == 3) {
        // unit first edge; law of sines fixes the rest (edge e is opposite
        // the vertex e+2)
        double a0 = to_double(spec.angles_over_pi[0]) * kPi;
        double a1 = to_double(spec.angles_over_pi[1]) * kPi;
        double a2 = to_double(spec.angles_over_pi[2]) * kPi;
        lengths = {1.0, std::sin(a0) / std::sin(a2), std::sin(a1) / std::sin(a2)};
    }
    if (static_cast<int>(lengths.size()) != m)
        throw BadPolygon("edge length count must match vertex count");

    // turtle construction; headings are exact rational multiples of pi
    std::vector<Rational> heading(m);
    heading[0] = 0;
    for (int e = 1; e < m; ++e) heading[e] = heading[e - 1] + (1 - spec.angles_over_pi[e]);
    std::vector<Vec2> pts(m);
    pts[0] = {0, 0};
    for (int e = 0; e + 1 < m; ++e) {
        double th = to_double(heading[e]) * kPi;
        pts[e + 1] = pts[e] + Vec2{std::cos(th), std::sin(th)} * lengths[e];
    }
    {
        double th = to_double(heading[m - 1]) * kPi;
        Vec2 end = pts[m - 1] + Vec2{std::cos(th), std::sin(th)} * lengths[m - 1];
        double per = 0;
        for (double l : lengths) per += l;
        if (norm(end) > 1e-9 * per) throw BadPolygon("polygon does not close up");
    }

    // group generated by the edge-line reflections
    BigInt Nb(1);
    for (int e = 0; e < m; ++e) {
        Rational line = heading[e] - Rational(floor_rational(heading[e]));  // mod 1
        Nb = boost::multiprecision::lcm(Nb, boost::multiprecision::denominator(line));
    }
    int N = static_cast<int>(Nb);
    std::vector<detail::DihedralElem> gens;
    for (int e = 0; e < m; ++e) {
        Rational line = heading[e] * N;
        BigInt num = boost::multiprecision::numerator(line);
        if (boost::multiprecision::denominator(line) != 1)
            throw IrrationalAngle("edge direction is not in (pi/N) Z");
        int mm = static_cast<int>(num % N);
        gens.push_back({true, ((mm % N) + N) % N});
    }
    std::vector<detail::DihedralElem> group{{false, 0}};
    std::set<detail::DihedralElem> seen{group[0]};
    for (std::size_t i = 0; i < group.size(); ++i)
        for (const auto& g : gens) {
            auto next = detail::dihedral_compose(group[i], g, N);
            if (seen.insert(next).second) group.push_back(next);
        }
    std::sort(group.begin(), group.end());
    std::map<detail::DihedralElem, int> elem_index;
    for (std::size_t i = 0; i < group.size(); ++i) elem_index[group[i]] = static_cast<int>(i);
    const int C = static_cast<int>(group.size());

    // vertex classes over (copy, vertex)
    detail::UnionFind uf(C * m);
    for (int g = 0; g < C; ++g)
        for (int e = 0; e < m; ++e) {
            int gp = elem_index.at(detail::dihedral_compose(group[g], gens[e], N));
            uf.unite(g * m + e, gp * m + e);
            uf.unite(g * m + (e + 1) % m, gp * m + (e + 1) % m);
        }
    std::map<int, int> root_to_class;
    std::vector<int> vclass(C * m);
    FlatSurface s;
    for (int i = 0; i < C * m; ++i) {
        int r = uf.find(i);
        auto [it, fresh] = root_to_class.try_emplace(r, static_cast<int>(root_to_class.size()));
        vclass[i] = it->second;
        if (fresh) s.classes.push_back({});
    }
    for (int g = 0; g < C; ++g)
        for (int i = 0; i < m; ++i) {
            auto& cl = s.classes[vclass[g * m + i]];
            ++cl.corner_count;
            cl.angle_over_pi += spec.angles_over_pi[i];
        }
    for (auto& cl : s.classes) {
        Rational k = cl.angle_over_pi / 2 - 1;
        if (boost::multiprecision::denominator(k) != 1)
            throw BadPolygon("unfolding produced a fractional cone angle");
        cl.abelian_order = static_cast<int>(boost::multiprecision::numerator(k));
        cl.is_zero = cl.abelian_order > 0;
    }

    int V = static_cast<int>(s.classes.size());
    int E = C * m / 2;
    int chi = V - E + C;
    if ((2 - chi) % 2 != 0) throw BadPolygon("odd Euler characteristic");
    s.kind = SurfaceKind::polygon;
    s.name = "polygon";
    s.genus = (2 - chi) / 2;

    double poly_area = 0;
    for (int e = 0; e < m; ++e) poly_area += cross(pts[e], pts[(e + 1) % m]);
    poly_area = std::fabs(poly_area) / 2;
    s.area_raw = poly_area * C;
    s.scale = 1.0 / std::sqrt(s.area_raw);

    // triangulated copies, all CCW in their charts
    auto base_tris = detail::triangulate(pts);
    const int T = static_cast<int>(base_tris.size());
    s.tri.copies = C;
    s.tri.tris.resize(C * T);
    std::vector<std::array<double, 4>> mats(C);
    for (int g = 0; g < C; ++g) detail::dihedral_matrix(group[g], N, mats[g].data());
    for (int g = 0; g < C; ++g)
        for (int t = 0; t < T; ++t) {
            auto tri = base_tris[t];
            TriSurface::Tri out;
            bool flip = group[g].refl;
            for (int k = 0; k < 3; ++k) {
                int vi = tri[flip ? 2 - k : k];
                out.p[k] = detail::apply_matrix(mats[g].data(), pts[vi]);
                out.vclass[k] = vclass[g * m + vi];
            }
            out.nbr_tri = {-1, -1, -1};
            out.nbr_edge = {-1, -1, -1};
            out.nbr_flip = {false, false, false};
            s.tri.tris[g * T + t] = out;
        }

    // glue triangle edges: match by vertex-class pair within a copy
    // (diagonals) or across glued copies (polygon boundary edges)
    std::map<std::pair<int, std::pair<int, int>>, std::vector<std::pair<int, int>>> diag;
    auto vertex_of = [&](int g, int t, int k) {
        return base_tris[t][group[g].refl ? 2 - k : k];
    };
    for (int g = 0; g < C; ++g)
        for (int t = 0; t < T; ++t)
            for (int k = 0; k < 3; ++k) {
                int a = vertex_of(g, t, k), b = vertex_of(g, t, (k + 1) % 3);
                bool boundary = (b == (a + 1) % m) || (a == (b + 1) % m);
                if (boundary) continue;
                auto key = std::make_pair(g, std::minmax(a, b));
                diag[key].push_back({g * T + t, k});
            }
    for (auto& [key, lst] : diag) {
        if (lst.size() != 2) throw BadPolygon("triangulation diagonal mismatch");
        auto [t1, k1] = lst[0];
        auto [t2, k2] = lst[1];
        auto& A = s.tri.tris[t1];
        auto& B = s.tri.tris[t2];
        A.nbr_tri[k1] = t2;
        A.nbr_edge[k1] = k2;
        B.nbr_tri[k2] = t1;
        B.nbr_edge[k2] = k1;
        // same chart: endpoints are shared, detect correspondence by class+position
        A.nbr_flip[k1] = !(std::fabs(A.p[k1].x - B.p[k2].x) < 1e-9 &&
                           std::fabs(A.p[k1].y - B.p[k2].y) < 1e-9);
        B.nbr_flip[k2] = A.nbr_flip[k1];
    }
    // boundary edges: locate the triangle holding polygon edge e in each copy
    std::vector<std::vector<std::pair<int, int>>> edge_tri(C,
                                                           std::vector<std::pair<int, int>>(m));
    for (int g = 0; g < C; ++g)
        for (int t = 0; t < T; ++t)
            for (int k = 0; k < 3; ++k) {
                int a = vertex_of(g, t, k), b = vertex_of(g, t, (k + 1) % 3);
                if (b == (a + 1) % m) edge_tri[g][a] = {g * T + t, k};
                if (a == (b + 1) % m) edge_tri[g][b] = {g * T + t, k};
            }
    for (int g = 0; g < C; ++g)
        for (int e = 0; e < m; ++e) {
            int gp = elem_index.at(detail::dihedral_compose(group[g], gens[e], N));
            auto [t1, k1] = edge_tri[g][e];
            auto [t2, k2] = edge_tri[gp][e];
            auto& A = s.tri.tris[t1];
            A.nbr_tri[k1] = t2;
            A.nbr_edge[k1] = k2;
            // copy g edge endpoint v_e corresponds to copy g' endpoint v_e
            int a1 = vertex_of(g, t1 % T, k1);
            int a2 = vertex_of(gp, t2 % T, k2);
            A.nbr_flip[k1] = (a1 != a2);
        }
    return s;
}

}  // namespace schmidtflat::surface
