#pragma once

#include "schmidtflat/angles.hpp"
#include "schmidtflat/parallel.hpp"
#include "schmidtflat/surface.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <mutex>
#include <numeric>
#include <vector>

namespace schmidtflat::surface {

struct BudgetExceeded : SurfaceError {
    using SurfaceError::SurfaceError;
};
struct IncompleteSpectrum : SurfaceError {
    using SurfaceError::SurfaceError;
};

// One saddle connection, holonomy normalized up to sign: v > 0, or v == 0 and
// h > 0. Lengths use the max-norm convention |g| = max(h(g), v(g)).
struct SaddleConnection {
    double h = 0, v = 0;   // signed holonomy after area normalization
    double theta = 0;      // angle making the connection vertical, in [0, pi)
    double length = 0;     // max(|h|, |v|)
    long la = 0, lb = 0;   // exact lattice holonomy (torus/origami); 0 otherwise
    int germ = -1;         // starting square / germ id
    int cls_a = -1, cls_b = -1;  // endpoint vertex classes

    double abs_h() const { return std::fabs(h); }
    double abs_v() const { return std::fabs(v); }
};

inline SaddleConnection make_lattice_entry(long a, long b, double scale, int germ, int ca,
                                           int cb) {
    SaddleConnection sc;
    sc.la = a;
    sc.lb = b;
    sc.h = a * scale;
    sc.v = b * scale;
    sc.theta = vertical_angle(static_cast<double>(a), static_cast<double>(b));
    sc.length = std::max(std::labs(a), std::labs(b)) * scale;
    sc.germ = germ;
    sc.cls_a = ca;
    sc.cls_b = cb;
    return sc;
}

namespace detail {

inline bool entry_less(const SaddleConnection& x, const SaddleConnection& y) {
    return std::tie(x.theta, x.length, x.la, x.lb, x.germ) <
           std::tie(y.theta, y.length, y.la, y.lb, y.germ);
}

// Walks the square decomposition along the primitive direction (a, b), b > 0,
// starting at the lower corner of square s0 (SW for a > 0, SE for a < 0).
// Crossing order is decided by exact integer comparisons.
inline int trace_origami(const OrigamiData& o, long a, long b, int s0) {
    int s = s0;
    long k = 1, l = 1;
    long A = std::labs(a);
    const auto& horiz = (a >= 0) ? o.h : o.h_inv;
    while (k < A || l < b) {
        if (k < A && (l >= b || k * b < l * A))
            s = horiz[s], ++k;
        else
            s = o.v[s], ++l;
    }
    return s;
}

// Calls fn(a, b) for every primitive lattice direction with b >= 1 and
// max(|a|, b) <= bound, plus (1, 0).
template <class F>
void for_each_primitive(long bound, F&& fn) {
    fn(1L, 0L);
    for (long b = 1; b <= bound; ++b)
        for (long a = -bound; a <= bound; ++a) {
            if (std::gcd(std::labs(a), b) != 1) continue;
            fn(a, b);
        }
}

}  // namespace detail

// Exhaustive spectrum up to a max-norm length bound. Torus spectra may be
// kept implicit (entries generated on demand) so that large bounds do not
// need materialized storage.
class DirectionSpectrum {
public:
    DirectionSpectrum() = default;

    const FlatSurface& surface() const { return *surface_; }
    double lmax() const { return lmax_; }
    bool complete() const { return complete_; }
    bool implicit() const { return implicit_; }

    const std::vector<SaddleConnection>& entries() const {
        if (implicit_) throw BudgetExceeded("spectrum is implicit; entry list not materialized");
        return entries_;
    }
    std::size_t size() const { return implicit_ ? implicit_count() : entries_.size(); }

    template <class F>
    void for_each(F&& fn) const {
        if (!implicit_) {
            for (const auto& e : entries_) fn(e);
            return;
        }
        long bound = lattice_bound();
        detail::for_each_primitive(bound, [&](long a, long b) {
            fn(make_lattice_entry(a, b, 1.0, 0, 0, 0));
        });
    }

    // Parallel reduction over entries. fold/merge must realize a total-order
    // min (or another commutative monoid) so the result does not depend on
    // the chunk partition.
    template <class Acc, class Fold, class Merge>
    Acc reduce(Acc init, Fold&& fn, Merge&& merge) const {
        if (!implicit_) {
            Acc acc = init;
            for (const auto& e : entries_) fn(acc, e);
            return acc;
        }
        long bound = lattice_bound();
        std::size_t rows = static_cast<std::size_t>(bound) + 1;
        std::vector<Acc> chunk_accs;
        std::mutex m;
        parallel_chunks(rows, [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
            Acc local = init;
            for (std::size_t row = lo; row < hi; ++row) {
                long b = static_cast<long>(row);
                if (b == 0) {
                    fn(local, make_lattice_entry(1, 0, 1.0, 0, 0, 0));
                    continue;
                }
                for (long a = -bound; a <= bound; ++a) {
                    if (std::gcd(std::labs(a), b) != 1) continue;
                    fn(local, make_lattice_entry(a, b, 1.0, 0, 0, 0));
                }
            }
            std::lock_guard<std::mutex> g(m);
            if (chunk_accs.size() <= chunk) chunk_accs.resize(chunk + 1, init);
            chunk_accs[chunk] = std::move(local);
        });
        Acc out = init;
        for (auto& a : chunk_accs) merge(out, a);
        return out;
    }

    static DirectionSpectrum implicit_torus(const FlatSurface& torus, double lmax) {
        if (torus.kind != SurfaceKind::torus)
            throw SurfaceError("implicit spectra exist only for the torus");
        DirectionSpectrum s;
        s.surface_ = &torus;
        s.lmax_ = lmax;
        s.complete_ = true;
        s.implicit_ = true;
        return s;
    }

    static DirectionSpectrum materialized(const FlatSurface& q, double lmax,
                                          std::vector<SaddleConnection> entries) {
        DirectionSpectrum s;
        s.surface_ = &q;
        s.lmax_ = lmax;
        s.complete_ = true;
        s.implicit_ = false;
        std::sort(entries.begin(), entries.end(), detail::entry_less);
        s.entries_ = std::move(entries);
        return s;
    }

private:
    long lattice_bound() const { return static_cast<long>(std::floor(lmax_ / surface_->scale)); }

    std::size_t implicit_count() const {
        std::size_t n = 0;
        long bound = lattice_bound();
        detail::for_each_primitive(bound, [&](long, long) { ++n; });
        return n;
    }

    const FlatSurface* surface_ = nullptr;
    double lmax_ = 0;
    bool complete_ = false;
    bool implicit_ = false;
    std::vector<SaddleConnection> entries_;
};

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

namespace detail {

constexpr int SW = 0, SE = 1, NE = 2, NW = 3;

inline void enumerate_origami(const FlatSurface& q, double lmax,
                              std::vector<SaddleConnection>& out, std::size_t budget) {
    const auto& o = q.ori;
    long bound = static_cast<long>(std::floor(lmax / q.scale + 1e-12));
    std::vector<std::pair<long, long>> dirs;
    for_each_primitive(bound, [&](long a, long b) { dirs.push_back({a, b}); });
    if (dirs.size() * o.n > budget)
        throw BudgetExceeded("spectrum would exceed the entry budget");

    auto cls = [&](int sq, int corner) { return o.corner_class[4 * sq + corner]; };
    std::vector<std::vector<SaddleConnection>> chunks;
    std::mutex m;
    parallel_chunks(dirs.size(), [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
        std::vector<SaddleConnection> local;
        for (std::size_t i = lo; i < hi; ++i) {
            auto [a, b] = dirs[i];
            for (int s0 = 0; s0 < o.n; ++s0) {
                if (b == 0) {  // bottom edge of square s0
                    local.push_back(
                        make_lattice_entry(1, 0, q.scale, s0, cls(s0, SW), cls(s0, SE)));
                    continue;
                }
                if (a == 0) {  // left edge of square s0
                    local.push_back(
                        make_lattice_entry(0, 1, q.scale, s0, cls(s0, SW), cls(s0, NW)));
                    continue;
                }
                int send = trace_origami(o, a, b, s0);
                int c0 = a > 0 ? cls(s0, SW) : cls(s0, SE);
                int c1 = a > 0 ? cls(send, NE) : cls(send, NW);
                local.push_back(make_lattice_entry(a, b, q.scale, s0, c0, c1));
            }
        }
        std::lock_guard<std::mutex> g(m);
        chunks.resize(std::max(chunks.size(), chunk + 1));
        chunks[chunk] = std::move(local);
    });
    for (auto& c : chunks)
        for (auto& e : c)
            if (e.length <= lmax + 1e-12 * lmax) out.push_back(e);
}

void enumerate_polygon(const FlatSurface& q, double lmax, std::vector<SaddleConnection>& out,
                       std::size_t budget);

}  // namespace detail

inline DirectionSpectrum enumerate_saddle_connections(const FlatSurface& q, double lmax,
                                                      std::size_t budget = 8'000'000) {
    if (lmax < q.systole()) throw SurfaceError("length bound is below the systole");
    std::vector<SaddleConnection> entries;
    if (q.kind == SurfaceKind::polygon)
        detail::enumerate_polygon(q, lmax, entries, budget);
    else
        detail::enumerate_origami(q, lmax, entries, budget);
    if (entries.size() > budget) throw BudgetExceeded("spectrum exceeds the entry budget");
    return DirectionSpectrum::materialized(q, lmax, std::move(entries));
}

// ---------------------------------------------------------------------------
// Flow action and the boundedness statistics
// ---------------------------------------------------------------------------

struct FlowParams {
    double t = 0;
    double theta = 0;
};

// g_t r_theta applied to a holonomy vector.
inline void flow_holonomy(double h, double v, const FlowParams& p, double& h_out, double& v_out) {
    double hr, vr;
    rotate_holonomy(h, v, p.theta, hr, vr);
    h_out = std::exp(p.t) * hr;
    v_out = std::exp(-p.t) * vr;
}

// Length of the flowed connection in the max-norm.
inline double flowed_length(const SaddleConnection& sc, double theta, double t) {
    double h, v;
    flow_holonomy(sc.h, sc.v, {t, theta}, h, v);
    return std::max(std::fabs(h), std::fabs(v));
}

// Shortest connection on g_t r_theta q among spectrum entries. Requires the
// spectrum to reach e^t: a longer connection cannot be the systole at time t
// on a unit-area surface.
inline double systole_along(const DirectionSpectrum& spec, double theta, double t) {
    if (spec.lmax() + 1e-9 < std::exp(t))
        throw IncompleteSpectrum("systole_along needs Lmax >= e^t");
    auto fold = [&](double& acc, const SaddleConnection& sc) {
        acc = std::min(acc, flowed_length(sc, theta, t));
    };
    auto merge = [](double& a, const double& b) { a = std::min(a, b); };
    return spec.reduce(std::numeric_limits<double>::infinity(), fold, merge);
}

// min over t of max(e^t sin(c) L, e^-t cos(c) L), attained at e^-t = sqrt(tan c).
inline double min_flow_length(double L, double c) {
    if (c < 0 || c > kPi / 4 + 1e-12) throw SurfaceError("angle difference must lie in [0, pi/4]");
    return L * std::sqrt(std::sin(c) * std::cos(c));
}

struct BadnessResult {
    double value = 0;
    SaddleConnection witness;
};

// min over the spectrum of |g|^2 d(theta_g, psi) with the mod-pi metric.
inline BadnessResult badness(const DirectionSpectrum& spec, double psi) {
    struct Acc {
        double value = std::numeric_limits<double>::infinity();
        SaddleConnection witness;
    };
    auto key = [](const SaddleConnection& e) { return std::tie(e.length, e.la, e.lb, e.germ); };
    auto fold = [&](Acc& acc, const SaddleConnection& sc) {
        double v = sc.length * sc.length * angle_dist(sc.theta, psi);
        if (v < acc.value || (v == acc.value && key(sc) < key(acc.witness))) {
            acc.value = v;
            acc.witness = sc;
        }
    };
    auto merge = [&](Acc& a, const Acc& b) {
        if (b.value < a.value || (b.value == a.value && key(b.witness) < key(a.witness))) a = b;
    };
    Acc out = spec.reduce(Acc{}, fold, merge);
    return {out.value, out.witness};
}

}  // namespace schmidtflat::surface

#include "schmidtflat/polygon_trace.hpp"
