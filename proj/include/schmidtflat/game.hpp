#pragma once

#include "schmidtflat/numeric.hpp"

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace schmidtflat::game {

// ---------------------------------------------------------------------------
// Scalar traits: games run either on exact rationals or on doubles with a
// relative equality tolerance of 2^-40 (classic-game equality constraints are
// brittle in floating point, exact mode avoids the issue entirely).
// ---------------------------------------------------------------------------

template <class R>
struct NumTraits;

template <>
struct NumTraits<double> {
    static constexpr bool exact = false;
    static double tol() { return std::ldexp(1.0, -40); }
    static double wrap(double x, double period) {
        double t = std::fmod(x, period);
        if (t < 0) t += period;
        return t;
    }
    static std::string format(double x) { return format_double(x); }
    static std::optional<double> parse(const std::string& s) {
        try {
            std::size_t pos = 0;
            double v = std::stod(s, &pos);
            if (pos != s.size()) return std::nullopt;
            return v;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
};

template <>
struct NumTraits<Rational> {
    static constexpr bool exact = true;
    static Rational tol() { return Rational(0); }
    static Rational wrap(const Rational& x, const Rational& period) {
        Rational t = x - Rational(floor_rational(x / period)) * period;
        if (t < 0) t += period;
        if (t >= period) t -= period;
        return t;
    }
    static std::string format(const Rational& r) { return format_rational(r); }
    static std::optional<Rational> parse(const std::string& s) { return parse_rational(s); }
};

template <class R>
R abs_val(const R& x) {
    return x < 0 ? R(-x) : x;
}

// a == b up to relative tolerance (exact for rationals)
template <class R>
bool approx_eq(const R& a, const R& b) {
    R t = NumTraits<R>::tol() * std::max<R>(abs_val(a), abs_val(b));
    return abs_val(R(a - b)) <= t;
}

// a <= b up to relative tolerance
template <class R>
bool approx_le(const R& a, const R& b) {
    R t = NumTraits<R>::tol() * std::max<R>(abs_val(a), abs_val(b));
    return a <= b + t;
}

// ---------------------------------------------------------------------------
// Spaces and balls
// ---------------------------------------------------------------------------

enum class SpaceKind { line, circle };

template <class R>
struct Space {
    SpaceKind kind = SpaceKind::line;
    int dim = 1;     // circle is always one-dimensional
    R period = R(0); // circle only

    static Space line(int dim = 1) { return Space{SpaceKind::line, dim, R(0)}; }
    static Space circle(R period) { return Space{SpaceKind::circle, 1, std::move(period)}; }

    bool operator==(const Space&) const = default;
};

// Closed ball in the max metric (an interval/arc in dimension one). |B| below
// always refers to the diameter 2*radius.
template <class R>
struct Ball {
    std::vector<R> center;
    R radius = R(0);

    static Ball make(R c, R r) { return Ball{{std::move(c)}, std::move(r)}; }
    const R& c1() const { return center[0]; }
};

template <class R>
R coord_dist(const Space<R>& sp, const R& a, const R& b) {
    if (sp.kind == SpaceKind::line) return abs_val(R(a - b));
    R d = NumTraits<R>::wrap(R(a - b), sp.period);
    return std::min<R>(d, R(sp.period - d));
}

// max-metric distance between centers
template <class R>
R center_dist(const Space<R>& sp, const Ball<R>& a, const Ball<R>& b) {
    R best(0);
    for (int i = 0; i < sp.dim; ++i)
        best = std::max<R>(best, coord_dist(sp, a.center[i], b.center[i]));
    return best;
}

// Tolerance scale for center-difference comparisons: coordinate magnitudes
// dominate the rounding error, not the (possibly tiny) radii.
template <class R>
R coord_scale(const Ball<R>& a, const Ball<R>& b, int i) {
    return std::max<R>(std::max<R>(abs_val(a.center[i]), abs_val(b.center[i])),
                       std::max<R>(a.radius, b.radius));
}

template <class R>
bool ball_contains(const Space<R>& sp, const Ball<R>& outer, const Ball<R>& inner) {
    for (int i = 0; i < sp.dim; ++i) {
        R d = coord_dist(sp, outer.center[i], inner.center[i]);
        R slack = NumTraits<R>::tol() * coord_scale(outer, inner, i);
        if (!(d + inner.radius <= outer.radius + slack)) return false;
    }
    return true;
}

template <class R>
bool balls_disjoint(const Space<R>& sp, const Ball<R>& a, const Ball<R>& b) {
    // Touching boundaries count as disjoint: B' may live in the closure of B \ A.
    for (int i = 0; i < sp.dim; ++i) {
        R d = coord_dist(sp, a.center[i], b.center[i]);
        R slack = NumTraits<R>::tol() * coord_scale(a, b, i);
        if (a.radius + b.radius <= d + slack) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Config, moves, transcript
// ---------------------------------------------------------------------------

enum class Variant { classic, strong, absolute, modified_absolute };

inline const char* variant_name(Variant v) {
    switch (v) {
        case Variant::classic: return "classic";
        case Variant::strong: return "strong";
        case Variant::absolute: return "absolute";
        case Variant::modified_absolute: return "modified_absolute";
    }
    return "?";
}

inline std::optional<Variant> parse_variant(const std::string& s) {
    for (Variant v : {Variant::classic, Variant::strong, Variant::absolute,
                      Variant::modified_absolute})
        if (s == variant_name(v)) return v;
    return std::nullopt;
}

template <class R>
struct GameConfig {
    Variant variant = Variant::classic;
    R alpha = R(0);  // unused for absolute variants
    R beta = R(0);
    int block_count = 1;  // M, modified_absolute only
    Space<R> space = Space<R>::line(1);

    // Alice's per-block length bound: beta^M |I| in the modified game, beta |I|
    // in the plain absolute game. Bob's radius lower bound matches it so that
    // the block-M reduction produces legal subsequences.
    R block_ratio() const {
        if (variant == Variant::modified_absolute) return rational_like_pow(beta, block_count);
        return beta;
    }

    static GameConfig classic_game(R alpha, R beta, Space<R> sp = Space<R>::line(1)) {
        return checked(Variant::classic, std::move(alpha), std::move(beta), 1, std::move(sp));
    }
    static GameConfig strong_game(R alpha, R beta, Space<R> sp = Space<R>::line(1)) {
        return checked(Variant::strong, std::move(alpha), std::move(beta), 1, std::move(sp));
    }
    static GameConfig absolute_game(R beta, Space<R> sp = Space<R>::line(1)) {
        return checked(Variant::absolute, R(0), std::move(beta), 1, std::move(sp));
    }
    static GameConfig modified_game(R beta, int blocks, Space<R> sp = Space<R>::line(1)) {
        return checked(Variant::modified_absolute, R(0), std::move(beta), blocks, std::move(sp));
    }

    static GameConfig checked(Variant v, R alpha, R beta, int blocks, Space<R> sp) {
        GameConfig c{v, std::move(alpha), std::move(beta), blocks, std::move(sp)};
        if (!(c.beta > 0 && c.beta < 1)) throw std::invalid_argument("beta must lie in (0,1)");
        if (v == Variant::classic || v == Variant::strong) {
            if (!(c.alpha > 0 && c.alpha < 1))
                throw std::invalid_argument("alpha must lie in (0,1)");
        }
        if (v == Variant::absolute) {
            if (!(R(3) * c.beta < 1))
                throw std::invalid_argument("absolute game requires beta < 1/3");
        }
        if (v == Variant::modified_absolute) {
            if (blocks < 1) throw std::invalid_argument("block count must be positive");
            if (!(R(2 * blocks + 1) * c.beta < 1))
                throw std::invalid_argument("modified game requires (2M+1) beta < 1");
        }
        if (v == Variant::absolute || v == Variant::modified_absolute) {
            if (c.space.dim != 1)
                throw std::invalid_argument("absolute variants are one-dimensional");
        }
        return c;
    }

private:
    static R rational_like_pow(R base, int e) {
        R acc(1);
        for (int i = 0; i < e; ++i) acc = acc * base;
        return acc;
    }
};

enum class Mover { alice, bob };
enum class MoveKind { ball, blocks, resign };

inline const char* mover_name(Mover m) { return m == Mover::alice ? "alice" : "bob"; }

template <class R>
struct MoveRecord {
    Mover mover = Mover::bob;
    MoveKind kind = MoveKind::ball;
    std::vector<Ball<R>> balls;  // one ball, or Alice's blocks in absolute variants

    static MoveRecord bob_ball(Ball<R> b) { return {Mover::bob, MoveKind::ball, {std::move(b)}}; }
    static MoveRecord alice_ball(Ball<R> b) {
        return {Mover::alice, MoveKind::ball, {std::move(b)}};
    }
    static MoveRecord alice_blocks(std::vector<Ball<R>> bs) {
        return {Mover::alice, MoveKind::blocks, std::move(bs)};
    }
    static MoveRecord resign(Mover m) { return {m, MoveKind::resign, {}}; }
};

struct Verdict {
    bool ok = true;
    std::string code;    // IllegalRadius | NotContained | OverlapsBlock | BadShape | WrongTurn
    std::string detail;

    static Verdict legal() { return {}; }
    static Verdict illegal(std::string code, std::string detail) {
        return {false, std::move(code), std::move(detail)};
    }
};

template <class R>
class Transcript {
public:
    Transcript() = default;
    explicit Transcript(GameConfig<R> cfg) : config_(std::move(cfg)) {}

    const GameConfig<R>& config() const { return config_; }
    const std::vector<MoveRecord<R>>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    Mover expected_mover() const {
        if (records_.empty()) return Mover::bob;
        return records_.back().mover == Mover::bob ? Mover::alice : Mover::bob;
    }

    // Rounds are indexed by Bob's balls: round j covers (B_j, A_j).
    int rounds() const { return bob_count_; }

    const Ball<R>& bob_ball(int j) const { return records_[bob_index_.at(j - 1)].balls[0]; }
    const Ball<R>& last_bob_ball() const { return records_[bob_index_.back()].balls[0]; }
    const MoveRecord<R>* last_alice() const {
        if (records_.empty() || records_.back().mover != Mover::alice) return nullptr;
        return &records_.back();
    }
    const Ball<R>& final_interval() const { return last_bob_ball(); }

    void push(MoveRecord<R> rec) {
        if (rec.mover == Mover::bob && rec.kind == MoveKind::ball) {
            bob_index_.push_back(records_.size());
            ++bob_count_;
        }
        records_.push_back(std::move(rec));
    }

private:
    GameConfig<R> config_;
    std::vector<MoveRecord<R>> records_;
    std::vector<std::size_t> bob_index_;
    int bob_count_ = 0;
};

// ---------------------------------------------------------------------------
// Legality
// ---------------------------------------------------------------------------

template <class R>
Verdict check_ball_shape(const GameConfig<R>& cfg, const Ball<R>& b, bool is_block) {
    if (static_cast<int>(b.center.size()) != cfg.space.dim)
        return Verdict::illegal("BadShape", "ball dimension mismatch");
    if (is_block ? (b.radius < 0) : !(b.radius > 0))
        return Verdict::illegal("IllegalRadius", "radius must be positive");
    if (cfg.space.kind == SpaceKind::circle && !(R(2) * b.radius < cfg.space.period))
        return Verdict::illegal("IllegalRadius", "ball wraps around the circle");
    return Verdict::legal();
}

template <class R>
Verdict validate_move(const GameConfig<R>& cfg, const Transcript<R>& history,
                      const MoveRecord<R>& mv) {
    if (mv.kind == MoveKind::resign) return Verdict::legal();
    if (mv.mover != history.expected_mover())
        return Verdict::illegal("WrongTurn", "move out of turn");

    bool absolute_like =
        cfg.variant == Variant::absolute || cfg.variant == Variant::modified_absolute;

    if (mv.mover == Mover::alice) {
        if (absolute_like) {
            if (mv.kind != MoveKind::blocks)
                return Verdict::illegal("BadShape", "alice must submit blocks");
            int max_blocks = cfg.variant == Variant::modified_absolute ? cfg.block_count : 1;
            if (static_cast<int>(mv.balls.size()) > max_blocks)
                return Verdict::illegal("BadShape", "too many blocks");
            const Ball<R>& I = history.last_bob_ball();
            R bound = cfg.block_ratio() * I.radius;
            for (const auto& blk : mv.balls) {
                if (auto v = check_ball_shape(cfg, blk, true); !v.ok) return v;
                if (!approx_le<R>(blk.radius, bound))
                    return Verdict::illegal("IllegalRadius", "block longer than allowed");
            }
            return Verdict::legal();
        }
        if (mv.kind != MoveKind::ball || mv.balls.size() != 1)
            return Verdict::illegal("BadShape", "alice must submit one ball");
        const Ball<R>& A = mv.balls[0];
        if (auto v = check_ball_shape(cfg, A, false); !v.ok) return v;
        const Ball<R>& B = history.last_bob_ball();
        R target = cfg.alpha * B.radius;
        bool size_ok = cfg.variant == Variant::classic ? approx_eq<R>(A.radius, target)
                                                       : approx_le<R>(target, A.radius);
        if (!size_ok)
            return Verdict::illegal("IllegalRadius", cfg.variant == Variant::classic
                                                         ? "|A| must equal alpha |B|"
                                                         : "|A| must be at least alpha |B|");
        if (!ball_contains(cfg.space, B, A))
            return Verdict::illegal("NotContained", "A must lie inside B");
        return Verdict::legal();
    }

    // Bob
    if (mv.kind != MoveKind::ball || mv.balls.size() != 1)
        return Verdict::illegal("BadShape", "bob must submit one ball");
    const Ball<R>& Bn = mv.balls[0];
    if (auto v = check_ball_shape(cfg, Bn, false); !v.ok) return v;
    if (history.empty()) return Verdict::legal();  // opening ball is unconstrained

    if (absolute_like) {
        const MoveRecord<R>* blocks = history.last_alice();
        const Ball<R>& I = history.last_bob_ball();
        if (!approx_le<R>(R(cfg.block_ratio() * I.radius), Bn.radius))
            return Verdict::illegal("IllegalRadius", "|B'| must be at least the block ratio |B|");
        if (!ball_contains(cfg.space, I, Bn))
            return Verdict::illegal("NotContained", "B' must lie inside B");
        if (blocks)
            for (const auto& blk : blocks->balls)
                if (!balls_disjoint(cfg.space, Bn, blk))
                    return Verdict::illegal("OverlapsBlock", "B' meets a blocked interval");
        return Verdict::legal();
    }

    const MoveRecord<R>* alice = history.last_alice();
    if (!alice || alice->kind != MoveKind::ball)
        return Verdict::illegal("WrongTurn", "bob before alice's reply");
    const Ball<R>& A = alice->balls[0];
    R target = cfg.beta * A.radius;
    bool size_ok = cfg.variant == Variant::classic ? approx_eq<R>(Bn.radius, target)
                                                   : approx_le<R>(target, Bn.radius);
    if (!size_ok)
        return Verdict::illegal("IllegalRadius", cfg.variant == Variant::classic
                                                     ? "|B'| must equal beta |A|"
                                                     : "|B'| must be at least beta |A|");
    if (!ball_contains(cfg.space, A, Bn))
        return Verdict::illegal("NotContained", "B' must lie inside A");
    return Verdict::legal();
}

// Re-validates every prefix of a transcript.
template <class R>
Verdict validate_transcript(const Transcript<R>& t) {
    Transcript<R> prefix(t.config());
    for (const auto& rec : t.records()) {
        Verdict v = validate_move(t.config(), prefix, rec);
        if (!v.ok) return v;
        prefix.push(rec);
    }
    return Verdict::legal();
}

// ---------------------------------------------------------------------------
// Strategies and the game loop
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform double in [0,1) derived from (seed, round, salt); strategies stay
// pure functions of their inputs.
inline double seeded_unit(std::uint64_t seed, std::uint64_t round, std::uint64_t salt) {
    std::uint64_t h = splitmix64(seed ^ splitmix64(round ^ splitmix64(salt)));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

template <class R>
class Strategy {
public:
    virtual ~Strategy() = default;
    virtual MoveRecord<R> next(const GameConfig<R>& cfg, const Transcript<R>& so_far,
                               std::uint64_t seed) = 0;
};

enum class PlayOutcome { completed, resigned, aborted };

template <class R>
struct PlayResult {
    Transcript<R> transcript;
    PlayOutcome outcome = PlayOutcome::completed;
    Mover offender = Mover::alice;  // aborted/resigned mover
    int round = 0;
    Verdict verdict;  // reason when aborted

    bool ok() const { return outcome != PlayOutcome::aborted; }
};

template <class R>
PlayResult<R> play(const GameConfig<R>& cfg, Strategy<R>& alice, Strategy<R>& bob, int rounds,
                   std::uint64_t seed) {
    PlayResult<R> result;
    result.transcript = Transcript<R>(cfg);
    auto& t = result.transcript;
    while (t.rounds() < rounds) {
        Mover m = t.expected_mover();
        Strategy<R>& s = (m == Mover::bob) ? bob : alice;
        MoveRecord<R> mv = s.next(cfg, t, seed);
        if (mv.kind == MoveKind::resign) {
            result.outcome = PlayOutcome::resigned;
            result.offender = m;
            result.round = t.rounds();
            return result;
        }
        Verdict v = validate_move(cfg, t, mv);
        if (!v.ok) {
            result.outcome = PlayOutcome::aborted;
            result.offender = m;
            result.round = t.rounds() + (m == Mover::bob ? 1 : 0);
            result.verdict = std::move(v);
            return result;
        }
        t.push(std::move(mv));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Built-in elementary strategies
// ---------------------------------------------------------------------------

// Classic/strong Alice playing concentrically with the minimal legal radius.
template <class R>
class ConcentricAlice final : public Strategy<R> {
public:
    MoveRecord<R> next(const GameConfig<R>& cfg, const Transcript<R>& t, std::uint64_t) override {
        Ball<R> b = t.last_bob_ball();
        b.radius = cfg.alpha * b.radius;
        return MoveRecord<R>::alice_ball(std::move(b));
    }
};

// Absolute/modified Alice blocking the leftmost admissible subinterval(s).
template <class R>
class LeftmostBlockAlice final : public Strategy<R> {
public:
    MoveRecord<R> next(const GameConfig<R>& cfg, const Transcript<R>& t, std::uint64_t) override {
        const Ball<R>& I = t.last_bob_ball();
        R r = cfg.block_ratio() * I.radius;
        int n = cfg.variant == Variant::modified_absolute ? cfg.block_count : 1;
        std::vector<Ball<R>> blocks;
        R left = I.c1() - I.radius;
        for (int i = 0; i < n; ++i) {
            // Lay blocks side by side from the left edge.
            R c = left + r + R(2 * i) * r;
            blocks.push_back(Ball<R>::make(c, r));
        }
        return MoveRecord<R>::alice_blocks(std::move(blocks));
    }
};

// Alice that never blocks anything (negative-control runs).
template <class R>
class NullAlice final : public Strategy<R> {
public:
    MoveRecord<R> next(const GameConfig<R>&, const Transcript<R>&, std::uint64_t) override {
        return MoveRecord<R>::alice_blocks({});
    }
};

namespace detail {

// Admissible center positions for Bob in [lo, hi] (1-D, coordinates unwrapped)
// after removing Alice's blocks; returns candidate gap intervals for centers
// of a ball with the given radius.
template <class R>
std::vector<std::pair<R, R>> bob_gaps(R lo, R hi, R radius, const std::vector<Ball<R>>& blocks,
                                      const std::vector<R>& block_centers) {
    std::vector<std::pair<R, R>> segs{{lo, hi}};
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        R blo = block_centers[i] - blocks[i].radius - radius;
        R bhi = block_centers[i] + blocks[i].radius + radius;
        std::vector<std::pair<R, R>> out;
        for (auto& [slo, shi] : segs) {
            if (bhi <= slo || blo >= shi) {
                out.emplace_back(slo, shi);
                continue;
            }
            if (blo > slo) out.emplace_back(slo, blo);
            if (bhi < shi) out.emplace_back(bhi, shi);
        }
        segs = std::move(out);
    }
    return segs;
}

}  // namespace detail

// Bob with the smallest legal radius, placed in the widest gap left by Alice
// (constructive witness that beta < 1/3 resp. (2M+1) beta < 1 keeps him alive).
template <class R>
class GreedyGapBob final : public Strategy<R> {
public:
    explicit GreedyGapBob(Ball<R> opening) : opening_(std::move(opening)) {}

    MoveRecord<R> next(const GameConfig<R>& cfg, const Transcript<R>& t, std::uint64_t) override {
        if (t.empty()) return MoveRecord<R>::bob_ball(opening_);
        const Ball<R>& I = t.last_bob_ball();
        if (cfg.variant == Variant::classic || cfg.variant == Variant::strong) {
            Ball<R> a = t.last_alice()->balls[0];
            a.radius = cfg.beta * a.radius;
            return MoveRecord<R>::bob_ball(std::move(a));
        }
        R radius = cfg.block_ratio() * I.radius;
        const auto& blocks = t.last_alice()->balls;
        std::vector<R> centers;
        for (const auto& b : blocks) centers.push_back(unwrap(cfg, b.c1(), I.c1()));
        auto gaps = detail::bob_gaps<R>(I.c1() - I.radius + radius, I.c1() + I.radius - radius,
                                        radius, blocks, centers);
        if (gaps.empty()) return MoveRecord<R>::resign(Mover::bob);
        std::size_t best = 0;
        for (std::size_t i = 1; i < gaps.size(); ++i)
            if (gaps[i].second - gaps[i].first > gaps[best].second - gaps[best].first) best = i;
        R c = (gaps[best].first + gaps[best].second) / R(2);
        if (cfg.space.kind == SpaceKind::circle) c = NumTraits<R>::wrap(c, cfg.space.period);
        return MoveRecord<R>::bob_ball(Ball<R>::make(c, radius));
    }

private:
    static R unwrap(const GameConfig<R>& cfg, const R& x, const R& ref) {
        if (cfg.space.kind == SpaceKind::line) return x;
        R t = NumTraits<R>::wrap(R(x - ref), cfg.space.period);
        if (R(2) * t > cfg.space.period) t -= cfg.space.period;
        return ref + t;
    }

    Ball<R> opening_;
};

// Seeded random Bob: minimal radius, uniformly random admissible position.
template <class R>
class RandomBob final : public Strategy<R> {
public:
    explicit RandomBob(Ball<R> opening) : opening_(std::move(opening)) {}

    MoveRecord<R> next(const GameConfig<R>& cfg, const Transcript<R>& t,
                       std::uint64_t seed) override {
        if (t.empty()) return MoveRecord<R>::bob_ball(opening_);
        const Ball<R>& I = t.last_bob_ball();
        double u = seeded_unit(seed, t.rounds(), 0xb0b);
        if (cfg.variant == Variant::classic || cfg.variant == Variant::strong) {
            const Ball<R>& A = t.last_alice()->balls[0];
            R radius = cfg.beta * A.radius;
            R span = A.radius - radius;
            R c = A.c1() - span + from_unit(R(2) * span, u);
            return MoveRecord<R>::bob_ball(Ball<R>::make(std::move(c), std::move(radius)));
        }
        R radius = cfg.block_ratio() * I.radius;
        const auto& blocks = t.last_alice()->balls;
        std::vector<R> centers;
        for (const auto& b : blocks) centers.push_back(unwrap(cfg, b.c1(), I.c1()));
        auto gaps = detail::bob_gaps<R>(I.c1() - I.radius + radius, I.c1() + I.radius - radius,
                                        radius, blocks, centers);
        if (gaps.empty()) return MoveRecord<R>::resign(Mover::bob);
        R total(0);
        for (auto& [lo, hi] : gaps) total += hi - lo;
        R pick = from_unit(total, u);
        R c = gaps.back().second;
        for (auto& [lo, hi] : gaps) {
            R w = hi - lo;
            if (pick <= w) {
                c = lo + pick;
                break;
            }
            pick -= w;
        }
        if (cfg.space.kind == SpaceKind::circle) c = NumTraits<R>::wrap(c, cfg.space.period);
        return MoveRecord<R>::bob_ball(Ball<R>::make(std::move(c), std::move(radius)));
    }

private:
    static R from_unit(const R& span, double u) {
        if constexpr (NumTraits<R>::exact) {
            return span * Rational(static_cast<long long>(u * (1LL << 30)), 1LL << 30);
        } else {
            return span * u;
        }
    }
    static R unwrap(const GameConfig<R>& cfg, const R& x, const R& ref) {
        if (cfg.space.kind == SpaceKind::line) return x;
        R t = NumTraits<R>::wrap(R(x - ref), cfg.space.period);
        if (R(2) * t > cfg.space.period) t -= cfg.space.period;
        return ref + t;
    }

    Ball<R> opening_;
};

// ---------------------------------------------------------------------------
// Transcript serialization: one record per line, bit-exact in rational mode.
// ---------------------------------------------------------------------------

template <class R>
void write_transcript(std::ostream& os, const Transcript<R>& t) {
    const auto& cfg = t.config();
    os << "# schmidtflat transcript v1\n";
    os << "config " << variant_name(cfg.variant) << " alpha " << NumTraits<R>::format(cfg.alpha)
       << " beta " << NumTraits<R>::format(cfg.beta) << " blocks " << cfg.block_count << " space "
       << (cfg.space.kind == SpaceKind::circle ? "circle" : "line") << " dim " << cfg.space.dim;
    if (cfg.space.kind == SpaceKind::circle)
        os << " period " << NumTraits<R>::format(cfg.space.period);
    os << " mode " << (NumTraits<R>::exact ? "exact" : "float") << "\n";
    int round = 0;
    for (const auto& rec : t.records()) {
        if (rec.mover == Mover::bob && rec.kind == MoveKind::ball) ++round;
        os << round << " " << mover_name(rec.mover) << " " << variant_name(cfg.variant);
        if (rec.kind == MoveKind::resign) {
            os << " resign\n";
            continue;
        }
        for (const auto& b : rec.balls) {
            os << " |";
            for (const auto& c : b.center) os << " " << NumTraits<R>::format(c);
            os << " " << NumTraits<R>::format(b.radius);
        }
        os << "\n";
    }
}

template <class R>
std::optional<Transcript<R>> read_transcript(std::istream& is) {
    std::string line;
    GameConfig<R> cfg;
    bool have_cfg = false;
    std::optional<Transcript<R>> out;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string tok;
        ss >> tok;
        if (tok == "config") {
            std::string vname;
            ss >> vname;
            auto var = parse_variant(vname);
            if (!var) return std::nullopt;
            R alpha(0), beta(0), period(0);
            int blocks = 1, dim = 1;
            SpaceKind kind = SpaceKind::line;
            std::string key, val;
            while (ss >> key) {
                if (key == "space") {
                    ss >> val;
                    kind = (val == "circle") ? SpaceKind::circle : SpaceKind::line;
                    continue;
                }
                ss >> val;
                if (key == "alpha") {
                    auto p = NumTraits<R>::parse(val);
                    if (!p) return std::nullopt;
                    alpha = *p;
                } else if (key == "beta") {
                    auto p = NumTraits<R>::parse(val);
                    if (!p) return std::nullopt;
                    beta = *p;
                } else if (key == "blocks") {
                    blocks = std::stoi(val);
                } else if (key == "dim") {
                    dim = std::stoi(val);
                } else if (key == "period") {
                    auto p = NumTraits<R>::parse(val);
                    if (!p) return std::nullopt;
                    period = *p;
                }
            }
            Space<R> sp = kind == SpaceKind::circle ? Space<R>::circle(period)
                                                    : Space<R>::line(dim);
            try {
                cfg = GameConfig<R>::checked(*var, alpha, beta, blocks, sp);
            } catch (const std::exception&) {
                return std::nullopt;
            }
            out.emplace(cfg);
            have_cfg = true;
            continue;
        }
        if (!have_cfg) return std::nullopt;
        // "<round> <mover> <variant> [resign | (| c.. r)+]"
        std::string mover, vname;
        mover = "";
        ss >> mover >> vname;
        Mover m = (mover == "alice") ? Mover::alice : Mover::bob;
        MoveRecord<R> rec;
        rec.mover = m;
        std::string rest;
        std::getline(ss, rest);
        std::istringstream rs(rest);
        std::string piece;
        std::vector<std::string> toks;
        while (rs >> piece) toks.push_back(piece);
        if (!toks.empty() && toks[0] == "resign") {
            rec.kind = MoveKind::resign;
            out->push(std::move(rec));
            continue;
        }
        bool absolute_like = cfg.variant == Variant::absolute ||
                             cfg.variant == Variant::modified_absolute;
        rec.kind = (m == Mover::alice && absolute_like) ? MoveKind::blocks : MoveKind::ball;
        std::size_t i = 0;
        while (i < toks.size()) {
            if (toks[i] != "|") return std::nullopt;
            ++i;
            Ball<R> b;
            for (int d = 0; d < cfg.space.dim; ++d, ++i) {
                if (i >= toks.size()) return std::nullopt;
                auto p = NumTraits<R>::parse(toks[i]);
                if (!p) return std::nullopt;
                b.center.push_back(*p);
            }
            if (i >= toks.size()) return std::nullopt;
            auto p = NumTraits<R>::parse(toks[i]);
            if (!p) return std::nullopt;
            b.radius = *p;
            ++i;
            rec.balls.push_back(std::move(b));
        }
        out->push(std::move(rec));
    }
    return out;
}

}  // namespace schmidtflat::game
