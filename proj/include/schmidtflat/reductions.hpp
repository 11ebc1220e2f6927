#pragma once

#include "schmidtflat/game.hpp"

#include <memory>
#include <stdexcept>

namespace schmidtflat::game {

struct LiftFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Interval intersection in one dimension; centers unwrapped near `ref` on the
// circle. Returns nullopt when the intervals miss each other.
template <class R>
std::optional<Ball<R>> intersect_interval(const Space<R>& sp, const Ball<R>& a, const Ball<R>& b) {
    R ca = a.c1(), cb = b.c1();
    if (sp.kind == SpaceKind::circle) {
        R t = NumTraits<R>::wrap(R(cb - ca), sp.period);
        if (R(2) * t > sp.period) t -= sp.period;
        cb = ca + t;
    }
    R lo = std::max<R>(ca - a.radius, cb - b.radius);
    R hi = std::min<R>(ca + a.radius, cb + b.radius);
    if (hi < lo) return std::nullopt;
    R c = (lo + hi) / R(2);
    if (sp.kind == SpaceKind::circle) c = NumTraits<R>::wrap(c, sp.period);
    return Ball<R>::make(std::move(c), R((hi - lo) / R(2)));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Modified game -> absolute game.
//
// Alice plays the modified game only on the subsequence I_{1+rM} of Bob's
// balls. Her M planned blocks J_1..J_M for a batch are spent one per round:
// U_j = J_1, U_{j+1} = J_2 cap I_{j+1}, ..., U_{j+M-1} = J_M cap I_{j+M-1}.
// ---------------------------------------------------------------------------

template <class R>
class ReducedAbsoluteAlice final : public Strategy<R> {
public:
    ReducedAbsoluteAlice(Strategy<R>& alice_mod, int block_count)
        : alice_mod_(alice_mod), block_count_(block_count) {}

    // The modified game the wrapped strategy experiences, reconstructed from
    // an absolute transcript. Exposed so replays can validate it directly.
    Transcript<R> modified_view(const GameConfig<R>& abs_cfg, const Transcript<R>& t,
                                std::uint64_t seed) {
        GameConfig<R> mod_cfg = GameConfig<R>::modified_game(abs_cfg.beta, block_count_,
                                                             abs_cfg.space);
        Transcript<R> view(mod_cfg);
        int batches = (t.rounds() + block_count_ - 1) / block_count_;
        for (int q = 0; q < batches; ++q) {
            view.push(MoveRecord<R>::bob_ball(t.bob_ball(1 + q * block_count_)));
            view.push(alice_mod_.next(mod_cfg, view, seed));
        }
        return view;
    }

    // Blocks J_1..J_M planned for the batch that starts at Bob ball j0.
    std::vector<Ball<R>> batch_blocks(const GameConfig<R>& abs_cfg, const Transcript<R>& t,
                                      int j0, std::uint64_t seed) {
        GameConfig<R> mod_cfg = GameConfig<R>::modified_game(abs_cfg.beta, block_count_,
                                                             abs_cfg.space);
        Transcript<R> view(mod_cfg);
        for (int j = 1; j <= j0; j += block_count_) {
            view.push(MoveRecord<R>::bob_ball(t.bob_ball(j)));
            MoveRecord<R> mv = alice_mod_.next(mod_cfg, view, seed);
            if (j == j0) return mv.balls;
            view.push(std::move(mv));
        }
        return {};
    }

    MoveRecord<R> next(const GameConfig<R>& cfg, const Transcript<R>& t,
                       std::uint64_t seed) override {
        int j = t.rounds();
        int k = (j - 1) % block_count_;      // position within batch, 0-based
        int j0 = j - k;                      // batch anchor round
        std::vector<Ball<R>> planned = batch_blocks(cfg, t, j0, seed);
        if (k >= static_cast<int>(planned.size())) return MoveRecord<R>::alice_blocks({});
        if (k == 0) return MoveRecord<R>::alice_blocks({planned[0]});
        auto clipped = detail::intersect_interval(cfg.space, planned[k], t.bob_ball(j));
        if (!clipped) return MoveRecord<R>::alice_blocks({});
        return MoveRecord<R>::alice_blocks({*clipped});
    }

private:
    Strategy<R>& alice_mod_;
    int block_count_;
};

template <class R>
ReducedAbsoluteAlice<R> reduce_modified_to_absolute(Strategy<R>& alice_mod, int block_count) {
    return ReducedAbsoluteAlice<R>(alice_mod, block_count);
}

// ---------------------------------------------------------------------------
// Strategy transfer along a coordinate projection.
//
// alice_n wins the auxiliary (alpha, c^2 beta)-strong game upstairs; the
// wrapper turns her into a (c^2 alpha, beta)-strong player downstairs by
// lifting Bob's balls B(z, s) to B(z', c s) with F(z') = z.
// ---------------------------------------------------------------------------

template <class R>
struct ProjectionMap {
    int source_dim = 1;
    int target_dim = 1;
    R contraction = R(1);  // c; coordinate projections satisfy c = 1

    ProjectionMap(int n, int m, R c) : source_dim(n), target_dim(m), contraction(std::move(c)) {
        if (m < 1 || m > n) throw std::invalid_argument("projection needs 1 <= m <= n");
        if (!(contraction > 0 && contraction <= 1))
            throw std::invalid_argument("contraction constant must lie in (0,1]");
    }
};

template <class R>
class TransferStrategy final : public Strategy<R> {
public:
    TransferStrategy(Strategy<R>& alice_n, ProjectionMap<R> proj, R alpha)
        : alice_n_(alice_n), proj_(std::move(proj)), alpha_(std::move(alpha)),
          tail_(proj_.source_dim - proj_.target_dim, R(0)) {}

    void set_tail(std::vector<R> tail) {
        if (static_cast<int>(tail.size()) != proj_.source_dim - proj_.target_dim)
            throw std::invalid_argument("tail dimension mismatch");
        tail_ = std::move(tail);
    }

    GameConfig<R> auxiliary_config(const GameConfig<R>& cfg_m) const {
        R c2 = proj_.contraction * proj_.contraction;
        return GameConfig<R>::strong_game(alpha_, R(c2 * cfg_m.beta),
                                          Space<R>::line(proj_.source_dim));
    }

    // Replays the auxiliary game determined by the primary transcript's Bob
    // balls, including alice_n's responses.
    Transcript<R> auxiliary_transcript(const GameConfig<R>& cfg_m, const Transcript<R>& t,
                                       std::uint64_t seed) {
        GameConfig<R> cfg_n = auxiliary_config(cfg_m);
        Transcript<R> aux(cfg_n);
        for (int j = 1; j <= t.rounds(); ++j) {
            const Ball<R>& bm = t.bob_ball(j);
            Ball<R> lifted = lift(aux, bm);
            aux.push(MoveRecord<R>::bob_ball(std::move(lifted)));
            aux.push(alice_n_.next(cfg_n, aux, seed));
        }
        return aux;
    }

    MoveRecord<R> next(const GameConfig<R>& cfg, const Transcript<R>& t,
                       std::uint64_t seed) override {
        Transcript<R> aux = auxiliary_transcript(cfg, t, seed);
        const MoveRecord<R>* resp = aux.last_alice();
        if (!resp || resp->kind != MoveKind::ball) return MoveRecord<R>::resign(Mover::alice);
        const Ball<R>& xn = resp->balls[0];
        Ball<R> down;
        down.center.assign(xn.center.begin(), xn.center.begin() + proj_.target_dim);
        down.radius = proj_.contraction * xn.radius;
        return MoveRecord<R>::alice_ball(std::move(down));
    }

private:
    Ball<R> lift(const Transcript<R>& aux, const Ball<R>& bm) const {
        Ball<R> up;
        up.radius = proj_.contraction * bm.radius;
        up.center = bm.center;
        if (aux.empty()) {
            for (const auto& v : tail_) up.center.push_back(v);
            return up;
        }
        const MoveRecord<R>* prev = aux.last_alice();
        if (!prev) throw LiftFailure("auxiliary game out of phase");
        const Ball<R>& xk = prev->balls[0];
        for (int i = proj_.target_dim; i < proj_.source_dim; ++i) up.center.push_back(xk.center[i]);
        // B(z', c s) must fit inside alice_n's previous ball B(x_k, r).
        for (int i = 0; i < proj_.source_dim; ++i) {
            R gap = abs_val(R(up.center[i] - xk.center[i]));
            if (!approx_le<R>(R(gap + up.radius), xk.radius))
                throw LiftFailure("no legal lift: Bob's ball escapes the auxiliary ball");
        }
        return up;
    }

    Strategy<R>& alice_n_;
    ProjectionMap<R> proj_;
    R alpha_;
    std::vector<R> tail_;
};

// Strong-game Alice keeping the play away from a fixed list of danger points
// in coordinate 0 (the angle coordinate when wrapping a flat-surface player).
template <class R>
class DangerAvoidingAlice final : public Strategy<R> {
public:
    explicit DangerAvoidingAlice(std::vector<R> dangers) : dangers_(std::move(dangers)) {}

    MoveRecord<R> next(const GameConfig<R>& cfg, const Transcript<R>& t, std::uint64_t) override {
        const Ball<R>& B = t.last_bob_ball();
        Ball<R> A = B;
        A.radius = cfg.alpha * B.radius;
        R shift = B.radius - A.radius;
        R left = B.c1() - shift, right = B.c1() + shift;
        A.center[0] = nearest_danger_gap(left) >= nearest_danger_gap(right) ? left : right;
        return MoveRecord<R>::alice_ball(std::move(A));
    }

private:
    R nearest_danger_gap(const R& x) const {
        R best(-1);
        for (const auto& d : dangers_) {
            R g = abs_val(R(x - d));
            if (best < 0 || g < best) best = g;
        }
        return best < 0 ? R(1) : best;
    }

    std::vector<R> dangers_;
};

}  // namespace schmidtflat::game
