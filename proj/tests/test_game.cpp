#include <catch2/catch_amalgamated.hpp>

#include "schmidtflat/game.hpp"

#include <sstream>

using namespace schmidtflat;
using namespace schmidtflat::game;

namespace {

using RBall = Ball<Rational>;
using DBall = Ball<double>;

// Alice blocking a seeded-random admissible spot each round; used to stress
// the fallback Bob.
class RandomBlockAlice final : public Strategy<Rational> {
public:
    MoveRecord<Rational> next(const GameConfig<Rational>& cfg, const Transcript<Rational>& t,
                              std::uint64_t seed) override {
        const auto& I = t.last_bob_ball();
        Rational r = cfg.block_ratio() * I.radius;
        int n = cfg.variant == Variant::modified_absolute ? cfg.block_count : 1;
        std::vector<RBall> blocks;
        for (int i = 0; i < n; ++i) {
            double u = seeded_unit(seed, t.rounds(), 100 + i);
            Rational off = Rational(static_cast<long long>(u * 1024), 1024) *
                           (Rational(2) * (I.radius - r));
            blocks.push_back(RBall::make(I.c1() - I.radius + r + off, r));
        }
        return MoveRecord<Rational>::alice_blocks(std::move(blocks));
    }
};

class ResigningAlice final : public Strategy<Rational> {
public:
    MoveRecord<Rational> next(const GameConfig<Rational>&, const Transcript<Rational>&,
                              std::uint64_t) override {
        return MoveRecord<Rational>::resign(Mover::alice);
    }
};

}  // namespace

TEST_CASE("config invariants") {
    CHECK_NOTHROW(GameConfig<double>::classic_game(0.5, 0.5));
    CHECK_THROWS(GameConfig<double>::classic_game(0.0, 0.5));
    CHECK_THROWS(GameConfig<double>::classic_game(0.5, 1.0));
    // beta = 0.4 >= 1/3 is rejected for the absolute game
    CHECK_THROWS(GameConfig<double>::absolute_game(0.4));
    CHECK_NOTHROW(GameConfig<double>::absolute_game(0.3));
    // (2M+1) beta < 1
    CHECK_THROWS(GameConfig<double>::modified_game(0.2, 2));
    CHECK_NOTHROW(GameConfig<double>::modified_game(0.1, 3));
    CHECK_THROWS(GameConfig<double>::modified_game(0.1, 5));
}

TEST_CASE("classic validate_move equality cases") {
    auto cfg = GameConfig<Rational>::classic_game(Rational(1, 2), Rational(1, 2));
    Transcript<Rational> t(cfg);
    t.push(MoveRecord<Rational>::bob_ball(RBall::make(Rational(0), Rational(1))));

    // concentric half-radius ball is legal (equality case)
    auto legal = MoveRecord<Rational>::alice_ball(RBall::make(Rational(0), Rational(1, 2)));
    CHECK(validate_move(cfg, t, legal).ok);

    auto too_small = MoveRecord<Rational>::alice_ball(RBall::make(Rational(0), Rational(49, 100)));
    auto v = validate_move(cfg, t, too_small);
    CHECK(!v.ok);
    CHECK(v.code == "IllegalRadius");

    auto escapes = MoveRecord<Rational>::alice_ball(RBall::make(Rational(3, 4), Rational(1, 2)));
    auto v2 = validate_move(cfg, t, escapes);
    CHECK(!v2.ok);
    CHECK(v2.code == "NotContained");
}

TEST_CASE("strong game accepts oversize alice balls") {
    auto cfg = GameConfig<double>::strong_game(0.5, 0.5);
    Transcript<double> t(cfg);
    t.push(MoveRecord<double>::bob_ball(DBall::make(0.0, 1.0)));
    // radius 0.6 >= alpha * 1 = 0.5 and contained
    auto mv = MoveRecord<double>::alice_ball(DBall::make(0.1, 0.6));
    CHECK(validate_move(cfg, t, mv).ok);
    // but classic rejects it
    auto cfg2 = GameConfig<double>::classic_game(0.5, 0.5);
    Transcript<double> t2(cfg2);
    t2.push(MoveRecord<double>::bob_ball(DBall::make(0.0, 1.0)));
    CHECK(!validate_move(cfg2, t2, mv).ok);
}

TEST_CASE("classic play contracts by alpha*beta each round") {
    auto cfg = GameConfig<Rational>::classic_game(Rational(1, 2), Rational(1, 2));
    ConcentricAlice<Rational> alice;
    GreedyGapBob<Rational> bob(RBall::make(Rational(0), Rational(1)));
    auto res = play<Rational>(cfg, alice, bob, 4, 7);
    REQUIRE(res.ok());
    REQUIRE(res.transcript.rounds() == 4);
    CHECK(res.transcript.bob_ball(1).radius == Rational(1));
    CHECK(res.transcript.bob_ball(2).radius == Rational(1, 4));
    CHECK(res.transcript.bob_ball(3).radius == Rational(1, 16));
    CHECK(res.transcript.bob_ball(4).radius == Rational(1, 64));
    CHECK(validate_transcript(res.transcript).ok);
}

TEST_CASE("absolute game replay closure and nesting") {
    auto cfg = GameConfig<Rational>::absolute_game(Rational(1, 10));
    LeftmostBlockAlice<Rational> alice;
    GreedyGapBob<Rational> bob(RBall::make(Rational(0), Rational(1)));
    auto res = play<Rational>(cfg, alice, bob, 12, 3);
    REQUIRE(res.ok());
    CHECK(validate_transcript(res.transcript).ok);
    // Bob balls are nested
    for (int j = 1; j < res.transcript.rounds(); ++j)
        CHECK(ball_contains(cfg.space, res.transcript.bob_ball(j), res.transcript.bob_ball(j + 1)));
    CHECK(ball_contains(cfg.space, res.transcript.bob_ball(1), res.transcript.final_interval()));
}

TEST_CASE("modified game: bob dodges every block") {
    auto cfg = GameConfig<Rational>::modified_game(Rational(1, 10), 2);
    RandomBlockAlice alice;
    GreedyGapBob<Rational> bob(RBall::make(Rational(0), Rational(1)));
    auto res = play<Rational>(cfg, alice, bob, 10, 11);
    REQUIRE(res.ok());
    CHECK(validate_transcript(res.transcript).ok);
    const auto& recs = res.transcript.records();
    for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
        if (recs[i].mover != Mover::alice) continue;
        const auto& bobBall = recs[i + 1].balls[0];
        for (const auto& blk : recs[i].balls)
            CHECK(balls_disjoint(cfg.space, bobBall, blk));
    }
}

TEST_CASE("fallback bob survives arbitrary legal blocking") {
    // beta < 1/3 (absolute) and (2M+1) beta < 1 (modified) keep Bob alive.
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto cfg = GameConfig<Rational>::modified_game(Rational(1, 8), 3);
        RandomBlockAlice alice;
        GreedyGapBob<Rational> bob(RBall::make(Rational(0), Rational(1)));
        auto res = play<Rational>(cfg, alice, bob, 8, seed);
        REQUIRE(res.outcome == PlayOutcome::completed);
        CHECK(validate_transcript(res.transcript).ok);
    }
}

TEST_CASE("resignation ends the game cleanly") {
    auto cfg = GameConfig<Rational>::classic_game(Rational(1, 2), Rational(1, 2));
    ResigningAlice alice;
    GreedyGapBob<Rational> bob(RBall::make(Rational(0), Rational(1)));
    auto res = play<Rational>(cfg, alice, bob, 5, 0);
    CHECK(res.outcome == PlayOutcome::resigned);
    CHECK(res.offender == Mover::alice);
    CHECK(res.transcript.rounds() == 1);
}

TEST_CASE("illegal strategies abort with mover and round") {
    struct CheatingAlice final : Strategy<Rational> {
        MoveRecord<Rational> next(const GameConfig<Rational>&, const Transcript<Rational>& t,
                                  std::uint64_t) override {
            // double the radius: never legal in a classic game
            auto b = t.last_bob_ball();
            b.radius = b.radius * 2;
            return MoveRecord<Rational>::alice_ball(std::move(b));
        }
    };
    auto cfg = GameConfig<Rational>::classic_game(Rational(1, 2), Rational(1, 2));
    CheatingAlice alice;
    GreedyGapBob<Rational> bob(RBall::make(Rational(0), Rational(1)));
    auto res = play<Rational>(cfg, alice, bob, 5, 0);
    CHECK(res.outcome == PlayOutcome::aborted);
    CHECK(res.offender == Mover::alice);
    CHECK(res.round == 1);
    CHECK(!res.verdict.ok);
}

TEST_CASE("circle games wrap the metric") {
    auto cfg = GameConfig<Rational>::classic_game(Rational(1, 2), Rational(1, 2),
                                                  Space<Rational>::circle(Rational(1)));
    Transcript<Rational> t(cfg);
    t.push(MoveRecord<Rational>::bob_ball(RBall::make(Rational(19, 20), Rational(1, 10))));
    // ball centered across the wrap point, still inside
    auto mv = MoveRecord<Rational>::alice_ball(RBall::make(Rational(0), Rational(1, 20)));
    CHECK(validate_move(cfg, t, mv).ok);
    auto far = MoveRecord<Rational>::alice_ball(RBall::make(Rational(1, 2), Rational(1, 20)));
    CHECK(!validate_move(cfg, t, far).ok);
}

TEST_CASE("transcript serialization is bit-exact in rational mode") {
    auto cfg = GameConfig<Rational>::modified_game(Rational(1, 10), 2);
    RandomBlockAlice alice;
    GreedyGapBob<Rational> bob(RBall::make(Rational(1, 3), Rational(2, 3)));
    auto res = play<Rational>(cfg, alice, bob, 6, 5);
    REQUIRE(res.ok());

    std::ostringstream first;
    write_transcript(first, res.transcript);
    std::istringstream in(first.str());
    auto back = read_transcript<Rational>(in);
    REQUIRE(back);
    std::ostringstream second;
    write_transcript(second, *back);
    CHECK(first.str() == second.str());
    // and the reread transcript is still legal move-for-move
    CHECK(validate_transcript(*back).ok);
}

TEST_CASE("transcript serialization round-trips doubles") {
    auto cfg = GameConfig<double>::strong_game(0.4, 0.2);
    ConcentricAlice<double> alice;
    RandomBob<double> bob(DBall::make(0.1234567890123, 1.0));
    auto res = play<double>(cfg, alice, bob, 5, 9);
    REQUIRE(res.ok());
    std::ostringstream first;
    write_transcript(first, res.transcript);
    std::istringstream in(first.str());
    auto back = read_transcript<double>(in);
    REQUIRE(back);
    REQUIRE(back->size() == res.transcript.size());
    for (std::size_t i = 0; i < back->size(); ++i) {
        const auto& a = back->records()[i];
        const auto& b = res.transcript.records()[i];
        REQUIRE(a.balls.size() == b.balls.size());
        for (std::size_t k = 0; k < a.balls.size(); ++k) {
            CHECK(a.balls[k].radius == b.balls[k].radius);  // %.17g is lossless
            CHECK(a.balls[k].center == b.balls[k].center);
        }
    }
}
