#include <catch2/catch_amalgamated.hpp>

#include "schmidtflat/surface.hpp"
#include "oracles.hpp"

#include <random>

using namespace schmidtflat;
using namespace schmidtflat::surface;

TEST_CASE("unit torus") {
    auto t = FlatSurface::build_torus();
    CHECK(t.kind == SurfaceKind::torus);
    CHECK(t.genus == 1);
    CHECK(t.point_count() == 1);
    CHECK(t.zero_count() == 0);
    CHECK(t.area_raw == 1.0);
    CHECK(t.scale == 1.0);
    CHECK(t.systole() == 1.0);
    CHECK(t.max_complex_level() == 1);
    CHECK(t.triangulation_edges() == 3);
}

TEST_CASE("one-square origami is the torus") {
    auto t = FlatSurface::build_origami({0}, {0});
    CHECK(t.kind == SurfaceKind::torus);
    CHECK(t.genus == 1);
    CHECK(t.point_count() == 1);
}

TEST_CASE("L-shaped 3-square origami lies in H(2)") {
    // h = (1 2), v = (1 3) in cycle notation, 0-based here
    std::vector<int> h{1, 0, 2}, v{2, 1, 0};
    auto s = FlatSurface::build_origami(h, v, "L3");
    CHECK(s.genus == 2);
    CHECK(s.point_count() == 1);
    REQUIRE(s.zero_orders().size() == 1);
    CHECK(s.zero_orders()[0] == 2);
    CHECK(s.area_raw == 3.0);
    CHECK(s.scale == Catch::Approx(1.0 / std::sqrt(3.0)));

    // independent Euler-characteristic oracle via commutator cycles
    auto orders = oracles::commutator_orders(h, v);
    std::vector<int> nonzero;
    for (int k : orders)
        if (k > 0) nonzero.push_back(k);
    CHECK(nonzero == s.zero_orders());
    CHECK(oracles::genus_from_orders(orders) == s.genus);
}

TEST_CASE("origami genus matches the commutator oracle on random examples") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng() % 5);
        std::vector<int> h(n), v(n);
        std::iota(h.begin(), h.end(), 0);
        std::iota(v.begin(), v.end(), 0);
        std::shuffle(h.begin(), h.end(), rng);
        std::shuffle(v.begin(), v.end(), rng);
        try {
            auto s = FlatSurface::build_origami(h, v);
            auto orders = oracles::commutator_orders(h, v);
            CHECK(oracles::genus_from_orders(orders) == s.genus);
            std::vector<int> nonzero;
            for (int k : orders)
                if (k > 0) nonzero.push_back(k);
            CHECK(nonzero == s.zero_orders());
        } catch (const NotConnected&) {
            // disconnected samples are rejected, which is also worth hitting
        }
    }
}

TEST_CASE("disconnected origami data is rejected") {
    // two disjoint tori
    CHECK_THROWS_AS(FlatSurface::build_origami({0, 1}, {0, 1}), NotConnected);
    CHECK_THROWS_AS(FlatSurface::build_origami({1, 0, 2}, {1, 0, 2}), NotConnected);
}

TEST_CASE("two-square torus cover has two marked points") {
    auto s = FlatSurface::build_origami({1, 0}, {0, 1}, "T2");
    CHECK(s.genus == 1);
    CHECK(s.point_count() == 2);
    CHECK(s.zero_count() == 0);
    CHECK(s.max_complex_level() == 2);
}

TEST_CASE("unit square unfolds to a torus of four copies") {
    PolygonSpec sq;
    sq.angles_over_pi = {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)};
    sq.edge_lengths = {1, 1, 1, 1};
    auto s = FlatSurface::unfold_polygon(sq);
    CHECK(s.tri.copies == 4);
    CHECK(s.genus == 1);
    CHECK(s.zero_count() == 0);
    CHECK(s.area_raw == Catch::Approx(4.0));
    CHECK(s.scale == Catch::Approx(0.5));
    for (const auto& c : s.classes) CHECK(c.angle_over_pi == 2);
}

TEST_CASE("right isoceles triangle unfolds to a square torus") {
    PolygonSpec tr;
    tr.angles_over_pi = {Rational(1, 2), Rational(1, 4), Rational(1, 4)};
    auto s = FlatSurface::unfold_polygon(tr);
    CHECK(s.tri.copies == 8);
    CHECK(s.genus == 1);
    CHECK(s.zero_count() == 0);
    CHECK(s.area_raw == Catch::Approx(8 * 0.5));  // legs 1 and 1
}

TEST_CASE("pi/5 triangle unfolds to ten copies of area one total") {
    PolygonSpec tr;
    tr.angles_over_pi = {Rational(1, 5), Rational(2, 5), Rational(2, 5)};
    auto s = FlatSurface::unfold_polygon(tr);
    CHECK(s.tri.copies == 10);
    // normalized area is 1 by construction
    double total = 0;
    for (const auto& t : s.tri.tris) {
        Vec2 u = t.p[1] - t.p[0], w = t.p[2] - t.p[0];
        total += std::fabs(cross(u, w)) / 2;
    }
    CHECK(total * s.scale * s.scale == Catch::Approx(1.0));
    // genus 2 with two simple zeros and one marked class
    CHECK(s.genus == 2);
    CHECK(s.zero_orders() == std::vector<int>{1, 1});
}

TEST_CASE("polygon validation errors") {
    PolygonSpec bad;
    bad.angles_over_pi = {Rational(1, 2), Rational(1, 4), Rational(1, 3)};
    CHECK_THROWS_AS(FlatSurface::unfold_polygon(bad), BadPolygon);  // sum != pi

    PolygonSpec open_square;
    open_square.angles_over_pi = {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)};
    open_square.edge_lengths = {1, 1, 2, 1};
    CHECK_THROWS_AS(FlatSurface::unfold_polygon(open_square), BadPolygon);
}
