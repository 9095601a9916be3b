#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "taxel/error.hpp"
#include "taxel/lint.hpp"
#include "taxel/scanconv.hpp"
#include "taxel/stroke_topology.hpp"

using namespace taxel;

TEST_CASE("conic 3x3 is a diamond") {
    const auto loop = conic_loop(3, 3);
    CHECK(std::set<Coord>(loop.begin(), loop.end()) == std::set<Coord>{{1, 0}, {2, 1}, {1, 2}, {0, 1}});
}

TEST_CASE("conic render shape") {
    const ShapeRender r = conic({2, 3}, 14, 19);
    REQUIRE(r.strokes.size() == 1);
    CHECK(r.strokes[0].closed);
    CHECK(r.strokes[0].role == StrokeRole::curve);
    CHECK(r.vertices.empty());
    const CoordSet px = r.stroke_pixels();
    CHECK(px.begin()->y == 3);
    CHECK(px.rbegin()->y == 21);
    int minx = 99, maxx = -1;
    for (Coord c : px) minx = std::min(minx, c.x), maxx = std::max(maxx, c.x);
    CHECK(minx == 2);
    CHECK(maxx == 15);
    CHECK(lint_render(r).pass);
    CHECK(check_structure(r).empty());

    CHECK_THROWS_AS(conic({0, 0}, 2, 5), TooSmallError);
    CHECK_THROWS_AS(conic({0, 0}, 5, 2), TooSmallError);
}

TEST_CASE("conic properties for every box") {
    for (int w = 3; w <= 27; ++w) {
        for (int h = 3; h <= 27; ++h) {
            CAPTURE(w);
            CAPTURE(h);
            const auto loop = conic_loop(w, h);
            const std::set<Coord> s(loop.begin(), loop.end());
            REQUIRE(s.size() == loop.size());
            for (Coord c : s) REQUIRE(oracle::neighbours(s, c) == 2);
            REQUIRE(oracle::connected(s));
            for (std::size_t i = 0; i < loop.size(); ++i) REQUIRE(oracle::adjacent8(loop[i], loop[(i + 1) % loop.size()]));
            for (Coord c : s) {
                REQUIRE(s.count({w - 1 - c.x, c.y}));
                REQUIRE(s.count({c.x, h - 1 - c.y}));
                if (w == h) REQUIRE(s.count({c.y, c.x}));
                const double d = oracle::ellipse_distance(w / 2.0, h / 2.0, c.x + 0.5 - w / 2.0, c.y + 0.5 - h / 2.0);
                REQUIRE(d <= 0.75);
            }
        }
    }
}

TEST_CASE("ellipse_distance agrees with sampling") {
    for (double a : {1.5, 4.0, 7.0, 13.5})
        for (double b : {1.5, 5.0, 9.5})
            for (double px = -15; px <= 15; px += 2.5)
                for (double py = -11; py <= 11; py += 2.75)
                    CHECK(ellipse_distance(a, b, px, py) == doctest::Approx(oracle::ellipse_distance(a, b, px, py)).epsilon(1e-6));
}
