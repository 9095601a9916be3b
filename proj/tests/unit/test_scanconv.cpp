#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "taxel/error.hpp"
#include "taxel/lint.hpp"
#include "taxel/scanconv.hpp"

using namespace taxel;

namespace {

std::set<Coord> as_set(const std::vector<Coord>& v) { return {v.begin(), v.end()}; }

std::vector<Coord> reversed(std::vector<Coord> v) {
    std::reverse(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("midpoint_line basics") {
    const Stroke h = midpoint_line({0, 0}, {5, 0});
    CHECK(h.points.size() == 6);
    CHECK(run_decompose(h).runs == std::vector<int>{6});

    const Stroke d = midpoint_line({0, 0}, {3, 3});
    CHECK(d.points == std::vector<Coord>{{0, 0}, {1, 1}, {2, 2}, {3, 3}});

    const Stroke s = midpoint_line({0, 0}, {6, 2});
    CHECK(s.points == std::vector<Coord>{{0, 0}, {1, 0}, {2, 1}, {3, 1}, {4, 1}, {5, 2}, {6, 2}});

    const Stroke p = midpoint_line({4, 4}, {4, 4});
    CHECK(p.points == std::vector<Coord>{{4, 4}});
    CHECK_FALSE(p.closed);
}

TEST_CASE("midpoint_line matches the nearest-pixel oracle on a sample") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> c(-5, 40);
    for (int i = 0; i < 20000; ++i) {
        const Coord a{c(rng), c(rng)}, b{c(rng), c(rng)};
        const auto line = midpoint_line(a, b).points;
        REQUIRE(line == oracle::nearest_pixel_line(a, b));
        CHECK(line == reversed(midpoint_line(b, a).points));
    }
}

TEST_CASE("run_slice") {
    CHECK(run_slice(7, 3) == std::vector<int>{2, 3, 2});
    CHECK(run_slice(6, 3) == std::vector<int>{2, 2, 2});
    CHECK(run_slice(9, 5) == std::vector<int>{2, 2, 1, 2, 2});
    CHECK(run_slice(11, 6) == std::vector<int>{2, 2, 2, 1, 2, 2});
    CHECK(run_slice(1, 1) == std::vector<int>{1});
    CHECK_THROWS_AS(run_slice(2, 3), ArgumentError);
    CHECK_THROWS_AS(run_slice(3, 0), ArgumentError);
    for (int n = 1; n <= 40; ++n)
        for (int r = 1; r <= n; ++r) {
            const auto runs = run_slice(n, r);
            int sum = 0;
            for (int x : runs) {
                sum += x;
                CHECK((x == n / r || x == (n + r - 1) / r));
            }
            CHECK(sum == n);
        }
}

TEST_CASE("pixel_art_line") {
    const Stroke s = pixel_art_line({0, 0}, {6, 2});
    CHECK(s.points == std::vector<Coord>{{0, 0}, {1, 0}, {2, 1}, {3, 1}, {4, 1}, {5, 2}, {6, 2}});
    CHECK(run_decompose(s).runs == std::vector<int>{2, 3, 2});
    CHECK(s.role == StrokeRole::edge);

    const Stroke v = pixel_art_line({0, 0}, {0, 9});
    CHECK(run_decompose(v).runs == std::vector<int>{10});
    CHECK(run_decompose(v).orientation == Orientation::vertical_major);

    const Stroke m = pixel_art_line({10, 0}, {0, 5});
    CHECK(m.points.front() == Coord{10, 0});
    CHECK(m.points.back() == Coord{0, 5});
    CHECK(oracle::line_runs(m.points) == std::vector<int>{2, 2, 2, 1, 2, 2});
}

TEST_CASE("pixel_art_line properties on a sample") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> c(0, 26);
    for (int i = 0; i < 5000; ++i) {
        const Coord a{c(rng), c(rng)}, b{c(rng), c(rng)};
        const auto pts = pixel_art_line(a, b).points;
        const auto runs = oracle::line_runs(pts);
        CHECK(*std::max_element(runs.begin(), runs.end()) - *std::min_element(runs.begin(), runs.end()) <= 1);
        CHECK_FALSE(oracle::has_l_triple(as_set(pts)));
        CHECK(pts == reversed(pixel_art_line(b, a).points));
        CHECK(pts.size() == static_cast<std::size_t>(std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)) + 1));
        for (std::size_t k = 1; k < pts.size(); ++k) CHECK(oracle::adjacent8(pts[k - 1], pts[k]));
    }
}

TEST_CASE("polygon") {
    const ShapeRender sq = polygon({{0, 0}, {9, 0}, {9, 9}, {0, 9}}, true);
    CHECK(sq.stroke_pixels().size() == 36);
    CHECK(sq.vertices.size() == 4);
    CHECK(sq.strokes.size() == 4);
    CHECK(lint_render(sq).pass);

    const ShapeRender open = polygon({{0, 0}, {4, 0}, {4, 4}}, false);
    REQUIRE(open.strokes.size() == 2);
    const auto a = as_set(open.strokes[0].points), b = as_set(open.strokes[1].points);
    std::vector<Coord> shared;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
    CHECK(shared == std::vector<Coord>{{4, 0}});
    CHECK(std::find(open.vertices.begin(), open.vertices.end(), Coord{4, 0}) != open.vertices.end());

    CHECK_THROWS_AS(polygon({{0, 0}}, false), ArgumentError);
    CHECK_THROWS_AS(polygon({{0, 0}, {0, 0}, {3, 3}}, false), ArgumentError);
    CHECK_NOTHROW(polygon({{0, 0}, {1, 1}, {5, 1}}, false));
}

TEST_CASE("polygon edges never pass their vertices") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> c(0, 26);
    for (int i = 0; i < 500; ++i) {
        std::vector<Coord> v{{c(rng), c(rng)}, {c(rng), c(rng)}, {c(rng), c(rng)}};
        if (v[0] == v[1] || v[1] == v[2] || v[2] == v[0]) continue;
        const ShapeRender r = polygon(v, true);
        for (std::size_t e = 0; e < 3; ++e) {
            const Coord p = v[e], q = v[(e + 1) % 3];
            const Coord dir = q - p;
            const long len2 = static_cast<long>(dir.x) * dir.x + static_cast<long>(dir.y) * dir.y;
            for (Coord px : r.strokes[e].points) {
                const long proj = static_cast<long>(px.x - p.x) * dir.x + static_cast<long>(px.y - p.y) * dir.y;
                CHECK(proj >= 0);
                CHECK(proj <= len2);
            }
        }
    }
}

TEST_CASE("parametric_stroke") {
    const Stroke seg = parametric_stroke([](double t) { return std::make_pair(2 + 7 * t, 1 + 3 * t); }, 0, 1, 2);
    CHECK(seg.points == midpoint_line({2, 1}, {9, 4}).points);

    const double r = 7;
    const Stroke arc = parametric_stroke(
        [&](double t) { return std::make_pair(r * std::cos(t), r * std::sin(t)); }, 0, 1.5707963267948966, 64);
    std::set<Coord> px(arc.points.begin(), arc.points.end());
    CHECK(px.size() == arc.points.size());
    CHECK_FALSE(oracle::has_block(px));
    CHECK(oracle::connected(px));
    for (Coord c : arc.points) CHECK(std::abs(std::hypot(c.x, c.y) - r) <= 0.75);
    ShapeRender wrapped{"arc", {arc}, {arc.points.front(), arc.points.back()}, {}};
    CHECK(check_g1(wrapped).empty());

    CHECK_THROWS_AS(parametric_stroke([](double) { return std::make_pair(std::nan(""), 0.0); }, 0, 1, 4),
                    NumericError);
    CHECK_THROWS_AS(parametric_stroke([](double t) { return std::make_pair(1.0 / (t - t), 0.0); }, 0, 1, 4),
                    NumericError);
}

TEST_CASE("thin") {
    const CoordSet l{{0, 0}, {1, 0}, {1, 1}};
    const CoordSet out = thin(l, {});
    CHECK(out.size() == 2);
    CHECK(oracle::connected({out.begin(), out.end()}));

    const CoordSet diag{{0, 0}, {1, 1}, {2, 2}};
    CHECK(thin(diag, {}) == diag);

    const CoordSet corner{{0, 1}, {0, 0}, {1, 0}};
    CHECK(thin(corner, {{0, 0}}).count({0, 0}));

    std::mt19937 rng(9);
    std::bernoulli_distribution on(0.45);
    for (int i = 0; i < 200; ++i) {
        CoordSet s;
        for (int y = 0; y < 8; ++y)
            for (int x = 0; x < 8; ++x)
                if (on(rng)) s.insert({x, y});
        const CoordSet once = thin(s, {});
        CHECK(thin(once, {}) == once);
    }
}

TEST_CASE("removable_double") {
    CHECK(removable_double({{0, 0}, {1, 0}, {1, 1}}, {1, 0}));
    CHECK_FALSE(removable_double({{0, 0}, {1, 1}, {2, 2}}, {1, 1}));
}

TEST_CASE("run_decompose") {
    CHECK(run_decompose(pixel_art_line({0, 0}, {6, 2})).runs == std::vector<int>{2, 3, 2});
    CHECK(run_decompose(Stroke{{{3, 3}}}).runs == std::vector<int>{1});
    CHECK(run_decompose(midpoint_line({0, 0}, {4, 4})).runs == std::vector<int>{1, 1, 1, 1, 1});
}

TEST_CASE("translate") {
    const ShapeRender r = translate(polygon({{0, 0}, {2, 0}, {2, 2}}, true), {5, 1});
    CHECK(r.vertices == std::vector<Coord>{{5, 1}, {7, 1}, {7, 3}});
}
