#include <filesystem>
#include <random>

#include "doctest.h"
#include "golden.hpp"
#include "taxel/catalog.hpp"
#include "taxel/codec.hpp"
#include "taxel/error.hpp"

using namespace taxel;

namespace {

const char* minimal = R"({"grid": {"width": 27, "height": 27}, "items": [{"kind": "catalog", "name": "square", "bbox": [1, 2]}]})";

ParseError parse_error_of(const std::string& text) {
    try {
        parse_scene(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a parse error for: " << text);
    return ParseError(0, 0, "");
}

PinGrid random_grid(std::mt19937& rng, int w, int h) {
    GridSpec spec;
    spec.width_px = w;
    spec.height_px = h;
    std::vector<Coord> on;
    std::bernoulli_distribution coin(0.5);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (coin(rng)) on.push_back({x, y});
    return with_pixels(make_grid(spec), on, PinState::actuated);
}

std::vector<std::filesystem::path> scene_fixtures() {
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(golden::fixture("scenes")))
        if (e.path().filename() != "broken.scene") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("parse a minimal scene") {
    const Scene s = parse_scene(minimal);
    CHECK(s.grid == GridSpec{});
    REQUIRE(s.items.size() == 1);
    const auto& c = std::get<CatalogItem>(s.items[0]);
    CHECK(c.name == "square");
    CHECK(c.at == Coord{1, 2});
    CHECK_FALSE(c.size);
}

TEST_CASE("every item kind parses with defaults") {
    const Scene s = parse_scene(R"({"grid": {"width": 9, "height": 8, "pitch_mm": 2.4},
      "items": [
        {"kind": "catalog", "name": "circle", "bbox": [0, 0, 5, 6]},
        {"kind": "line", "from": [0, 0], "to": [3, 1]},
        {"kind": "polygon", "vertices": [[0, 0], [3, 0], [3, 3]]},
        {"kind": "conic", "bbox": [1, 1, 4, 3]},
        {"kind": "marker", "at": [2, 2]},
        {"kind": "pixels", "coords": [[1, 1]], "attach": 1},
        {"kind": "erase", "rect": [0, 0, 2, 2]}
      ]})");
    CHECK(s.grid.width_px == 9);
    CHECK(s.grid.pitch_mm == 2.4);
    CHECK(s.grid.dot_width_mm == 1.2);
    CHECK(std::get<CatalogItem>(s.items[0]).size == std::make_pair(5, 6));
    CHECK(std::get<PolygonItem>(s.items[2]).closed);
    CHECK(std::get<ConicItem>(s.items[3]).height == 3);
    CHECK(std::get<MarkerItem>(s.items[4]).size == 1);
    CHECK(std::get<PixelsItem>(s.items[5]).attach == 1);
    CHECK(std::get<EraseItem>(s.items[6]).width == 2);
    CHECK(parse_scene(emit_scene(s)) == s);
}

TEST_CASE("parse errors carry positions") {
    ParseError e = parse_error_of(golden::read(golden::fixture("scenes/broken.scene")));
    CHECK(std::string(e.message()).find("'blob'") != std::string::npos);
    CHECK(e.line() == 16);
    CHECK(e.column() == 15);

    e = parse_error_of("{\"grid\": {\"width\": 3,\n \"height\": 3}, \"items\": [}");
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).rfind("2:", 0) == 0);

    e = parse_error_of(R"({"grid": {"width": 3, "height": 3}, "items": [{"kind": "line", "from": [0, 0]}]})");
    CHECK(e.message().find("'to'") != std::string::npos);
    CHECK(e.column() == 47);

    e = parse_error_of(R"({"grid": {"width": 3, "height": 3}, "items": [{"kind": "line", "from": [0, 0, 1], "to": [1, 1]}]})");
    CHECK(e.message().find("2 integers") != std::string::npos);
    CHECK(e.column() == 72);

    e = parse_error_of(R"({"grid": {"width": 3, "height": 3, "depth": 1}, "items": []})");
    CHECK(e.message().find("'depth'") != std::string::npos);
    CHECK(e.column() == 36);

    e = parse_error_of(R"({"grid": {"width": "3", "height": 3}, "items": []})");
    CHECK(e.column() == 20);

    e = parse_error_of(R"([1, 2])");
    CHECK(e.line() == 1);
    e = parse_error_of(R"({"grid": {"width": 3, "height": 3}, "items": [{"kind": "catalog", "name": "x", "bbox": [1, 2, 3]}]})");
    CHECK(e.message().find("2 or 4") != std::string::npos);
}

TEST_CASE("emit is canonical and round-trips") {
    CHECK(emit_scene(Scene{}) ==
          "{\n  \"grid\": {\n    \"width\": 27,\n    \"height\": 27,\n    \"pitch_mm\": 2.5,\n"
          "    \"dot_width_mm\": 1.2,\n    \"dot_height_mm\": 0.4\n  },\n  \"items\": []\n}\n");
    for (const auto& path : scene_fixtures()) {
        CAPTURE(path.filename().string());
        const std::string text = golden::read(path);
        const Scene s = parse_scene(text);
        CHECK(emit_scene(s) == text);
        CHECK(parse_scene(emit_scene(s)) == s);
    }
}

TEST_CASE("ascii export") {
    GridSpec spec;
    spec.width_px = 3;
    spec.height_px = 1;
    CHECK(export_ascii(edit_pixel(make_grid(spec), {1, 0}, PinState::actuated)) == ".o.\n");
    spec.width_px = spec.height_px = 2;
    CHECK(export_ascii(make_grid(spec)) == "..\n..\n");
}

TEST_CASE("braille export") {
    GridSpec spec;
    spec.width_px = 2;
    spec.height_px = 4;
    std::vector<Coord> all;
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 2; ++x) all.push_back({x, y});
    CHECK(export_braille(with_pixels(make_grid(spec), all, PinState::actuated)) == "2 4\n⣿\n");
    CHECK(export_braille(edit_pixel(make_grid(spec), {0, 0}, PinState::actuated)) == "2 4\n⠁\n");
    CHECK(export_braille(edit_pixel(make_grid(spec), {1, 3}, PinState::actuated)) == "2 4\n⢀\n");
    CHECK(export_braille(edit_pixel(make_grid(spec), {0, 3}, PinState::actuated)) == "2 4\n⡀\n");
    spec.width_px = 3;
    spec.height_px = 5;
    CHECK(export_braille(make_grid(spec)) == "3 5\n⠀⠀\n⠀⠀\n");
}

TEST_CASE("braille round trips") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 100; ++i) {
        const PinGrid g = random_grid(rng, 27, 27);
        CHECK(import_braille(export_braille(g)) == g);
    }
    std::uniform_int_distribution<int> dim(1, 30);
    for (int i = 0; i < 50; ++i) {
        const PinGrid g = random_grid(rng, dim(rng), dim(rng));
        CHECK(import_braille(export_braille(g)) == g);
    }
    GridSpec physical;
    physical.pitch_mm = 2.37;
    const PinGrid g = import_braille("2 4\n⠁\n", physical);
    CHECK(g.spec().pitch_mm == 2.37);
    CHECK(g.actuated({0, 0}));
}

TEST_CASE("braille import errors") {
    CHECK_THROWS_AS(import_braille("x\n"), ParseError);
    CHECK_THROWS_AS(import_braille("2 4\nA\n"), ParseError);
    CHECK_THROWS_AS(import_braille("2 4\n⠁⠁\n"), ParseError);
    CHECK_THROWS_AS(import_braille("2 8\n⠁\n"), ParseError);
    CHECK_THROWS_AS(import_braille("1 4\n⠈\n"), ParseError);
    try {
        import_braille("4 4\n⠁A\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 2);
    }
}

TEST_CASE("pbm export") {
    GridSpec spec;
    spec.width_px = spec.height_px = 1;
    CHECK(export_pbm(edit_pixel(make_grid(spec), {0, 0}, PinState::actuated)) == "P1\n1 1\n1\n");
    const std::string empty = export_pbm(make_grid({}));
    CHECK(empty.rfind("P1\n27 27\n", 0) == 0);
    CHECK(std::count(empty.begin(), empty.end(), '0') == 729);
    std::size_t start = 0;
    while (start < empty.size()) {
        const std::size_t nl = empty.find('\n', start);
        CHECK(nl - start <= 70);
        start = nl + 1;
    }
    GridSpec wide;
    wide.width_px = 100;
    wide.height_px = 2;
    const std::string w = export_pbm(make_grid(wide));
    start = 0;
    while (start < w.size()) {
        const std::size_t nl = w.find('\n', start);
        CHECK(nl - start <= 70);
        start = nl + 1;
    }
    CHECK(std::count(w.begin() + w.find("2\n") + 2, w.end(), '0') == 200);
}

TEST_CASE("pbm fixtures") {
    for (const auto& path : scene_fixtures()) {
        const std::string name = path.stem().string();
        CAPTURE(name);
        const auto grid = render_scene(parse_scene(golden::read(path))).grid;
        CHECK(golden::matches("pbm/" + name + ".pbm", export_pbm(grid)));
        CHECK(import_braille(export_braille(grid)) == grid);
    }
    for (const auto& e : catalog_list()) {
        Scene s;
        s.grid.width_px = e.width_px;
        s.grid.height_px = e.height_px;
        s.items.push_back(CatalogItem{e.name, {0, 0}, std::nullopt});
        const auto grid = render_scene(s).grid;
        CHECK(golden::matches("pbm/catalog_" + e.name + ".pbm", export_pbm(grid)));
        CHECK(import_braille(export_braille(grid)) == grid);
    }
}
