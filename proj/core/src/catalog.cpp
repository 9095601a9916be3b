#include "taxel/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "taxel/error.hpp"

namespace taxel {

namespace {

using Builder = std::function<std::vector<ShapeRender>(int, int)>;

int round_int(double v) { return static_cast<int>(std::floor(v + 0.5)); }

// Maps a point drawn in a reference frame of ref_w x ref_h pixels into w x h.
struct Frame {
    int ref_w, ref_h, w, h;

    Coord operator()(Coord p) const {
        return {round_int(p.x * double(w - 1) / (ref_w - 1)), round_int(p.y * double(h - 1) / (ref_h - 1))};
    }
    Coord operator()(int x, int y) const { return (*this)({x, y}); }
};

void require(bool ok, const std::string& name, int w, int h) {
    if (!ok) {
        throw TooSmallError(name + " cannot be drawn in a " + std::to_string(w) + "x" + std::to_string(h) + " box");
    }
}

ShapeRender polygon_shape(const std::string& kind, const std::vector<Coord>& pts, bool closed, int w, int h) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::size_t j = (i + 1) % pts.size();
        if (!closed && j == 0) break;
        require(!(pts[i] == pts[j]), kind, w, h);
    }
    ShapeRender r = polygon(pts, closed);
    r.kind = kind;
    return r;
}

ShapeRender conic_shape(const std::string& kind, Coord at, int w, int h) {
    require(w >= 3 && h >= 3, kind, w, h);
    ShapeRender r = conic(at, w, h);
    r.kind = kind;
    return r;
}

// Loop pixels from `from` to `to` following the loop's clockwise order.
std::vector<Coord> loop_segment(const std::vector<Coord>& loop, Coord from, Coord to) {
    const auto i = static_cast<std::size_t>(std::find(loop.begin(), loop.end(), from) - loop.begin());
    std::vector<Coord> out;
    for (std::size_t k = i;; k = (k + 1) % loop.size()) {
        out.push_back(loop[k]);
        if (loop[k] == to || out.size() > loop.size()) break;
    }
    return out;
}

Stroke open_curve(std::vector<Coord> pts, Coord offset) {
    Stroke s;
    s.role = StrokeRole::curve;
    for (auto& p : pts) p = p + offset;
    s.points = std::move(pts);
    s.ends = {s.points.front(), s.points.back()};
    return s;
}

// Lower half of a conic ring: from the left side at the middle row, around the
// bottom, to the right side.
std::vector<Coord> lower_arc(int w, int h) {
    const auto loop = conic_loop(w, h);
    const int mid = h / 2;
    auto side = [&](int x) {
        Coord best{x, h};
        for (Coord p : loop) {
            if (p.x == x && p.y >= mid && p.y < best.y) best = p;
        }
        return best;
    };
    const Coord left = side(0), right = side(w - 1);
    auto arc = loop_segment(loop, right, left);
    std::reverse(arc.begin(), arc.end());
    return arc;
}

Coord extreme(const std::vector<Coord>& loop, int x, bool lowest) {
    Coord best{x, lowest ? -1 : 1 << 20};
    for (Coord p : loop) {
        if (p.x != x) continue;
        if (lowest ? p.y > best.y : p.y < best.y) best = p;
    }
    return best;
}

std::vector<ShapeRender> build_square(int w, int h) {
    return {polygon_shape("square", {{0, 0}, {w - 1, 0}, {w - 1, h - 1}, {0, h - 1}}, true, w, h)};
}

std::vector<ShapeRender> build_rectangle(int w, int h) {
    return {polygon_shape("rectangle", {{0, 0}, {w - 1, 0}, {w - 1, h - 1}, {0, h - 1}}, true, w, h)};
}

std::vector<ShapeRender> build_circle(int w, int h) { return {conic_shape("circle", {0, 0}, w, h)}; }

std::vector<ShapeRender> build_ellipse(int w, int h) { return {conic_shape("ellipse", {0, 0}, w, h)}; }

std::vector<ShapeRender> build_triangle(int w, int h) {
    return {polygon_shape("triangle", {{(w - 1) / 2, 0}, {w - 1, h - 1}, {0, h - 1}}, true, w, h)};
}

std::vector<ShapeRender> build_star(int w, int h) {
    const Frame f{25, 19, w, h};
    std::vector<Coord> pts;
    for (Coord p : std::vector<Coord>{{12, 0}, {15, 5}, {24, 7}, {15, 9}, {19, 18},
                                      {12, 14}, {5, 18}, {9, 9}, {0, 7}, {9, 5}}) {
        pts.push_back(f(p));
    }
    return {polygon_shape("star", pts, true, w, h)};
}

std::vector<ShapeRender> build_pentagon(int w, int h) {
    const Frame f{17, 17, w, h};
    std::vector<Coord> pts;
    for (Coord p : std::vector<Coord>{{8, 0}, {16, 6}, {13, 16}, {3, 16}, {0, 6}}) pts.push_back(f(p));
    return {polygon_shape("pentagon", pts, true, w, h)};
}

std::vector<ShapeRender> build_heart(int w, int h) {
    require(w >= 5 && h >= 5, "heart", w, h);
    const int lobe_w = (w + 1) / 2;
    const int lobe_h = std::max(3, round_int(h * 8.0 / 15.0));
    require(lobe_w >= 3 && lobe_h < h, "heart", w, h);
    const auto loop = conic_loop(lobe_w, lobe_h);
    const Coord junction = extreme(loop, 0, true);
    const Coord cusp = extreme(loop, lobe_w - 1, false);
    const auto left = loop_segment(loop, junction, cusp);
    std::vector<Coord> right;
    for (Coord p : left) right.push_back({w - 1 - p.x, p.y});

    const Coord bottom_l{(w - 1) / 2, h - 1}, bottom_r{w / 2, h - 1};
    const Coord junction_r{w - 1 - junction.x, junction.y};
    ShapeRender r;
    r.kind = "heart";
    r.strokes.push_back(open_curve(left, {0, 0}));
    r.strokes.push_back(open_curve(right, {0, 0}));
    r.strokes.push_back(pixel_art_line(junction, bottom_l));
    r.strokes.push_back(pixel_art_line(junction_r, bottom_r));
    const Coord cusp_r{w - 1 - cusp.x, cusp.y};
    r.vertices = {cusp};
    if (!(cusp_r == cusp)) r.vertices.push_back(cusp_r);
    r.vertices.push_back(junction);
    r.vertices.push_back(junction_r);
    r.vertices.push_back(bottom_l);
    if (!(bottom_r == bottom_l)) r.vertices.push_back(bottom_r);
    return {r};
}

std::vector<ShapeRender> build_sine(int w, int h) {
    require(w >= 9 && h >= 9, "sine_curve", w, h);
    const int cx = (w - 1) / 2, cy = (h - 1) / 2;
    ShapeRender axes;
    axes.kind = "sine_curve:axes";
    const Coord origin{cx, cy};
    for (Coord end : {Coord{0, cy}, Coord{w - 1, cy}, Coord{cx, 0}, Coord{cx, h - 1}}) {
        axes.strokes.push_back(pixel_art_line(origin, end));
        axes.vertices.push_back(end);
    }
    axes.vertices.insert(axes.vertices.begin(), origin);

    const double amplitude = (h - 1) * 10.0 / 26.0;
    const double period = w - 1;
    const double pi = std::acos(-1.0);
    const double diagonal = std::hypot(double(w), double(h));
    const Sampler sine = [&](double t) {
        return std::make_pair(t, cy - amplitude * std::sin(2.0 * pi * t / period));
    };
    Stroke s = parametric_stroke(sine, 0.0, period, static_cast<int>(std::ceil(8.0 * diagonal)));
    ShapeRender curve;
    curve.kind = "sine_curve:sine";
    curve.vertices = s.ends;
    curve.strokes.push_back(std::move(s));
    return {axes, curve};
}

std::vector<ShapeRender> build_smiley(int w, int h, bool iterated) {
    require(w >= 9 && h >= 9, iterated ? "smiley_b" : "smiley_a", w, h);
    const std::string name = iterated ? "smiley_b" : "smiley_a";
    const Frame f{15, 15, w, h};
    ShapeRender face = conic_shape(name + ":face", {0, 0}, w, h);
    const Coord left_eye = f(4, 4), right_eye = f(9, 4);
    if (iterated) {
        face.markers = {{{left_eye.x + 1, left_eye.y}, 1}, {right_eye, 1}};
    } else {
        face.markers = {{left_eye, 2}, {right_eye, 2}};
    }
    const Coord m0 = f(4, 5), m1 = f(10, 11);
    const int mw = m1.x - m0.x + 1, mh = m1.y - m0.y + 1;
    require(mw >= 3 && mh >= 3, name, w, h);
    ShapeRender mouth;
    mouth.kind = name + ":mouth";
    mouth.strokes.push_back(open_curve(lower_arc(mw, mh), m0));
    mouth.vertices = mouth.strokes[0].ends;
    return {face, mouth};
}

std::vector<ShapeRender> build_flower(int w, int h, bool iterated) {
    const std::string name = iterated ? "flower_b" : "flower_a";
    require(w >= 12 && h >= 12, name, w, h);
    const Frame f{23, 20, w, h};
    struct Part {
        const char* tag;
        Coord a, b;
    };
    const Part parts[] = {{"petal_top", {9, 0}, {13, 6}},   {"petal_left", {0, 8}, {7, 12}},
                          {"center", {9, 8}, {13, 12}},     {"petal_right", {15, 8}, {22, 12}},
                          {"petal_bottom", {9, 14}, {13, 19}}};
    std::vector<ShapeRender> out;
    for (const Part& p : parts) {
        const Coord a = f(p.a), b = f(p.b);
        out.push_back(conic_shape(name + ":" + p.tag, a, b.x - a.x + 1, b.y - a.y + 1));
    }
    if (iterated) {
        const Coord p0 = f(14, 13), c = f(18, 14), p2 = f(19, 19);
        const Sampler bezier = [&](double t) {
            const double u = 1.0 - t;
            return std::make_pair(u * u * p0.x + 2 * u * t * c.x + t * t * p2.x,
                                  u * u * p0.y + 2 * u * t * c.y + t * t * p2.y);
        };
        Stroke s = parametric_stroke(bezier, 0.0, 1.0, 64);
        ShapeRender stem;
        stem.kind = name + ":stem";
        stem.vertices = s.ends;
        stem.strokes.push_back(std::move(s));
        out.push_back(std::move(stem));
    }
    return out;
}

std::vector<ShapeRender> build_cuboid(int w, int h) {
    require(w >= 6 && h >= 6, "cuboid", w, h);
    const Frame f{16, 13, w, h};
    // Top face t-r-n-l, vertical edges down to the bottom corners lb, nb, rb.
    const Coord t = f(8, 0), r = f(15, 4), n = f(7, 8), l = f(0, 4);
    const Coord lb = f(0, 8), nb = f(7, 12), rb = f(15, 8);
    ShapeRender out;
    out.kind = "cuboid";
    const std::pair<Coord, Coord> edges[] = {{t, r}, {r, n}, {n, l}, {l, t}, {l, lb},
                                             {n, nb}, {r, rb}, {lb, nb}, {nb, rb}};
    for (const auto& [p, q] : edges) {
        require(!(p == q), "cuboid", w, h);
        out.strokes.push_back(pixel_art_line(p, q));
    }
    out.vertices = {t, r, n, l, lb, nb, rb};
    return {out};
}

// A letter made of straight edges; every edge ends on declared vertices.
ShapeRender letter(const std::string& tag, const Frame& f, const std::vector<std::pair<Coord, Coord>>& edges) {
    ShapeRender r;
    r.kind = "glyphs:" + tag;
    CoordSet seen;
    for (const auto& [p0, p1] : edges) {
        const Coord p = f(p0), q = f(p1);
        require(!(p == q), "glyphs", f.w, f.h);
        r.strokes.push_back(pixel_art_line(p, q));
        for (Coord v : {p, q}) {
            if (seen.insert(v).second) r.vertices.push_back(v);
        }
    }
    return r;
}

std::vector<ShapeRender> build_glyphs(int w, int h) {
    require(w >= 14 && h >= 14, "glyphs", w, h);
    const Frame f{20, 26, w, h};
    std::vector<ShapeRender> out;
    out.push_back(letter("I", f,
                         {{{0, 0}, {2, 0}}, {{2, 0}, {4, 0}}, {{2, 0}, {2, 11}}, {{0, 11}, {2, 11}},
                          {{2, 11}, {4, 11}}}));
    out.push_back(letter("T", f, {{{7, 0}, {9, 0}}, {{9, 0}, {11, 0}}, {{9, 0}, {9, 11}}}));

    // U: two uprights joined by the lower half of a ring.
    {
        const Coord a = f(14, 4), b = f(19, 11);
        const int uw = b.x - a.x + 1, uh = b.y - a.y + 1;
        require(uw >= 3 && uh >= 3, "glyphs", w, h);
        const auto arc = lower_arc(uw, uh);
        ShapeRender u;
        u.kind = "glyphs:U";
        Stroke bowl = open_curve(arc, a);
        const Coord top_l = f(14, 0), top_r{bowl.ends.back().x, top_l.y};
        u.strokes.push_back(pixel_art_line(top_l, bowl.ends.front()));
        u.strokes.push_back(bowl);
        u.strokes.push_back(pixel_art_line(bowl.ends.back(), top_r));
        u.vertices = {top_l, bowl.ends.front(), bowl.ends.back(), top_r};
        out.push_back(std::move(u));
    }
    // C: a ring with its right-hand sector removed.
    {
        const Coord a = f(0, 14), b = f(5, 25);
        const int cw = b.x - a.x + 1, ch = b.y - a.y + 1;
        require(cw >= 3 && ch >= 5, "glyphs", w, h);
        const auto loop = conic_loop(cw, ch);
        const double cx = (cw - 1) / 2.0, cy = (ch - 1) / 2.0;
        auto open = [&](Coord p) { return p.x > cx && std::abs(p.y - cy) < ch * 0.3; };
        std::size_t start = 0;
        for (std::size_t i = 0; i < loop.size(); ++i) {
            if (open(loop[i]) && !open(loop[(i + 1) % loop.size()])) start = (i + 1) % loop.size();
        }
        std::vector<Coord> arc;
        for (std::size_t k = start; !open(loop[k]); k = (k + 1) % loop.size()) arc.push_back(loop[k]);
        ShapeRender c;
        c.kind = "glyphs:C";
        c.strokes.push_back(open_curve(arc, a));
        c.vertices = c.strokes[0].ends;
        out.push_back(std::move(c));
    }
    out.push_back(letter("L", f, {{{8, 14}, {8, 25}}, {{8, 25}, {12, 25}}}));
    return out;
}

struct Registered {
    CatalogEntry entry;
    Builder builder;
};

const std::vector<Registered>& registry() {
    static const std::vector<Registered> all = {
        {{"square", 10, 10, "basic", "four-vertex polygon"}, build_square},
        {{"rectangle", 20, 10, "basic", "four-vertex polygon"}, build_rectangle},
        {{"circle", 14, 14, "basic", "closed conic"}, build_circle},
        {{"ellipse", 14, 19, "basic", "closed conic"}, build_ellipse},
        {{"triangle", 11, 22, "basic", "isosceles, apex up"}, build_triangle},
        {{"star", 25, 19, "basic", "five-point star outline"}, build_star},
        {{"pentagon", 17, 17, "complex", "flat-based pentagon"}, build_pentagon},
        {{"heart", 15, 15, "complex", "two lobes and two diagonals"}, build_heart},
        {{"sine_curve", 27, 27, "composite", "one period over x/y axes"}, build_sine},
        {{"smiley_a", 15, 15, "iteration", "face, arc mouth, 2x2 eyes"},
         [](int w, int h) { return build_smiley(w, h, false); }},
        {{"smiley_b", 15, 15, "iteration", "face, arc mouth, single-dot eyes"},
         [](int w, int h) { return build_smiley(w, h, true); }},
        {{"flower_a", 23, 20, "iteration", "four petals around a centre"},
         [](int w, int h) { return build_flower(w, h, false); }},
        {{"flower_b", 23, 20, "iteration", "petals with a curved stem"},
         [](int w, int h) { return build_flower(w, h, true); }},
        {{"cuboid", 16, 13, "composite", "box showing three faces"}, build_cuboid},
        {{"glyphs", 20, 26, "glyph", "letters I T U over C L"}, build_glyphs},
    };
    return all;
}

const Registered& lookup(const std::string& name) {
    for (const auto& r : registry()) {
        if (r.entry.name == name) return r;
    }
    throw NotFoundError("unknown catalog entry '" + name + "'");
}

}  // namespace

const std::vector<CatalogEntry>& catalog_list() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> out;
        for (const auto& r : registry()) out.push_back(r.entry);
        return out;
    }();
    return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) { return lookup(name).entry; }

std::vector<ShapeRender> build(const std::string& name, std::optional<std::pair<int, int>> bbox_px) {
    const Registered& r = lookup(name);
    const auto [w, h] = bbox_px.value_or(std::make_pair(r.entry.width_px, r.entry.height_px));
    require(w >= 3 && h >= 3, name, w, h);
    return r.builder(w, h);
}

}  // namespace taxel
