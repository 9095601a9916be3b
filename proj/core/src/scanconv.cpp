#include "taxel/scanconv.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

#include "taxel/error.hpp"

namespace taxel {

namespace {

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Nearest integer to num/den (den > 0), exact halves rounded down.
long long round_half_down(long long num, long long den) {
    return -floor_div(den - 2 * num, 2 * den);
}

int sign(int v) { return (v > 0) - (v < 0); }

char step_kind(Coord a, Coord b) {
    if (a.y == b.y) return 'h';
    if (a.x == b.x) return 'v';
    return 'd';
}

}  // namespace

CoordSet ShapeRender::stroke_pixels() const {
    CoordSet out;
    for (const auto& s : strokes) out.insert(s.points.begin(), s.points.end());
    return out;
}

CoordSet ShapeRender::all_pixels() const {
    CoordSet out = stroke_pixels();
    for (const auto& m : markers) {
        for (int dy = 0; dy < m.size; ++dy) {
            for (int dx = 0; dx < m.size; ++dx) out.insert({m.at.x + dx, m.at.y + dy});
        }
    }
    return out;
}

ShapeRender translate(ShapeRender render, Coord offset) {
    for (auto& s : render.strokes) {
        for (auto& p : s.points) p = p + offset;
        for (auto& p : s.ends) p = p + offset;
    }
    for (auto& v : render.vertices) v = v + offset;
    for (auto& m : render.markers) m.at = m.at + offset;
    return render;
}

Stroke midpoint_line(Coord p0, Coord p1) {
    Stroke s;
    const int dx = p1.x - p0.x;
    const int dy = p1.y - p0.y;
    if (std::abs(dx) >= std::abs(dy)) {
        const int d = std::abs(dx);
        const int sx = sign(dx);
        for (int n = 0; n <= d; ++n) {
            const int y = d == 0 ? p0.y : p0.y + static_cast<int>(round_half_down(1LL * n * dy, d));
            s.points.push_back({p0.x + n * sx, y});
        }
    } else {
        const int d = std::abs(dy);
        const int sy = sign(dy);
        for (int n = 0; n <= d; ++n) {
            const int x = p0.x + static_cast<int>(round_half_down(1LL * n * dx, d));
            s.points.push_back({x, p0.y + n * sy});
        }
    }
    s.ends = {p0, p1};
    return s;
}

std::vector<int> run_slice(int n_px, int n_runs) {
    if (n_runs < 1 || n_px < n_runs) {
        throw ArgumentError("run_slice needs n_px >= n_runs >= 1");
    }
    auto f = [&](long long i) {
        return floor_div(2 * i * n_px + n_runs, 2LL * n_runs);
    };
    std::vector<int> runs;
    runs.reserve(static_cast<std::size_t>(n_runs));
    for (int i = 0; i < n_runs; ++i) runs.push_back(static_cast<int>(f(i + 1) - f(i)));
    return runs;
}

Stroke pixel_art_line(Coord p0, Coord p1) {
    const bool swapped = p1.y < p0.y || (p1.y == p0.y && p1.x < p0.x);
    const Coord s = swapped ? p1 : p0;
    const Coord e = swapped ? p0 : p1;
    const int dx = e.x - s.x;
    const int dy = e.y - s.y;
    const int sx = sign(dx);

    Stroke out;
    if (std::abs(dx) >= dy) {
        const auto runs = run_slice(std::abs(dx) + 1, dy + 1);
        int x = s.x;
        for (std::size_t i = 0; i < runs.size(); ++i) {
            for (int k = 0; k < runs[i]; ++k, x += sx) {
                out.points.push_back({x, s.y + static_cast<int>(i)});
            }
        }
    } else {
        const auto runs = run_slice(dy + 1, std::abs(dx) + 1);
        int y = s.y;
        for (std::size_t i = 0; i < runs.size(); ++i) {
            for (int k = 0; k < runs[i]; ++k, ++y) {
                out.points.push_back({s.x + static_cast<int>(i) * sx, y});
            }
        }
    }
    if (swapped) std::reverse(out.points.begin(), out.points.end());
    out.role = StrokeRole::edge;
    out.ends = {p0, p1};
    return out;
}

ShapeRender polygon(const std::vector<Coord>& vertices, bool closed) {
    if (vertices.size() < 2) throw ArgumentError("polygon needs at least 2 vertices");
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
        if (vertices[i] == vertices[i + 1]) {
            throw ArgumentError("polygon has consecutive duplicate vertices at index " +
                                std::to_string(i + 1));
        }
    }
    if (closed && vertices.front() == vertices.back()) {
        throw ArgumentError("closed polygon repeats its first vertex");
    }
    if (CoordSet(vertices.begin(), vertices.end()).size() < 2) {
        throw ArgumentError("polygon needs at least 2 distinct vertices");
    }
    ShapeRender r;
    r.kind = "polygon";
    const std::size_t n = vertices.size();
    const std::size_t edges = closed ? n : n - 1;
    for (std::size_t i = 0; i < edges; ++i) {
        r.strokes.push_back(pixel_art_line(vertices[i], vertices[(i + 1) % n]));
    }
    r.vertices = vertices;
    return r;
}

ShapeRender conic(Coord bbox_top_left, int width_px, int height_px) {
    if (width_px < 3 || height_px < 3) {
        throw TooSmallError("conic needs a bounding box of at least 3x3, got " +
                            std::to_string(width_px) + "x" + std::to_string(height_px));
    }
    Stroke s;
    s.closed = true;
    s.role = StrokeRole::curve;
    for (Coord p : conic_loop(width_px, height_px)) s.points.push_back(p + bbox_top_left);
    ShapeRender r;
    r.kind = "conic";
    r.strokes.push_back(std::move(s));
    return r;
}

bool removable_double(const CoordSet& pixels, Coord p) {
    auto has = [&](int dx, int dy) { return pixels.count({p.x + dx, p.y + dy}) > 0; };
    const bool horiz = has(-1, 0) || has(1, 0);
    const bool vert = has(0, -1) || has(0, 1);
    if (!horiz || !vert) return false;

    // Ring of the 8 neighbours in circular order; check they form one 8-connected group.
    static constexpr std::array<Coord, 8> ring = {
        Coord{-1, -1}, Coord{0, -1}, Coord{1, -1}, Coord{1, 0},
        Coord{1, 1},   Coord{0, 1},  Coord{-1, 1}, Coord{-1, 0}};
    std::vector<Coord> nb;
    for (Coord d : ring) {
        if (has(d.x, d.y)) nb.push_back(d);
    }
    std::vector<bool> seen(nb.size(), false);
    std::vector<std::size_t> stack = {0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < nb.size(); ++j) {
            if (seen[j]) continue;
            if (std::abs(nb[i].x - nb[j].x) <= 1 && std::abs(nb[i].y - nb[j].y) <= 1) {
                seen[j] = true;
                ++reached;
                stack.push_back(j);
            }
        }
    }
    return reached == nb.size();
}

CoordSet thin(const CoordSet& pixels, const CoordSet& protected_pixels) {
    CoordSet out = pixels;
    bool changed = true;
    while (changed) {
        changed = false;
        const std::vector<Coord> order(out.begin(), out.end());
        for (Coord p : order) {
            if (protected_pixels.count(p)) continue;
            if (removable_double(out, p)) {
                out.erase(p);
                changed = true;
            }
        }
    }
    return out;
}

Stroke parametric_stroke(const Sampler& sampler, double t0, double t1, int n_samples) {
    if (n_samples < 2) throw ArgumentError("parametric_stroke needs at least 2 samples");
    std::vector<Coord> samples;
    for (int i = 0; i < n_samples; ++i) {
        const double t = t0 + (t1 - t0) * i / (n_samples - 1);
        const auto [x, y] = sampler(t);
        if (!std::isfinite(x) || !std::isfinite(y)) {
            throw NumericError("sampler returned a non-finite value at t=" + std::to_string(t));
        }
        const Coord c{static_cast<int>(std::floor(x + 0.5)), static_cast<int>(std::floor(y + 0.5))};
        if (samples.empty() || !(samples.back() == c)) samples.push_back(c);
    }

    std::vector<Coord> path = {samples.front()};
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const auto seg = midpoint_line(samples[i - 1], samples[i]).points;
        path.insert(path.end(), seg.begin() + 1, seg.end());
    }
    const CoordSet kept = thin(CoordSet(path.begin(), path.end()), {path.front(), path.back()});

    Stroke s;
    s.role = StrokeRole::curve;
    CoordSet emitted;
    for (Coord p : path) {
        if (kept.count(p) && emitted.insert(p).second) s.points.push_back(p);
    }
    s.ends = {s.points.front(), s.points.back()};
    return s;
}

std::vector<Run> path_runs(const std::vector<Coord>& path) {
    std::vector<Run> runs;
    if (path.empty()) return runs;
    runs.push_back({'s', 1, 0});
    for (std::size_t i = 1; i < path.size(); ++i) {
        const char k = step_kind(path[i - 1], path[i]);
        Run& cur = runs.back();
        if (k != 'd' && (cur.kind == 's' || cur.kind == k)) {
            cur.kind = k;
            ++cur.length;
        } else {
            runs.push_back({'s', 1, i});
        }
    }
    return runs;
}

RunDecomposition run_decompose(const Stroke& stroke) {
    RunDecomposition d;
    if (stroke.points.empty()) return d;
    auto runs = path_runs(stroke.points);
    if (stroke.closed && runs.size() > 1) {
        const char k = step_kind(stroke.points.back(), stroke.points.front());
        Run& last = runs.back();
        const Run& first = runs.front();
        const bool fits_last = last.kind == 's' || last.kind == k;
        const bool fits_first = first.kind == 's' || first.kind == k;
        if (k != 'd' && fits_last && fits_first) {
            last.kind = k;
            last.length += first.length;
            runs.erase(runs.begin());
        }
    }
    int x0 = stroke.points.front().x, x1 = x0, y0 = stroke.points.front().y, y1 = y0;
    for (Coord p : stroke.points) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    d.orientation = (x1 - x0) >= (y1 - y0) ? Orientation::horizontal_major : Orientation::vertical_major;
    for (const Run& r : runs) d.runs.push_back(r.length);
    return d;
}

}  // namespace taxel
