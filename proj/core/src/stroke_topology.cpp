#include "taxel/stroke_topology.hpp"

#include <algorithm>
#include <map>

namespace taxel {

namespace {

constexpr Coord kNeighbours[8] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}};

std::vector<Coord> neighbours(const CoordSet& pixels, Coord p) {
    std::vector<Coord> out;
    for (Coord d : kNeighbours) {
        if (pixels.count(p + d)) out.push_back(p + d);
    }
    return out;
}

std::string describe(Coord c) { return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")"; }

}  // namespace

int degree(const CoordSet& pixels, Coord p) { return static_cast<int>(neighbours(pixels, p).size()); }

bool connected(const CoordSet& pixels) {
    if (pixels.empty()) return false;
    CoordSet seen = {*pixels.begin()};
    std::vector<Coord> stack = {*pixels.begin()};
    while (!stack.empty()) {
        const Coord p = stack.back();
        stack.pop_back();
        for (Coord n : neighbours(pixels, p)) {
            if (seen.insert(n).second) stack.push_back(n);
        }
    }
    return seen.size() == pixels.size();
}

std::optional<std::vector<Coord>> trace_stroke(const Stroke& stroke) {
    const CoordSet pixels(stroke.points.begin(), stroke.points.end());
    if (pixels.empty() || pixels.size() != stroke.points.size() || !connected(pixels)) return std::nullopt;

    std::map<Coord, std::size_t> rank;
    for (std::size_t i = 0; i < stroke.points.size(); ++i) rank.emplace(stroke.points[i], i);

    std::vector<Coord> ends;
    for (Coord p : pixels) {
        const int d = degree(pixels, p);
        if (d > 2) return std::nullopt;
        if (d < 2) ends.push_back(p);
    }

    Coord start;
    if (stroke.closed) {
        if (!ends.empty() || pixels.size() < 4) return std::nullopt;
        start = stroke.points.front();
    } else {
        if (pixels.size() == 1) return std::vector<Coord>{*pixels.begin()};
        if (ends.size() != 2) return std::nullopt;
        start = rank[ends[0]] <= rank[ends[1]] ? ends[0] : ends[1];
    }

    std::vector<Coord> path = {start};
    CoordSet visited = {start};
    Coord cur = start;
    while (true) {
        auto next = neighbours(pixels, cur);
        next.erase(std::remove_if(next.begin(), next.end(), [&](Coord c) { return visited.count(c) > 0; }),
                   next.end());
        if (next.empty()) break;
        // Leaving the start of a loop there are two choices; follow the listed order.
        std::sort(next.begin(), next.end(), [&](Coord a, Coord b) {
            const std::size_t ra = (rank[a] + stroke.points.size() - rank[cur]) % stroke.points.size();
            const std::size_t rb = (rank[b] + stroke.points.size() - rank[cur]) % stroke.points.size();
            return ra < rb;
        });
        cur = next.front();
        visited.insert(cur);
        path.push_back(cur);
    }
    if (path.size() != pixels.size()) return std::nullopt;
    return path;
}

std::vector<StructuralIssue> check_structure(const ShapeRender& render) {
    std::vector<StructuralIssue> issues;
    for (std::size_t i = 0; i < render.strokes.size(); ++i) {
        const Stroke& s = render.strokes[i];
        const int idx = static_cast<int>(i);
        if (s.points.empty()) {
            issues.push_back({idx, {}, "stroke " + std::to_string(i) + " is empty"});
            continue;
        }
        const CoordSet pixels(s.points.begin(), s.points.end());
        if (!connected(pixels)) {
            issues.push_back({idx, s.points.front(), "stroke " + std::to_string(i) + " is disconnected"});
            continue;
        }
        if (!trace_stroke(s)) {
            Coord at = s.points.front();
            for (Coord p : pixels) {
                const int d = degree(pixels, p);
                if (d > 2 || (s.closed && d < 2)) {
                    at = p;
                    break;
                }
            }
            issues.push_back({idx, at,
                              "stroke " + std::to_string(i) + " is not a simple " +
                                  (s.closed ? "loop" : "path") + " near " + describe(at)});
        }
    }
    const CoordSet strokes = render.stroke_pixels();
    if (!strokes.empty() && !connected(strokes)) {
        issues.push_back({-1, *strokes.begin(), "strokes of the render are not 8-connected"});
    }
    for (const Marker& m : render.markers) {
        ShapeRender only;
        only.markers = {m};
        for (Coord p : only.all_pixels()) {
            if (strokes.count(p)) {
                issues.push_back({-1, p, "marker overlaps a stroke at " + describe(p)});
                break;
            }
        }
    }
    return issues;
}

}  // namespace taxel
