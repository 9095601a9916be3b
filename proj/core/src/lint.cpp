#include "taxel/lint.hpp"

#include <algorithm>
#include <optional>

#include "taxel/stroke_topology.hpp"

namespace taxel {

namespace {

std::string at_text(Coord c) { return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")"; }

bool in(const CoordSet& s, Coord c) { return s.count(c) > 0; }

std::vector<Coord> run_pixels(const std::vector<Coord>& path, const Run& r) {
    return {path.begin() + static_cast<std::ptrdiff_t>(r.first),
            path.begin() + static_cast<std::ptrdiff_t>(r.first + static_cast<std::size_t>(r.length))};
}

// Signed steepness of a run: flat runs negative, steep runs positive.
int steepness(const Run& r) {
    if (r.kind == 'h') return -(r.length - 1);
    if (r.kind == 'v') return r.length - 1;
    return 0;
}

// Runs of a closed loop, rotated so that no run wraps around the path end.
std::pair<std::vector<Coord>, std::vector<Run>> loop_runs(std::vector<Coord> path) {
    const std::size_t n = path.size();
    std::size_t start = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Coord a = path[(i + n - 1) % n], b = path[i];
        if (a.x != b.x && a.y != b.y) {
            start = i;
            break;
        }
    }
    std::rotate(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(start), path.end());
    auto runs = path_runs(path);
    return {path, runs};
}

std::size_t run_of(const std::vector<Run>& runs, std::size_t pixel) {
    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (pixel >= runs[i].first && pixel < runs[i].first + static_cast<std::size_t>(runs[i].length)) return i;
    }
    return runs.size() - 1;
}

void closed_curve_g4(const std::vector<Coord>& traced, std::vector<Violation>& out) {
    auto [path, runs] = loop_runs(traced);
    int xmin = path[0].x, xmax = xmin, ymin = path[0].y, ymax = ymin;
    for (Coord p : path) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    auto pick = [&](auto better) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < path.size(); ++i) {
            if (better(path[i], path[best])) best = i;
        }
        return run_of(runs, best);
    };
    const std::size_t top = pick([](Coord a, Coord b) { return a.y < b.y || (a.y == b.y && a.x < b.x); });
    const std::size_t right = pick([](Coord a, Coord b) { return a.x > b.x || (a.x == b.x && a.y < b.y); });
    const std::size_t bottom = pick([](Coord a, Coord b) { return a.y > b.y || (a.y == b.y && a.x > b.x); });
    const std::size_t left = pick([](Coord a, Coord b) { return a.x < b.x || (a.x == b.x && a.y > b.y); });

    const std::size_t m = runs.size();
    auto ahead = [&](std::size_t from, std::size_t to) { return (to + m - from) % m; };
    std::vector<std::size_t> apex = {top, right, bottom, left};
    bool clockwise = ahead(top, right) <= ahead(top, bottom) && ahead(top, bottom) <= ahead(top, left);
    bool counter = ahead(top, left) <= ahead(top, bottom) && ahead(top, bottom) <= ahead(top, right);
    if (!clockwise && !counter) {
        out.push_back({RuleId::G4, run_pixels(path, runs[top]), "curve apexes are out of order", -1});
        return;
    }
    if (counter) apex = {top, left, bottom, right};

    for (int q = 0; q < 4; ++q) {
        const std::size_t from = apex[static_cast<std::size_t>(q)];
        const std::size_t to = apex[static_cast<std::size_t>((q + 1) % 4)];
        std::vector<std::size_t> arc;
        for (std::size_t i = from;; i = (i + 1) % m) {
            arc.push_back(i);
            if (i == to) break;
        }
        // Read every arc starting from its top or bottom apex.
        if (q % 2 == 1) std::reverse(arc.begin(), arc.end());
        std::vector<int> measure;
        for (std::size_t i : arc) measure.push_back(steepness(runs[i]));
        for (std::size_t d : monotone_dips(measure)) {
            out.push_back({RuleId::G4, run_pixels(path, runs[arc[d]]),
                           "run at " + at_text(path[runs[arc[d]].first]) +
                               " breaks the steady change of run length toward the apex",
                           -1});
        }
    }
}

void open_curve_g4(const std::vector<Coord>& path, std::vector<Violation>& out) {
    const auto runs = path_runs(path);
    // Split at the runs where the path reverses its horizontal or vertical direction.
    std::vector<bool> turn(runs.size(), false);
    int dir_x = 0, dir_y = 0;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        const int sx = (path[k + 1].x > path[k].x) - (path[k + 1].x < path[k].x);
        const int sy = (path[k + 1].y > path[k].y) - (path[k + 1].y < path[k].y);
        if ((sx != 0 && dir_x != 0 && sx != dir_x) || (sy != 0 && dir_y != 0 && sy != dir_y)) {
            turn[run_of(runs, k)] = true;
        }
        if (sx != 0) dir_x = sx;
        if (sy != 0) dir_y = sy;
    }
    std::vector<std::vector<std::size_t>> pieces(1);
    for (std::size_t i = 0; i < runs.size(); ++i) {
        pieces.back().push_back(i);
        if (turn[i] && i + 1 < runs.size()) pieces.push_back({i});
    }
    for (const auto& piece : pieces) {
        std::vector<int> measure;
        for (std::size_t i : piece) measure.push_back(steepness(runs[i]));
        const std::size_t n = measure.size();
        std::vector<int> before(n, -1000000), after(n, -1000000);
        for (std::size_t i = 1; i < n; ++i) before[i] = std::max(before[i - 1], measure[i - 1]);
        for (std::size_t i = n - 1; i-- > 0;) after[i] = std::max(after[i + 1], measure[i + 1]);
        for (std::size_t j = 1; j + 1 < n; ++j) {
            if (measure[j] + 2 <= std::min(before[j], after[j])) {
                const Run& r = runs[piece[j]];
                out.push_back({RuleId::G4, run_pixels(path, r),
                               "blip: run at " + at_text(path[r.first]) + " dips between steeper neighbours", -1});
            }
        }
    }
}

}  // namespace

std::string rule_name(RuleId rule) {
    switch (rule) {
        case RuleId::G1: return "G1";
        case RuleId::G2: return "G2";
        case RuleId::G3: return "G3";
        case RuleId::G4: return "G4";
        case RuleId::G5: return "G5";
        case RuleId::G6: return "G6";
        case RuleId::ADVISORY: return "ADVISORY";
    }
    return "?";
}

std::vector<std::size_t> monotone_dips(const std::vector<int>& runs) {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i < runs.size(); ++i) {
        if (runs[i] < runs[i - 1]) out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> unbalanced_runs(const std::vector<int>& runs) {
    std::vector<std::size_t> out;
    const std::size_t n = runs.size();
    if (n < 2) return out;
    if (n == 2) {
        if (std::abs(runs[0] - runs[1]) > 1) out = {0, 1};
        return out;
    }
    const auto [lo_it, hi_it] = std::minmax_element(runs.begin() + 1, runs.end() - 1);
    const int lo = *lo_it, hi = *hi_it;
    if (runs[0] < lo - 1 || runs[0] > hi + 1) out.push_back(0);
    if (hi - lo > 1) {
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (runs[i] == lo || runs[i] == hi) out.push_back(i);
        }
    }
    if (runs[n - 1] < lo - 1 || runs[n - 1] > hi + 1) out.push_back(n - 1);
    return out;
}

std::vector<Violation> check_g1(const ShapeRender& render) {
    std::vector<Violation> out;
    const CoordSet pixels = render.stroke_pixels();
    const CoordSet vertices(render.vertices.begin(), render.vertices.end());
    CoordSet in_block;
    for (Coord p : pixels) {
        const Coord r{p.x + 1, p.y}, d{p.x, p.y + 1}, rd{p.x + 1, p.y + 1};
        if (in(pixels, r) && in(pixels, d) && in(pixels, rd)) {
            out.push_back({RuleId::G1, {p, r, d, rd}, "2x2 block at " + at_text(p) + " thickens the outline", -1});
            in_block.insert({p, r, d, rd});
        }
    }
    CoordSet remaining = pixels;
    for (Coord p : pixels) {
        if (in(in_block, p) || in(vertices, p)) continue;
        if (removable_double(remaining, p)) {
            out.push_back({RuleId::G1, {p}, "extra pixel at " + at_text(p) + " doubles the outline", -1});
            remaining.erase(p);
        }
    }
    return out;
}

std::vector<Violation> check_g2(const ShapeRender& render) {
    std::vector<Violation> out;
    const CoordSet vertices(render.vertices.begin(), render.vertices.end());
    for (const Stroke& s : render.strokes) {
        const CoordSet pixels(s.points.begin(), s.points.end());
        CoordSet flagged;
        for (Coord c : pixels) {
            if (in(vertices, c)) continue;
            for (int hx : {-1, 1}) {
                bool done = false;
                for (int vy : {-1, 1}) {
                    const Coord h{c.x + hx, c.y}, v{c.x, c.y + vy};
                    if (!in(pixels, h) || !in(pixels, v)) continue;
                    if (in(vertices, h) || in(vertices, v)) continue;
                    if (in(flagged, h) || in(flagged, v)) continue;
                    out.push_back({RuleId::G2, {c, h, v},
                                   "runs meet orthogonally at " + at_text(c) + "; join them diagonally", -1});
                    flagged.insert(c);
                    done = true;
                    break;
                }
                if (done) break;
            }
        }
    }
    return out;
}

std::vector<Violation> check_g3(const ShapeRender& render) {
    std::vector<Violation> out;
    for (const Stroke& s : render.strokes) {
        if (s.role != StrokeRole::edge) continue;
        const auto path = trace_stroke(s);
        if (!path) continue;
        const auto runs = path_runs(*path);
        std::vector<int> lengths;
        for (const Run& r : runs) lengths.push_back(r.length);
        for (std::size_t i : unbalanced_runs(lengths)) {
            out.push_back({RuleId::G3, run_pixels(*path, runs[i]),
                           "run of " + std::to_string(lengths[i]) + " at " + at_text((*path)[runs[i].first]) +
                               " is out of balance with the rest of the edge",
                           -1});
        }
    }
    return out;
}

std::vector<Violation> check_g4(const ShapeRender& render) {
    std::vector<Violation> out;
    for (const Stroke& s : render.strokes) {
        if (s.role != StrokeRole::curve) continue;
        const auto path = trace_stroke(s);
        if (!path) continue;
        if (s.closed) {
            closed_curve_g4(*path, out);
        } else {
            open_curve_g4(*path, out);
        }
    }
    return out;
}

std::vector<Violation> check_g5(const ShapeRender& render) {
    std::vector<Violation> out;
    for (const Stroke& s : render.strokes) {
        if (s.role != StrokeRole::curve || !s.closed || s.points.empty()) continue;
        const CoordSet pixels(s.points.begin(), s.points.end());
        int xmin = s.points[0].x, xmax = xmin, ymin = s.points[0].y, ymax = ymin;
        for (Coord p : pixels) {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
        struct Apex {
            const char* name;
            std::vector<Coord> px;
        };
        Apex apex[4] = {{"top", {}}, {"bottom", {}}, {"left", {}}, {"right", {}}};
        for (Coord p : pixels) {
            if (p.y == ymin) apex[0].px.push_back(p);
            if (p.y == ymax) apex[1].px.push_back(p);
        }
        for (int y = ymin; y <= ymax; ++y) {
            if (in(pixels, {xmin, y})) apex[2].px.push_back({xmin, y});
            if (in(pixels, {xmax, y})) apex[3].px.push_back({xmax, y});
        }
        bool straight = true;
        for (int i = 0; i < 4; ++i) {
            const auto& px = apex[i].px;
            const bool along_x = i < 2;
            const int span = along_x ? px.back().x - px.front().x : px.back().y - px.front().y;
            if (span + 1 != static_cast<int>(px.size())) {
                straight = false;
                out.push_back({RuleId::G5, px, std::string(apex[i].name) + " apex run is broken", -1});
            }
        }
        if (!straight) continue;
        const std::size_t top = apex[0].px.size(), bottom = apex[1].px.size();
        const std::size_t left = apex[2].px.size(), right = apex[3].px.size();
        if (top != bottom) {
            std::vector<Coord> at = apex[0].px;
            at.insert(at.end(), apex[1].px.begin(), apex[1].px.end());
            out.push_back({RuleId::G5, at,
                           "top apex run (" + std::to_string(top) + ") differs from bottom (" +
                               std::to_string(bottom) + ")",
                           -1});
        }
        if (left != right) {
            std::vector<Coord> at = apex[2].px;
            at.insert(at.end(), apex[3].px.begin(), apex[3].px.end());
            out.push_back({RuleId::G5, at,
                           "left apex run (" + std::to_string(left) + ") differs from right (" +
                               std::to_string(right) + ")",
                           -1});
        }
        if (xmax - xmin == ymax - ymin && top == bottom && left == right && top != left) {
            std::vector<Coord> at = apex[0].px;
            at.insert(at.end(), apex[2].px.begin(), apex[2].px.end());
            out.push_back({RuleId::G5, at,
                           "circle apex runs differ: top/bottom " + std::to_string(top) + ", left/right " +
                               std::to_string(left),
                           -1});
        }
    }
    return out;
}

std::vector<Violation> check_g6(const ShapeRender& render) {
    std::vector<Violation> out;
    const CoordSet pixels = render.stroke_pixels();
    CoordSet done;
    for (Coord v : render.vertices) {
        if (!done.insert(v).second) continue;
        if (!in(pixels, v)) {
            out.push_back({RuleId::G6, {v}, "eroded corner: vertex " + at_text(v) + " is not actuated", -1});
            continue;
        }
        std::optional<Violation> found;
        for (const Stroke& s : render.strokes) {
            if (s.closed || std::find(s.ends.begin(), s.ends.end(), v) == s.ends.end()) continue;
            const CoordSet own(s.points.begin(), s.points.end());
            if (!in(own, v)) {
                found = Violation{RuleId::G6, {v}, "vertex " + at_text(v) + " is missing from an incident stroke", -1};
                break;
            }
            bool beyond = own.size() > 1 && degree(own, v) >= 2;
            Coord culprit = v;
            if (s.role == StrokeRole::edge && s.ends.size() == 2) {
                const Coord other = s.ends[0] == v ? s.ends[1] : s.ends[0];
                const Coord dir = v - other;
                for (Coord p : s.points) {
                    const Coord rel = p - v;
                    if (1LL * rel.x * dir.x + 1LL * rel.y * dir.y > 0) {
                        beyond = true;
                        culprit = p;
                        break;
                    }
                }
            }
            if (beyond) {
                std::vector<Coord> at = {v};
                if (!(culprit == v)) at.push_back(culprit);
                found = Violation{RuleId::G6, at,
                                  "extended corner: stroke continues past vertex " + at_text(v), -1};
                break;
            }
        }
        if (found) out.push_back(*found);
    }
    return out;
}

LintReport finalize_report(std::vector<Violation> violations) {
    std::stable_sort(violations.begin(), violations.end(), [](const Violation& a, const Violation& b) {
        if (a.rule != b.rule) return a.rule < b.rule;
        if (a.at.empty() || b.at.empty()) return a.at.empty() && !b.at.empty();
        return a.at.front() < b.at.front();
    });
    LintReport report;
    report.violations = std::move(violations);
    report.pass = std::none_of(report.violations.begin(), report.violations.end(),
                               [](const Violation& v) { return v.rule != RuleId::ADVISORY; });
    return report;
}

LintReport lint_render(const ShapeRender& render) {
    std::vector<Violation> all;
    for (auto* check : {check_g1, check_g2, check_g3, check_g4, check_g5, check_g6}) {
        auto found = check(render);
        all.insert(all.end(), found.begin(), found.end());
    }
    for (const Marker& m : render.markers) {
        if (m.size > 1) {
            all.push_back({RuleId::ADVISORY, {m.at},
                           std::to_string(m.size) + "x" + std::to_string(m.size) + " marker at " + at_text(m.at) +
                               "; a single dot reads more accurately",
                           -1});
        }
    }
    return finalize_report(std::move(all));
}

LintReport lint_grid(const PinGrid& grid) {
    ShapeRender r;
    Stroke s;
    s.points = grid.actuated_coords();
    r.strokes.push_back(std::move(s));
    return finalize_report(check_g1(r));
}

}  // namespace taxel
