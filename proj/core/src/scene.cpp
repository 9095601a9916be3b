#include "taxel/scene.hpp"

#include <algorithm>

#include "taxel/catalog.hpp"

namespace taxel {

namespace {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

std::string join_messages(const std::vector<SceneIssue>& issues) {
    std::string out;
    for (const auto& i : issues) {
        if (!out.empty()) out += "; ";
        out += "item " + std::to_string(i.item) + ": " + i.message;
    }
    return out;
}

bool inside(Coord c, Coord at, int w, int h) { return c.x >= at.x && c.y >= at.y && c.x < at.x + w && c.y < at.y + h; }

struct Work {
    const Scene& scene;
    SceneOptions options;
    std::vector<ItemRender> renders;
    std::vector<SceneIssue> issues;
    PinGrid grid;

    Work(const Scene& s, SceneOptions o) : scene(s), options(o), grid(s.grid) {}

    void issue(int item, std::string code, std::string message) {
        issues.push_back({item, std::move(code), std::move(message)});
    }

    // Checks bounds and, when clipping, drops pixels off the grid.
    void place(int item, std::vector<ShapeRender> parts) {
        bool reported = false;
        for (auto& r : parts) {
            for (Coord p : r.all_pixels()) {
                if (!grid.contains(p) && !options.clip && !reported) {
                    issue(item, "bounds",
                          "pixel (" + std::to_string(p.x) + "," + std::to_string(p.y) + ") is outside the " +
                              std::to_string(grid.width()) + "x" + std::to_string(grid.height()) + " grid");
                    reported = true;
                }
            }
            if (options.clip) {
                for (auto& s : r.strokes) {
                    s.points.erase(std::remove_if(s.points.begin(), s.points.end(),
                                                  [&](Coord c) { return !grid.contains(c); }),
                                   s.points.end());
                }
                r.markers.erase(std::remove_if(r.markers.begin(), r.markers.end(),
                                               [&](const Marker& m) { return !grid.contains(m.at); }),
                                r.markers.end());
            }
            renders.push_back({item, std::move(r)});
        }
    }

    void draw(const ShapeRender& r) {
        std::vector<Coord> px;
        for (Coord c : r.all_pixels()) {
            if (grid.contains(c)) px.push_back(c);
        }
        grid = with_pixels(grid, px, PinState::actuated);
    }

    void attach(int item, const PixelsItem& p) {
        const int target = *p.attach;
        if (target < 0 || target >= item) {
            issue(item, "attach", "attach must name an earlier item, got " + std::to_string(target));
            return;
        }
        // Each pixel joins the stroke it touches least, so a one-pixel extension
        // lengthens a single stroke instead of closing a loop with its neighbour.
        for (Coord c : p.coords) {
            if (!grid.contains(c)) continue;
            Stroke* best = nullptr;
            int best_count = 0;
            for (auto& ir : renders) {
                if (ir.item != target) continue;
                for (auto& s : ir.render.strokes) {
                    int count = 0;
                    for (Coord q : s.points) {
                        if (std::abs(q.x - c.x) <= 1 && std::abs(q.y - c.y) <= 1 && !(q == c)) ++count;
                    }
                    if (count > 0 && (!best || count < best_count)) {
                        best_count = count;
                        best = &s;
                    }
                }
            }
            if (!best) {
                issue(item, "attach",
                      "pixel (" + std::to_string(c.x) + "," + std::to_string(c.y) + ") does not touch item " +
                          std::to_string(target));
                continue;
            }
            if (std::find(best->points.begin(), best->points.end(), c) == best->points.end()) best->points.push_back(c);
        }
    }

    void erase(const EraseItem& e) {
        grid = erase_rect(grid, e.at, e.width, e.height);
        for (auto& ir : renders) {
            for (auto& s : ir.render.strokes) {
                s.points.erase(std::remove_if(s.points.begin(), s.points.end(),
                                              [&](Coord c) { return inside(c, e.at, e.width, e.height); }),
                               s.points.end());
            }
            auto& m = ir.render.markers;
            m.erase(std::remove_if(m.begin(), m.end(),
                                   [&](const Marker& mk) {
                                       return inside(mk.at, e.at, e.width, e.height) &&
                                              inside({mk.at.x + mk.size - 1, mk.at.y + mk.size - 1}, e.at, e.width,
                                                     e.height);
                                   }),
                    m.end());
        }
    }

    void run() {
        for (std::size_t i = 0; i < scene.items.size(); ++i) {
            const int idx = static_cast<int>(i);
            const std::size_t before = renders.size();
            try {
                std::visit(overloaded{
                               [&](const CatalogItem& c) {
                                   auto parts = build(c.name, c.size);
                                   for (auto& r : parts) r = translate(std::move(r), c.at);
                                   place(idx, std::move(parts));
                               },
                               [&](const LineItem& l) {
                                   ShapeRender r;
                                   r.kind = "line";
                                   r.strokes.push_back(pixel_art_line(l.from, l.to));
                                   r.vertices = {l.from};
                                   if (!(l.to == l.from)) r.vertices.push_back(l.to);
                                   place(idx, {r});
                               },
                               [&](const PolygonItem& p) { place(idx, {polygon(p.vertices, p.closed)}); },
                               [&](const ConicItem& c) { place(idx, {conic(c.at, c.width, c.height)}); },
                               [&](const MarkerItem& m) {
                                   if (m.size < 1) throw ArgumentError("marker size must be at least 1");
                                   ShapeRender r;
                                   r.kind = "marker";
                                   r.markers.push_back({m.at, m.size});
                                   place(idx, {r});
                               },
                               [&](const PixelsItem& p) {
                                   if (p.attach) {
                                       for (Coord c : p.coords) {
                                           if (!grid.contains(c) && !options.clip) {
                                               issue(idx, "bounds", "pixel outside the grid");
                                               return;
                                           }
                                       }
                                       attach(idx, p);
                                       std::vector<Coord> px;
                                       for (Coord c : p.coords) {
                                           if (grid.contains(c)) px.push_back(c);
                                       }
                                       grid = with_pixels(grid, px, PinState::actuated);
                                       return;
                                   }
                                   ShapeRender r;
                                   r.kind = "pixels";
                                   Stroke s;
                                   for (Coord c : p.coords) {
                                       if (std::find(s.points.begin(), s.points.end(), c) == s.points.end()) {
                                           s.points.push_back(c);
                                       }
                                   }
                                   r.strokes.push_back(std::move(s));
                                   place(idx, {r});
                               },
                               [&](const EraseItem& e) {
                                   if (e.width <= 0 || e.height <= 0) {
                                       throw ArgumentError("erase needs a positive width and height");
                                   }
                                   erase(e);
                               },
                           },
                           scene.items[i]);
            } catch (const NotFoundError& e) {
                issue(idx, "not_found", e.what());
            } catch (const TooSmallError& e) {
                issue(idx, "too_small", e.what());
            } catch (const Error& e) {
                issue(idx, "argument", e.what());
            }
            for (std::size_t k = before; k < renders.size(); ++k) draw(renders[k].render);
        }
    }
};

}  // namespace

std::string item_kind(const Item& item) {
    static const char* names[] = {"catalog", "line", "polygon", "conic", "marker", "pixels", "erase"};
    return names[item.index()];
}

SceneError::SceneError(std::vector<SceneIssue> issues)
    : Error("invalid scene: " + join_messages(issues)), issues_(std::move(issues)) {}

std::vector<SceneIssue> validate_scene(const Scene& scene, SceneOptions options) {
    try {
        validate_spec(scene.grid);
    } catch (const SpecError& e) {
        return {{-1, "spec", e.what()}};
    }
    Work w(scene, options);
    w.run();
    return w.issues;
}

SceneRender render_scene(const Scene& scene, SceneOptions options) {
    validate_spec(scene.grid);
    Work w(scene, options);
    w.run();
    if (!w.issues.empty()) throw SceneError(w.issues);
    return {w.grid, std::move(w.renders)};
}

LintReport lint_scene(const Scene& scene, SceneOptions options) {
    const SceneRender rendered = render_scene(scene, options);
    LintReport all;
    for (const auto& ir : rendered.renders) {
        LintReport r = lint_render(ir.render);
        for (auto& v : r.violations) {
            v.item = ir.item;
            all.violations.push_back(std::move(v));
        }
        all.pass = all.pass && r.pass;
    }
    return all;
}

std::vector<ItemStructuralIssue> scene_structure(const SceneRender& rendered) {
    std::vector<ItemStructuralIssue> out;
    for (const auto& ir : rendered.renders) {
        if (ir.render.strokes.empty()) continue;
        for (auto& issue : check_structure(ir.render)) out.push_back({ir.item, issue});
    }
    return out;
}

}  // namespace taxel
