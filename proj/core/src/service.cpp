#include "taxel/service.hpp"

#include <algorithm>
#include <map>

#include "httplib.h"
#include "json_support.hpp"
#include "taxel/catalog.hpp"
#include "taxel/codec.hpp"
#include "taxel/error.hpp"
#include "taxel/lint.hpp"

namespace taxel::service {

namespace {

using detail::ojson;

struct ApiError {
    int status;
    std::string code;
    std::string message;
    ojson detail = ojson::object();
};

Response json_response(int status, const ojson& doc) {
    return {status, detail::canonical_dump(doc) + "\n", "application/json"};
}

Response error_response(const ApiError& e) {
    ojson doc = ojson::object();
    doc["code"] = e.code;
    doc["message"] = e.message;
    doc["detail"] = e.detail;
    return json_response(e.status, doc);
}

ApiError parse_failure(const ParseError& e) {
    return {400, "parse_error", e.message(), ojson{{"line", e.line()}, {"column", e.column()}}};
}

ApiError invalid_scene(const SceneError& e) {
    ojson issues = ojson::array();
    for (const auto& i : e.issues()) {
        issues.push_back(ojson{{"item", i.item}, {"code", i.code}, {"message", i.message}});
    }
    return {422, "invalid_scene", "scene failed validation", ojson{{"issues", issues}}};
}

ojson grid_json(const PinGrid& grid) {
    ojson rows = ojson::array();
    for (int y = 0; y < grid.height(); ++y) {
        std::string row;
        for (int x = 0; x < grid.width(); ++x) row += grid.actuated({x, y}) ? '1' : '0';
        rows.push_back(row);
    }
    return ojson{{"width", grid.width()}, {"height", grid.height()}, {"actuated", grid.actuated_count()},
                 {"rows", rows}};
}

ojson report_json(const LintReport& report, const std::vector<ItemStructuralIssue>& structure) {
    ojson violations = ojson::array();
    std::map<std::string, int> counts = {{"G1", 0}, {"G2", 0}, {"G3", 0}, {"G4", 0},
                                         {"G5", 0}, {"G6", 0}, {"ADVISORY", 0}};
    for (const auto& v : report.violations) {
        ojson at = ojson::array();
        for (Coord c : v.at) at.push_back(detail::coord_json(c));
        violations.push_back(ojson{{"rule", rule_name(v.rule)}, {"item", v.item}, {"at", at}, {"message", v.message}});
        ++counts[rule_name(v.rule)];
    }
    ojson count_doc = ojson::object();
    for (const char* r : {"G1", "G2", "G3", "G4", "G5", "G6", "ADVISORY"}) count_doc[r] = counts[r];
    ojson issues = ojson::array();
    for (const auto& s : structure) {
        issues.push_back(ojson{{"item", s.item},
                               {"stroke", s.issue.stroke},
                               {"at", detail::coord_json(s.issue.at)},
                               {"message", s.issue.message}});
    }
    return ojson{{"pass", report.pass}, {"counts", count_doc}, {"violations", violations}, {"structure", issues}};
}

ojson renders_json(const SceneRender& rendered) {
    ojson out = ojson::array();
    for (const auto& ir : rendered.renders) {
        out.push_back(ojson{{"item", ir.item},
                            {"kind", ir.render.kind},
                            {"strokes", ir.render.strokes.size()},
                            {"vertices", ir.render.vertices.size()},
                            {"markers", ir.render.markers.size()},
                            {"pixels", ir.render.all_pixels().size()}});
    }
    return out;
}

LintReport report_for(const SceneRender& rendered) {
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

ojson render_json(const SceneRender& rendered) {
    return ojson{{"grid", grid_json(rendered.grid)},
                 {"renders", renders_json(rendered)},
                 {"lint", report_json(report_for(rendered), scene_structure(rendered))}};
}

ojson catalog_list_json() {
    ojson entries = ojson::array();
    for (const auto& e : catalog_list()) {
        entries.push_back(ojson{{"name", e.name},
                                {"bbox", ojson::array({e.width_px, e.height_px})},
                                {"size_mm", ojson::array({extent_mm(e.width_px, 2.5), extent_mm(e.height_px, 2.5)})},
                                {"group", e.group},
                                {"description", e.description}});
    }
    return ojson{{"entries", entries}};
}

Scene catalog_scene(const std::string& name, std::optional<std::pair<int, int>> bbox) {
    const auto& entry = catalog_entry(name);
    const auto [w, h] = bbox.value_or(std::make_pair(entry.width_px, entry.height_px));
    Scene s;
    s.grid.width_px = std::max(w, 1);
    s.grid.height_px = std::max(h, 1);
    s.items.push_back(CatalogItem{name, {0, 0}, bbox});
    return s;
}

ojson diff_json(const Scene& before, const Scene& after, SceneOptions options) {
    const auto a = render_scene(before, options);
    const auto b = render_scene(after, options);
    const GridDiff d = diff_grids(a.grid, b.grid);
    ojson added = ojson::array(), removed = ojson::array();
    for (Coord c : d.added) added.push_back(detail::coord_json(c));
    for (Coord c : d.removed) removed.push_back(detail::coord_json(c));
    return ojson{{"added", added},
                 {"removed", removed},
                 {"counts", ojson{{"added", d.added.size()}, {"removed", d.removed.size()}}}};
}

std::optional<std::pair<int, int>> parse_size(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos) return std::nullopt;
    try {
        std::size_t used = 0;
        const int w = std::stoi(text.substr(0, x), &used);
        if (used != x) return std::nullopt;
        const std::string hs = text.substr(x + 1);
        const int h = std::stoi(hs, &used);
        if (used != hs.size()) return std::nullopt;
        return std::make_pair(w, h);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::map<std::string, std::string> parse_query(std::string_view q) {
    std::map<std::string, std::string> out;
    while (!q.empty()) {
        const auto amp = q.find('&');
        const auto part = q.substr(0, amp);
        const auto eq = part.find('=');
        out[std::string(part.substr(0, eq))] = eq == std::string_view::npos ? "" : std::string(part.substr(eq + 1));
        if (amp == std::string_view::npos) break;
        q.remove_prefix(amp + 1);
    }
    return out;
}

Response route(std::string_view method, std::string_view path, const std::map<std::string, std::string>& query,
               std::string_view body) {
    SceneOptions options;
    if (auto it = query.find("clip"); it != query.end()) options.clip = it->second.empty() || it->second == "1" || it->second == "true";

    if (method == "GET" && path == "/api/health") return json_response(200, ojson{{"ok", true}});
    if (method == "GET" && path == "/api/catalog") return json_response(200, catalog_list_json());
    if (method == "GET" && path.rfind("/api/catalog/", 0) == 0) {
        const std::string name(path.substr(13));
        std::optional<std::pair<int, int>> bbox;
        if (auto it = query.find("bbox"); it != query.end()) {
            bbox = parse_size(it->second);
            if (!bbox) throw ApiError{400, "bad_request", "bbox must look like WxH", ojson{{"bbox", it->second}}};
        }
        try {
            (void)catalog_entry(name);
        } catch (const NotFoundError& e) {
            throw ApiError{404, "unknown_shape", e.what(), ojson{{"name", name}}};
        }
        return {200, catalog_entry_document(name, bbox), "application/json"};
    }
    if (method == "POST" && (path == "/api/render" || path == "/api/lint")) {
        const Scene scene = parse_scene(body);
        const auto rendered = render_scene(scene, options);
        if (path == "/api/render") return json_response(200, render_json(rendered));
        return json_response(200, report_json(report_for(rendered), scene_structure(rendered)));
    }
    if (method == "POST" && path == "/api/diff") {
        const auto doc = detail::parse_json(body);
        const detail::PositionIndex where(body);
        if (!doc.is_object()) throw where.error("", "diff body must be an object with 'before' and 'after'");
        for (const char* key : {"before", "after"}) {
            if (!doc.contains(key)) throw where.error("", std::string("missing required field '") + key + "'");
        }
        const Scene before = detail::scene_from_json(doc["before"], where, "/before");
        const Scene after = detail::scene_from_json(doc["after"], where, "/after");
        if (!(before.grid == after.grid)) {
            throw ApiError{422, "spec_mismatch", "before and after use different grid specs", ojson::object()};
        }
        return json_response(200, diff_json(before, after, options));
    }
    throw ApiError{404, "not_found", "no route for " + std::string(method) + " " + std::string(path),
                   ojson{{"method", std::string(method)}, {"path", std::string(path)}}};
}

}  // namespace

std::string catalog_document() { return detail::canonical_dump(catalog_list_json()) + "\n"; }

std::string catalog_entry_document(const std::string& name, std::optional<std::pair<int, int>> bbox) {
    const auto& entry = catalog_entry(name);
    const auto rendered = render_scene(catalog_scene(name, bbox));
    ojson doc = ojson{{"name", entry.name}};
    doc["bbox"] = ojson::array({rendered.grid.width(), rendered.grid.height()});
    const ojson body = render_json(rendered);
    for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = *it;
    return detail::canonical_dump(doc) + "\n";
}

std::string render_document(const Scene& scene, SceneOptions options) {
    return detail::canonical_dump(render_json(render_scene(scene, options))) + "\n";
}

std::string lint_document(const Scene& scene, SceneOptions options) {
    const auto rendered = render_scene(scene, options);
    return detail::canonical_dump(report_json(report_for(rendered), scene_structure(rendered))) + "\n";
}

std::string diff_document(const Scene& before, const Scene& after, SceneOptions options) {
    return detail::canonical_dump(diff_json(before, after, options)) + "\n";
}

Response handle(std::string_view method, std::string_view target, std::string_view body) {
    const auto qpos = target.find('?');
    const auto path = target.substr(0, qpos);
    const auto query = qpos == std::string_view::npos ? std::map<std::string, std::string>{}
                                                      : parse_query(target.substr(qpos + 1));
    try {
        return route(method, path, query, body);
    } catch (const ApiError& e) {
        return error_response(e);
    } catch (const ParseError& e) {
        return error_response(parse_failure(e));
    } catch (const SceneError& e) {
        return error_response(invalid_scene(e));
    } catch (const SpecError& e) {
        return error_response({422, "invalid_scene", e.what(), ojson::object()});
    } catch (const std::exception& e) {
        return error_response({500, "internal", e.what(), ojson::object()});
    }
}

struct Server::Impl {
    httplib::Server http;
};

Server::Server() : impl_(std::make_unique<Impl>()) {
    auto& http = impl_->http;
    http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
    auto forward = [](const httplib::Request& req, httplib::Response& res) {
        std::string target = req.path;
        if (!req.params.empty()) {
            std::string q;
            for (const auto& [k, v] : req.params) q += (q.empty() ? "" : "&") + k + "=" + v;
            target += "?" + q;
        }
        const Response r = handle(req.method, target, req.body);
        res.status = r.status;
        res.set_content(r.body, r.content_type);
    };
    http.Get(".*", forward);
    http.Post(".*", forward);
    http.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

Server::~Server() = default;

bool Server::listen(const std::string& host, int port) { return impl_->http.listen(host, port); }

int Server::bind_any(const std::string& host) { return impl_->http.bind_to_any_port(host); }

bool Server::listen_after_bind() { return impl_->http.listen_after_bind(); }

void Server::stop() { impl_->http.stop(); }

void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace taxel::service
