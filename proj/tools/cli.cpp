#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "taxel/catalog.hpp"
#include "taxel/codec.hpp"
#include "taxel/error.hpp"
#include "taxel/lint.hpp"
#include "taxel/scene.hpp"
#include "taxel/service.hpp"

namespace taxel::cli {

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A ParseError tagged with the file it came from.
struct FileParseError : std::runtime_error {
    FileParseError(const std::string& path, const ParseError& e) : std::runtime_error(path + ":" + e.what()) {}
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Scene load_scene(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return parse_scene(text);
    } catch (const ParseError& e) {
        throw FileParseError(path, e);
    }
}

std::string coord_text(Coord c) { return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")"; }

std::string lint_text(const SceneRender& rendered, const LintReport& report) {
    std::ostringstream out;
    int errors = 0, advisories = 0;
    for (const auto& v : report.violations) {
        out << rule_name(v.rule) << " item " << v.item;
        for (Coord c : v.at) out << ' ' << coord_text(c);
        out << ": " << v.message << '\n';
        (v.rule == RuleId::ADVISORY ? advisories : errors)++;
    }
    const auto structure = scene_structure(rendered);
    for (const auto& s : structure) {
        out << "STRUCTURE item " << s.item << " stroke " << s.issue.stroke << ' ' << coord_text(s.issue.at) << ": "
            << s.issue.message << '\n';
    }
    out << (report.pass ? "PASS" : "FAIL") << ": " << errors << " violation" << (errors == 1 ? "" : "s") << ", "
        << advisories << " advisor" << (advisories == 1 ? "y" : "ies") << ", " << structure.size()
        << " structural issue" << (structure.size() == 1 ? "" : "s") << '\n';
    return out.str();
}

std::string grid_text(const PinGrid& grid, const std::string& format) {
    if (format == "ascii") return export_ascii(grid);
    if (format == "braille") return export_braille(grid);
    return export_pbm(grid);
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) throw IoError("cannot write '" + path + "'");
}

std::pair<int, int> parse_bbox(const std::string& text) {
    const auto x = text.find('x');
    std::size_t a = 0, b = 0;
    try {
        if (x == std::string::npos) throw std::invalid_argument(text);
        const int w = std::stoi(text.substr(0, x), &a);
        const int h = std::stoi(text.substr(x + 1), &b);
        if (a != x || b != text.size() - x - 1) throw std::invalid_argument(text);
        return {w, h};
    } catch (const std::logic_error&) {
        throw ArgumentError("--bbox expects WxH, got '" + text + "'");
    }
}

std::string catalog_listing() {
    std::ostringstream out;
    for (const auto& e : catalog_list()) {
        std::ostringstream size, mm;
        size << e.width_px << 'x' << e.height_px;
        mm << extent_mm(e.width_px, 2.5) << " x " << extent_mm(e.height_px, 2.5) << " mm";
        out << std::left << std::setw(12) << e.name << std::setw(7) << size.str() << std::setw(18) << mm.str()
            << std::setw(11) << e.group << e.description << '\n';
    }
    return out.str();
}

Scene single_entry_scene(const std::string& name, std::optional<std::pair<int, int>> bbox) {
    const auto& entry = catalog_entry(name);
    const auto [w, h] = bbox.value_or(std::make_pair(entry.width_px, entry.height_px));
    if (w < 1 || h < 1) throw TooSmallError("bbox must be at least 1x1");
    Scene s;
    s.grid.width_px = w;
    s.grid.height_px = h;
    s.items.push_back(CatalogItem{name, {0, 0}, bbox});
    return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Render, lint and diff tactile pin-array graphics", "taxel"};
    app.require_subcommand(1);

    std::string scene_path, other_path, out_path, name, bbox, host = "127.0.0.1";
    std::string render_format = "ascii", lint_format = "text", diff_format = "text", catalog_format;
    bool clip = false;
    int port = 8080;

    auto* render = app.add_subcommand("render", "Render a scene to a pin grid");
    render->add_option("scene", scene_path, "Scene file")->required();
    render->add_option("--format", render_format, "ascii|braille|pbm|json")
        ->check(CLI::IsMember({"ascii", "braille", "pbm", "json"}));
    render->add_option("--out", out_path, "Write to PATH instead of stdout");
    render->add_flag("--clip", clip, "Drop out-of-grid pixels instead of failing");

    auto* lint = app.add_subcommand("lint", "Check a scene against the guidelines");
    lint->add_option("scene", scene_path, "Scene file")->required();
    lint->add_option("--format", lint_format, "text|json")->check(CLI::IsMember({"text", "json"}));
    lint->add_flag("--clip", clip, "Drop out-of-grid pixels instead of failing");

    auto* diff = app.add_subcommand("diff", "Compare the grids of two scenes");
    diff->add_option("before", scene_path, "Scene file")->required();
    diff->add_option("after", other_path, "Scene file")->required();
    diff->add_option("--format", diff_format, "text|json")->check(CLI::IsMember({"text", "json"}));
    diff->add_flag("--clip", clip, "Drop out-of-grid pixels instead of failing");

    auto* catalog = app.add_subcommand("catalog", "List catalog shapes or render one");
    catalog->add_option("name", name, "Catalog entry");
    catalog->add_option("--bbox", bbox, "Bounding box WxH");
    catalog->add_option("--format", catalog_format, "text|ascii|braille|pbm|json|scene")
        ->check(CLI::IsMember({"text", "ascii", "braille", "pbm", "json", "scene"}));

    auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
    serve->add_option("--port", port, "TCP port")->default_val(8080)->check(CLI::Range(0, 65535));
    serve->add_option("--host", host, "Bind address")->default_val("127.0.0.1");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "taxel: " << e.what() << '\n';
        return invalid_input;
    }

    try {
        SceneOptions options{clip};
        if (render->parsed()) {
            const Scene scene = load_scene(scene_path);
            if (render_format == "json") {
                write_output(service::render_document(scene, options), out_path, out);
            } else {
                write_output(grid_text(render_scene(scene, options).grid, render_format), out_path, out);
            }
            return ok;
        }
        if (lint->parsed()) {
            const Scene scene = load_scene(scene_path);
            const LintReport report = lint_scene(scene, options);
            out << (lint_format == "json" ? service::lint_document(scene, options)
                                     : lint_text(render_scene(scene, options), report));
            return report.pass ? ok : lint_failed;
        }
        if (diff->parsed()) {
            const Scene before = load_scene(scene_path);
            const Scene after = load_scene(other_path);
            if (diff_format == "json") {
                out << service::diff_document(before, after, options);
                return ok;
            }
            const GridDiff d = diff_grids(render_scene(before, options).grid, render_scene(after, options).grid);
            for (Coord c : d.removed) out << "- " << coord_text(c) << '\n';
            for (Coord c : d.added) out << "+ " << coord_text(c) << '\n';
            out << "added " << d.added.size() << ", removed " << d.removed.size() << '\n';
            return ok;
        }
        if (catalog->parsed()) {
            if (name.empty()) {
                if (!bbox.empty()) throw ArgumentError("--bbox needs a catalog name");
                out << (catalog_format == "json" ? service::catalog_document() : catalog_listing());
                return ok;
            }
            std::optional<std::pair<int, int>> size;
            if (!bbox.empty()) size = parse_bbox(bbox);
            const Scene scene = single_entry_scene(name, size);
            if (catalog_format == "json") {
                out << service::catalog_entry_document(name, size);
            } else if (catalog_format == "scene") {
                out << emit_scene(scene);
            } else {
                out << grid_text(render_scene(scene).grid, catalog_format.empty() || catalog_format == "text" ? "ascii" : catalog_format);
            }
            return ok;
        }
        service::Server server;
        err << "taxel: serving on http://" << host << ':' << port << '\n';
        if (!server.listen(host, port)) {
            err << "taxel: cannot listen on " << host << ':' << port << '\n';
            return io_error;
        }
        return ok;
    } catch (const IoError& e) {
        err << "taxel: " << e.what() << '\n';
        return io_error;
    } catch (const FileParseError& e) {
        err << "taxel: " << e.what() << '\n';
        return invalid_input;
    } catch (const SceneError& e) {
        for (const auto& i : e.issues()) {
            err << "taxel: item " << i.item << ": " << i.code << ": " << i.message << '\n';
        }
        return invalid_input;
    } catch (const Error& e) {
        err << "taxel: " << e.what() << '\n';
        return invalid_input;
    }
}

}  // namespace taxel::cli
