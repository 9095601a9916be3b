#include "taxel/codec.hpp"

#include <cctype>
#include <sstream>

#include "json_support.hpp"

namespace taxel {

namespace detail {

namespace {

bool inline_array(const ojson& v) {
    if (!v.is_array()) return false;
    for (const auto& e : v) {
        if (!(e.is_number() || e.is_boolean() || e.is_null() || inline_array(e))) return false;
    }
    return true;
}

void dump(const ojson& v, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
    if (v.is_object()) {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad + ojson(it.key()).dump() + ": ";
            dump(it.value(), indent + 2, out);
        }
        out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
    } else if (v.is_array()) {
        if (v.empty()) {
            out += "[]";
        } else if (inline_array(v)) {
            out += "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ", ";
                dump(v[i], indent, out);
            }
            out += "]";
        } else {
            out += "[\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ",\n";
                out += pad;
                dump(v[i], indent + 2, out);
            }
            out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "]";
        }
    } else {
        out += v.dump();
    }
}

std::string escape_token(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~') {
            out += "~0";
        } else if (c == '/') {
            out += "~1";
        } else {
            out += c;
        }
    }
    return out;
}

[[noreturn]] void fail(const PositionIndex& where, const std::string& pointer, const std::string& message) {
    throw where.error(pointer, message);
}

const ojson& field(const ojson& obj, const PositionIndex& where, const std::string& pointer, const char* name) {
    auto it = obj.find(name);
    if (it == obj.end()) fail(where, pointer, std::string("missing required field '") + name + "'");
    return *it;
}

int to_int(const ojson& v, const PositionIndex& where, const std::string& pointer, const std::string& what) {
    if (!v.is_number_integer()) fail(where, pointer, what + " must be an integer");
    const auto n = v.get<long long>();
    if (n < -1000000 || n > 1000000) fail(where, pointer, what + " is out of range");
    return static_cast<int>(n);
}

std::vector<int> int_array(const ojson& v, const PositionIndex& where, const std::string& pointer,
                           const std::string& what, std::size_t min_len, std::size_t max_len) {
    if (!v.is_array() || v.size() < min_len || v.size() > max_len) {
        const std::string arity =
            min_len == max_len ? std::to_string(min_len) : std::to_string(min_len) + " or " + std::to_string(max_len);
        fail(where, pointer, what + " must be an array of " + arity + " integers");
    }
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(to_int(v[i], where, pointer_child(pointer, std::to_string(i)), what));
    }
    return out;
}

Coord coord_at(const ojson& v, const PositionIndex& where, const std::string& pointer, const std::string& what) {
    const auto xy = int_array(v, where, pointer, what, 2, 2);
    return {xy[0], xy[1]};
}

std::vector<Coord> coord_list(const ojson& v, const PositionIndex& where, const std::string& pointer,
                              const std::string& what) {
    if (!v.is_array()) fail(where, pointer, what + " must be an array of [x, y] pairs");
    std::vector<Coord> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(coord_at(v[i], where, pointer_child(pointer, std::to_string(i)), what + " entry"));
    }
    return out;
}

void only_fields(const ojson& obj, const PositionIndex& where, const std::string& pointer,
                 std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw where.key_error(pointer_child(pointer, it.key()), "unknown field '" + it.key() + "'");
    }
}

Item item_from_json(const ojson& j, const PositionIndex& where, const std::string& p) {
    if (!j.is_object()) fail(where, p, "item must be an object");
    const auto kind_ptr = pointer_child(p, "kind");
    const ojson& kind_v = field(j, where, p, "kind");
    if (!kind_v.is_string()) fail(where, kind_ptr, "item kind must be a string");
    const std::string kind = kind_v.get<std::string>();
    auto sub = [&](const char* name) { return pointer_child(p, name); };

    if (kind == "catalog") {
        only_fields(j, where, p, {"kind", "name", "bbox"});
        const ojson& name = field(j, where, p, "name");
        if (!name.is_string()) fail(where, sub("name"), "catalog name must be a string");
        const auto box = int_array(field(j, where, p, "bbox"), where, sub("bbox"), "bbox", 2, 4);
        if (box.size() == 3) fail(where, sub("bbox"), "bbox must be an array of 2 or 4 integers");
        CatalogItem c{name.get<std::string>(), {box[0], box[1]}, std::nullopt};
        if (box.size() == 4) c.size = std::make_pair(box[2], box[3]);
        return c;
    }
    if (kind == "line") {
        only_fields(j, where, p, {"kind", "from", "to"});
        return LineItem{coord_at(field(j, where, p, "from"), where, sub("from"), "from"),
                        coord_at(field(j, where, p, "to"), where, sub("to"), "to")};
    }
    if (kind == "polygon") {
        only_fields(j, where, p, {"kind", "vertices", "closed"});
        PolygonItem poly{coord_list(field(j, where, p, "vertices"), where, sub("vertices"), "vertices"), true};
        if (auto it = j.find("closed"); it != j.end()) {
            if (!it->is_boolean()) fail(where, sub("closed"), "closed must be true or false");
            poly.closed = it->get<bool>();
        }
        return poly;
    }
    if (kind == "conic") {
        only_fields(j, where, p, {"kind", "bbox"});
        const auto box = int_array(field(j, where, p, "bbox"), where, sub("bbox"), "bbox", 4, 4);
        return ConicItem{{box[0], box[1]}, box[2], box[3]};
    }
    if (kind == "marker") {
        only_fields(j, where, p, {"kind", "at", "size"});
        MarkerItem m{coord_at(field(j, where, p, "at"), where, sub("at"), "at"), 1};
        if (auto it = j.find("size"); it != j.end()) m.size = to_int(*it, where, sub("size"), "size");
        return m;
    }
    if (kind == "pixels") {
        only_fields(j, where, p, {"kind", "coords", "attach"});
        PixelsItem px{coord_list(field(j, where, p, "coords"), where, sub("coords"), "coords"), std::nullopt};
        if (auto it = j.find("attach"); it != j.end()) px.attach = to_int(*it, where, sub("attach"), "attach");
        return px;
    }
    if (kind == "erase") {
        only_fields(j, where, p, {"kind", "rect"});
        const auto r = int_array(field(j, where, p, "rect"), where, sub("rect"), "rect", 4, 4);
        return EraseItem{{r[0], r[1]}, r[2], r[3]};
    }
    fail(where, kind_ptr, "unknown item kind '" + kind + "'");
}

}  // namespace

std::string canonical_dump(const ojson& value) {
    std::string out;
    dump(value, 0, out);
    return out;
}

std::string pointer_child(const std::string& parent, const std::string& key) {
    return parent + "/" + escape_token(key);
}

std::pair<int, int> line_column(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    int line = 1;
    std::size_t line_start = 0;
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++line;
            line_start = i + 1;
        }
    }
    return {line, static_cast<int>(offset - line_start) + 1};
}

PositionIndex::PositionIndex(std::string_view text) : text_(text) {
    const std::size_t start = skip_ws(0);
    if (start < text_.size()) scan(start, "");
}

std::size_t PositionIndex::skip_ws(std::size_t pos) const {
    while (pos < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos]))) ++pos;
    return pos;
}

std::size_t PositionIndex::skip_string(std::size_t pos) const {
    ++pos;
    while (pos < text_.size() && text_[pos] != '"') pos += text_[pos] == '\\' ? 2 : 1;
    return pos + 1;
}

std::size_t PositionIndex::scan(std::size_t pos, const std::string& pointer) {
    offsets_.emplace(pointer, pos);
    if (pos >= text_.size()) return pos;
    const char c = text_[pos];
    if (c == '{' || c == '[') {
        const bool object = c == '{';
        const char close = object ? '}' : ']';
        pos = skip_ws(pos + 1);
        std::size_t index = 0;
        while (pos < text_.size() && text_[pos] != close) {
            std::string child;
            if (object) {
                const std::size_t end = skip_string(pos);
                std::string key;
                try {
                    key = ojson::parse(text_.substr(pos, end - pos)).get<std::string>();
                } catch (const std::exception&) {
                    return text_.size();
                }
                child = pointer_child(pointer, key);
                key_offsets_.emplace(child, pos);
                pos = skip_ws(end);
                pos = skip_ws(pos + 1);  // ':'
            } else {
                child = pointer_child(pointer, std::to_string(index++));
            }
            pos = skip_ws(scan(pos, child));
            if (pos < text_.size() && text_[pos] == ',') pos = skip_ws(pos + 1);
        }
        return pos + 1;
    }
    if (c == '"') return skip_string(pos);
    while (pos < text_.size() && text_[pos] != ',' && text_[pos] != '}' && text_[pos] != ']' &&
           !std::isspace(static_cast<unsigned char>(text_[pos]))) {
        ++pos;
    }
    return pos;
}

std::pair<int, int> PositionIndex::locate(const std::string& pointer) const {
    std::string p = pointer;
    while (true) {
        if (auto it = offsets_.find(p); it != offsets_.end()) return line_column(text_, it->second);
        if (p.empty()) return {1, 1};
        p = p.substr(0, p.rfind('/'));
    }
}

ParseError PositionIndex::key_error(const std::string& pointer, const std::string& message) const {
    if (auto it = key_offsets_.find(pointer); it != key_offsets_.end()) {
        const auto [line, column] = line_column(text_, it->second);
        return ParseError(line, column, message);
    }
    return error(pointer, message);
}

ParseError PositionIndex::error(const std::string& pointer, const std::string& message) const {
    const auto [line, column] = locate(pointer);
    return ParseError(line, column, message);
}

ojson parse_json(std::string_view text) {
    try {
        return ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
        const auto [line, column] = line_column(text, offset);
        std::string what = e.what();
        // Drop the library's "[json.exception.parse_error.101] parse error at line 1, column 2: " prefix.
        if (auto colon = what.find(": "); colon != std::string::npos) what = what.substr(colon + 2);
        throw ParseError(line, column, "malformed JSON: " + what);
    }
}

ojson coord_json(Coord c) { return ojson::array({c.x, c.y}); }

Scene scene_from_json(const ojson& doc, const PositionIndex& where, const std::string& pointer) {
    if (!doc.is_object()) fail(where, pointer, "scene must be a JSON object");
    only_fields(doc, where, pointer, {"grid", "items"});
    Scene scene;
    const auto gp = pointer_child(pointer, "grid");
    const ojson& g = field(doc, where, pointer, "grid");
    if (!g.is_object()) fail(where, gp, "grid must be an object");
    only_fields(g, where, gp, {"width", "height", "pitch_mm", "dot_width_mm", "dot_height_mm"});
    scene.grid.width_px = to_int(field(g, where, gp, "width"), where, pointer_child(gp, "width"), "width");
    scene.grid.height_px = to_int(field(g, where, gp, "height"), where, pointer_child(gp, "height"), "height");
    auto real = [&](const char* name, double& target) {
        if (auto it = g.find(name); it != g.end()) {
            if (!it->is_number()) fail(where, pointer_child(gp, name), std::string(name) + " must be a number");
            target = it->get<double>();
        }
    };
    real("pitch_mm", scene.grid.pitch_mm);
    real("dot_width_mm", scene.grid.dot_width_mm);
    real("dot_height_mm", scene.grid.dot_height_mm);

    const auto ip = pointer_child(pointer, "items");
    const ojson& items = field(doc, where, pointer, "items");
    if (!items.is_array()) fail(where, ip, "items must be an array");
    for (std::size_t i = 0; i < items.size(); ++i) {
        scene.items.push_back(item_from_json(items[i], where, pointer_child(ip, std::to_string(i))));
    }
    return scene;
}

ojson scene_to_json(const Scene& scene) {
    ojson doc = ojson::object();
    doc["grid"] = ojson{{"width", scene.grid.width_px},
                        {"height", scene.grid.height_px},
                        {"pitch_mm", scene.grid.pitch_mm},
                        {"dot_width_mm", scene.grid.dot_width_mm},
                        {"dot_height_mm", scene.grid.dot_height_mm}};
    ojson items = ojson::array();
    for (const Item& item : scene.items) {
        ojson j = ojson::object();
        j["kind"] = item_kind(item);
        if (auto* c = std::get_if<CatalogItem>(&item)) {
            j["name"] = c->name;
            j["bbox"] = c->size ? ojson::array({c->at.x, c->at.y, c->size->first, c->size->second})
                                : coord_json(c->at);
        } else if (auto* l = std::get_if<LineItem>(&item)) {
            j["from"] = coord_json(l->from);
            j["to"] = coord_json(l->to);
        } else if (auto* p = std::get_if<PolygonItem>(&item)) {
            ojson v = ojson::array();
            for (Coord c : p->vertices) v.push_back(coord_json(c));
            j["vertices"] = v;
            j["closed"] = p->closed;
        } else if (auto* k = std::get_if<ConicItem>(&item)) {
            j["bbox"] = ojson::array({k->at.x, k->at.y, k->width, k->height});
        } else if (auto* m = std::get_if<MarkerItem>(&item)) {
            j["at"] = coord_json(m->at);
            j["size"] = m->size;
        } else if (auto* px = std::get_if<PixelsItem>(&item)) {
            ojson v = ojson::array();
            for (Coord c : px->coords) v.push_back(coord_json(c));
            j["coords"] = v;
            if (px->attach) j["attach"] = *px->attach;
        } else if (auto* e = std::get_if<EraseItem>(&item)) {
            j["rect"] = ojson::array({e->at.x, e->at.y, e->width, e->height});
        }
        items.push_back(std::move(j));
    }
    doc["items"] = std::move(items);
    return doc;
}

}  // namespace detail

Scene parse_scene(std::string_view text) {
    const auto doc = detail::parse_json(text);
    const detail::PositionIndex where(text);
    return detail::scene_from_json(doc, where, "");
}

std::string emit_scene(const Scene& scene) { return detail::canonical_dump(detail::scene_to_json(scene)) + "\n"; }

std::string export_ascii(const PinGrid& grid) {
    std::string out;
    out.reserve(static_cast<std::size_t>((grid.width() + 1) * grid.height()));
    for (int y = 0; y < grid.height(); ++y) {
        for (int x = 0; x < grid.width(); ++x) out += grid.actuated({x, y}) ? 'o' : '.';
        out += '\n';
    }
    return out;
}

namespace {

constexpr unsigned kDotBit[4][2] = {{0x01, 0x08}, {0x02, 0x10}, {0x04, 0x20}, {0x40, 0x80}};

void append_utf8(std::string& out, unsigned cp) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
}

}  // namespace

std::string export_braille(const PinGrid& grid) {
    std::string out = std::to_string(grid.width()) + " " + std::to_string(grid.height()) + "\n";
    for (int cy = 0; cy < (grid.height() + 3) / 4; ++cy) {
        for (int cx = 0; cx < (grid.width() + 1) / 2; ++cx) {
            unsigned bits = 0;
            for (int r = 0; r < 4; ++r) {
                for (int c = 0; c < 2; ++c) {
                    const Coord p{cx * 2 + c, cy * 4 + r};
                    if (grid.contains(p) && grid.actuated(p)) bits |= kDotBit[r][c];
                }
            }
            append_utf8(out, 0x2800 + bits);
        }
        out += '\n';
    }
    return out;
}

PinGrid import_braille(std::string_view text, const GridSpec& physical) {
    std::size_t nl = text.find('\n');
    const std::string header(text.substr(0, nl));
    std::istringstream hs(header);
    int w = 0, h = 0;
    std::string rest;
    if (!(hs >> w >> h) || (hs >> rest) || w < 1 || h < 1) {
        throw ParseError(1, 1, "braille header must be 'WIDTH HEIGHT'");
    }
    GridSpec spec = physical;
    spec.width_px = w;
    spec.height_px = h;
    PinGrid grid(spec);
    std::vector<Coord> on;

    const int rows = (h + 3) / 4, cols = (w + 1) / 2;
    std::size_t pos = nl == std::string_view::npos ? text.size() : nl + 1;
    for (int cy = 0; cy < rows; ++cy) {
        const int line = cy + 2;
        if (pos >= text.size()) throw ParseError(line, 1, "expected " + std::to_string(rows) + " braille rows");
        for (int cx = 0; cx < cols; ++cx) {
            const int column = cx + 1;
            if (pos + 3 > text.size()) throw ParseError(line, column, "braille row is too short");
            const auto b0 = static_cast<unsigned char>(text[pos]);
            const auto b1 = static_cast<unsigned char>(text[pos + 1]);
            const auto b2 = static_cast<unsigned char>(text[pos + 2]);
            const unsigned cp = ((b0 & 0x0Fu) << 12) | ((b1 & 0x3Fu) << 6) | (b2 & 0x3Fu);
            if ((b0 & 0xF0) != 0xE0 || (b1 & 0xC0) != 0x80 || (b2 & 0xC0) != 0x80 || cp < 0x2800 || cp > 0x28FF) {
                throw ParseError(line, column, "not a braille pattern character (U+2800..U+28FF)");
            }
            pos += 3;
            const unsigned bits = cp - 0x2800;
            for (int r = 0; r < 4; ++r) {
                for (int c = 0; c < 2; ++c) {
                    if (!(bits & kDotBit[r][c])) continue;
                    const Coord p{cx * 2 + c, cy * 4 + r};
                    if (!grid.contains(p)) throw ParseError(line, column, "dot set in padding outside the grid");
                    on.push_back(p);
                }
            }
        }
        if (pos < text.size() && text[pos] == '\n') {
            ++pos;
        } else if (pos < text.size()) {
            throw ParseError(line, cols + 1, "braille row is too long");
        }
    }
    if (pos < text.size()) throw ParseError(rows + 2, 1, "unexpected text after the last braille row");
    return with_pixels(grid, on, PinState::actuated);
}

std::string export_pbm(const PinGrid& grid) {
    std::string out = "P1\n" + std::to_string(grid.width()) + " " + std::to_string(grid.height()) + "\n";
    for (int y = 0; y < grid.height(); ++y) {
        int on_line = 0;
        for (int x = 0; x < grid.width(); ++x) {
            if (on_line == 70) {
                out += '\n';
                on_line = 0;
            }
            out += grid.actuated({x, y}) ? '1' : '0';
            ++on_line;
        }
        out += '\n';
    }
    return out;
}

}  // namespace taxel
