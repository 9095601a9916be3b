#pragma once

#include <map>
#include <string>
#include <string_view>

#include "json.hpp"
#include "taxel/error.hpp"
#include "taxel/scene.hpp"

namespace taxel::detail {

using ojson = nlohmann::ordered_json;

/// Deterministic pretty printer: 2-space indent, numeric arrays kept on one line.
std::string canonical_dump(const ojson& value);

/// Start offsets of every value in a JSON text, keyed by JSON pointer.
class PositionIndex {
public:
    explicit PositionIndex(std::string_view text);

    /// Line and column of the value at `pointer`, falling back to its parents.
    std::pair<int, int> locate(const std::string& pointer) const;
    ParseError error(const std::string& pointer, const std::string& message) const;
    /// Same, but positioned at the member's key rather than its value.
    ParseError key_error(const std::string& pointer, const std::string& message) const;

private:
    std::size_t scan(std::size_t pos, const std::string& pointer);
    std::size_t skip_ws(std::size_t pos) const;
    std::size_t skip_string(std::size_t pos) const;

    std::string_view text_;
    std::map<std::string, std::size_t> offsets_;
    std::map<std::string, std::size_t> key_offsets_;
};

std::pair<int, int> line_column(std::string_view text, std::size_t offset);

/// Parses JSON text, converting syntax errors to ParseError.
ojson parse_json(std::string_view text);

std::string pointer_child(const std::string& parent, const std::string& key);

Scene scene_from_json(const ojson& doc, const PositionIndex& where, const std::string& pointer);
ojson scene_to_json(const Scene& scene);

ojson coord_json(Coord c);

}  // namespace taxel::detail
