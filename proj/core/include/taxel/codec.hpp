#pragma once

#include <string>
#include <string_view>

#include "taxel/pin_grid.hpp"
#include "taxel/scene.hpp"

namespace taxel {

/// Reads a scene document. Throws ParseError with 1-based line and column.
Scene parse_scene(std::string_view text);

/// Canonical scene document: fixed key order, 2-space indent, trailing newline.
std::string emit_scene(const Scene& scene);

/// One line per row, 'o' actuated and '.' flat.
std::string export_ascii(const PinGrid& grid);

/// "W H" header, then rows of U+2800 braille cells (2 columns by 4 rows each).
std::string export_braille(const PinGrid& grid);

/// Inverse of export_braille. Throws ParseError on malformed input.
PinGrid import_braille(std::string_view text, const GridSpec& physical = {});

/// Plain PBM (P1), lines at most 70 characters.
std::string export_pbm(const PinGrid& grid);

}  // namespace taxel
