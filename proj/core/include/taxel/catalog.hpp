#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "taxel/scanconv.hpp"

namespace taxel {

struct CatalogEntry {
    std::string name;
    int width_px = 0;
    int height_px = 0;
    /// Inventory group: basic, complex, composite, iteration or glyph.
    std::string group;
    std::string description;
};

/// Every catalog entry in a fixed order.
const std::vector<CatalogEntry>& catalog_list();

/// Throws NotFoundError for unknown names.
const CatalogEntry& catalog_entry(const std::string& name);

/// Builds the named shape inside a bbox anchored at (0,0). Defaults to the
/// entry's own size. Throws NotFoundError or TooSmallError.
std::vector<ShapeRender> build(const std::string& name,
                               std::optional<std::pair<int, int>> bbox_px = std::nullopt);

}  // namespace taxel
