#include "taxel/pin_grid.hpp"

#include <algorithm>
#include <string>

#include "taxel/error.hpp"

namespace taxel {

void validate_spec(const GridSpec& spec) {
    if (spec.width_px < 1 || spec.height_px < 1) {
        throw SpecError("grid dimensions must be positive, got " + std::to_string(spec.width_px) +
                        "x" + std::to_string(spec.height_px));
    }
    if (!(spec.dot_width_mm > 0.0) || !(spec.pitch_mm > spec.dot_width_mm)) {
        throw SpecError("require pitch_mm > dot_width_mm > 0");
    }
    if (!(spec.dot_height_mm > 0.0)) {
        throw SpecError("dot_height_mm must be positive");
    }
}

PinGrid::PinGrid(const GridSpec& spec) : spec_(spec) {
    validate_spec(spec);
    cells_.assign(static_cast<std::size_t>(spec.width_px) * static_cast<std::size_t>(spec.height_px), 0);
}

PinState PinGrid::at(Coord c) const {
    if (!contains(c)) {
        throw BoundsError("coordinate (" + std::to_string(c.x) + "," + std::to_string(c.y) +
                          ") outside " + std::to_string(width()) + "x" + std::to_string(height()) +
                          " grid");
    }
    return static_cast<PinState>(cells_[index(c)]);
}

int PinGrid::actuated_count() const noexcept {
    return static_cast<int>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

std::vector<Coord> PinGrid::actuated_coords() const {
    std::vector<Coord> out;
    for (int y = 0; y < height(); ++y) {
        for (int x = 0; x < width(); ++x) {
            if (cells_[index({x, y})]) out.push_back({x, y});
        }
    }
    return out;
}

PinGrid make_grid(const GridSpec& spec) { return PinGrid(spec); }

PinGrid edit_pixel(const PinGrid& grid, Coord at, PinState state) {
    (void)grid.at(at);
    PinGrid out = grid;
    out.cells_[out.index(at)] = static_cast<std::uint8_t>(state);
    return out;
}

PinGrid with_pixels(const PinGrid& grid, const std::vector<Coord>& coords, PinState state) {
    PinGrid out = grid;
    for (Coord c : coords) {
        (void)grid.at(c);
        out.cells_[out.index(c)] = static_cast<std::uint8_t>(state);
    }
    return out;
}

PinGrid erase_rect(const PinGrid& grid, Coord top_left, int width, int height) {
    if (width <= 0 || height <= 0) {
        throw ArgumentError("erase_rect needs positive width and height");
    }
    PinGrid out = grid;
    const int x0 = std::max(top_left.x, 0);
    const int y0 = std::max(top_left.y, 0);
    const int x1 = std::min(top_left.x + width, grid.width());
    const int y1 = std::min(top_left.y + height, grid.height());
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) out.cells_[out.index({x, y})] = 0;
    }
    return out;
}

GridDiff diff_grids(const PinGrid& before, const PinGrid& after) {
    if (!(before.spec() == after.spec())) {
        throw SpecMismatchError("cannot diff grids with different specs");
    }
    GridDiff diff;
    for (int y = 0; y < before.height(); ++y) {
        for (int x = 0; x < before.width(); ++x) {
            const bool was = before.actuated({x, y});
            const bool now = after.actuated({x, y});
            if (now && !was) diff.added.insert({x, y});
            if (was && !now) diff.removed.insert({x, y});
        }
    }
    return diff;
}

PinGrid apply_diff(const PinGrid& grid, const GridDiff& diff) {
    PinGrid out = with_pixels(grid, {diff.removed.begin(), diff.removed.end()}, PinState::flat);
    return with_pixels(out, {diff.added.begin(), diff.added.end()}, PinState::actuated);
}

double extent_mm(int n_px, double pitch_mm) { return static_cast<double>(n_px) * pitch_mm; }

}  // namespace taxel
