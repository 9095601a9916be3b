#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

namespace taxel {

/// Integer pixel position. Origin is the top-left pin; y grows downward.
struct Coord {
    int x = 0;
    int y = 0;

    friend constexpr bool operator==(Coord, Coord) = default;
    /// Row-major order: (y, x).
    friend constexpr std::strong_ordering operator<=>(Coord a, Coord b) {
        if (auto c = a.y <=> b.y; c != 0) return c;
        return a.x <=> b.x;
    }
};

constexpr Coord operator+(Coord a, Coord b) { return {a.x + b.x, a.y + b.y}; }
constexpr Coord operator-(Coord a, Coord b) { return {a.x - b.x, a.y - b.y}; }

using CoordSet = std::set<Coord>;

/// Physical layout of a pin array. Defaults describe a 27x27 display.
struct GridSpec {
    int width_px = 27;
    int height_px = 27;
    double pitch_mm = 2.5;
    double dot_width_mm = 1.2;
    double dot_height_mm = 0.4;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Throws SpecError unless the spec's invariants hold.
void validate_spec(const GridSpec& spec);

enum class PinState : std::uint8_t { flat = 0, actuated = 1 };

/// Binary actuation matrix. Values are immutable: every edit returns a new grid.
class PinGrid {
public:
    explicit PinGrid(const GridSpec& spec);

    const GridSpec& spec() const noexcept { return spec_; }
    int width() const noexcept { return spec_.width_px; }
    int height() const noexcept { return spec_.height_px; }

    bool contains(Coord c) const noexcept {
        return c.x >= 0 && c.y >= 0 && c.x < spec_.width_px && c.y < spec_.height_px;
    }

    /// Throws BoundsError outside the grid.
    PinState at(Coord c) const;
    bool actuated(Coord c) const { return at(c) == PinState::actuated; }

    int actuated_count() const noexcept;
    /// Actuated coordinates in row-major order.
    std::vector<Coord> actuated_coords() const;

    friend bool operator==(const PinGrid&, const PinGrid&) = default;

private:
    friend PinGrid edit_pixel(const PinGrid&, Coord, PinState);
    friend PinGrid erase_rect(const PinGrid&, Coord, int, int);
    friend PinGrid with_pixels(const PinGrid&, const std::vector<Coord>&, PinState);

    std::size_t index(Coord c) const noexcept {
        return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(spec_.width_px) +
               static_cast<std::size_t>(c.x);
    }

    GridSpec spec_;
    std::vector<std::uint8_t> cells_;
};

struct GridDiff {
    CoordSet added;
    CoordSet removed;

    bool empty() const noexcept { return added.empty() && removed.empty(); }
    friend bool operator==(const GridDiff&, const GridDiff&) = default;
};

PinGrid make_grid(const GridSpec& spec);

/// Returns a copy with one cell set. Throws BoundsError outside the grid.
PinGrid edit_pixel(const PinGrid& grid, Coord at, PinState state);

/// Sets many cells at once; coordinates outside the grid throw BoundsError.
PinGrid with_pixels(const PinGrid& grid, const std::vector<Coord>& coords, PinState state);

/// Flattens the rectangle clipped to the grid. Throws ArgumentError for empty extents.
PinGrid erase_rect(const PinGrid& grid, Coord top_left, int width, int height);

/// Throws SpecMismatchError when the grids have different specs.
GridDiff diff_grids(const PinGrid& before, const PinGrid& after);

/// Applies removals then additions.
PinGrid apply_diff(const PinGrid& grid, const GridDiff& diff);

/// Physical extent of n pixels: n * pitch (pixels counted, not gaps).
double extent_mm(int n_px, double pitch_mm);

}  // namespace taxel

template <>
struct std::hash<taxel::Coord> {
    std::size_t operator()(taxel::Coord c) const noexcept {
        return std::hash<long long>{}((static_cast<long long>(c.y) << 32) ^
                                      static_cast<unsigned int>(c.x));
    }
};
