#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "taxel/pin_grid.hpp"

namespace taxel {

/// What a stroke depicts; decides which guideline checks apply to it.
enum class StrokeRole { edge, curve, free };

/// Ordered 8-connected single-pixel-wide path, open or closed.
struct Stroke {
    std::vector<Coord> points;
    bool closed = false;
    StrokeRole role = StrokeRole::free;
    /// Declared endpoints of an open stroke (vertices it terminates at).
    std::vector<Coord> ends;

    friend bool operator==(const Stroke&, const Stroke&) = default;
};

enum class Orientation { horizontal_major, vertical_major };

struct RunDecomposition {
    Orientation orientation = Orientation::horizontal_major;
    std::vector<int> runs;

    friend bool operator==(const RunDecomposition&, const RunDecomposition&) = default;
};

/// Filled square dot of size x size pixels with its top-left at `at`.
struct Marker {
    Coord at;
    int size = 1;

    friend bool operator==(const Marker&, const Marker&) = default;
};

/// Strokes plus declared corners and markers; the unit the linter checks.
struct ShapeRender {
    std::string kind;
    std::vector<Stroke> strokes;
    std::vector<Coord> vertices;
    std::vector<Marker> markers;

    /// Union of stroke pixels (markers excluded).
    CoordSet stroke_pixels() const;
    /// Stroke pixels plus marker pixels.
    CoordSet all_pixels() const;

    friend bool operator==(const ShapeRender&, const ShapeRender&) = default;
};

ShapeRender translate(ShapeRender render, Coord offset);

/// Bresenham/midpoint line: one pixel per major-axis coordinate, nearest to the
/// ideal segment, exact ties resolved toward the smaller minor coordinate.
Stroke midpoint_line(Coord p0, Coord p1);

/// Splits n_px pixels into n_runs balanced runs.
/// Boundaries f(i) = floor((2*i*n_px + n_runs) / (2*n_runs)).
std::vector<int> run_slice(int n_px, int n_runs);

/// Run-balanced line whose runs meet corner to corner only.
Stroke pixel_art_line(Coord p0, Coord p1);

/// One edge stroke per side, each drawn with pixel_art_line and ending on its vertices.
ShapeRender polygon(const std::vector<Coord>& vertices, bool closed);

/// Closed ellipse ring inscribed in the bounding box.
ShapeRender conic(Coord bbox_top_left, int width_px, int height_px);

/// Ordered loop of a conic ring in box-local coordinates, clockwise from the
/// left end of the top apex run.
std::vector<Coord> conic_loop(int width_px, int height_px);

/// Euclidean distance from (px, py) to the ellipse x^2/a^2 + y^2/b^2 = 1.
double ellipse_distance(double a, double b, double px, double py);

using Sampler = std::function<std::pair<double, double>(double)>;

/// Rounds samples of a parametric curve, joins them with midpoint lines and thins
/// the result to a single-pixel-wide stroke.
Stroke parametric_stroke(const Sampler& sampler, double t0, double t1, int n_samples);

/// Removes removable double pixels in row-major passes until nothing changes.
CoordSet thin(const CoordSet& pixels, const CoordSet& protected_pixels);

/// True when removing p from `pixels` is a thinning step: p has a horizontal
/// and a vertical neighbour and its remaining neighbourhood stays 8-connected.
bool removable_double(const CoordSet& pixels, Coord p);

/// Maximal straight runs in path order.
RunDecomposition run_decompose(const Stroke& stroke);

/// Kind of each run in path order: 'h', 'v' or 's' (single pixel).
struct Run {
    char kind = 's';
    int length = 1;
    std::size_t first = 0;  ///< index of the first pixel in the path

    friend bool operator==(const Run&, const Run&) = default;
};

/// Run split of an ordered pixel path. Every pixel belongs to exactly one run.
std::vector<Run> path_runs(const std::vector<Coord>& path);

}  // namespace taxel
