#pragma once

#include <optional>
#include <string>
#include <vector>

#include "taxel/scanconv.hpp"

namespace taxel {

/// A render whose strokes are not simple 8-connected paths or loops.
struct StructuralIssue {
    int stroke = -1;  ///< stroke index, -1 for the render as a whole
    Coord at;
    std::string message;

    friend bool operator==(const StructuralIssue&, const StructuralIssue&) = default;
};

/// Number of 8-neighbours of p inside `pixels`.
int degree(const CoordSet& pixels, Coord p);

/// True when `pixels` is non-empty and 8-connected.
bool connected(const CoordSet& pixels);

/// Orders the stroke's pixels as a simple path (open) or loop (closed).
/// Returns nullopt when the pixel set is not one. The walk starts from the
/// stroke's first listed pixel where possible so the order is stable.
std::optional<std::vector<Coord>> trace_stroke(const Stroke& stroke);

/// Checks each stroke is a simple path or loop, markers stay off strokes and the
/// strokes of the render form one 8-connected piece.
std::vector<StructuralIssue> check_structure(const ShapeRender& render);

}  // namespace taxel
