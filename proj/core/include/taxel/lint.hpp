#pragma once

#include <string>
#include <vector>

#include "taxel/pin_grid.hpp"
#include "taxel/scanconv.hpp"

namespace taxel {

enum class RuleId { G1, G2, G3, G4, G5, G6, ADVISORY };

std::string rule_name(RuleId rule);

struct Violation {
    RuleId rule = RuleId::G1;
    std::vector<Coord> at;
    std::string message;
    int item = -1;  ///< scene item index, -1 outside a scene

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct LintReport {
    std::vector<Violation> violations;
    bool pass = true;

    friend bool operator==(const LintReport&, const LintReport&) = default;
};

/// 2x2 blocks and removable doubles over the render's stroke pixels.
std::vector<Violation> check_g1(const ShapeRender& render);
/// Orthogonal L-joins inside a stroke that touch no declared vertex.
std::vector<Violation> check_g2(const ShapeRender& render);
/// Balanced runs along straight edges.
std::vector<Violation> check_g3(const ShapeRender& render);
/// Monotone run progression along curves.
std::vector<Violation> check_g4(const ShapeRender& render);
/// Straight, matching apex runs on closed curves.
std::vector<Violation> check_g5(const ShapeRender& render);
/// Sharp corners: declared vertices present, not overshot, shared by their edges.
std::vector<Violation> check_g6(const ShapeRender& render);

/// All checks in rule order plus advisories for oversized markers.
LintReport lint_render(const ShapeRender& render);

/// G1 on a bare grid: without stroke structure only the local rule is decidable.
LintReport lint_grid(const PinGrid& grid);

/// Indices where a run sequence ordered toward an apex shrinks.
std::vector<std::size_t> monotone_dips(const std::vector<int>& runs);

/// Indices of runs breaking the straight-edge balance rule: interior spread at
/// most 1, terminal runs within one of the interior band.
std::vector<std::size_t> unbalanced_runs(const std::vector<int>& runs);

/// Sorts by rule, then by the first coordinate, and recomputes `pass`.
LintReport finalize_report(std::vector<Violation> violations);

}  // namespace taxel
