#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "taxel/error.hpp"
#include "taxel/lint.hpp"
#include "taxel/pin_grid.hpp"
#include "taxel/scanconv.hpp"
#include "taxel/stroke_topology.hpp"

namespace taxel {

struct CatalogItem {
    std::string name;
    Coord at;
    std::optional<std::pair<int, int>> size;  ///< entry default when absent
    friend bool operator==(const CatalogItem&, const CatalogItem&) = default;
};

struct LineItem {
    Coord from, to;
    friend bool operator==(const LineItem&, const LineItem&) = default;
};

struct PolygonItem {
    std::vector<Coord> vertices;
    bool closed = true;
    friend bool operator==(const PolygonItem&, const PolygonItem&) = default;
};

struct ConicItem {
    Coord at;
    int width = 0, height = 0;
    friend bool operator==(const ConicItem&, const ConicItem&) = default;
};

struct MarkerItem {
    Coord at;
    int size = 1;
    friend bool operator==(const MarkerItem&, const MarkerItem&) = default;
};

/// Raw pixels. With `attach` they join the strokes of an earlier item instead of
/// forming a stroke of their own.
struct PixelsItem {
    std::vector<Coord> coords;
    std::optional<int> attach;
    friend bool operator==(const PixelsItem&, const PixelsItem&) = default;
};

struct EraseItem {
    Coord at;
    int width = 0, height = 0;
    friend bool operator==(const EraseItem&, const EraseItem&) = default;
};

using Item = std::variant<CatalogItem, LineItem, PolygonItem, ConicItem, MarkerItem, PixelsItem, EraseItem>;

std::string item_kind(const Item& item);

struct Scene {
    GridSpec grid;
    std::vector<Item> items;
    friend bool operator==(const Scene&, const Scene&) = default;
};

struct SceneIssue {
    int item = -1;
    std::string code;  ///< bounds, not_found, too_small, argument, attach
    std::string message;
    friend bool operator==(const SceneIssue&, const SceneIssue&) = default;
};

/// A scene that failed validation.
class SceneError : public Error {
public:
    explicit SceneError(std::vector<SceneIssue> issues);
    const std::vector<SceneIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<SceneIssue> issues_;
};

struct ItemRender {
    int item = -1;
    ShapeRender render;
};

struct SceneRender {
    PinGrid grid;
    std::vector<ItemRender> renders;
};

struct SceneOptions {
    /// Drop out-of-grid pixels instead of reporting them.
    bool clip = false;
};

/// Reports problems without throwing; empty means the scene renders.
std::vector<SceneIssue> validate_scene(const Scene& scene, SceneOptions options = {});

/// Throws SceneError when validation fails.
SceneRender render_scene(const Scene& scene, SceneOptions options = {});

/// Per-render lint reports concatenated in item order, tagged with item indices.
LintReport lint_scene(const Scene& scene, SceneOptions options = {});

struct ItemStructuralIssue {
    int item = -1;
    StructuralIssue issue;
};

/// Structural problems (broken or branching strokes) of every render.
std::vector<ItemStructuralIssue> scene_structure(const SceneRender& rendered);

}  // namespace taxel
