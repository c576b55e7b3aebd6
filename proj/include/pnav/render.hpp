#pragma once
// Layered SVG rendering of worlds, grids, skeletons, plans and traces.

#include <optional>
#include <string>
#include <vector>

#include "pnav/passage_map.hpp"
#include "pnav/planner.hpp"
#include "pnav/skeleton.hpp"
#include "pnav/world.hpp"

namespace pnav {

struct RenderLayers {
    const PassageGrid* grid = nullptr;
    const Skeleton* skeleton = nullptr;
    const Plan* plan = nullptr;
    const std::vector<Vec2>* trace = nullptr;
};

/// World coordinates map to a fixed-scale viewBox with y flipped so the
/// drawing matches the map orientation. Walls render as one path each.
std::string render_svg(const World& world, const RenderLayers& layers = {});

}  // namespace pnav
