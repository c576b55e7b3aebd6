#pragma once
// Built-in benchmark worlds. Each ships with a recommended start pose
// (facing down a corridor) and the designed corridor axes used by the
// coverage checks.

#include <optional>
#include <string>
#include <vector>

#include "pnav/world.hpp"

namespace pnav {

struct BenchmarkWorld {
    World world;
    Pose start;
    std::vector<Segment> corridor_axes;  // centerlines of the designed corridors
};

/// `box`, `corridor`, `corridor-h` or `office-block`.
BenchmarkWorld make_benchmark_world(const std::string& name);

const std::vector<std::string>& benchmark_world_names();

/// Load a world by builtin name or by file path; builtin names win.
/// Returns the benchmark metadata when available (start defaults to the
/// world center for plain files).
BenchmarkWorld resolve_world(const std::string& name_or_path);

}  // namespace pnav
