#include "pnav/grid_planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace pnav {

namespace {

struct OccGrid {
    int nx = 0, ny = 0;
    double cell = 0.25;
    std::vector<char> blocked;

    bool is_blocked(int i, int j) const {
        if (i < 0 || j < 0 || i >= nx || j >= ny) return true;
        return blocked[static_cast<size_t>(j) * nx + i] != 0;
    }
};

OccGrid build_occ(const World& world, double cell, double robot_radius) {
    OccGrid g;
    g.cell = cell;
    g.nx = static_cast<int>(std::ceil(world.width() / cell));
    g.ny = static_cast<int>(std::ceil(world.height() / cell));
    g.blocked.assign(static_cast<size_t>(g.nx) * g.ny, 0);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const Vec2 c{(i + 0.5) * cell, (j + 0.5) * cell};
            if (!world.in_bounds(c) || world.clearance(c, robot_radius + 1.0) < robot_radius)
                g.blocked[static_cast<size_t>(j) * g.nx + i] = 1;
        }
    }
    return g;
}

}  // namespace

int grid_free_cell_count(const World& world, double cell, double robot_radius) {
    const OccGrid g = build_occ(world, cell, robot_radius);
    int free = 0;
    for (char b : g.blocked)
        if (!b) ++free;
    return free;
}

GridPlanResult grid_reference_plan(const World& world, const Vec2& start, const Vec2& goal,
                                   double cell, double robot_radius) {
    GridPlanResult result;
    const auto t0 = std::chrono::steady_clock::now();
    const OccGrid g = build_occ(world, cell, robot_radius);

    const int si = static_cast<int>(start.x / cell), sj = static_cast<int>(start.y / cell);
    const int gi = static_cast<int>(goal.x / cell), gj = static_cast<int>(goal.y / cell);
    auto finish = [&]() {
        result.plan_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return result;
    };
    if (g.is_blocked(si, sj) || g.is_blocked(gi, gj)) return finish();

    const double diag = cell * std::sqrt(2.0);
    auto heuristic = [&](int i, int j) {
        const int dx = std::abs(i - gi), dy = std::abs(j - gj);
        return diag * std::min(dx, dy) + cell * std::abs(dx - dy);  // octile
    };
    auto id = [&](int i, int j) { return static_cast<size_t>(j) * g.nx + i; };

    const size_t n = static_cast<size_t>(g.nx) * g.ny;
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<char> closed(n, 0);
    using Entry = std::pair<double, size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;
    dist[id(si, sj)] = 0.0;
    open.push({heuristic(si, sj), id(si, sj)});

    static const int di[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    static const int dj[8] = {0, 0, 1, -1, 1, -1, 1, -1};
    while (!open.empty()) {
        const auto [f, cur] = open.top();
        open.pop();
        if (closed[cur]) continue;
        closed[cur] = 1;
        const int ci = static_cast<int>(cur % g.nx), cj = static_cast<int>(cur / g.nx);
        if (ci == gi && cj == gj) {
            result.reachable = true;
            result.length = dist[cur];
            return finish();
        }
        for (int k = 0; k < 8; ++k) {
            const int nx = ci + di[k], ny = cj + dj[k];
            if (g.is_blocked(nx, ny)) continue;
            if (k >= 4 && (g.is_blocked(ci + di[k], cj) || g.is_blocked(ci, cj + dj[k])))
                continue;  // no corner cutting
            const double step = k < 4 ? cell : diag;
            const double nd = dist[cur] + step;
            const size_t ni = id(nx, ny);
            if (nd < dist[ni]) {
                dist[ni] = nd;
                open.push({nd + heuristic(nx, ny), ni});
            }
        }
    }
    return finish();
}

}  // namespace pnav
