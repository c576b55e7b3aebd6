#include "pnav/passage_map.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace pnav {

PassageGrid::PassageGrid(double world_width, double world_height, double cell_size)
    : cell_size_(cell_size),
      nx_(std::max(1, static_cast<int>(std::ceil(world_width / cell_size)))),
      ny_(std::max(1, static_cast<int>(std::ceil(world_height / cell_size)))) {
    cells_.assign(static_cast<size_t>(nx_) * ny_, {});
}

CellLabel PassageGrid::label(const CellIndex& c) const {
    if (!contains(c)) return CellLabel::Unlabeled;
    return cells_[at(c)].label;
}

int PassageGrid::passage_id(const CellIndex& c) const {
    if (!contains(c)) return 0;
    const Cell& cell = cells_[at(c)];
    return cell.label == CellLabel::Passage ? cell.passage : 0;
}

bool PassageGrid::mark_passage(const CellIndex& c, int passage_id) {
    if (!contains(c)) return false;
    Cell& cell = cells_[at(c)];
    if (cell.label != CellLabel::Unlabeled) return false;
    cell.label = CellLabel::Passage;
    cell.passage = passage_id;
    ++labeled_;
    return true;
}

bool PassageGrid::mark_obstructed(const CellIndex& c) {
    if (!contains(c)) return false;
    Cell& cell = cells_[at(c)];
    if (cell.label != CellLabel::Unlabeled) return false;
    cell.label = CellLabel::Obstructed;
    ++labeled_;
    return true;
}

std::vector<CellIndex> PassageGrid::passage_cells() const {
    std::vector<CellIndex> out;
    for (int j = 0; j < ny_; ++j)
        for (int i = 0; i < nx_; ++i)
            if (cells_[static_cast<size_t>(j) * nx_ + i].label == CellLabel::Passage)
                out.push_back({i, j});
    std::sort(out.begin(), out.end());
    return out;
}

void PassageNetwork::add_edge(const CellIndex& a, const CellIndex& b) {
    if (a == b) return;
    adj_[a].insert(b);
    adj_[b].insert(a);
}

size_t PassageNetwork::edge_count() const {
    size_t twice = 0;
    for (const auto& [v, ns] : adj_) twice += ns.size();
    return twice / 2;
}

std::optional<CellIndex> PassageNetwork::nearest_vertex(const Vec2& p, double cell_size) const {
    std::optional<CellIndex> best;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& [v, ns] : adj_) {
        const double d = distance(p, cell_center(v, cell_size));
        if (d < best_d) {
            best_d = d;
            best = v;
        }
    }
    return best;
}

OccupancyResult update_occupancy(PassageGrid& grid, PassageNetwork& network, const View& view,
                                 int passage_id, const Config& cfg) {
    OccupancyResult result;
    const double cell = grid.cell_size();
    const Vec2 origin = view.pose.pos;

    // Labeling reaches at most obstructed_range from the robot, so evidence
    // beyond that (plus a cell diagonal) cannot matter; capping the per-ray
    // traversal there keeps the counts exact for every cell in reach.
    const double reach = cfg.model.obstructed_range + cell * std::sqrt(2.0) * 2.0;

    std::map<CellIndex, std::pair<int, int>> counts;  // cell -> (hits, passes)
    for (int i = 0; i < view.ray_count(); ++i) {
        const double range = view.ranges[i];
        const double t_end = std::min(range, reach);
        const Vec2 end = origin + unit_from_angle(view.abs_angle(i)) * t_end;
        const std::vector<CellIndex> crossed = cells_entered(origin, end, cell);
        const bool terminates = range < view.max_range && range <= reach;
        for (size_t k = 0; k < crossed.size(); ++k) {
            const bool last = k + 1 == crossed.size();
            auto& [h, p] = counts[crossed[k]];
            if (last && terminates)
                ++h;
            else if (!last)
                ++p;
            // A capped ray's final partial cell carries no evidence.
        }
    }

    std::set<CellIndex> unobstructed;
    std::vector<CellIndex> obstructed;
    for (const auto& [c, hp] : counts) {
        const auto [h, p] = hp;
        if (h + p == 0) continue;
        if (static_cast<double>(h) / (h + p) <= 0.5)
            unobstructed.insert(c);
        else
            obstructed.push_back(c);
    }

    const double side_min = deg_to_rad(cfg.perception.side_min_deg);
    const double side_max = deg_to_rad(cfg.perception.side_max_deg);
    for (const CellIndex& c : unobstructed) {
        const Vec2 center = cell_center(c, cell);
        if (distance(center, origin) > cfg.model.adjacency_range) continue;
        const double rel = std::abs(angle_diff(bearing(origin, center), view.pose.theta));
        if (rel < side_min || rel > side_max) continue;  // only immediate left/right
        if (grid.mark_passage(c, passage_id)) result.newly_labeled.push_back(c);
    }
    for (const CellIndex& c : obstructed) {
        const Vec2 center = cell_center(c, cell);
        if (distance(center, origin) <= cfg.model.obstructed_range) grid.mark_obstructed(c);
    }

    for (const CellIndex& c : result.newly_labeled) {
        network.add_vertex(c);
        for (int di = -1; di <= 1; ++di) {
            for (int dj = -1; dj <= 1; ++dj) {
                if (di == 0 && dj == 0) continue;
                const CellIndex n{c.i + di, c.j + dj};
                if (grid.label(n) == CellLabel::Passage && unobstructed.count(n))
                    network.add_edge(c, n);
            }
        }
    }
    return result;
}

void record_travel_edge(PassageGrid& grid, PassageNetwork& network, const Vec2& from,
                        const Vec2& to, int passage_id) {
    const std::vector<CellIndex> crossed = cells_entered(from, to, grid.cell_size());
    std::optional<CellIndex> prev;
    for (const CellIndex& c : crossed) {
        if (grid.label(c) == CellLabel::Obstructed) {
            prev.reset();
            continue;
        }
        grid.mark_passage(c, passage_id);
        if (grid.label(c) == CellLabel::Passage) {
            network.add_vertex(c);
            if (prev) network.add_edge(*prev, c);
            prev = c;
        }
    }
}

std::vector<CellIndex> bfs_cell_path(const PassageNetwork& network, const CellIndex& from,
                                     const CellIndex& to) {
    if (!network.has_vertex(from) || !network.has_vertex(to)) return {};
    std::map<CellIndex, CellIndex> parent;
    std::deque<CellIndex> frontier{from};
    parent[from] = from;
    while (!frontier.empty()) {
        const CellIndex cur = frontier.front();
        frontier.pop_front();
        if (cur == to) break;
        for (const CellIndex& n : network.adjacency().at(cur)) {  // set: lexicographic
            if (!parent.count(n)) {
                parent[n] = cur;
                frontier.push_back(n);
            }
        }
    }
    if (!parent.count(to)) return {};
    std::vector<CellIndex> path{to};
    while (!(path.back() == from)) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<Vec2> cells_to_waypoints(const std::vector<CellIndex>& path,
                                     const std::vector<Vec2>& decision_points,
                                     double cell_size) {
    std::vector<Vec2> out;
    if (path.empty() || decision_points.empty()) return out;

    auto nearest = [&](const Vec2& target) {
        Vec2 best = decision_points.front();
        double best_d = std::numeric_limits<double>::infinity();
        for (const Vec2& p : decision_points) {
            const double d = distance(p, target);
            if (d < best_d) {
                best_d = d;
                best = p;
            }
        }
        return best;
    };
    auto push = [&](const Vec2& p) {
        if (out.empty() || distance(out.back(), p) > 1e-9) out.push_back(p);
    };

    if (path.size() == 1) {
        push(nearest(cell_center(path[0], cell_size)));
        return out;
    }
    for (size_t k = 0; k + 1 < path.size(); ++k) {
        push(nearest(cell_center(path[k], cell_size)));
        push(nearest(cell_center(path[k + 1], cell_size)));
    }
    return out;
}

}  // namespace pnav
