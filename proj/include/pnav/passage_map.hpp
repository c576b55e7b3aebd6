#pragma once
// The 1m passage grid (first label wins) and the cell-adjacency network
// used for repositioning between candidates during exploration.

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "pnav/config.hpp"
#include "pnav/world.hpp"

namespace pnav {

enum class CellLabel : unsigned char { Unlabeled, Passage, Obstructed };

class PassageGrid {
public:
    PassageGrid() = default;
    PassageGrid(double world_width, double world_height, double cell_size = 1.0);

    double cell_size() const { return cell_size_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    bool contains(const CellIndex& c) const {
        return c.i >= 0 && c.j >= 0 && c.i < nx_ && c.j < ny_;
    }

    CellLabel label(const CellIndex& c) const;
    int passage_id(const CellIndex& c) const;  // 0 when not a passage cell

    /// First write wins: labeling never overwrites an existing label.
    /// Returns true when the cell label actually changed.
    bool mark_passage(const CellIndex& c, int passage_id);
    bool mark_obstructed(const CellIndex& c);

    std::vector<CellIndex> passage_cells() const;  // lexicographic order
    int labeled_count() const { return labeled_; }

private:
    double cell_size_ = 1.0;
    int nx_ = 0, ny_ = 0;
    int labeled_ = 0;
    struct Cell {
        CellLabel label = CellLabel::Unlabeled;
        int passage = 0;
    };
    std::vector<Cell> cells_;
    size_t at(const CellIndex& c) const { return static_cast<size_t>(c.j) * nx_ + c.i; }
};

class PassageNetwork {
public:
    bool has_vertex(const CellIndex& c) const { return adj_.count(c) > 0; }
    void add_vertex(const CellIndex& c) { adj_.try_emplace(c); }
    void add_edge(const CellIndex& a, const CellIndex& b);

    size_t vertex_count() const { return adj_.size(); }
    size_t edge_count() const;
    const std::map<CellIndex, std::set<CellIndex>>& adjacency() const { return adj_; }

    /// Network vertex nearest the point (by cell-center distance), if any.
    std::optional<CellIndex> nearest_vertex(const Vec2& p, double cell_size) const;

private:
    std::map<CellIndex, std::set<CellIndex>> adj_;
};

struct OccupancyResult {
    std::vector<CellIndex> newly_labeled;  // passage cells added by this view
};

/// Classify the cells touched by the view's rays by hit/pass ratio, label
/// adjacent unobstructed cells with the passage and nearby obstructed ones
/// as such, and grow the network around the newly labeled cells.
OccupancyResult update_occupancy(PassageGrid& grid, PassageNetwork& network, const View& view,
                                 int passage_id, const Config& cfg);

/// Label every cell entered by the travel segment and chain network edges
/// between consecutive labeled cells.
void record_travel_edge(PassageGrid& grid, PassageNetwork& network, const Vec2& from,
                        const Vec2& to, int passage_id);

/// Fewest-hop path between two network vertices; neighbors expand in
/// lexicographic order so ties are deterministic. Empty when unreachable.
std::vector<CellIndex> bfs_cell_path(const PassageNetwork& network, const CellIndex& from,
                                     const CellIndex& to);

/// Replace each path cell with the decision points nearest its center and
/// the next cell's center, collapsing consecutive duplicates.
std::vector<Vec2> cells_to_waypoints(const std::vector<CellIndex>& path,
                                     const std::vector<Vec2>& decision_points,
                                     double cell_size = 1.0);

}  // namespace pnav
