#pragma once
// The persistent planning graph: non-overlapping circular regions grown
// from decision points, with metric-labeled transition edges.

#include <map>
#include <optional>
#include <vector>

#include "pnav/config.hpp"
#include "pnav/world.hpp"

namespace pnav {

struct UnknownRegionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A compact record of one view, kept for later target-visibility checks.
struct StoredView {
    Pose pose;
    std::vector<float> ranges;
    double arc_deg = 220.0;
    double max_range = 25.0;
};

struct Region {
    int id = 0;
    Vec2 center;
    double radius = 0.0;
    std::optional<int> passage_id;       // none for regions learned during tasks
    std::vector<StoredView> views;       // capped sample of views taken inside

    bool contains(const Vec2& p) const { return distance(p, center) <= radius; }
};

struct SkeletonEdge {
    int a = 0, b = 0;        // region ids, a < b
    double dist = 0.0;       // shortest observed transition length
    Vec2 point_a;            // circumference crossing on region a
    Vec2 point_b;            // circumference crossing on region b
    Vec2 midpoint;           // recorded path point nearest the crossing midpoint
};

class Skeleton {
public:
    explicit Skeleton(ModelConfig cfg = {}) : cfg_(cfg) {}

    const std::vector<Region>& regions() const { return regions_; }
    const std::map<std::pair<int, int>, SkeletonEdge>& edges() const { return edges_; }
    size_t region_count() const { return regions_.size(); }
    size_t edge_count() const { return edges_.size(); }
    std::optional<int> last_region() const { return last_region_; }

    /// Region containing the point (closed discs), if any. Non-overlap
    /// makes the answer unique.
    std::optional<int> region_at(const Vec2& p) const;

    int degree(int region_id) const;
    const Region& region(int region_id) const;

    /// Fold one decision point into the model: adopt or create the current
    /// region and maintain transition edges. Returns the current region id,
    /// or none while the robot is between regions.
    std::optional<int> observe_decision(const Pose& pose, const View& view,
                                        std::optional<int> passage_id);

    /// True when some view recorded in the region could detect the point:
    /// an unobstructed ray passes within the visibility tolerance.
    bool region_can_detect(int region_id, const Vec2& target) const;

    /// Forget transit bookkeeping (call when the robot is teleported, e.g.
    /// at the start of a new run over the same model).
    void reset_transit();

    // Deserialization hooks; regions must arrive in id order.
    void restore_region(Region r);
    void restore_edge(const SkeletonEdge& e);

private:
    ModelConfig cfg_;
    std::vector<Region> regions_;
    std::map<std::pair<int, int>, SkeletonEdge> edges_;
    std::optional<int> last_region_;
    std::vector<Vec2> transit_;  // positions since leaving last_region_, exit point first
    std::optional<Vec2> last_pos_;

    void note_transition(int from, int to, const std::vector<Vec2>& path);
    std::optional<int> try_create_region(const Pose& pose, const View& view,
                                         std::optional<int> passage_id);
};

std::string serialize_skeleton(const Skeleton& s);
Skeleton load_skeleton(const std::string& text, const ModelConfig& cfg = {});

}  // namespace pnav
