#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pnav/planner.hpp"
#include "support/oracles.hpp"

using namespace pnav;

namespace {

// Build a skeleton directly from region/edge descriptions.
struct GraphSpec {
    std::vector<std::pair<Vec2, double>> regions;            // center, radius
    std::vector<std::tuple<int, int, double>> edges;         // a, b, label distance
};

Skeleton build(const GraphSpec& spec) {
    Skeleton s;
    for (size_t i = 0; i < spec.regions.size(); ++i) {
        Region r;
        r.id = static_cast<int>(i);
        r.center = spec.regions[i].first;
        r.radius = spec.regions[i].second;
        s.restore_region(std::move(r));
    }
    for (const auto& [a, b, d] : spec.edges) {
        SkeletonEdge e;
        e.a = std::min(a, b);
        e.b = std::max(a, b);
        e.dist = d;
        const Vec2 ca = s.region(e.a).center, cb = s.region(e.b).center;
        const Vec2 u = distance(ca, cb) > 0 ? (cb - ca) * (1.0 / distance(ca, cb)) : Vec2{1, 0};
        e.point_a = ca + u * s.region(e.a).radius;
        e.point_b = cb - u * s.region(e.b).radius;
        e.midpoint = (e.point_a + e.point_b) * 0.5;
        s.restore_edge(e);
    }
    return s;
}

}  // namespace

TEST_CASE("attach: containment wins, then the score formula") {
    const Skeleton s = build({{{{0, 0}, 1.0}, {{5, 0}, 1.0}, {{9, 0}, 1.0}},
                              {{1, 2, 3.0}}});
    CHECK(attach_point(s, {0.5, 0}) == 0);  // inside region 0

    // Outside all: score -5*distance + degree. Region 0 has degree 0,
    // regions 1 and 2 have degree 1.
    // Point at (0,2): d0=2 -> -10; d1=sqrt(29)~5.39 -> -25.9; 0 wins.
    CHECK(attach_point(s, {0, 2}) == 0);

    const Skeleton empty;
    CHECK_FALSE(attach_point(empty, {0, 0}).has_value());
}

TEST_CASE("attach: degree can beat proximity") {
    // Region A at distance 2 with degree 0: s = -10.
    // Region B at distance 3 with degree 6: s = -15 + 6 = -9. B wins.
    GraphSpec spec;
    spec.regions.push_back({{0, 0}, 0.5});  // A
    spec.regions.push_back({{0, 5}, 0.5});  // B (hub)
    for (int k = 0; k < 6; ++k) {
        // Satellites fan out on B's far side so none outscores it.
        const double ang = k * kPi / 5.0;
        spec.regions.push_back({{3.0 * std::cos(ang), 5 + 3.0 * std::abs(std::sin(ang))}, 0.5});
    }
    for (int k = 0; k < 6; ++k) spec.edges.push_back({1, 2 + k, 2.0});
    const Skeleton s = build(spec);

    const Vec2 p{0, 2};  // 2 from A, 3 from B
    CHECK(distance(p, s.region(0).center) == doctest::Approx(2.0));
    CHECK(distance(p, s.region(1).center) == doctest::Approx(3.0));
    CHECK(s.degree(1) == 6);
    CHECK(attach_point(s, p) == 1);
}

TEST_CASE("attach: zero distance with degree dominates") {
    // s = -5*0 + 4 = 4 beats any region 1m+ away with degree <= 8.
    GraphSpec spec;
    spec.regions.push_back({{0, 0}, 0.1});  // scored region (point on its rim? outside)
    spec.regions.push_back({{1.5, 0}, 0.1});
    for (int k = 0; k < 4; ++k) spec.regions.push_back({{0, 2.0 + k}, 0.1});
    for (int k = 0; k < 4; ++k) spec.edges.push_back({0, 2 + k, 2.0});
    Skeleton s = build(spec);
    // Probe sits at region 0's center: contained, trivially region 0; use a
    // point just off the rim so the score path is exercised.
    const Vec2 p{0.10000001, 0};
    CHECK(attach_point(s, p) == 0);
}

TEST_CASE("attach ties break to the lower region id") {
    const Skeleton s = build({{{{0, 0}, 0.5}, {{4, 0}, 0.5}}, {}});
    CHECK(attach_point(s, {2, 0}) == 0);  // symmetric scores
}

TEST_CASE("plan_regions: trivial and chain paths") {
    const Skeleton s = build({{{{0, 0}, 1.0}, {{4, 0}, 1.0}, {{8, 0}, 1.0}},
                              {{0, 1, 2.0}, {1, 2, 2.0}}});
    CHECK(plan_regions(s, 1, 1) == std::vector<int>{1});
    CHECK(plan_regions(s, 0, 2) == std::vector<int>{0, 1, 2});
    CHECK_THROWS_AS(plan_regions(s, 0, 9), UnknownRegionError);

    const Skeleton split = build({{{{0, 0}, 1.0}, {{4, 0}, 1.0}}, {}});
    CHECK(plan_regions(split, 0, 1).empty());  // disconnected
}

TEST_CASE("six-region graph: cheap 3-hop route beats an expensive 2-hop one") {
    // 0 -> 5 directly through 1 (long labels) or around 2,3,4 (short ones).
    GraphSpec spec;
    spec.regions = {{{0, 0}, 0.5},  {{5, 3}, 0.5},  {{2, -2}, 0.5},
                    {{5, -2}, 0.5}, {{8, -2}, 0.5}, {{10, 0}, 0.5}};
    spec.edges = {{0, 1, 8.0}, {1, 5, 8.0},                          // pricey
                  {0, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}, {4, 5, 1.0}};  // cheap
    const Skeleton s = build(spec);
    const auto path = plan_regions(s, 0, 5);
    CHECK(path == std::vector<int>{0, 2, 3, 4, 5});

    // Cost agrees with Dijkstra over the same weighted graph.
    std::vector<std::tuple<int, int, double>> edges;
    for (const auto& [key, e] : s.edges())
        edges.push_back({e.a, e.b, e.dist + s.region(e.a).radius + s.region(e.b).radius});
    double astar_cost = 0;
    for (size_t i = 1; i < path.size(); ++i) {
        const auto it = s.edges().find({std::min(path[i - 1], path[i]),
                                        std::max(path[i - 1], path[i])});
        astar_cost += it->second.dist + s.region(path[i - 1]).radius + s.region(path[i]).radius;
    }
    CHECK(astar_cost ==
          doctest::Approx(oracle::brute_dijkstra(6, edges, 0, 5)));
}

TEST_CASE("A* cost equals Dijkstra on random skeletons") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0, 100);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 499);
        GraphSpec spec;
        for (int i = 0; i < n; ++i) spec.regions.push_back({{u(rng), u(rng)}, 0.3});
        for (int i = 0; i < n; ++i) {
            const int degree = 1 + static_cast<int>(rng() % 3);
            for (int k = 0; k < degree; ++k) {
                const int j = static_cast<int>(rng() % n);
                if (j == i) continue;
                // Label at least the center gap keeps the heuristic admissible,
                // mirroring real construction where labels are path lengths.
                const double gap =
                    distance(spec.regions[i].first, spec.regions[j].first) - 0.6;
                spec.edges.push_back({i, j, std::max(0.1, gap) + u(rng) * 0.2});
            }
        }
        const Skeleton s = build(spec);
        std::vector<std::tuple<int, int, double>> edges;
        for (const auto& [key, e] : s.edges())
            edges.push_back({e.a, e.b, e.dist + 0.6});
        const int from = static_cast<int>(rng() % n);
        const int to = static_cast<int>(rng() % n);
        const auto path = plan_regions(s, from, to);
        const double want = oracle::brute_dijkstra(n, edges, from, to);
        if (path.empty()) {
            CHECK(std::isinf(want));
        } else {
            double cost = 0;
            for (size_t i = 1; i < path.size(); ++i) {
                const auto it = s.edges().find(
                    {std::min(path[i - 1], path[i]), std::max(path[i - 1], path[i])});
                REQUIRE(it != s.edges().end());
                cost += it->second.dist + 0.6;
            }
            CHECK(cost == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("heuristic admissibility holds for constructed edges") {
    // By construction cost = label + r_a + r_b >= center distance whenever the
    // label covers the gap between circumferences.
    const Skeleton s = build({{{{0, 0}, 1.0}, {{6, 0}, 2.0}}, {{0, 1, 3.0}}});
    const SkeletonEdge& e = s.edges().begin()->second;
    const double cost = e.dist + s.region(0).radius + s.region(1).radius;
    CHECK(cost >= distance(s.region(0).center, s.region(1).center) - 1e-9);
}

TEST_CASE("waypoint expansion interleaves centers, crossings and midpoints") {
    const Skeleton s = build({{{{0, 0}, 1.0}, {{4, 0}, 1.0}, {{8, 0}, 1.0}},
                              {{0, 1, 2.0}, {1, 2, 2.0}}});

    Plan single = expand_waypoints(s, {1}, {9, 9});
    REQUIRE(single.waypoints.size() == 1);
    CHECK(single.waypoints[0] == Vec2{4, 0});

    Plan two = expand_waypoints(s, {0, 1}, {9, 9});
    REQUIRE(two.waypoints.size() == 5);
    CHECK(two.waypoints[0] == Vec2{0, 0});
    CHECK(two.waypoints[1] == Vec2{1, 0});  // exit of region 0 toward 1
    CHECK(two.waypoints[2] == Vec2{2, 0});  // path midpoint
    CHECK(two.waypoints[3] == Vec2{3, 0});  // entry of region 1
    CHECK(two.waypoints[4] == Vec2{4, 0});

    Plan three = expand_waypoints(s, {0, 1, 2}, {9, 9});
    CHECK(three.waypoints.size() == 4 * (3 - 1) + 1);

    // Reversed direction resolves crossings by containment, not edge order.
    Plan back = expand_waypoints(s, {1, 0}, {0, 0});
    CHECK(back.waypoints[1] == Vec2{3, 0});  // exit of region 1 toward 0
    CHECK(back.waypoints[3] == Vec2{1, 0});
}

TEST_CASE("make_plan end to end, including unreachable fallbacks") {
    const Skeleton s = build({{{{0, 0}, 1.0}, {{4, 0}, 1.0}, {{8, 0}, 1.0}},
                              {{0, 1, 2.0}, {1, 2, 2.0}}});
    // Target inside the robot's own region: a single-waypoint plan.
    Plan inside = make_plan(s, {0.2, 0}, {-0.2, 0});
    CHECK(inside.region_path == std::vector<int>{0});
    CHECK(inside.waypoints.size() == 1);

    Plan across = make_plan(s, {0, 0.2}, {8.2, 0});
    CHECK(across.region_path == std::vector<int>{0, 1, 2});
    CHECK(across.waypoints.size() == 9);
    CHECK_FALSE(across.exhausted());

    const Skeleton split = build({{{{0, 0}, 1.0}, {{40, 0}, 1.0}}, {}});
    Plan broken = make_plan(split, {0, 0}, {40, 0});
    CHECK(broken.unreachable);
    CHECK(broken.empty());

    const Skeleton empty;
    Plan none = make_plan(empty, {0, 0}, {1, 1});
    CHECK(none.unreachable);
    CHECK(none.empty());
}

TEST_CASE("plan serialization lists regions and waypoint statuses") {
    const Skeleton s = build({{{{0, 0}, 1.0}, {{4, 0}, 1.0}}, {{0, 1, 2.0}}});
    Plan p = make_plan(s, {0, 0}, {4, 0});
    p.status[0] = WaypointStatus::Visited;
    const std::string text = serialize_plan(p);
    CHECK(text.find("regions 0 1") != std::string::npos);
    CHECK(text.find("waypoint 0") != std::string::npos);
    CHECK(text.find("visited") != std::string::npos);
    CHECK(text.find("pending") != std::string::npos);
}
