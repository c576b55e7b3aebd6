#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pnav/skeleton.hpp"
#include "pnav/worlds.hpp"

using namespace pnav;

namespace {

View open_view(const Pose& pose, double min_range) {
    View v;
    v.pose = pose;
    v.ranges.assign(660, 25.0);
    v.ranges[330] = min_range;  // controls the created radius
    return v;
}

}  // namespace

TEST_CASE("first decision creates a region capped at 2m radius") {
    Skeleton s;
    const Pose p{{5, 5}, 0.0};
    const auto id = s.observe_decision(p, open_view(p, 3.0), 1);
    REQUIRE(id.has_value());
    CHECK(s.region(*id).radius == doctest::Approx(2.0));
    CHECK(s.region(*id).center == Vec2{5, 5});
    CHECK(s.region(*id).passage_id == 1);
    CHECK(s.edge_count() == 0);
}

TEST_CASE("region radius shrinks to the shortest view range") {
    Skeleton s;
    const Pose p{{5, 5}, 0.0};
    const auto id = s.observe_decision(p, open_view(p, 0.9), std::nullopt);
    REQUIRE(id.has_value());
    CHECK(s.region(*id).radius == doctest::Approx(0.9));
    CHECK_FALSE(s.region(*id).passage_id.has_value());
}

TEST_CASE("two distant regions connect with the crossing-to-crossing distance") {
    Skeleton s;
    const Pose a{{5, 5}, 0.0};
    const Pose b{{10, 5}, 0.0};
    s.observe_decision(a, open_view(a, 3.0), 1);  // radius 2.0
    const auto rb = s.observe_decision(b, open_view(b, 3.0), 1);
    REQUIRE(rb.has_value());
    REQUIRE(s.edge_count() == 1);
    const SkeletonEdge& e = s.edges().begin()->second;
    CHECK(e.dist == doctest::Approx(5.0 - 2.0 - 2.0).epsilon(0.02));
    // Crossing points sit on the circumferences.
    CHECK(distance(e.point_a, s.region(e.a).center) == doctest::Approx(s.region(e.a).radius));
    CHECK(distance(e.point_b, s.region(e.b).center) == doctest::Approx(s.region(e.b).radius));
    // Midpoint lies between the two regions.
    CHECK(e.midpoint.x > 5.0);
    CHECK(e.midpoint.x < 10.0);
}

TEST_CASE("revisiting through a shorter transition lowers the edge label") {
    const Pose a{{5, 5}, 0.0};
    const Pose far{{5, 9}, 0.0};  // wanders north before coming back
    const Pose b{{10, 5}, 0.0};

    Skeleton detour;
    detour.observe_decision(a, open_view(a, 1.0), 1);       // radius 1
    detour.observe_decision(far, open_view(far, 0.15), 1);  // too small: no region
    detour.observe_decision(b, open_view(b, 1.0), 1);
    REQUIRE(detour.edge_count() == 1);
    const double long_dist = detour.edges().begin()->second.dist;
    CHECK(long_dist > 5.0);  // detour exceeds the straight-line gap

    // Going straight back refreshes the label with the shorter crossing.
    detour.observe_decision(a, open_view(a, 1.0), 1);
    REQUIRE(detour.edge_count() == 1);
    const double short_dist = detour.edges().begin()->second.dist;
    CHECK(short_dist < long_dist);
    CHECK(short_dist == doctest::Approx(5.0 - 1.0 - 1.0).epsilon(0.05));

    // A later, longer transition never raises it again.
    detour.observe_decision(far, open_view(far, 0.15), 1);
    detour.observe_decision(b, open_view(b, 1.0), 1);
    CHECK(detour.edges().begin()->second.dist == doctest::Approx(short_dist));
}

TEST_CASE("region_at: containment, misses, boundary") {
    Skeleton s;
    const Pose p{{5, 5}, 0.0};
    const auto id = s.observe_decision(p, open_view(p, 1.5), std::nullopt);
    REQUIRE(id.has_value());
    CHECK(s.region_at({5, 5}) == id);
    CHECK_FALSE(s.region_at({8, 8}).has_value());
    CHECK(s.region_at({5 + 1.5, 5}) == id);  // closed disc includes the rim
    CHECK_FALSE(s.region_at({5 + 1.5 + 1e-9, 5}).has_value());
}

TEST_CASE("degree counts incident edges; unknown regions are an error") {
    Skeleton s;
    // Star: hub region plus four satellites visited back and forth.
    const Pose c{{10, 10}, 0.0};
    s.observe_decision(c, open_view(c, 1.0), 1);
    const std::vector<Vec2> spokes{{14, 10}, {10, 14}, {6, 10}, {10, 6}};
    for (const Vec2& sp : spokes) {
        const Pose p{sp, 0.0};
        s.observe_decision(p, open_view(p, 1.0), 1);
        s.observe_decision(c, open_view(c, 1.0), 1);  // back to the hub
    }
    CHECK(s.region_count() == 5);
    CHECK(s.degree(0) == 4);
    CHECK(s.degree(1) == 1);
    CHECK_THROWS_AS(s.degree(99), UnknownRegionError);
    CHECK_THROWS_AS(s.degree(-1), UnknownRegionError);
}

TEST_CASE("regions never overlap, even under dense observations") {
    Skeleton s;
    // Sweep a grid of poses 0.7m apart; far more candidate centers than
    // non-overlapping discs can host.
    for (int i = 0; i < 12; ++i) {
        for (int j = 0; j < 12; ++j) {
            const Pose p{{2 + 0.7 * i, 2 + 0.7 * j}, 0.0};
            s.observe_decision(p, open_view(p, 2.5), std::nullopt);
        }
    }
    CHECK(s.region_count() > 4);
    for (const Region& a : s.regions()) {
        CHECK(a.radius >= 0.2);
        for (const Region& b : s.regions()) {
            if (a.id == b.id) continue;
            CHECK(distance(a.center, b.center) >= a.radius + b.radius - 1e-9);
        }
    }
}

TEST_CASE("edge labels stay positive with endpoints on circumferences") {
    Skeleton s;
    std::uint64_t state = 12345;
    auto next = [&]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return (state >> 33) / double(1ULL << 31);  // [0,2)
    };
    Pose p{{20, 20}, 0.0};
    for (int step = 0; step < 400; ++step) {
        p.pos.x += (next() - 1.0) * 1.6;
        p.pos.y += (next() - 1.0) * 1.6;
        s.observe_decision(p, open_view(p, 1.2), std::nullopt);
    }
    REQUIRE(s.edge_count() > 0);
    for (const auto& [key, e] : s.edges()) {
        CHECK(e.dist > 0.0);
        CHECK(distance(e.point_a, s.region(e.a).center) ==
              doctest::Approx(s.region(e.a).radius).epsilon(1e-6));
        CHECK(distance(e.point_b, s.region(e.b).center) ==
              doctest::Approx(s.region(e.b).radius).epsilon(1e-6));
        CHECK(key.first == e.a);
        CHECK(key.second == e.b);
        CHECK(e.a < e.b);
    }
}

TEST_CASE("discs built from real corridor views avoid the walls") {
    const BenchmarkWorld b = make_benchmark_world("corridor-h");
    Skeleton s;
    Pose p = b.start;
    SensorConfig sensor;
    for (int step = 0; step < 40; ++step) {
        const View v = scan(b.world, p, sensor);
        s.observe_decision(p, v, 1);
        p = apply_action(b.world, p, {ActionKind::Forward, 0.8}, 0.4).new_pose;
    }
    REQUIRE(s.region_count() >= 3);
    for (const Region& r : s.regions()) {
        CHECK(b.world.clearance(r.center, 5.0) >= r.radius - 0.05);
    }
    // A straight corridor walk produces a chain: maximum degree 2.
    for (const Region& r : s.regions()) CHECK(s.degree(r.id) <= 2);
}

TEST_CASE("stored views let regions confirm visible targets") {
    const BenchmarkWorld b = make_benchmark_world("corridor");
    Skeleton s;
    const View v = scan(b.world, b.start, {});
    const auto id = s.observe_decision(b.start, v, 1);
    REQUIRE(id.has_value());
    CHECK(s.region_can_detect(*id, {10, 1}));        // down the corridor
    CHECK_FALSE(s.region_can_detect(*id, {30, 1}));  // beyond the far wall
    CHECK_FALSE(s.region_can_detect(*id, {0.2, 1}) );// behind, outside the arc
}

TEST_CASE("skeleton serialization round-trips regions and edges") {
    Skeleton s;
    const Pose a{{5, 5}, 0.0};
    const Pose b{{10, 5}, 0.0};
    s.observe_decision(a, open_view(a, 3.0), 1);
    s.observe_decision(b, open_view(b, 3.0), std::nullopt);
    const std::string text = serialize_skeleton(s);
    const Skeleton back = load_skeleton(text);
    CHECK(back.region_count() == s.region_count());
    CHECK(back.edge_count() == s.edge_count());
    CHECK(serialize_skeleton(back) == text);
    CHECK(back.region(0).passage_id == 1);
    CHECK_FALSE(back.region(1).passage_id.has_value());

    CHECK_THROWS_AS(load_skeleton("region 5 1 1 1 -\n"), ValidationError);
    CHECK_THROWS_AS(load_skeleton("edge 0 1 2 0 0 0 0 0 0\n"), UnknownRegionError);
    CHECK_THROWS_AS(load_skeleton("garbage\n"), ParseError);
}
