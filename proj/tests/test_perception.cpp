#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "pnav/perception.hpp"
#include "pnav/world.hpp"
#include "pnav/worlds.hpp"
#include "support/oracles.hpp"

using namespace pnav;

namespace {

View synthetic_view(std::vector<double> ranges, Pose pose = {{0, 0}, 0.0}) {
    View v;
    v.pose = pose;
    v.ranges = std::move(ranges);
    return v;
}

// Long corridor along +x, robot centered: walls 1m each side, far wall at 20m.
World corridor_world() {
    return load_world(
        "bounds 21 2\nwall 0 0 21 0\nwall 0 2 21 2\nwall 0 0 0 2\nwall 21 0 21 2\n");
}

}  // namespace

TEST_CASE("constant view collapses every statistic") {
    const View v = synthetic_view(std::vector<double>(660, 25.0));
    const FeatureVector f = compute_features(v);
    for (double x : {f.front_avg, f.front_max, f.front_min, f.left_avg, f.left_max, f.right_avg,
                     f.right_max, f.all_avg, f.all_max, f.all_min, f.all_median})
        CHECK(x == doctest::Approx(25.0));
    CHECK(f.all_std == doctest::Approx(0.0));
}

TEST_CASE("single short ray shows up in the minimum") {
    std::vector<double> ranges(660, 25.0);
    ranges[137] = 5.0;
    const FeatureVector f = compute_features(synthetic_view(ranges));
    CHECK(f.all_min == doctest::Approx(5.0));
    CHECK(f.all_median == doctest::Approx(25.0));
    CHECK(f.all_max == doctest::Approx(25.0));
}

TEST_CASE("corridor features match brute-force per-ray expectations") {
    const World w = corridor_world();
    const Pose pose{{1, 1}, 0.0};
    const View v = scan(w, pose, {});
    const FeatureVector f = compute_features(v);

    // Oracle: recompute every sector statistic from brute-cast rays.
    double front_min = 1e18, front_max = 0, front_sum = 0;
    int front_n = 0;
    double left_max = 0, right_max = 0;
    for (int i = 0; i < 660; ++i) {
        const double rel = deg_to_rad(-110.0 + i * 220.0 / 659.0);
        const double r = oracle::brute_cast(w.walls(), pose.pos, pose.theta + rel, 25.0);
        if (std::abs(rel) <= deg_to_rad(15.0)) {
            front_min = std::min(front_min, r);
            front_max = std::max(front_max, r);
            front_sum += r;
            ++front_n;
        }
        if (rel >= deg_to_rad(45.0) && rel <= deg_to_rad(110.0)) left_max = std::max(left_max, r);
        if (rel <= deg_to_rad(-45.0) && rel >= deg_to_rad(-110.0))
            right_max = std::max(right_max, r);
    }
    CHECK(f.front_min == doctest::Approx(front_min));
    CHECK(f.front_max == doctest::Approx(front_max));
    CHECK(f.front_avg == doctest::Approx(front_sum / front_n));
    CHECK(f.left_max == doctest::Approx(left_max));
    CHECK(f.right_max == doctest::Approx(right_max));

    // Geometry: the lateral wall sits 1m away, so the widest lateral ray is
    // the 45-degree one, and the corridor stretches out in front.
    CHECK(f.left_max == doctest::Approx(1.0 / std::sin(deg_to_rad(45.0))).epsilon(0.01));
    CHECK(f.front_max == doctest::Approx(20.0).epsilon(0.02));
    CHECK(f.front_min ==
          doctest::Approx(std::min(20.0, 1.0 / std::sin(deg_to_rad(15.0)))).epsilon(0.01));
}

TEST_CASE("feature ordering invariants hold on random views") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.05, 25.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> ranges(660);
        for (double& r : ranges) r = u(rng);
        const FeatureVector f = compute_features(synthetic_view(ranges));
        CHECK(f.front_min <= f.front_avg + 1e-12);
        CHECK(f.front_avg <= f.front_max + 1e-12);
        CHECK(f.all_min <= f.all_median + 1e-12);
        CHECK(f.all_median <= f.all_max + 1e-12);
        CHECK(f.all_std >= 0.0);

        // Permuting the rays changes sector stats but never the full-view ones.
        std::vector<double> shuffled = ranges;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const FeatureVector g = compute_features(synthetic_view(shuffled));
        CHECK(g.all_avg == doctest::Approx(f.all_avg));
        CHECK(g.all_max == doctest::Approx(f.all_max));
        CHECK(g.all_min == doctest::Approx(f.all_min));
        CHECK(g.all_median == doctest::Approx(f.all_median));
        CHECK(g.all_std == doctest::Approx(f.all_std));
    }
}

TEST_CASE("median uses the lower middle for even counts") {
    std::vector<double> ranges(660, 10.0);
    for (int i = 0; i < 330; ++i) ranges[i] = 1.0;
    // Sorted: 330 ones then 330 tens; lower middle (index 329) is 1.
    const FeatureVector f = compute_features(synthetic_view(ranges));
    CHECK(f.all_median == doctest::Approx(1.0));
}

TEST_CASE("no stretches in a small closed room") {
    const World w =
        load_world("bounds 3 3\nwall 0 0 3 0\nwall 3 0 3 3\nwall 3 3 0 3\nwall 0 3 0 0\n");
    const View v = scan(w, {{1.5, 1.5}, 0.0}, {});
    CHECK(detect_stretches(v, 7.0).empty());
}

TEST_CASE("a single corridor ahead yields one stretch with its geometry") {
    const World w = corridor_world();
    const View v = scan(w, {{1, 1}, 0.0}, {});
    const auto stretches = detect_stretches(v, 7.0);
    REQUIRE(stretches.size() == 1);
    const Stretch& s = stretches[0];
    CHECK(std::abs(angle_diff(s.direction, 0.0)) < deg_to_rad(2.0));
    CHECK(s.length == doctest::Approx(20.0).epsilon(0.02));
    CHECK(s.width == doctest::Approx(2.0).epsilon(0.05));
    CHECK(s.length >= 7.0);
    CHECK(s.avg_length <= 25.0);
    CHECK(s.detected_at.pos == Vec2{1, 1});
}

TEST_CASE("T junction produces two lateral stretches") {
    // Arms 15m up and down, wall 3m ahead of the robot, which faces +x.
    const World w = load_world(
        "bounds 3 32\n"
        "wall 0 0 0 32\n"
        "wall 3 0 3 32\n"
        "wall 0 0 3 0\n"
        "wall 0 32 3 32\n");
    const View v = scan(w, {{1.5, 16}, 0.0}, {});
    const auto stretches = detect_stretches(v, 7.0);
    REQUIRE(stretches.size() == 2);
    for (const Stretch& s : stretches) {
        const double rel = std::abs(angle_diff(s.direction, 0.0));
        CHECK(rel > deg_to_rad(80.0));
        CHECK(rel < deg_to_rad(100.0));
        CHECK(s.length >= 7.0);
    }
    // One up, one down; mirror symmetry in direction and length.
    const double up = angle_diff(stretches[0].direction, 0.0);
    const double down = angle_diff(stretches[1].direction, 0.0);
    CHECK(up * down < 0);
    CHECK(std::abs(up + down) < deg_to_rad(1.5));
    CHECK(stretches[0].length == doctest::Approx(stretches[1].length).epsilon(0.01));
}

TEST_CASE("stretch list is sorted by length, directions separated") {
    const World w = make_benchmark_world("corridor-h").world;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> ua(-kPi, kPi);
    int views = 0;
    while (views < 20) {
        const Vec2 p{7.25, 3.0 + (views % 10)};
        const Pose pose{p, ua(rng)};
        if (w.clearance(pose.pos, 1.0) < 0.4) continue;
        ++views;
        const auto stretches = detect_stretches(scan(w, pose, {}), 7.0);
        for (size_t i = 0; i < stretches.size(); ++i) {
            CHECK(stretches[i].length >= 7.0);
            if (i > 0) CHECK(stretches[i - 1].length >= stretches[i].length);
            for (size_t j = i + 1; j < stretches.size(); ++j) {
                const double sep =
                    std::abs(angle_diff(stretches[i].direction, stretches[j].direction));
                CHECK(sep >= deg_to_rad(4.0) - 1e-9);
            }
        }
    }
}

TEST_CASE("classifier rule application is ordered and total") {
    RoomPassageClassifier c;
    c.rules.push_back({1 /*front_max*/, true, 5.0, ViewLabel::Room});
    c.default_label = ViewLabel::Passage;
    FeatureVector f;
    f.front_max = 3.0;
    CHECK(classify(c, f) == ViewLabel::Room);
    f.front_max = 8.0;
    CHECK(classify(c, f) == ViewLabel::Passage);  // no rule fires, default
}

TEST_CASE("default classifier: corridors pass, small rooms do not") {
    const RoomPassageClassifier c = default_classifier(7.0);
    const FeatureVector f = compute_features(scan(corridor_world(), {{1, 1}, 0.0}, {}));
    CHECK(classify(c, f) == ViewLabel::Passage);

    const World room =
        load_world("bounds 6 6\nwall 0 0 6 0\nwall 6 0 6 6\nwall 6 6 0 6\nwall 0 6 0 0\n");
    const FeatureVector g = compute_features(scan(room, {{3, 3}, 0.0}, {}));
    CHECK(classify(c, g) == ViewLabel::Room);
}

namespace {

FeatureVector cluster_sample(std::mt19937_64& rng, bool passage) {
    std::normal_distribution<double> n(0.0, 0.3);
    FeatureVector f;
    const double front = passage ? 20.0 : 3.0;
    f.front_avg = front - 1 + n(rng);
    f.front_max = front + n(rng);
    f.front_min = front - 2 + n(rng);
    f.left_avg = 1.2 + n(rng);
    f.left_max = 1.5 + n(rng);
    f.right_avg = 1.2 + n(rng);
    f.right_max = 1.5 + n(rng);
    f.all_avg = (passage ? 6.0 : 2.5) + n(rng);
    f.all_max = front + n(rng);
    f.all_min = 0.8 + std::abs(n(rng));
    f.all_median = (passage ? 3.0 : 2.5) + n(rng);
    f.all_std = (passage ? 5.0 : 0.7) + n(rng);
    return f;
}

}  // namespace

TEST_CASE("training on two separated clusters thresholds inside the margin") {
    std::mt19937_64 rng(99);
    std::vector<FeatureVector> samples;
    for (int i = 0; i < 40; ++i) samples.push_back(cluster_sample(rng, false));
    for (int i = 0; i < 40; ++i) samples.push_back(cluster_sample(rng, true));

    const RoomPassageClassifier c = train_classifier(samples);
    REQUIRE(!c.rules.empty());
    REQUIRE(c.rules.size() <= 2);

    // Every training sample classifies back to its generating cluster.
    for (int i = 0; i < 40; ++i) CHECK(classify(c, samples[i]) == ViewLabel::Room);
    for (int i = 40; i < 80; ++i) CHECK(classify(c, samples[i]) == ViewLabel::Passage);

    // The first rule's threshold lies between the class means of its field.
    const ClassifierRule& r = c.rules[0];
    double lo = 0, hi = 0;
    for (int i = 0; i < 40; ++i) lo += feature_field(samples[i], r.field) / 40;
    for (int i = 40; i < 80; ++i) hi += feature_field(samples[i], r.field) / 40;
    CHECK(r.threshold > std::min(lo, hi));
    CHECK(r.threshold < std::max(lo, hi));
}

TEST_CASE("degenerate training data is rejected") {
    std::vector<FeatureVector> same(10);
    CHECK_THROWS_AS(train_classifier(same), TrainingError);
    CHECK_THROWS_AS(train_classifier({}), TrainingError);
}

TEST_CASE("training is reproducible bit for bit") {
    std::mt19937_64 rng(7);
    std::vector<FeatureVector> samples;
    for (int i = 0; i < 30; ++i) samples.push_back(cluster_sample(rng, i % 2 == 0));
    const std::string a = serialize_classifier(train_classifier(samples));
    const std::string b = serialize_classifier(train_classifier(samples));
    CHECK(a == b);
}

TEST_CASE("classifier serialization round-trips") {
    const RoomPassageClassifier c = default_classifier(7.0);
    const std::string text = serialize_classifier(c);
    const RoomPassageClassifier back = load_classifier(text);
    CHECK(serialize_classifier(back) == text);
    FeatureVector f;
    f.front_max = 20;
    f.all_std = 5;
    CHECK(classify(back, f) == classify(c, f));

    CHECK_THROWS_AS(load_classifier("rule nope lt 3 room\ndefault room\n"), ParseError);
    CHECK_THROWS_AS(load_classifier("rule front_max lt 3 room\n"), ParseError);  // no default
}
