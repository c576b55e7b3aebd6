#include "pnav/worlds.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace pnav {

namespace {

// Wall along a line with open intervals (doors, corridor mouths) cut out.
// Axis-aligned: from and to share one coordinate.
void wall_with_gaps(std::vector<Segment>& walls, const Vec2& from, const Vec2& to,
                    std::vector<std::pair<double, double>> gaps) {
    const bool horizontal = from.y == to.y;
    const double lo = horizontal ? std::min(from.x, to.x) : std::min(from.y, to.y);
    const double hi = horizontal ? std::max(from.x, to.x) : std::max(from.y, to.y);
    std::sort(gaps.begin(), gaps.end());
    double cursor = lo;
    auto emit = [&](double a, double b) {
        if (b - a < 1e-9) return;
        if (horizontal)
            walls.push_back({{a, from.y}, {b, from.y}});
        else
            walls.push_back({{from.x, a}, {from.x, b}});
    };
    for (const auto& [ga, gb] : gaps) {
        emit(cursor, std::min(ga, hi));
        cursor = std::max(cursor, gb);
    }
    emit(cursor, hi);
}

void perimeter(std::vector<Segment>& walls, double w, double h) {
    walls.push_back({{0, 0}, {w, 0}});
    walls.push_back({{w, 0}, {w, h}});
    walls.push_back({{w, h}, {0, h}});
    walls.push_back({{0, h}, {0, 0}});
}

void post(std::vector<Segment>& walls, double cx, double cy, double half) {
    walls.push_back({{cx - half, cy - half}, {cx + half, cy - half}});
    walls.push_back({{cx + half, cy - half}, {cx + half, cy + half}});
    walls.push_back({{cx + half, cy + half}, {cx - half, cy + half}});
    walls.push_back({{cx - half, cy + half}, {cx - half, cy - half}});
}

BenchmarkWorld make_box() {
    std::vector<Segment> walls;
    perimeter(walls, 10, 10);
    BenchmarkWorld b{World("box", 10, 10, std::move(walls)), {{5, 5}, 0.0}, {}};
    return b;
}

BenchmarkWorld make_corridor() {
    std::vector<Segment> walls;
    perimeter(walls, 20, 2);
    BenchmarkWorld b{World("corridor", 20, 2, std::move(walls)), {{1, 1}, 0.0}, {}};
    b.corridor_axes.push_back({{1.5, 1.0}, {18.5, 1.0}});
    return b;
}

// Two 2.5m-wide vertical halls joined by a cross hall, with eight rooms:
// two off each outer wall and four off the crossbar.
BenchmarkWorld make_corridor_h() {
    const double W = 32, H = 34;
    const double door = 1.4;
    std::vector<Segment> walls;
    perimeter(walls, W, H);

    auto door_gap = [&](double center) {
        return std::pair{center - door / 2, center + door / 2};
    };

    // Left hall x in [6, 8.5]; right hall x in [23.5, 26]; cross y in [15.75, 18.25].
    wall_with_gaps(walls, {6, 0}, {6, H}, {door_gap(8.5), door_gap(25.5)});
    wall_with_gaps(walls, {8.5, 0}, {8.5, H}, {{15.75, 18.25}});
    wall_with_gaps(walls, {23.5, 0}, {23.5, H}, {{15.75, 18.25}});
    wall_with_gaps(walls, {26, 0}, {26, H}, {door_gap(8.5), door_gap(25.5)});
    wall_with_gaps(walls, {8.5, 15.75}, {23.5, 15.75}, {door_gap(12.25), door_gap(19.75)});
    wall_with_gaps(walls, {8.5, 18.25}, {23.5, 18.25}, {door_gap(12.25), door_gap(19.75)});

    // Room partitions.
    walls.push_back({{0, 17}, {6, 17}});
    walls.push_back({{26, 17}, {32, 17}});
    walls.push_back({{16, 0}, {16, 15.75}});
    walls.push_back({{16, 18.25}, {16, H}});

    BenchmarkWorld b{World("corridor-h", W, H, std::move(walls)), {{7.25, 3}, kPi / 2}, {}};
    b.corridor_axes.push_back({{7.25, 2}, {7.25, 32}});
    b.corridor_axes.push_back({{24.75, 2}, {24.75, 32}});
    b.corridor_axes.push_back({{10, 17}, {22, 17}});
    return b;
}

// A 60x40 floor: three horizontal and three vertical 2.5m halls, thirty
// rooms opening south onto the nearest hall, plus posts and wall stubs.
BenchmarkWorld make_office_block() {
    const double W = 60, H = 40;
    const double door = 1.4;
    std::vector<Segment> walls;
    perimeter(walls, W, H);

    // Vertical halls: x bands [10,12.5], [28.75,31.25], [47.5,50].
    const std::vector<std::pair<double, double>> vx = {{10, 12.5}, {28.75, 31.25}, {47.5, 50}};
    // Horizontal halls: y bands [0,2.5], [12,14.5], [25.5,28].
    const std::vector<std::pair<double, double>> hy = {{0, 2.5}, {12, 14.5}, {25.5, 28}};

    std::vector<std::pair<double, double>> crossings_v;  // gaps on vertical lines
    for (const auto& [y0, y1] : hy) crossings_v.push_back({y0, y1});
    std::vector<std::pair<double, double>> crossings_h;  // gaps on horizontal lines
    for (const auto& [x0, x1] : vx) crossings_h.push_back({x0, x1});

    for (const auto& [x0, x1] : vx) {
        wall_with_gaps(walls, {x0, 0}, {x0, H}, crossings_v);
        wall_with_gaps(walls, {x1, 0}, {x1, H}, crossings_v);
    }

    // Room bands between the halls; every room doors south.
    const std::vector<std::pair<double, double>> xbands = {
        {0, 10}, {12.5, 28.75}, {31.25, 47.5}, {50, 60}};
    const std::vector<std::pair<double, double>> ybands = {{2.5, 12}, {14.5, 25.5}, {28, 40}};

    std::vector<double> door_centers;
    std::vector<Segment> partitions;
    for (const auto& [bx0, bx1] : xbands) {
        const int nrooms = bx1 - bx0 > 12 ? 3 : 2;
        const double rw = (bx1 - bx0) / nrooms;
        for (int r = 0; r < nrooms; ++r) {
            door_centers.push_back(bx0 + (r + 0.5) * rw);
            if (r > 0)
                for (const auto& [by0, by1] : ybands)
                    partitions.push_back({{bx0 + r * rw, by0}, {bx0 + r * rw, by1}});
        }
    }

    // Horizontal hall boundaries. The south edge of each room band carries
    // the doors; the north edge of each hall below it is solid.
    std::vector<std::pair<double, double>> doored = crossings_h;
    for (double c : door_centers) doored.push_back({c - door / 2, c + door / 2});
    wall_with_gaps(walls, {0, 2.5}, {W, 2.5}, doored);
    wall_with_gaps(walls, {0, 12}, {W, 12}, crossings_h);
    wall_with_gaps(walls, {0, 14.5}, {W, 14.5}, doored);
    wall_with_gaps(walls, {0, 25.5}, {W, 25.5}, crossings_h);
    wall_with_gaps(walls, {0, 28}, {W, 28}, doored);

    walls.insert(walls.end(), partitions.begin(), partitions.end());

    // Interior posts inside four rooms.
    post(walls, 20.6, 20.0, 0.25);
    post(walls, 39.4, 20.0, 0.25);
    post(walls, 20.6, 34.0, 0.25);
    post(walls, 39.4, 34.0, 0.25);

    // Jog stubs protruding into the halls.
    walls.push_back({{22, 12}, {22, 12.6}});
    walls.push_back({{40, 25.5}, {40, 26.1}});
    walls.push_back({{47.5, 33}, {48.1, 33}});

    BenchmarkWorld b{World("office-block", W, H, std::move(walls)), {{4, 13.25}, 0.0}, {}};
    b.corridor_axes.push_back({{2, 1.25}, {58, 1.25}});
    b.corridor_axes.push_back({{2, 13.25}, {58, 13.25}});
    b.corridor_axes.push_back({{2, 26.75}, {58, 26.75}});
    b.corridor_axes.push_back({{11.25, 2}, {11.25, 38}});
    b.corridor_axes.push_back({{30, 2}, {30, 38}});
    b.corridor_axes.push_back({{48.75, 2}, {48.75, 38}});
    return b;
}

}  // namespace

const std::vector<std::string>& benchmark_world_names() {
    static const std::vector<std::string> names{"box", "corridor", "corridor-h", "office-block"};
    return names;
}

BenchmarkWorld make_benchmark_world(const std::string& name) {
    if (name == "box") return make_box();
    if (name == "corridor") return make_corridor();
    if (name == "corridor-h") return make_corridor_h();
    if (name == "office-block") return make_office_block();
    throw ValidationError("unknown benchmark world '" + name + "'");
}

BenchmarkWorld resolve_world(const std::string& name_or_path) {
    const auto& names = benchmark_world_names();
    if (std::find(names.begin(), names.end(), name_or_path) != names.end())
        return make_benchmark_world(name_or_path);
    std::ifstream in(name_or_path);
    if (!in) throw ParseError("cannot open world file '" + name_or_path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    World w = load_world(ss.str());
    const Pose center{{w.width() / 2, w.height() / 2}, 0.0};
    return {std::move(w), center, {}};
}

}  // namespace pnav
