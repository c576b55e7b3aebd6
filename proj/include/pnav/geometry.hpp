#pragma once
// 2D primitives shared by the simulator and the spatial model: vectors,
// angles, segment geometry, swept-disc casts and grid traversal.

#include <cmath>
#include <compare>
#include <optional>
#include <vector>

namespace pnav {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double distance(const Vec2& a, const Vec2& b) { return norm(b - a); }
inline Vec2 unit_from_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }
inline double bearing(const Vec2& from, const Vec2& to) { return std::atan2(to.y - from.y, to.x - from.x); }

/// Normalize an angle to (-pi, pi].
inline double normalize_angle(double a) {
    a = std::fmod(a + kPi, 2.0 * kPi);
    if (a <= 0.0) a += 2.0 * kPi;
    return a - kPi;
}

/// Smallest signed difference a-b, in (-pi, pi].
inline double angle_diff(double a, double b) { return normalize_angle(a - b); }

inline double deg_to_rad(double d) { return d * kPi / 180.0; }
inline double rad_to_deg(double r) { return r * 180.0 / kPi; }

struct Segment {
    Vec2 a;
    Vec2 b;
};

double point_segment_distance(const Vec2& p, const Segment& s);
double segment_segment_distance(const Segment& s, const Segment& t);

/// Travel distance along the ray (unit dir) to the segment, if hit.
/// Rays parallel to the segment never hit, even when collinear.
std::optional<double> ray_segment_hit(const Vec2& origin, const Vec2& dir, const Segment& s);

/// First travel distance at which a disc of the given radius, moving from
/// origin along unit dir, comes within `radius` of the segment. Returns 0
/// when the origin already violates the radius.
std::optional<double> swept_disc_hit(const Vec2& origin, const Vec2& dir, double radius,
                                     const Segment& s);

/// Parameters t in [0,1] where p0 + t*(p1-p0) crosses the circle, sorted.
std::vector<double> segment_circle_hits(const Vec2& p0, const Vec2& p1, const Vec2& center,
                                        double radius);

struct CellIndex {
    int i = 0;
    int j = 0;
    auto operator<=>(const CellIndex&) const = default;
};

/// Cells of the given size entered by the segment, in travel order,
/// starting with the cell containing p0. Corner crossings step one axis
/// at a time (x first), so the result is always edge-connected.
std::vector<CellIndex> cells_entered(const Vec2& p0, const Vec2& p1, double cell_size);

inline CellIndex cell_of(const Vec2& p, double cell_size) {
    return {static_cast<int>(std::floor(p.x / cell_size)),
            static_cast<int>(std::floor(p.y / cell_size))};
}

inline Vec2 cell_center(const CellIndex& c, double cell_size) {
    return {(c.i + 0.5) * cell_size, (c.j + 0.5) * cell_size};
}

}  // namespace pnav
