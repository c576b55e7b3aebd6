#include "pnav/geometry.hpp"

#include <algorithm>
#include <limits>

namespace pnav {

namespace {
constexpr double kParallelEps = 1e-12;
}

double point_segment_distance(const Vec2& p, const Segment& s) {
    const Vec2 d = s.b - s.a;
    const double len2 = dot(d, d);
    if (len2 <= 0.0) return distance(p, s.a);
    double t = dot(p - s.a, d) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, s.a + d * t);
}

static bool segments_intersect(const Segment& s, const Segment& t) {
    const Vec2 r = s.b - s.a;
    const Vec2 q = t.b - t.a;
    const double denom = cross(r, q);
    const double num1 = cross(t.a - s.a, q);
    const double num2 = cross(t.a - s.a, r);
    if (std::abs(denom) < kParallelEps) return false;  // parallel; distance handled by endpoints
    const double u = num1 / denom;
    const double v = num2 / denom;
    return u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0;
}

double segment_segment_distance(const Segment& s, const Segment& t) {
    if (segments_intersect(s, t)) return 0.0;
    double d = point_segment_distance(s.a, t);
    d = std::min(d, point_segment_distance(s.b, t));
    d = std::min(d, point_segment_distance(t.a, s));
    d = std::min(d, point_segment_distance(t.b, s));
    return d;
}

std::optional<double> ray_segment_hit(const Vec2& origin, const Vec2& dir, const Segment& s) {
    const Vec2 q = s.b - s.a;
    const double denom = cross(dir, q);
    if (std::abs(denom) < kParallelEps) return std::nullopt;
    const Vec2 w = s.a - origin;
    const double t = cross(w, q) / denom;  // distance along ray
    const double u = cross(w, dir) / denom;  // position on segment
    if (t < 0.0 || u < 0.0 || u > 1.0) return std::nullopt;
    return t;
}

// Smallest root t >= 0 of |origin + t*dir - c| = r, if any.
static std::optional<double> ray_circle_entry(const Vec2& origin, const Vec2& dir,
                                              const Vec2& c, double r) {
    const Vec2 m = origin - c;
    const double b = dot(m, dir);
    const double q = dot(m, m) - r * r;
    const double disc = b * b - q;
    if (disc < 0.0) return std::nullopt;
    const double root = std::sqrt(disc);
    const double t0 = -b - root;
    const double t1 = -b + root;
    if (t0 >= 0.0) return t0;
    if (t1 >= 0.0) return 0.0;  // origin inside the circle
    return std::nullopt;
}

std::optional<double> swept_disc_hit(const Vec2& origin, const Vec2& dir, double radius,
                                     const Segment& s) {
    if (point_segment_distance(origin, s) <= radius) return 0.0;

    double best = std::numeric_limits<double>::infinity();
    if (auto t = ray_circle_entry(origin, dir, s.a, radius)) best = std::min(best, *t);
    if (auto t = ray_circle_entry(origin, dir, s.b, radius)) best = std::min(best, *t);

    const Vec2 d = s.b - s.a;
    const double len = norm(d);
    if (len > 0.0) {
        const Vec2 n{-d.y / len, d.x / len};
        for (const double side : {radius, -radius}) {
            const Segment offset{s.a + n * side, s.b + n * side};
            if (auto t = ray_segment_hit(origin, dir, offset)) best = std::min(best, *t);
        }
    }
    if (best == std::numeric_limits<double>::infinity()) return std::nullopt;
    return best;
}

std::vector<double> segment_circle_hits(const Vec2& p0, const Vec2& p1, const Vec2& center,
                                        double radius) {
    const Vec2 d = p1 - p0;
    const Vec2 m = p0 - center;
    const double a = dot(d, d);
    std::vector<double> out;
    if (a <= 0.0) return out;
    const double b = 2.0 * dot(m, d);
    const double c = dot(m, m) - radius * radius;
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return out;
    const double root = std::sqrt(disc);
    for (const double t : {(-b - root) / (2.0 * a), (-b + root) / (2.0 * a)}) {
        if (t >= 0.0 && t <= 1.0) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<CellIndex> cells_entered(const Vec2& p0, const Vec2& p1, double cell_size) {
    std::vector<CellIndex> out;
    CellIndex cur = cell_of(p0, cell_size);
    const CellIndex dst = cell_of(p1, cell_size);
    out.push_back(cur);
    if (cur == dst) return out;

    const Vec2 d = p1 - p0;
    const int step_i = d.x > 0.0 ? 1 : (d.x < 0.0 ? -1 : 0);
    const int step_j = d.y > 0.0 ? 1 : (d.y < 0.0 ? -1 : 0);

    // Parametric distance to the next vertical/horizontal cell border.
    auto boundary = [cell_size](int cell, int step) {
        return (step > 0 ? cell + 1 : cell) * cell_size;
    };
    const double inv_dx = step_i != 0 ? 1.0 / d.x : 0.0;
    const double inv_dy = step_j != 0 ? 1.0 / d.y : 0.0;
    double t_max_x = step_i != 0 ? (boundary(cur.i, step_i) - p0.x) * inv_dx
                                 : std::numeric_limits<double>::infinity();
    double t_max_y = step_j != 0 ? (boundary(cur.j, step_j) - p0.y) * inv_dy
                                 : std::numeric_limits<double>::infinity();
    const double t_delta_x = step_i != 0 ? cell_size * std::abs(inv_dx)
                                         : std::numeric_limits<double>::infinity();
    const double t_delta_y = step_j != 0 ? cell_size * std::abs(inv_dy)
                                         : std::numeric_limits<double>::infinity();

    // Hard cap keeps degenerate inputs from spinning forever.
    const int max_steps = 4 * (std::abs(dst.i - cur.i) + std::abs(dst.j - cur.j)) + 8;
    for (int n = 0; n < max_steps && !(cur == dst); ++n) {
        if (t_max_x <= t_max_y) {
            cur.i += step_i;
            t_max_x += t_delta_x;
        } else {
            cur.j += step_j;
            t_max_y += t_delta_y;
        }
        out.push_back(cur);
    }
    return out;
}

}  // namespace pnav
