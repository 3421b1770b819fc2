#include "herding/geometry.hpp"

#include <algorithm>

namespace herding {

double wrap_angle(double a)
{
    double r = std::remainder(a, kTwoPi);  // [-pi, pi]
    if (r <= -kPi) {
        r += kTwoPi;
    }
    return r;
}

double wrap_positive(double a)
{
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    // fmod of a tiny negative value can round up to exactly 2pi
    if (r >= kTwoPi) {
        r = 0.0;
    }
    return r;
}

Flagged<Polar> to_polar(const Point2& p, const Point2& origin)
{
    const Point2 d = p - origin;
    if (d.x == 0.0 && d.y == 0.0) {
        return {{0.0, 0.0}, true};
    }
    // atan2 returns [-pi, pi]; -pi only arises for (-x, -0.0)
    return {{d.norm(), wrap_angle(std::atan2(d.y, d.x))}, false};
}

Point2 to_cartesian(const Polar& q, const Point2& origin)
{
    return origin + q.radius * unit_vector(q.angle);
}

bool sector_contains(double angle, double lo, double width)
{
    if (width >= kTwoPi) {
        return true;
    }
    if (width <= 0.0) {
        return false;
    }
    // offset in (0, 2pi]; angles within rounding of an edge go to the sector
    // whose upper edge it is
    double offset = wrap_positive(angle - lo);
    if (offset <= kSectorEdgeTolerance || offset > kTwoPi - kSectorEdgeTolerance) {
        offset = kTwoPi;
    }
    return offset <= width + kSectorEdgeTolerance;
}

std::vector<Point2> convex_hull(std::span<const Point2> points)
{
    std::vector<Point2> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) {
        return pts;
    }

    std::vector<Point2> hull(2 * pts.size());
    std::size_t k = 0;
    const auto turn = [](const Point2& o, const Point2& a, const Point2& b) {
        return cross(a - o, b - o);
    };
    for (const auto& p : pts) {
        while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= 0.0) {
            --k;
        }
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
        while (k >= lower && turn(hull[k - 2], hull[k - 1], *it) <= 0.0) {
            --k;
        }
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    return hull;
}

double polygon_area(std::span<const Point2> polygon)
{
    if (polygon.size() < 3) {
        return 0.0;
    }
    double twice = 0.0;
    for (std::size_t i = 0, n = polygon.size(); i < n; ++i) {
        twice += cross(polygon[i], polygon[(i + 1) % n]);
    }
    return 0.5 * std::abs(twice);
}

Flagged<double> convex_hull_area(std::span<const Point2> points)
{
    if (points.empty()) {
        return {0.0, true};
    }
    const auto hull = convex_hull(points);
    return {polygon_area(hull), false};
}

}  // namespace herding
