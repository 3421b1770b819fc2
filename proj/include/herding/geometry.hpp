#pragma once
/**
 * @file geometry.hpp
 * @brief Planar vector and polar primitives used by the herding dynamics
 *        and the performance metrics.
 *
 * Angles live in the principal interval (-pi, pi]. Angular sectors are
 * half-open on the lower side: (lo, lo + width].
 */

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace herding {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Distance below which inverse-power laws and polar angles are singular.
inline constexpr double kSingularDistance = 1e-6;

struct Point2 {
    double x{0.0};
    double y{0.0};

    constexpr Point2() = default;
    constexpr Point2(double X, double Y) : x(X), y(Y) {}

    constexpr Point2 operator+(const Point2& r) const { return {x + r.x, y + r.y}; }
    constexpr Point2 operator-(const Point2& r) const { return {x - r.x, y - r.y}; }
    constexpr Point2 operator-() const { return {-x, -y}; }
    constexpr Point2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Point2 operator/(double s) const { return {x / s, y / s}; }
    friend constexpr Point2 operator*(double s, const Point2& p) { return {p.x * s, p.y * s}; }

    Point2& operator+=(const Point2& r) { x += r.x; y += r.y; return *this; }
    Point2& operator-=(const Point2& r) { x -= r.x; y -= r.y; return *this; }
    Point2& operator*=(double s) { x *= s; y *= s; return *this; }

    constexpr bool operator==(const Point2&) const = default;

    [[nodiscard]] double norm() const { return std::hypot(x, y); }
    [[nodiscard]] constexpr double squared_norm() const { return x * x + y * y; }
    [[nodiscard]] bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

[[nodiscard]] constexpr double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
[[nodiscard]] constexpr double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
[[nodiscard]] inline double distance(const Point2& a, const Point2& b) { return (a - b).norm(); }

/// Counter-clockwise rotation by +pi/2.
[[nodiscard]] constexpr Point2 perp(const Point2& p) { return {-p.y, p.x}; }

struct Polar {
    double radius{0.0};
    double angle{0.0};  ///< radians in (-pi, pi]
};

/// Value paired with a flag raised when a singular/degenerate input was hit.
template <typename T>
struct Flagged {
    T value{};
    bool flagged{false};
};

/// Maps any finite angle onto (-pi, pi].
[[nodiscard]] double wrap_angle(double a);

/// Maps any finite angle onto [0, 2pi).
[[nodiscard]] double wrap_positive(double a);

/// Polar coordinates of @p p about @p origin. Coincident points give
/// radius 0, angle 0 and a raised flag.
[[nodiscard]] Flagged<Polar> to_polar(const Point2& p, const Point2& origin = {});

[[nodiscard]] Point2 to_cartesian(const Polar& q, const Point2& origin = {});

/// Unit vector (cos a, sin a).
[[nodiscard]] inline Point2 unit_vector(double a) { return {std::cos(a), std::sin(a)}; }

/// Angular slack used to place points that sit on a sector edge.
inline constexpr double kSectorEdgeTolerance = 1e-12;

/// True iff @p angle lies in the half-open sector (lo, lo + width], edges
/// compared with kSectorEdgeTolerance.
/// A width of 2pi (or more) contains every angle; a width of 0 contains none.
[[nodiscard]] bool sector_contains(double angle, double lo, double width);

/// Convex hull in counter-clockwise order (Andrew's monotone chain), with
/// duplicates and collinear boundary points removed.
[[nodiscard]] std::vector<Point2> convex_hull(std::span<const Point2> points);

/// Shoelace area of a simple polygon given in order (sign-free).
[[nodiscard]] double polygon_area(std::span<const Point2> polygon);

/// Area of the convex hull of @p points. Flagged when the list is empty.
[[nodiscard]] Flagged<double> convex_hull_area(std::span<const Point2> points);

}  // namespace herding
