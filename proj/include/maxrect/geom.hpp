#pragma once

#include <array>
#include <cstddef>
#include <iterator>
#include <cmath>
#include <numbers>

namespace maxrect {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHalfPi = 0.5 * std::numbers::pi;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
    constexpr Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
    constexpr Point2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Point2 operator-() const { return {-x, -y}; }
    constexpr bool operator==(const Point2&) const = default;
};

constexpr Point2 operator*(double s, Point2 p) { return p * s; }
constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }
constexpr Point2 lerp(Point2 a, Point2 b, double t) { return a + (b - a) * t; }
constexpr Point2 midpoint(Point2 a, Point2 b) { return (a + b) * 0.5; }

/// Wraps an angle into [0, 2π).
double normalize_angle(double theta);

/// Coordinate axes rotated counterclockwise by `theta` around the origin.
/// The polygon stays put; points are re-expressed in the rotated axes.
class Frame {
public:
    Frame() = default;
    explicit Frame(double theta);

    double theta() const { return theta_; }
    Point2 x_axis() const { return {cos_, sin_}; }
    Point2 y_axis() const { return {-sin_, cos_}; }

    /// World point -> frame coordinates.
    Point2 to_frame(Point2 p) const { return {p.x * cos_ + p.y * sin_, -p.x * sin_ + p.y * cos_}; }
    /// Frame coordinates -> world point.
    Point2 to_world(Point2 q) const { return {q.x * cos_ - q.y * sin_, q.x * sin_ + q.y * cos_}; }

    /// The frame rotated by an additional quarter turn.
    Frame quarter_turn() const { return Frame(theta_ + kHalfPi); }

private:
    double theta_ = 0.0;
    double cos_ = 1.0;
    double sin_ = 0.0;
};

Point2 rotate_frame(Point2 p, const Frame& f);

struct Segment2 {
    Point2 a;
    Point2 b;

    double length() const { return dist(a, b); }
    bool degenerate() const { return a == b; }
};

/// An oriented rectangle: sides parallel to the axes of the frame `theta`.
struct RectSpec {
    Point2 center;
    double theta = 0.0;
    double width = 0.0;
    double height = 0.0;

    double area() const { return width * height; }
    bool valid() const;
};

/// Corners in counterclockwise order starting at the frame's bottom-left.
std::array<Point2, 4> rect_corners(const RectSpec& r);

/// Builds the rectangle [xl, xr] x [yb, yt] given in the coordinates of `frame`.
RectSpec rect_from_frame_box(const Frame& frame, double xl, double xr, double yb, double yt);

/// Same rectangle expressed with theta in [0, π/2) by swapping width and height.
RectSpec canonical_rect(const RectSpec& r);

/// Signed area of a closed ring (positive when counterclockwise).
template <class Range>
double signed_area(const Range& ring) {
    double s = 0.0;
    const auto n = std::size(ring);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = ring[i];
        const Point2& b = ring[(i + 1) % n];
        s += cross(a, b);
    }
    return 0.5 * s;
}

// --- robust predicates ---

/// Sign of det(q - p, r - p): +1 counterclockwise, -1 clockwise, 0 collinear.
/// Exact for all finite double inputs (filtered, then expansion arithmetic).
int orient(Point2 p, Point2 q, Point2 r);

/// Closed segment intersection test built on the exact orientation sign.
bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d);

/// True when the segments cross at a single point interior to both.
bool segments_cross_properly(Point2 a, Point2 b, Point2 c, Point2 d);

/// Intersection of lines (a,b) and (c,d); returns false when parallel.
bool line_intersection(Point2 a, Point2 b, Point2 c, Point2 d, Point2& out);

double point_segment_distance(Point2 p, Point2 a, Point2 b);

/// Parameters s in [0, 1] where a + s (b - a) meets the circle with diameter pq
/// (the locus of points x with angle p x q = 90°). At most two, ascending.
int thales_segment_params(Point2 p, Point2 q, Point2 a, Point2 b, double out[2]);

/// Angle of a direction vector in [0, 2π).
inline double direction_angle(Point2 v) { return normalize_angle(std::atan2(v.y, v.x)); }

}  // namespace maxrect
