#pragma once

#include <map>
#include <utility>
#include <vector>

#include "maxrect/geom.hpp"
#include "maxrect/polygon.hpp"

namespace maxrect {

/// Result of shooting a ray inside P: `foot` is where the ray first leaves
/// closed P, on edge `edge` or at vertex `vertex`. A ray pointing outward
/// from a boundary origin has its foot at the origin.
struct RayFoot {
    Point2 origin;
    Point2 direction;
    Point2 foot;
    double t = 0.0;  ///< distance from origin to foot
    int edge = -1;
    int vertex = -1;

    bool hit_vertex() const { return vertex >= 0; }
};

/// Shoot from `origin` (in closed P) along unit `dir`. Throws
/// std::invalid_argument when the origin lies outside P.
RayFoot shoot(const PolygonShape& p, Point2 origin, Point2 dir);

/// Like shoot, but the origin is the polygon vertex `v` (no containment test).
RayFoot shoot_from_vertex(const PolygonShape& p, int v, Point2 dir);

/// True when direction `dir` at vertex `v` points into P's interior or along
/// one of the incident edges (the closed interior wedge).
bool direction_enters(const PolygonShape& p, int v, Point2 dir);

/// Region of points seeing vertex `source` within P, as a star-shaped ring in
/// counterclockwise angular order starting at the source.
struct VisRegion {
    int source = -1;
    std::vector<Point2> boundary;
    /// edge_of[i] is the polygon edge containing boundary[i]→boundary[i+1],
    /// or -1 for a window (a chord through P's interior).
    std::vector<int> edge_of;

    bool contains(Point2 q, double tol) const;
};

VisRegion visibility_region(const PolygonShape& p, int v);

/// Visibility between two points: the closed segment lies in P.
bool sees(const PolygonShape& p, Point2 a, Point2 b);

/// One element of C(p, q): the frame orientation at which the corner
/// x = (p_x, q_y) of the ordered reflex pair (p upper-left, q lower-right)
/// sits on a boundary element of V({p,q}) inside the disk with diameter pq.
struct CircleEntry {
    double theta = 0.0;
    Point2 point;
    int edge = -1;    ///< polygon edge hit, or -1
    bool window = false;
};

/// One element of L(p, e): the orientation at which the downward ray from the
/// leftward foot η̄(p) (or the leftward ray from the downward foot δ̄(p))
/// passes vertex `vertex`, the foot lying on edge e.
struct FootEntry {
    enum class Ray { DeltaOfEta, EtaOfDelta };
    double theta = 0.0;
    int vertex = -1;
    Ray ray = Ray::DeltaOfEta;
    Point2 foot;
};

/// C(p, q) for an ordered reflex pair: the vertices of ∂V({p,q}) inside the
/// closed disk with diameter pq (sorted by angle about the disk center), and
/// the orientations at which the corner crosses that boundary.
struct CircleList {
    std::vector<Point2> boundary;
    std::vector<CircleEntry> crossings;
};

struct EventMap {
    std::vector<VisRegion> visibility;  ///< indexed by vertex id
    std::map<std::pair<int, int>, CircleList> circle;  ///< C(p,q), ordered pairs
    std::map<std::pair<int, int>, std::vector<FootEntry>> foot;      ///< L(p,e)

    std::size_t circle_entries() const;
    std::size_t foot_entries() const;
};

EventMap build_event_map(const PolygonShape& p);

/// Frame axes for orientation θ.
inline Point2 frame_x(double theta) { return {std::cos(theta), std::sin(theta)}; }
inline Point2 frame_y(double theta) { return {-std::sin(theta), std::cos(theta)}; }

}  // namespace maxrect
