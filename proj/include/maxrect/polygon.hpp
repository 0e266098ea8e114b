#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "maxrect/geom.hpp"
#include "maxrect/kernels.hpp"

namespace maxrect {

/// A polygon vertex addressed both by ring position and by its global id
/// (ids run over the outer ring first, then each hole in order).
struct VertexRef {
    int ring = 0;
    int index = 0;
    int id = 0;
    Point2 p;
    bool is_reflex = false;
};

/// Edge `id` runs from vertex `id` to the next vertex of the same ring.
struct EdgeRef {
    int id = 0;
    int from = 0;
    int to = 0;
    int ring = 0;
};

/// Outer boundary (counterclockwise) plus holes (each clockwise).
/// Immutable once constructed; derived lookup tables are built eagerly.
class PolygonShape {
public:
    PolygonShape() = default;
    explicit PolygonShape(std::vector<Point2> outer, std::vector<std::vector<Point2>> holes = {});

    const std::vector<Point2>& outer() const { return rings_.front(); }
    std::vector<std::vector<Point2>> holes() const;
    const std::vector<std::vector<Point2>>& rings() const { return rings_; }
    bool has_holes() const { return rings_.size() > 1; }

    int vertex_count() const { return static_cast<int>(points_.size()); }
    int edge_count() const { return vertex_count(); }
    Point2 vertex(int id) const { return points_[id]; }
    const std::vector<Point2>& points() const { return points_; }
    int next(int id) const { return next_[id]; }
    int prev(int id) const { return prev_[id]; }
    int ring_of(int id) const { return ring_of_[id]; }
    VertexRef vertex_ref(int id) const;

    EdgeRef edge_ref(int id) const { return {id, id, next_[id], ring_of_[id]}; }
    Segment2 edge(int id) const { return {points_[id], points_[next_[id]]}; }
    const kernels::EdgeSoA& edge_soa() const { return soa_; }

    /// Interior angle (with respect to the polygon's interior) exceeds π.
    bool is_reflex(int id) const { return reflex_[id]; }
    int reflex_count() const;
    bool is_convex() const { return !has_holes() && reflex_count() == 0; }

    double diameter() const { return diameter_; }
    /// Scale-aware comparison tolerance: 1e-9 times the diameter.
    double eps() const { return 1e-9 * diameter_; }

    /// Closed containment: boundary points within `tol` count as inside.
    bool contains_point(Point2 q, double tol = -1.0) const;
    /// Strict interior test by crossing parity (no tolerance band).
    bool interior_parity(Point2 q) const;

    double area() const;

private:
    std::vector<std::vector<Point2>> rings_;
    std::vector<Point2> points_;
    std::vector<int> next_, prev_, ring_of_;
    std::vector<bool> reflex_;
    kernels::EdgeSoA soa_;
    double diameter_ = 0.0;
};

struct ValidationIssue {
    enum class Kind {
        TooFewVertices,
        NonFinite,
        NonSimpleRing,
        OuterOrientation,
        HoleOrientation,
        HoleOutsideOuter,
        HolesIntersect,
        GeneralPosition,
    };
    Kind kind;
    bool warning = false;  ///< general-position findings are warnings, the rest errors
    std::string message;
    std::vector<int> vertices;  ///< global vertex ids involved, when applicable
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const;  ///< no errors (warnings allowed)
    std::size_t error_count() const;
    std::size_t warning_count() const;
    std::string to_string() const;
};

class InvalidPolygon : public std::invalid_argument {
public:
    explicit InvalidPolygon(ValidationReport report);
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

ValidationReport validate(const PolygonShape& p);

/// Throws InvalidPolygon when validation reports errors.
void require_valid(const PolygonShape& p);

/// Vertices whose interior angle exceeds π, on the outer ring and holes.
std::vector<VertexRef> reflex_vertices(const PolygonShape& p);

/// Closed containment of a rectangle: all four sides inside P and no hole
/// meets the interior. `tol` is applied outward; pass a negative value for
/// the polygon's default tolerance.
bool contains_rect(const PolygonShape& p, const RectSpec& r, double tol = -1.0);

/// Side test only: every side of `r` (shrunk by tol) avoids the boundary and
/// a corner lies in P.
bool sides_contained(const PolygonShape& p, const RectSpec& r, double tol = -1.0);

/// Emptiness against holes: no hole vertex strictly inside, no hole edge
/// crossing a side, no corner inside a hole.
bool hole_free(const PolygonShape& p, const RectSpec& r, double tol = -1.0);

/// Closed segment containment in P, with `tol` shrink at both ends.
bool segment_in_polygon(const PolygonShape& p, Point2 a, Point2 b, double tol = -1.0);

}  // namespace maxrect
