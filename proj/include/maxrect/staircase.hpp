#pragma once

// Staircases of a reflex vertex u: the lower-left boundary of the set of
// points q such that the axis-aligned (in frame C_θ) box spanned by u and q
// lies in P. The chain runs from the leftward foot η̄(u) down to the
// downward foot δ̄(u); its extremal points are the feet plus the tips.

#include <cstdint>
#include <iosfwd>
#include <queue>
#include <string>
#include <vector>

#include "maxrect/geom.hpp"
#include "maxrect/numeric.hpp"
#include "maxrect/polygon.hpp"
#include "maxrect/ray_vis.hpp"

namespace maxrect {

struct Extremal {
    enum class Kind { EtaFoot, DeltaFoot, Tip };
    Kind kind = Kind::Tip;
    int vertex = -1;  ///< polygon vertex for tips (and feet landing on a vertex)
    int edge = -1;    ///< supporting edge of a foot
    Point2 p;         ///< world coordinates
    Point2 f;         ///< frame coordinates relative to u
};

struct Step {
    enum class Kind { A, B };
    int upper = 0;  ///< index into StaircaseState::extremal
    int lower = 0;
    Kind kind = Kind::A;
    int oblique_edge = -1;           ///< first edge of the oblique run
    std::vector<int> oblique_edges;  ///< all edges of the run, top to bottom (convex bends)
    Point2 hinge;   ///< kind A: (a_x, b_y), frame coordinates relative to u
    Point2 top;     ///< kind B: where the drop from a meets the edge (frame)
    Point2 bottom;  ///< kind B: where the leftward ray from b meets the edge (frame)
};

class StaircaseState {
public:
    int owner = -1;
    double theta = 0.0;
    Point2 origin;  ///< u in world coordinates
    RayFoot eta, delta;
    std::vector<Extremal> extremal;  ///< ordered from η̄(u) to δ̄(u)
    std::vector<Step> steps;         ///< steps[i] joins extremal[i] and extremal[i+1]
    /// The chain as a polyline in frame coordinates relative to u, from η̄ to δ̄.
    std::vector<Point2> chain;
    /// Polygon edge under each chain piece chain[i]→chain[i+1], or -1.
    std::vector<int> chain_edge;

    Frame frame() const { return Frame(theta); }
    std::vector<int> tips() const;
    std::size_t tip_count() const { return extremal.size() >= 2 ? extremal.size() - 2 : 0; }

    /// Same tip sequence, foot edges, step kinds and oblique edges.
    bool same_structure(const StaircaseState& o) const;
    std::string signature() const;

    /// Smallest frame x reachable at frame height y (relative to u), i.e. the
    /// left extent of the free region; y in [δ̄_y, 0].
    double left_extent(double y) const;
    /// Lowest frame y reachable at frame x, x in [η̄_x, 0].
    double lower_extent(double x) const;
    /// Index of the step whose y-range contains frame height y; ties at an
    /// extremal go to the upper step.
    int step_at_height(double y) const;
};

/// Orientations θ at which the closed lower-left quadrant at u is locally
/// inside P (the staircase is defined), as [begin, begin + length).
struct AngleInterval {
    double begin = 0.0;
    double length = 0.0;
    bool contains(double theta, double slack = 0.0) const;
    double end() const { return begin + length; }
};

/// Where the lower-left quadrant at reflex u is locally interior.
AngleInterval quadrant_interval(const PolygonShape& p, int u);
/// The valid interval I: the horizontal line through u is locally tangent,
/// with P below (u can be a top-side contact).
AngleInterval top_contact_interval(const PolygonShape& p, int u);

/// Fixed-orientation construction. Throws std::invalid_argument when u is not
/// reflex or θ is outside quadrant_interval(p, u).
StaircaseState build_staircase(const PolygonShape& p, int u, double theta);

struct EventRecord {
    enum class Kind { StepMerge, StepSplit, HingeOblique, TipVanish, Ray, Shift, DoubleAlign, TAlign };
    double theta = 0.0;
    Kind kind = Kind::StepMerge;
    std::vector<int> vertices;  ///< involved vertices (tips, alignment partners)
    std::vector<int> edges;     ///< involved edges

    std::string to_string() const;
};

const char* kind_name(EventRecord::Kind k);

/// All orientations in [0, 2π) at which two vertices are aligned along a frame
/// axis, sorted. `vertical` distinguishes y-axis alignment.
struct Alignment {
    double theta = 0.0;
    int p = -1, q = -1;
    bool vertical = false;
};
std::vector<Alignment> alignment_table(const PolygonShape& p);

/// Event-driven maintenance of S_θ(u) while θ sweeps [begin, end].
/// Candidate events come from vertex alignments, the circle lists C(a,b) of
/// the current steps, the foot lists L(u,e) of the current feet, and the
/// closed-form hinge events of the first and last steps. After each relevant
/// group of events the structure is recomputed just past the event angle.
class StaircaseEngine {
public:
    StaircaseEngine(const PolygonShape& p, const EventMap& em, const std::vector<Alignment>& table,
                    int u, double begin, double end);

    const StaircaseState& state() const { return state_; }
    double begin() const { return begin_; }
    double end() const { return end_; }

    /// Processes the next group of events that changes the structure;
    /// false when the sweep is exhausted.
    bool step(std::vector<EventRecord>* records);
    /// Angle of the next candidate event (> end() when none).
    double peek() const;
    /// Processes every structural event with θ <= theta.
    void advance_to(double theta, std::vector<EventRecord>* records);

    std::size_t processed_events() const { return processed_; }
    std::size_t candidate_events() const { return candidates_; }

private:
    struct Candidate {
        double theta;
        int cls;  ///< ordering class at equal θ
        int kind;
        int a, b;
        std::uint64_t stamp;
        bool operator>(const Candidate& o) const {
            if (theta != o.theta) return theta > o.theta;
            if (cls != o.cls) return cls > o.cls;
            return a > o.a;
        }
    };

    Candidate pop_next();
    bool step_until(double limit, std::vector<EventRecord>* records);
    double unwrap(double theta) const;
    bool relevant(const Candidate& c) const;
    void schedule_after_rebuild(const StaircaseState& old);
    void push(double theta, int cls, int kind, int a, int b);
    void rebuild(double theta);
    void classify(const StaircaseState& old, double theta, std::vector<EventRecord>* records) const;

    const PolygonShape& p_;
    const EventMap& em_;
    const std::vector<Alignment>& table_;
    int u_;
    double begin_, end_;
    StaircaseState state_;
    std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> heap_;
    std::vector<Alignment> aligned_;  ///< alignments in range, unwrapped, sorted
    std::size_t next_align_ = 0;
    std::vector<char> marked_;        ///< vertices whose alignments matter now
    std::uint64_t first_stamp_ = 0, last_stamp_ = 0;
    double now_ = 0.0;
    std::size_t processed_ = 0, candidates_ = 0;
};

/// Orientations where the hinge of a step with the given ends lies on the
/// line of `edge`. An end is a fixed vertex (vertex >= 0) or a foot of u on a
/// supporting edge (for the upper end: the leftward foot; for the lower end:
/// the downward foot).
std::vector<double> hinge_line_events(const PolygonShape& p, int u, int upper_vertex, int upper_foot_edge,
                                      int lower_vertex, int lower_foot_edge, int edge);

/// f(t) for a tip t of `s`: the upper extremal (higher in the frame of `s`) of
/// the step of the perpendicular staircase S_{θ+π/2}(u) spanning t's height.
/// At an exact tie with an extremal the upper step is used. Throws
/// std::invalid_argument when t is not a tip of `s`.
Extremal double_lookup_f(const StaircaseState& s, const StaircaseState& perpendicular, int t);
/// g(t): the edge containing the leftward foot η̄(t) of tip t (-1 when the
/// foot is a vertex). Throws std::invalid_argument when t is not a tip of `s`.
int double_lookup_g(const PolygonShape& p, const StaircaseState& s, int t);

/// Writes one line per event: `theta kind payload`.
void write_trace(std::ostream& os, int owner, const std::vector<EventRecord>& records);

}  // namespace maxrect
