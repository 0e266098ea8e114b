#pragma once

// Per-type searches for local maximum rectangles and the top-level optimizer
// that merges them into the largest inscribed rectangles of P.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "maxrect/contacts.hpp"
#include "maxrect/polygon.hpp"
#include "maxrect/ray_vis.hpp"

namespace maxrect {

struct Candidate {
    enum class Origin { Maximal, Breaking, Endpoint };
    RectSpec rect;
    DetSet det_set;
    Origin origin = Origin::Maximal;
};
using Candidates = std::vector<Candidate>;

const char* origin_name(Candidate::Origin o);

/// Work counters per type family ('A'..'F').
struct FamilyStats {
    std::size_t events = 0;      ///< events processed (staircase events, seeds, pairs)
    std::size_t tested = 0;      ///< candidates evaluated
    std::size_t accepted = 0;    ///< candidates contained in P
    std::size_t optimal = 0;     ///< reported optima attributed to the family
};

struct SolveStats {
    std::array<FamilyStats, 6> family{};
    FamilyStats& operator[](char f) { return family[static_cast<std::size_t>(f - 'A')]; }
    const FamilyStats& operator[](char f) const { return family[static_cast<std::size_t>(f - 'A')]; }
    void merge(const SolveStats& o);
};

struct SolveResult {
    double best_area = 0.0;
    std::vector<RectSpec> rects;     ///< all optimal rectangles, deduplicated
    std::vector<DetSet> det_sets;    ///< determining set of each reported rectangle
    SolveStats stats;
};

struct SolveOptions {
    std::string types = "ABCDEF";     ///< families to run
    bool convex_fast_path = true;     ///< route hole-free convex input to solve_convex
    int threads = 1;                  ///< worker threads for the per-vertex sweeps
    std::size_t max_optima = 64;      ///< cap on reported optima
    double optimum_rel_tol = 1e-9;    ///< areas within this relative gap count as optimal
    std::ostream* trace = nullptr;    ///< staircase event log, one line per event
};

/// Squares whose diagonal joins two convex vertices and that lie in P.
Candidates solve_type_a(const PolygonShape& p, SolveStats* stats = nullptr);

/// Rectangles with a reflex vertex u on the top side, maximized over θ in the
/// valid interval of u between consecutive staircase events of the two
/// staircases (lower-left and lower-right) of u. Each result is classified by
/// its contacts; the filters below keep one family group.
Candidates solve_reflex(const PolygonShape& p, const EventMap& em, const SolveOptions& opt = {},
                        SolveStats* stats = nullptr);
Candidates solve_type_b(const PolygonShape& p, const EventMap& em);
Candidates solve_type_cd(const PolygonShape& p, const EventMap& em);
Candidates solve_type_e(const PolygonShape& p, const EventMap& em);

/// Corner-only configurations: top-left corner on an edge with the rightward
/// and downward feet (plus an optional bottom-right contact), discovered on an
/// orientation grid and followed across interval ends. Sets whose sampled
/// area is below `floor_ratio` times the best known area are not refined.
Candidates solve_type_f(const PolygonShape& p, SolveStats* stats = nullptr, double known_best = 0.0,
                        double floor_ratio = 0.8);

/// Convex hole-free polygons: exact per-orientation search (the area over the
/// bottom and top heights is log-concave) maximized over θ, plus type A.
/// Throws std::invalid_argument for non-convex input.
SolveResult solve_convex(const PolygonShape& p);

/// Largest rectangles of P. Throws std::invalid_argument for invalid input.
SolveResult solve(const PolygonShape& p, const SolveOptions& opt = {});

/// Keeps contained candidates within the optimum tolerance, deduplicated by
/// corner distance < 1e-6·diameter, at most max_optima.
SolveResult merge_candidates(const PolygonShape& p, const Candidates& all, double rel_tol, std::size_t max_optima);

}  // namespace maxrect
