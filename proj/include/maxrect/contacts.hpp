#pragma once

// Determining sets of contacts and their realizations: the axis-aligned (in
// frame C_θ) rectangle of largest area meeting a set of side- and
// corner-contacts, and its area as a function of θ.

#include <optional>
#include <string>
#include <vector>

#include "maxrect/geom.hpp"
#include "maxrect/numeric.hpp"
#include "maxrect/polygon.hpp"

namespace maxrect {

enum class Side { Top, Bottom, Left, Right };
enum class Corner { BottomLeft, BottomRight, TopRight, TopLeft };

const char* side_name(Side s);
const char* corner_name(Corner c);

/// A side-contact (reflex vertex in the interior of a side) or a
/// corner-contact (a corner on an edge or at a vertex).
struct Contact {
    enum class Kind { Side, Corner };
    Kind kind = Kind::Side;
    Side side = Side::Top;
    Corner corner = Corner::BottomLeft;
    int vertex = -1;
    int edge = -1;

    static Contact side_contact(int v, Side s);
    static Contact corner_on_edge(Corner c, int e);
    static Contact corner_at_vertex(Corner c, int v);

    bool on_edge() const { return kind == Kind::Corner && edge >= 0; }
    std::string to_string() const;
    friend bool operator==(const Contact&, const Contact&) = default;
};

enum class DetType { A, B1, B2, B3, C1, C2, C3, D1, D2, E1, E2, E3, F1, F2 };

const char* type_name(DetType t);
/// Letter of the type family ('A'..'F').
char type_family(DetType t);

struct DetSet {
    DetType type = DetType::A;
    std::vector<Contact> contacts;

    std::string to_string() const;
};

/// Shape check of a contact list against its type's template; throws
/// std::invalid_argument with a reason when malformed.
void check_template(const DetSet& z);

/// Realization without the containment test: the largest rectangle in C_θ
/// meeting every contact, with corners kept on their edge segments and side
/// contacts inside their sides. nullopt when the contacts cannot all be met.
/// Throws std::invalid_argument when the contacts leave more than one degree
/// of freedom (not a determining set).
std::optional<RectSpec> realize_geometric(const PolygonShape& p, const DetSet& z, double theta);

/// Γ_θ(Z): the geometric realization, additionally required to lie in P.
std::optional<RectSpec> realize(const PolygonShape& p, const DetSet& z, double theta);

/// Area of the geometric realization (0 when unrealizable).
double area_at(const PolygonShape& p, const DetSet& z, double theta);

/// Angles and lengths of the closed-form area functions of types B1–B3.
struct AngleParams {
    double alpha = 0.0, beta = 0.0, gamma = 0.0;
    double uv = 0.0, up = 0.0, qv = 0.0, uq = 0.0, uw = 0.0, vw = 0.0, uc = 0.0;
};

/// Extracts the parameters of a B1/B2/B3 set at θ from its realization
/// (nullopt for other types or when the formula's configuration does not
/// apply, e.g. B2 with w above u).
std::optional<AngleParams> angle_params(const PolygonShape& p, const DetSet& z, double theta);

/// Closed-form area of a B1/B2/B3 set at θ; nullopt when not applicable.
std::optional<double> area_formula(const PolygonShape& p, const DetSet& z, double theta);

struct FeasibleInterval {
    double lo = 0.0;
    double hi = 0.0;
    std::string reason;

    bool empty() const { return hi < lo; }
};

/// Maximal interval within [lo_bound, hi_bound] around theta_event on which
/// Γ_θ(Z) is feasible (realizable and contained in P), located by stepping
/// and bisection. Empty when Z is infeasible at theta_event.
FeasibleInterval feasible_interval(const PolygonShape& p, const DetSet& z, double theta_event, double lo_bound,
                                   double hi_bound);

/// Local maxima of θ ↦ area_at(Z, θ) on J plus both endpoints, refined to
/// 1e-12 rad, sorted by θ.
std::vector<Maximum> maximize_area(const PolygonShape& p, const DetSet& z, const FeasibleInterval& j,
                                   int samples = 64);

/// Contacts of a rectangle contained in P, in the rectangle's own frame:
/// reflex vertices inside a side (within tol of it) and corners on edges or
/// vertices. tol < 0 uses p.eps() scaled by 100.
std::vector<Contact> contacts_of(const PolygonShape& p, const RectSpec& r, double tol = -1.0);

/// Type from contact counts: top-corner ccs, bottom-corner ccs and whether a
/// bottom side contact exists (types B–E need a top side contact; with no
/// side contact the set is A or F).
DetType classify_contacts(const std::vector<Contact>& contacts);

/// The contacts of r as a typed set; when r has side contacts but none on top,
/// the frame is turned by multiples of π/2 until one is (the returned angle).
DetSet identify(const PolygonShape& p, const RectSpec& r, double* frame_theta = nullptr);

/// Breaking-configuration templates owned by a canonical type: the type the
/// set turns into when one more contact is acquired.
std::vector<DetType> enumerate_bcs(DetType t);

}  // namespace maxrect
