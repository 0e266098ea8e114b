#pragma once

// Command-line front end: polygon file I/O, result records, SVG output.

#include <iosfwd>
#include <optional>
#include <string>

#include "maxrect/polygon.hpp"
#include "maxrect/solvers.hpp"

namespace maxrect::cli {

struct RunConfig {
    std::string input;
    std::string types = "ABCDEF";
    bool report_all = false;
    bool oracle_check = false;
    int oracle_m = 720;
    double oracle_h = 0.005;
    std::string svg;
    std::string trace;
    int threads = 1;
    double rel_tol = 1e-9;
    bool fix_orientation = false;
};

enum ExitCode : int { Ok = 0, IoError = 1, InvalidInput = 2, OracleFailure = 3 };

/// Parses `{"outer": [[x,y],...], "holes": [[[x,y],...],...]}`. Throws
/// std::runtime_error on malformed documents.
PolygonShape parse_polygon(const std::string& text);
PolygonShape read_polygon(const std::string& path);
std::string polygon_to_json(const PolygonShape& p);

/// Reverses rings so the outer ring is counterclockwise and holes clockwise.
PolygonShape oriented(const PolygonShape& p);

/// One JSON object: area, best rectangle (theta in [0, π/2)), type tag,
/// per-type stats and, when requested, every optimum.
std::string result_json(const SolveResult& r, bool report_all);

/// Polygon with holes as one even-odd path plus one stroked path per
/// rectangle; viewBox is the bounding box padded by 5%.
std::string svg_document(const PolygonShape& p, const SolveResult& r, bool report_all);
void emit_svg(const PolygonShape& p, const SolveResult& r, bool report_all, const std::string& path);

/// Full run; the record goes to `out`, diagnostics to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace maxrect::cli
