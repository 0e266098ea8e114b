#include "maxrect/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "maxrect/oracle.hpp"

namespace maxrect::cli {

using nlohmann::json;

namespace {

std::vector<Point2> parse_ring(const json& j, const char* what) {
    if (!j.is_array()) throw std::runtime_error(std::string(what) + ": expected an array of [x, y] pairs");
    std::vector<Point2> ring;
    ring.reserve(j.size());
    for (const json& q : j) {
        if (!q.is_array() || q.size() != 2 || !q[0].is_number() || !q[1].is_number())
            throw std::runtime_error(std::string(what) + ": each vertex must be [x, y]");
        ring.push_back({q[0].get<double>(), q[1].get<double>()});
    }
    return ring;
}

json ring_json(const std::vector<Point2>& ring) {
    json a = json::array();
    for (const Point2& q : ring) a.push_back({q.x, q.y});
    return a;
}

json rect_json(const RectSpec& r0) {
    const RectSpec r = canonical_rect(r0);
    json c = json::array();
    for (const Point2& q : rect_corners(r)) c.push_back({q.x, q.y});
    return {{"area", r.area()}, {"center", {r.center.x, r.center.y}}, {"theta", r.theta},
            {"width", r.width},  {"height", r.height},                {"corners", c}};
}

std::string path_of(const std::vector<Point2>& ring) {
    std::ostringstream s;
    s << std::setprecision(12);
    for (std::size_t i = 0; i < ring.size(); ++i) s << (i ? " L " : "M ") << ring[i].x << ' ' << ring[i].y;
    s << " Z";
    return s.str();
}

std::string types_of(std::string spec) {
    if (spec == "all") return "ABCDEF";
    std::string t;
    for (char c : spec) {
        if (c == ',' || c == ' ') continue;
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        if (c < 'A' || c > 'F') throw std::invalid_argument("--types: unknown type '" + std::string(1, c) + "'");
        if (t.find(c) == std::string::npos) t += c;
    }
    if (t.empty()) throw std::invalid_argument("--types: empty type filter");
    return t;
}

}  // namespace

PolygonShape parse_polygon(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("polygon file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("outer")) throw std::runtime_error("polygon file: missing \"outer\"");
    std::vector<std::vector<Point2>> holes;
    if (j.contains("holes")) {
        if (!j["holes"].is_array()) throw std::runtime_error("holes: expected an array of rings");
        for (const json& h : j["holes"]) holes.push_back(parse_ring(h, "hole"));
    }
    return PolygonShape(parse_ring(j["outer"], "outer"), std::move(holes));
}

PolygonShape read_polygon(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot read " + path);
    std::stringstream s;
    s << in.rdbuf();
    return parse_polygon(s.str());
}

std::string polygon_to_json(const PolygonShape& p) {
    json h = json::array();
    for (const auto& ring : p.holes()) h.push_back(ring_json(ring));
    return json{{"outer", ring_json(p.outer())}, {"holes", h}}.dump();
}

PolygonShape oriented(const PolygonShape& p) {
    auto outer = p.outer();
    if (signed_area(outer) < 0) std::reverse(outer.begin(), outer.end());
    auto holes = p.holes();
    for (auto& h : holes)
        if (signed_area(h) > 0) std::reverse(h.begin(), h.end());
    return PolygonShape(std::move(outer), std::move(holes));
}

std::string result_json(const SolveResult& r, bool report_all) {
    json out;
    out["area"] = r.best_area;
    out["optima"] = r.rects.size();
    if (!r.rects.empty()) {
        out["rect"] = rect_json(r.rects[0]);
        out["type"] = type_name(r.det_sets[0].type);
        out["contacts"] = r.det_sets[0].to_string();
    }
    if (report_all) {
        json all = json::array();
        for (std::size_t i = 0; i < r.rects.size(); ++i) {
            json e = rect_json(r.rects[i]);
            e["type"] = type_name(r.det_sets[i].type);
            e["contacts"] = r.det_sets[i].to_string();
            all.push_back(e);
        }
        out["rects"] = all;
    }
    json st = json::object();
    for (char f = 'A'; f <= 'F'; ++f) {
        const FamilyStats& s = r.stats[f];
        st[std::string(1, f)] = {{"events", s.events}, {"tested", s.tested}, {"accepted", s.accepted}, {"optimal", s.optimal}};
    }
    out["stats"] = st;
    return out.dump();
}

std::string svg_document(const PolygonShape& p, const SolveResult& r, bool report_all) {
    double x0 = p.vertex(0).x, x1 = x0, y0 = p.vertex(0).y, y1 = y0;
    for (const Point2& q : p.points()) {
        x0 = std::min(x0, q.x), x1 = std::max(x1, q.x);
        y0 = std::min(y0, q.y), y1 = std::max(y1, q.y);
    }
    const double px = 0.05 * (x1 - x0), py = 0.05 * (y1 - y0);
    const double stroke = 0.005 * std::max(x1 - x0, y1 - y0);
    std::ostringstream s;
    s << std::setprecision(12);
    // Flip y so the picture has the usual orientation.
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << x0 - px << ' ' << -(y1 + py) << ' '
      << (x1 - x0) + 2 * px << ' ' << (y1 - y0) + 2 * py << "\">\n<g transform=\"scale(1,-1)\">\n";
    std::string d;
    for (const auto& ring : p.rings()) d += (d.empty() ? "" : " ") + path_of(ring);
    s << "<path d=\"" << d << "\" fill=\"#dde6f0\" fill-rule=\"evenodd\" stroke=\"#334\" stroke-width=\"" << stroke
      << "\"/>\n";
    const std::size_t shown = report_all ? r.rects.size() : std::min<std::size_t>(1, r.rects.size());
    for (std::size_t i = 0; i < shown; ++i) {
        const auto c = rect_corners(r.rects[i]);
        s << "<path d=\"" << path_of({c.begin(), c.end()}) << "\" fill=\"none\" stroke=\"#c22\" stroke-width=\""
          << stroke << "\"/>\n";
    }
    s << "</g>\n</svg>\n";
    return s.str();
}

void emit_svg(const PolygonShape& p, const SolveResult& r, bool report_all, const std::string& path) {
    if (r.rects.empty()) throw std::invalid_argument("emit_svg: empty result");
    std::ofstream f(path);
    if (!f) throw std::ios_base::failure("cannot write " + path);
    f << svg_document(p, r, report_all);
    if (!f) throw std::ios_base::failure("cannot write " + path);
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    PolygonShape p;
    try {
        p = read_polygon(cfg.input);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return IoError;
    }
    if (cfg.fix_orientation) p = oriented(p);
    const ValidationReport rep = validate(p);
    if (!rep.ok()) {
        err << rep.to_string() << '\n';
        return InvalidInput;
    }
    SolveOptions opt;
    try {
        opt.types = types_of(cfg.types);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return InvalidInput;
    }
    opt.threads = cfg.threads;
    opt.optimum_rel_tol = cfg.rel_tol;
    std::ofstream trace;
    if (!cfg.trace.empty()) {
        trace.open(cfg.trace);
        if (!trace) {
            err << "error: cannot write " << cfg.trace << '\n';
            return IoError;
        }
        opt.trace = &trace;
    }
    const SolveResult r = solve(p, opt);
    out << result_json(r, cfg.report_all) << '\n';
    if (!cfg.svg.empty() && !r.rects.empty()) {
        try {
            emit_svg(p, r, cfg.report_all, cfg.svg);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return IoError;
        }
    }
    if (cfg.oracle_check) {
        if (cfg.oracle_m < 1 || !(cfg.oracle_h > 0)) {
            err << "error: --oracle-check needs M >= 1 and H > 0\n";
            return InvalidInput;
        }
        const OracleResult o = sweep_oracle(p, cfg.oracle_m, cfg.oracle_h);
        err << "oracle: bound " << o.area_lower_bound << " (M=" << cfg.oracle_m << ", h=" << cfg.oracle_h
            << "), solver " << r.best_area << '\n';
        if (r.best_area < o.area_lower_bound) {
            err << "oracle check FAILED\n";
            return OracleFailure;
        }
    }
    return Ok;
}

}  // namespace maxrect::cli
