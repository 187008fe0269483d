// Text formats (tmesh 1, tsub 1), JSON reports and SVG rendering.
#pragma once

#include "dimension.hpp"
#include "error.hpp"
#include "hierarchy.hpp"
#include "mesh.hpp"
#include "segments.hpp"
#include "smoothness.hpp"

#include "json.hpp"

#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace tmesh {

/// Parsed contents of a tmesh file.
struct MeshDocument {
    std::vector<Rect> cells;
    std::optional<std::pair<int, int>> default_smooth;
    std::map<Rational, int> smooth_h;
    std::map<Rational, int> smooth_v;
    std::optional<std::string> history;

    friend bool operator==(const MeshDocument&, const MeshDocument&) = default;

    bool has_smoothness() const { return default_smooth || !smooth_h.empty() || !smooth_v.empty(); }

    SmoothnessDistribution distribution() const
    {
        SmoothnessDistribution out;
        if (default_smooth) out.set_default(default_smooth->first, default_smooth->second);
        for (const auto& [s, r] : smooth_h) out.set_h(s, r);
        for (const auto& [t, r] : smooth_v) out.set_v(t, r);
        return out;
    }
};

namespace detail {

inline std::vector<std::string> tokenize(std::string_view line)
{
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

inline std::vector<std::string> split_lines(std::string_view text)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string line(text.substr(start, end - start));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out.push_back(std::move(line));
        start = end + 1;
    }
    return out;
}

inline Error syntax(int line, const std::string& what)
{
    return Error(ErrorKind::SyntaxError, "line " + std::to_string(line) + ": " + what);
}

inline Rational rational_at(const std::string& tok, int line)
{
    try {
        return parse_rational(tok);
    } catch (const BadRational&) {
        throw BadRational(tok, line);
    }
}

inline int integer_at(const std::string& tok, int line)
{
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(tok, &used);
    } catch (const std::exception&) {
        throw syntax(line, "expected an integer, got '" + tok + "'");
    }
    if (used != tok.size()) throw syntax(line, "expected an integer, got '" + tok + "'");
    return value;
}

inline Direction direction_at(const std::string& tok, int line)
{
    if (tok == "h") return Direction::Horizontal;
    if (tok == "v") return Direction::Vertical;
    throw syntax(line, "expected h or v, got '" + tok + "'");
}

inline void expect_arity(const std::vector<std::string>& toks, std::size_t n, int line)
{
    if (toks.size() != n)
        throw syntax(line, "'" + toks[0] + "' takes " + std::to_string(n - 1) + " arguments, got "
                               + std::to_string(toks.size() - 1));
}

/// Finds the header line; returns the index of the first line after it.
inline std::size_t read_header(const std::vector<std::string>& lines, const char* magic)
{
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto toks = tokenize(lines[i]);
        if (toks.empty()) continue;
        if (toks.size() != 2 || toks[0] != magic || toks[1] != "1")
            throw syntax(static_cast<int>(i + 1), std::string("expected header '") + magic + " 1'");
        return i + 1;
    }
    throw syntax(1, std::string("missing header '") + magic + " 1'");
}

} // namespace detail

/// Parses tmesh 1. Errors carry the 1-based line number.
inline MeshDocument parse_tmesh(std::string_view text)
{
    MeshDocument doc;
    const auto lines = detail::split_lines(text);
    for (std::size_t i = detail::read_header(lines, "tmesh"); i < lines.size(); ++i) {
        const int line = static_cast<int>(i + 1);
        auto toks = detail::tokenize(lines[i]);
        if (toks.empty()) continue;
        const auto& word = toks[0];
        if (word == "cell") {
            detail::expect_arity(toks, 5, line);
            Rect r{detail::rational_at(toks[1], line), detail::rational_at(toks[2], line),
                   detail::rational_at(toks[3], line), detail::rational_at(toks[4], line)};
            if (!(r.x0 < r.x1 && r.y0 < r.y1))
                throw Error(ErrorKind::DegenerateCell, "line " + std::to_string(line) + ": degenerate rectangle");
            doc.cells.push_back(r);
        } else if (word == "smooth") {
            detail::expect_arity(toks, 4, line);
            Direction d = detail::direction_at(toks[1], line);
            Rational node = detail::rational_at(toks[2], line);
            int r = detail::integer_at(toks[3], line);
            if (r < 0) throw detail::syntax(line, "smoothness must be nonnegative");
            (d == Direction::Horizontal ? doc.smooth_h : doc.smooth_v)[node] = r;
        } else if (word == "default-smooth") {
            detail::expect_arity(toks, 3, line);
            int r = detail::integer_at(toks[1], line), rp = detail::integer_at(toks[2], line);
            if (r < 0 || rp < 0) throw detail::syntax(line, "smoothness must be nonnegative");
            doc.default_smooth = std::pair{r, rp};
        } else if (word == "history") {
            detail::expect_arity(toks, 2, line);
            doc.history = toks[1];
        } else {
            throw Error(ErrorKind::UnknownDirective, "line " + std::to_string(line) + ": '" + word + "'");
        }
    }
    return doc;
}

inline std::string print_tmesh(const MeshDocument& doc)
{
    std::string out = "tmesh 1\n";
    for (const auto& r : doc.cells)
        out += "cell " + to_string(r.x0) + " " + to_string(r.y0) + " " + to_string(r.x1) + " " + to_string(r.y1) + "\n";
    if (doc.default_smooth)
        out += "default-smooth " + std::to_string(doc.default_smooth->first) + " "
               + std::to_string(doc.default_smooth->second) + "\n";
    for (const auto& [s, r] : doc.smooth_h) out += "smooth h " + to_string(s) + " " + std::to_string(r) + "\n";
    for (const auto& [t, r] : doc.smooth_v) out += "smooth v " + to_string(t) + " " + std::to_string(r) + "\n";
    if (doc.history) out += "history " + *doc.history + "\n";
    return out;
}

inline MeshDocument document_of(const TMesh& mesh)
{
    MeshDocument doc;
    doc.cells = mesh.rectangles();
    return doc;
}

/// One user-level command of a tsub file.
struct SubdivisionCommand {
    int cell = -1;
    Direction direction = Direction::Vertical;
    Rational coordinate;
    std::optional<std::pair<int, int>> weighted;

    friend bool operator==(const SubdivisionCommand&, const SubdivisionCommand&) = default;
};

struct SubdivisionScript {
    Rect initial;
    std::vector<SubdivisionCommand> commands;

    friend bool operator==(const SubdivisionScript&, const SubdivisionScript&) = default;
};

inline SubdivisionScript parse_tsub(std::string_view text)
{
    SubdivisionScript script;
    bool have_init = false;
    const auto lines = detail::split_lines(text);
    for (std::size_t i = detail::read_header(lines, "tsub"); i < lines.size(); ++i) {
        const int line = static_cast<int>(i + 1);
        auto toks = detail::tokenize(lines[i]);
        if (toks.empty()) continue;
        const auto& word = toks[0];
        if (word == "init") {
            detail::expect_arity(toks, 5, line);
            if (have_init) throw detail::syntax(line, "duplicate init");
            script.initial = {detail::rational_at(toks[1], line), detail::rational_at(toks[2], line),
                              detail::rational_at(toks[3], line), detail::rational_at(toks[4], line)};
            if (!(script.initial.x0 < script.initial.x1 && script.initial.y0 < script.initial.y1))
                throw Error(ErrorKind::DegenerateCell, "line " + std::to_string(line) + ": degenerate rectangle");
            have_init = true;
        } else if (word == "split" || word == "wsplit") {
            if (!have_init) throw detail::syntax(line, "split before init");
            detail::expect_arity(toks, word == "split" ? 4 : 6, line);
            SubdivisionCommand c;
            c.cell = detail::integer_at(toks[1], line);
            c.direction = detail::direction_at(toks[2], line);
            c.coordinate = detail::rational_at(toks[3], line);
            if (word == "wsplit") c.weighted = std::pair{detail::integer_at(toks[4], line), detail::integer_at(toks[5], line)};
            script.commands.push_back(c);
        } else {
            throw Error(ErrorKind::UnknownDirective, "line " + std::to_string(line) + ": '" + word + "'");
        }
    }
    if (!have_init) throw detail::syntax(static_cast<int>(lines.size()), "missing init");
    return script;
}

inline std::string print_tsub(const SubdivisionScript& script)
{
    const auto& r = script.initial;
    std::string out = "tsub 1\ninit " + to_string(r.x0) + " " + to_string(r.y0) + " " + to_string(r.x1) + " "
                      + to_string(r.y1) + "\n";
    for (const auto& c : script.commands) {
        out += c.weighted ? "wsplit " : "split ";
        out += std::to_string(c.cell) + " " + to_string(c.direction) + " " + to_string(c.coordinate);
        if (c.weighted) out += " " + std::to_string(c.weighted->first) + " " + std::to_string(c.weighted->second);
        out += "\n";
    }
    return out;
}

/// User commands of a history; extension hops are dropped since replay regenerates them.
inline SubdivisionScript script_of(const SubdivisionHistory& history)
{
    SubdivisionScript script;
    script.initial = history.initial;
    for (const auto& e : history.events) {
        if (!e.extension) script.commands.push_back({e.cell, e.direction, e.coordinate, e.weighted});
    }
    return script;
}

/// Runs the commands. Weighted commands need `dist` and `deg`.
inline HierarchicalMesh run_script(const SubdivisionScript& script, const SmoothnessDistribution* dist = nullptr,
                                   const Degree* deg = nullptr)
{
    HierarchicalMesh hm(script.initial);
    for (const auto& c : script.commands) {
        if (c.weighted) {
            if (!dist || !deg) throw std::invalid_argument("weighted split needs a degree and smoothness");
            weighted_split(hm, c.cell, c.direction, c.coordinate, *dist, *deg, c.weighted->first, c.weighted->second);
        } else {
            split_cell(hm, c.cell, c.direction, c.coordinate);
        }
    }
    return hm;
}

using Json = nlohmann::ordered_json;

inline Json stats_json(const FaceCounts& c)
{
    return Json{{"f2", c.f2},
                {"f1", c.f1},
                {"f1o", c.f1_interior},
                {"f1h", c.f1_horizontal},
                {"f1v", c.f1_vertical},
                {"f0", c.f0},
                {"f0o", c.f0_interior},
                {"f0plus", c.f0_crossing},
                {"f0T", c.f0_t},
                {"f0b", c.f0_boundary},
                {"corners", c.corners}};
}

inline Json identities_json(const IdentityReport& report)
{
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        checks.push_back(Json{{"name", c.name}, {"applicable", c.applicable}, {"holds", c.holds}});
    }
    return Json{{"rectangular_domain", report.rectangular_domain}, {"checks", checks}};
}

/// One entry per MIS: direction, span, lambda, omega, Gamma and blocking successors.
inline Json mis_json(const TMesh& mesh, const SegmentAnalysis& analysis, const SmoothnessDistribution& dist,
                     const Degree& deg, const Ordering& ordering)
{
    Json list = Json::array();
    const auto ranks = ordering.ranks(analysis.segments.size());
    for (int id : analysis.mis) {
        const auto& s = analysis.segment(id);
        auto w = gamma_lambda_weight(mesh, analysis, dist, deg, ranks, id);
        Json blocks = Json::array();
        for (const auto& [from, to] : analysis.blocking) {
            if (from == id) blocks.push_back(to);
        }
        list.push_back(Json{{"id", id},
                            {"direction", to_string(s.direction)},
                            {"coordinate", to_string(s.coordinate)},
                            {"span", Json::array({to_string(s.lo), to_string(s.hi)})},
                            {"rank", ranks[id]},
                            {"lambda", w.lambda},
                            {"omega", w.omega},
                            {"gamma", w.gamma},
                            {"blocks", blocks}});
    }
    return Json{{"ordering", ordering.sequence},
                {"ordering_source", ordering.source},
                {"cyclic", ordering.cyclic},
                {"mis", list}};
}

inline Json dimension_json(const DimensionReport& r)
{
    Json per = Json::array();
    for (const auto& c : r.per_mis) per.push_back(Json{{"id", c.id}, {"omega", c.omega}, {"contribution", c.contribution}});
    Json out{{"combinatorial", r.combinatorial},
             {"h_lower", r.h_lower},
             {"h_upper", r.h_upper},
             {"dim_lower", r.dim_lower},
             {"dim_upper", r.dim_upper},
             {"certificate", to_string(r.certificate.kind)},
             {"ordering", r.ordering.sequence},
             {"per_mis", per}};
    if (r.exact_dim) {
        out["dim"] = *r.exact_dim;
        out["h"] = *r.exact_h;
    }
    return out;
}

namespace detail {

inline std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

} // namespace detail

/// Deterministic SVG: cells, interior edges, MIS highlighted as paths,
/// vertices marked by kind.
inline std::string render_svg(const TMesh& mesh, const SegmentAnalysis* analysis = nullptr)
{
    const Rect box = mesh.bounding_box();
    const double w = to_double(box.x1 - box.x0), h = to_double(box.y1 - box.y0);
    const double scale = 480.0 / std::max(w, h), margin = 10.0;
    const double width = w * scale + 2 * margin, height = h * scale + 2 * margin;
    auto X = [&](const Rational& x) { return detail::fmt(margin + to_double(x - box.x0) * scale); };
    auto Y = [&](const Rational& y) { return detail::fmt(margin + to_double(box.y1 - y) * scale); };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + detail::fmt(width) + "\" height=\""
           + detail::fmt(height) + "\" viewBox=\"0 0 " + detail::fmt(width) + " " + detail::fmt(height) + "\">\n";
    out += "<g class=\"cells\" fill=\"#f4f4f4\" stroke=\"#000\" stroke-width=\"2\">\n";
    for (const auto& c : mesh.cells()) {
        const auto& r = c.rect;
        out += "<rect id=\"c" + std::to_string(c.id) + "\" x=\"" + X(r.x0) + "\" y=\"" + Y(r.y1) + "\" width=\""
               + detail::fmt(to_double(r.x1 - r.x0) * scale) + "\" height=\"" + detail::fmt(to_double(r.y1 - r.y0) * scale)
               + "\"/>\n";
    }
    out += "</g>\n<g class=\"interior-edges\" stroke=\"#555\" stroke-width=\"1\">\n";
    for (const auto& e : mesh.edges()) {
        if (!e.interior) continue;
        const auto& a = mesh.vertex(e.endpoints[0]).position;
        const auto& b = mesh.vertex(e.endpoints[1]).position;
        out += "<line x1=\"" + X(a.x) + "\" y1=\"" + Y(a.y) + "\" x2=\"" + X(b.x) + "\" y2=\"" + Y(b.y) + "\"/>\n";
    }
    out += "</g>\n";
    if (analysis) {
        out += "<g class=\"mis\" stroke=\"#c00\" stroke-width=\"4\" fill=\"none\">\n";
        for (int id : analysis->mis) {
            const auto& s = analysis->segment(id);
            Point a = detail::on_line(s.direction, s.coordinate, s.lo);
            Point b = detail::on_line(s.direction, s.coordinate, s.hi);
            out += "<path id=\"mis" + std::to_string(id) + "\" d=\"M " + X(a.x) + " " + Y(a.y) + " L " + X(b.x) + " "
                   + Y(b.y) + "\"/>\n";
        }
        out += "</g>\n";
    }
    out += "<g class=\"vertices\">\n";
    for (const auto& v : mesh.vertices()) {
        const char* color = v.kind == VertexKind::Crossing ? "#06c"
                            : v.kind == VertexKind::TVertex ? "#c60"
                            : v.kind == VertexKind::Corner  ? "#000"
                                                            : "#888";
        out += "<circle class=\"" + std::string(to_string(v.kind)) + "\" cx=\"" + X(v.position.x) + "\" cy=\""
               + Y(v.position.y) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

} // namespace tmesh
