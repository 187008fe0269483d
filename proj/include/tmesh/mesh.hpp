// Planar T-meshes built from a list of axis-aligned rational rectangles.
//
// Edges and vertices are always derived: every cell corner is a vertex, each
// cell side is cut at every vertex lying on it, and fragments shared by two
// cells become interior edges. Ids are canonical: vertices by (y, x), cells by
// (y0, x0), edges by (lower endpoint id, horizontal before vertical).
#pragma once

#include "error.hpp"
#include "rational.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace tmesh {

enum class Direction { Horizontal, Vertical };

inline Direction transversal(Direction d)
{
    return d == Direction::Horizontal ? Direction::Vertical : Direction::Horizontal;
}

inline const char* to_string(Direction d) { return d == Direction::Horizontal ? "h" : "v"; }

struct Point {
    Rational x;
    Rational y;

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
    /// (y, x) lexicographic, the canonical vertex order.
    friend bool operator<(const Point& a, const Point& b)
    {
        if (a.y != b.y) return a.y < b.y;
        return a.x < b.x;
    }
};

struct Rect {
    Rational x0, y0, x1, y1;

    Rational lo(Direction along) const { return along == Direction::Horizontal ? x0 : y0; }
    Rational hi(Direction along) const { return along == Direction::Horizontal ? x1 : y1; }

    bool contains_interior(const Point& p) const { return x0 < p.x && p.x < x1 && y0 < p.y && p.y < y1; }
    bool contains_closed(const Point& p) const { return x0 <= p.x && p.x <= x1 && y0 <= p.y && p.y <= y1; }

    friend bool operator==(const Rect& a, const Rect& b)
    {
        return a.x0 == b.x0 && a.y0 == b.y0 && a.x1 == b.x1 && a.y1 == b.y1;
    }
    /// Canonical cell order (y0, x0), completed by (y1, x1) for a strict order.
    friend bool operator<(const Rect& a, const Rect& b)
    {
        return std::tie(a.y0, a.x0, a.y1, a.x1) < std::tie(b.y0, b.x0, b.y1, b.x1);
    }
};

inline bool interiors_overlap(const Rect& a, const Rect& b)
{
    return a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1;
}

enum class VertexKind { Crossing, TVertex, Boundary, Corner };

inline const char* to_string(VertexKind k)
{
    switch (k) {
    case VertexKind::Crossing: return "crossing";
    case VertexKind::TVertex: return "t-vertex";
    case VertexKind::Boundary: return "boundary";
    case VertexKind::Corner: return "corner";
    }
    return "?";
}

struct Vertex {
    int id = -1;
    Point position;
    VertexKind kind = VertexKind::Boundary;
    std::vector<int> horizontal_edges;
    std::vector<int> vertical_edges;

    bool interior() const { return kind == VertexKind::Crossing || kind == VertexKind::TVertex; }
};

struct Edge {
    int id = -1;
    /// Stored left to right (horizontal) or bottom to top (vertical).
    std::array<int, 2> endpoints{-1, -1};
    Direction direction = Direction::Horizontal;
    bool interior = false;
    std::vector<int> cells;
    /// Supporting line: y for horizontal edges, x for vertical ones.
    Rational coordinate;
    /// Extent along the line.
    Rational lo, hi;
};

struct Cell {
    int id = -1;
    Rect rect;
    /// Counter-clockwise, starting with the bottom side.
    std::vector<int> boundary;
};

struct FaceCounts {
    int f2 = 0;
    int f1 = 0;
    int f1_interior = 0;
    int f1_horizontal = 0;
    int f1_vertical = 0;
    int f0 = 0;
    int f0_interior = 0;
    int f0_crossing = 0;
    int f0_t = 0;
    int f0_boundary = 0;
    int corners = 0;

    friend bool operator==(const FaceCounts&, const FaceCounts&) = default;
};

class TMesh {
public:
    /// Validates and classifies. Throws Error on any violation.
    static TMesh build(std::vector<Rect> rectangles);

    std::span<const Cell> cells() const { return cells_; }
    std::span<const Edge> edges() const { return edges_; }
    std::span<const Vertex> vertices() const { return vertices_; }
    const Cell& cell(int id) const { return cells_.at(id); }
    const Edge& edge(int id) const { return edges_.at(id); }
    const Vertex& vertex(int id) const { return vertices_.at(id); }

    /// First coordinates of vertical edges.
    const std::set<Rational>& horizontal_nodes() const { return nodes_h_; }
    /// Second coordinates of horizontal edges.
    const std::set<Rational>& vertical_nodes() const { return nodes_v_; }

    /// Boundary edges of the domain, counter-clockwise from the lowest-leftmost vertex.
    const std::vector<int>& boundary_cycle() const { return boundary_cycle_; }

    std::optional<int> find_vertex(const Point& p) const
    {
        auto it = vertex_index_.find(p);
        if (it == vertex_index_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<int> find_cell(const Rect& r) const
    {
        auto it = std::lower_bound(cells_.begin(), cells_.end(), r,
                                   [](const Cell& c, const Rect& key) { return c.rect < key; });
        if (it == cells_.end() || !(it->rect == r)) return std::nullopt;
        return it->id;
    }

    /// Cell whose interior contains p, if any.
    std::optional<int> cell_containing(const Point& p) const
    {
        for (const auto& c : cells_) {
            if (c.rect.contains_interior(p)) return c.id;
        }
        return std::nullopt;
    }

    Rect bounding_box() const { return bbox_; }

    std::vector<Rect> rectangles() const
    {
        std::vector<Rect> out;
        out.reserve(cells_.size());
        for (const auto& c : cells_) out.push_back(c.rect);
        return out;
    }

    /// The other endpoint-adjacent edge of `edge` through `vertex` along the same line, if any.
    std::optional<int> collinear_neighbor(int edge_id, int vertex_id) const
    {
        const Edge& e = edges_.at(edge_id);
        const Vertex& v = vertices_.at(vertex_id);
        const auto& candidates = e.direction == Direction::Horizontal ? v.horizontal_edges : v.vertical_edges;
        for (int other : candidates) {
            if (other != edge_id) return other;
        }
        return std::nullopt;
    }

private:
    std::vector<Cell> cells_;
    std::vector<Edge> edges_;
    std::vector<Vertex> vertices_;
    std::map<Point, int> vertex_index_;
    std::set<Rational> nodes_h_;
    std::set<Rational> nodes_v_;
    std::vector<int> boundary_cycle_;
    Rect bbox_;
};

inline TMesh build_mesh(std::vector<Rect> rectangles) { return TMesh::build(std::move(rectangles)); }

namespace detail {

struct FragmentKey {
    Direction direction;
    Rational coordinate;
    Rational lo, hi;

    friend bool operator<(const FragmentKey& a, const FragmentKey& b)
    {
        return std::tie(a.direction, a.coordinate, a.lo, a.hi) < std::tie(b.direction, b.coordinate, b.lo, b.hi);
    }
};

inline Point on_line(Direction d, const Rational& coordinate, const Rational& along)
{
    return d == Direction::Horizontal ? Point{along, coordinate} : Point{coordinate, along};
}

inline std::string describe(const Rect& r)
{
    return "[" + to_string(r.x0) + "," + to_string(r.x1) + "]x[" + to_string(r.y0) + "," + to_string(r.y1) + "]";
}

} // namespace detail

inline TMesh TMesh::build(std::vector<Rect> rectangles)
{
    using detail::FragmentKey;
    if (rectangles.empty()) throw Error(ErrorKind::EmptyMesh, "no cells");
    for (const auto& r : rectangles) {
        if (!(r.x0 < r.x1) || !(r.y0 < r.y1))
            throw Error(ErrorKind::DegenerateCell, "degenerate rectangle " + detail::describe(r));
    }
    std::sort(rectangles.begin(), rectangles.end());
    for (std::size_t i = 0; i < rectangles.size(); ++i) {
        for (std::size_t j = i + 1; j < rectangles.size(); ++j) {
            if (interiors_overlap(rectangles[i], rectangles[j]))
                throw Error(ErrorKind::OverlappingCells,
                            detail::describe(rectangles[i]) + " overlaps " + detail::describe(rectangles[j]));
        }
    }

    TMesh mesh;
    mesh.bbox_ = rectangles.front();
    for (std::size_t i = 0; i < rectangles.size(); ++i) {
        Cell c;
        c.id = static_cast<int>(i);
        c.rect = rectangles[i];
        mesh.cells_.push_back(std::move(c));
        const auto& r = rectangles[i];
        mesh.bbox_.x0 = std::min(mesh.bbox_.x0, r.x0);
        mesh.bbox_.y0 = std::min(mesh.bbox_.y0, r.y0);
        mesh.bbox_.x1 = std::max(mesh.bbox_.x1, r.x1);
        mesh.bbox_.y1 = std::max(mesh.bbox_.y1, r.y1);
    }

    // Vertices are exactly the cell corners.
    std::set<Point> corners;
    for (const auto& r : rectangles) {
        corners.insert({r.x0, r.y0});
        corners.insert({r.x1, r.y0});
        corners.insert({r.x0, r.y1});
        corners.insert({r.x1, r.y1});
    }
    std::map<Rational, std::set<Rational>> by_row; // y -> xs
    std::map<Rational, std::set<Rational>> by_col; // x -> ys
    for (const auto& p : corners) {
        Vertex v;
        v.id = static_cast<int>(mesh.vertices_.size());
        v.position = p;
        mesh.vertex_index_.emplace(p, v.id);
        mesh.vertices_.push_back(std::move(v));
        by_row[p.y].insert(p.x);
        by_col[p.x].insert(p.y);
    }

    // Fragment every side at the vertices lying on it.
    struct Fragment {
        std::vector<int> cells;
    };
    std::map<FragmentKey, Fragment> fragments;
    auto cut_side = [&](int cell, Direction d, const Rational& coordinate, const Rational& lo, const Rational& hi) {
        const auto& line = d == Direction::Horizontal ? by_row.at(coordinate) : by_col.at(coordinate);
        auto it = line.lower_bound(lo);
        Rational prev = *it;
        for (++it; it != line.end() && *it <= hi; ++it) {
            auto& frag = fragments[FragmentKey{d, coordinate, prev, *it}];
            frag.cells.push_back(cell);
            if (frag.cells.size() > 2)
                throw Error(ErrorKind::OverlappingCells, "edge shared by more than two cells");
            prev = *it;
        }
    };
    for (const auto& c : mesh.cells_) {
        const auto& r = c.rect;
        cut_side(c.id, Direction::Horizontal, r.y0, r.x0, r.x1);
        cut_side(c.id, Direction::Horizontal, r.y1, r.x0, r.x1);
        cut_side(c.id, Direction::Vertical, r.x0, r.y0, r.y1);
        cut_side(c.id, Direction::Vertical, r.x1, r.y0, r.y1);
    }

    struct Pending {
        int lower_vertex;
        FragmentKey key;
        std::vector<int> cells;
    };
    std::vector<Pending> pending;
    pending.reserve(fragments.size());
    for (auto& [key, frag] : fragments) {
        int lower = mesh.vertex_index_.at(detail::on_line(key.direction, key.coordinate, key.lo));
        pending.push_back({lower, key, std::move(frag.cells)});
    }
    std::sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
        return std::tie(a.lower_vertex, a.key.direction) < std::tie(b.lower_vertex, b.key.direction);
    });

    for (auto& p : pending) {
        Edge e;
        e.id = static_cast<int>(mesh.edges_.size());
        e.direction = p.key.direction;
        e.coordinate = p.key.coordinate;
        e.lo = p.key.lo;
        e.hi = p.key.hi;
        e.endpoints = {p.lower_vertex,
                       mesh.vertex_index_.at(detail::on_line(e.direction, e.coordinate, e.hi))};
        e.cells = std::move(p.cells);
        std::sort(e.cells.begin(), e.cells.end());
        e.interior = e.cells.size() == 2;
        if (!e.interior) {
            // A one-sided fragment must face the outside of the domain.
            Rational mid = (e.lo + e.hi) / 2;
            Point m = detail::on_line(e.direction, e.coordinate, mid);
            for (const auto& c : mesh.cells_) {
                if (c.id != e.cells.front() && c.rect.contains_closed(m))
                    throw Error(ErrorKind::DanglingGeometry,
                                "edge fragment of cell " + std::to_string(e.cells.front()) + " is unmatched");
            }
        }
        for (int v : e.endpoints) {
            auto& list = e.direction == Direction::Horizontal ? mesh.vertices_[v].horizontal_edges
                                                              : mesh.vertices_[v].vertical_edges;
            list.push_back(e.id);
        }
        (e.direction == Direction::Vertical ? mesh.nodes_h_ : mesh.nodes_v_).insert(e.coordinate);
        mesh.edges_.push_back(std::move(e));
    }

    // Vertex classification.
    for (auto& v : mesh.vertices_) {
        int boundary_h = 0, boundary_v = 0;
        for (int e : v.horizontal_edges) boundary_h += mesh.edges_[e].interior ? 0 : 1;
        for (int e : v.vertical_edges) boundary_v += mesh.edges_[e].interior ? 0 : 1;
        const int degree = static_cast<int>(v.horizontal_edges.size() + v.vertical_edges.size());
        if (boundary_h + boundary_v == 0) {
            if (degree == 4)
                v.kind = VertexKind::Crossing;
            else if (degree == 3)
                v.kind = VertexKind::TVertex;
            else
                throw Error(ErrorKind::DanglingGeometry, "interior vertex with " + std::to_string(degree) + " edges");
        } else {
            if (boundary_h + boundary_v != 2)
                throw Error(ErrorKind::DomainNotSimplyConnected,
                            "boundary vertex (" + to_string(v.position.x) + "," + to_string(v.position.y)
                                + ") has " + std::to_string(boundary_h + boundary_v) + " boundary edges");
            v.kind = (boundary_h == 1 && boundary_v == 1) ? VertexKind::Corner : VertexKind::Boundary;
        }
    }

    // Counter-clockwise cell boundaries: bottom, right, top, left.
    for (auto& c : mesh.cells_) {
        const auto& r = c.rect;
        auto side = [&](Direction d, const Rational& coordinate, const Rational& lo, const Rational& hi, bool reverse) {
            const auto& line = d == Direction::Horizontal ? by_row.at(coordinate) : by_col.at(coordinate);
            std::vector<int> ids;
            auto it = line.lower_bound(lo);
            int prev = mesh.vertex_index_.at(detail::on_line(d, coordinate, *it));
            for (++it; it != line.end() && *it <= hi; ++it) {
                int next = mesh.vertex_index_.at(detail::on_line(d, coordinate, *it));
                const auto& from = d == Direction::Horizontal ? mesh.vertices_[prev].horizontal_edges
                                                              : mesh.vertices_[prev].vertical_edges;
                for (int e : from) {
                    if (mesh.edges_[e].endpoints[1] == next) ids.push_back(e);
                }
                prev = next;
            }
            if (reverse) std::reverse(ids.begin(), ids.end());
            c.boundary.insert(c.boundary.end(), ids.begin(), ids.end());
        };
        side(Direction::Horizontal, r.y0, r.x0, r.x1, false);
        side(Direction::Vertical, r.x1, r.y0, r.y1, false);
        side(Direction::Horizontal, r.y1, r.x0, r.x1, true);
        side(Direction::Vertical, r.x0, r.y0, r.y1, true);
    }

    // Dual adjacency must be connected.
    {
        std::vector<std::vector<int>> adjacency(mesh.cells_.size());
        for (const auto& e : mesh.edges_) {
            if (e.interior) {
                adjacency[e.cells[0]].push_back(e.cells[1]);
                adjacency[e.cells[1]].push_back(e.cells[0]);
            }
        }
        std::vector<char> seen(mesh.cells_.size(), 0);
        std::queue<int> queue;
        queue.push(0);
        seen[0] = 1;
        std::size_t reached = 1;
        while (!queue.empty()) {
            int c = queue.front();
            queue.pop();
            for (int n : adjacency[c]) {
                if (!seen[n]) {
                    seen[n] = 1;
                    ++reached;
                    queue.push(n);
                }
            }
        }
        if (reached != mesh.cells_.size())
            throw Error(ErrorKind::DisconnectedDomain,
                        std::to_string(mesh.cells_.size() - reached) + " cells unreachable through interior edges");
    }

    // Boundary cycle, starting at the lowest-leftmost vertex heading right.
    {
        std::size_t boundary_edges = 0;
        for (const auto& e : mesh.edges_) boundary_edges += e.interior ? 0 : 1;
        int start = -1;
        for (const auto& v : mesh.vertices_) {
            if (!v.interior()) {
                start = v.id;
                break;
            }
        }
        int current = start;
        int previous_edge = -1;
        do {
            const auto& v = mesh.vertices_[current];
            int next_edge = -1;
            // From the start vertex prefer the horizontal edge: it runs right with the domain above it.
            for (const auto* list : {&v.horizontal_edges, &v.vertical_edges}) {
                for (int e : *list) {
                    if (!mesh.edges_[e].interior && e != previous_edge && next_edge < 0) next_edge = e;
                }
            }
            mesh.boundary_cycle_.push_back(next_edge);
            const auto& e = mesh.edges_[next_edge];
            current = e.endpoints[0] == current ? e.endpoints[1] : e.endpoints[0];
            previous_edge = next_edge;
        } while (current != start && mesh.boundary_cycle_.size() <= boundary_edges);
        if (mesh.boundary_cycle_.size() != boundary_edges)
            throw Error(ErrorKind::DomainNotSimplyConnected, "boundary has more than one component");
    }

    int interior_edges = 0, interior_vertices = 0;
    for (const auto& e : mesh.edges_) interior_edges += e.interior ? 1 : 0;
    for (const auto& v : mesh.vertices_) interior_vertices += v.interior() ? 1 : 0;
    if (static_cast<int>(mesh.cells_.size()) - interior_edges + interior_vertices != 1)
        throw Error(ErrorKind::DomainNotSimplyConnected, "Euler characteristic f2 - f1o + f0o != 1");
    return mesh;
}

inline FaceCounts stats(const TMesh& mesh)
{
    FaceCounts out;
    out.f2 = static_cast<int>(mesh.cells().size());
    out.f1 = static_cast<int>(mesh.edges().size());
    for (const auto& e : mesh.edges()) {
        if (!e.interior) continue;
        ++out.f1_interior;
        (e.direction == Direction::Horizontal ? out.f1_horizontal : out.f1_vertical)++;
    }
    out.f0 = static_cast<int>(mesh.vertices().size());
    for (const auto& v : mesh.vertices()) {
        switch (v.kind) {
        case VertexKind::Crossing: ++out.f0_crossing; break;
        case VertexKind::TVertex: ++out.f0_t; break;
        case VertexKind::Corner: ++out.corners; [[fallthrough]];
        case VertexKind::Boundary: ++out.f0_boundary; break;
        }
    }
    out.f0_interior = out.f0_crossing + out.f0_t;
    return out;
}

struct IdentityCheck {
    std::string name;
    bool applicable = true;
    bool holds = false;
    /// Both sides doubled so half-integers stay exact.
    long twice_lhs = 0;
    long twice_rhs = 0;
};

struct IdentityReport {
    bool rectangular_domain = false;
    std::vector<IdentityCheck> checks;

    bool all_hold() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return !c.applicable || c.holds; });
    }
};

/// Face-count identities of rectangular domains plus the Euler identity.
inline IdentityReport check_counting_identities(const TMesh& mesh)
{
    const FaceCounts f = stats(mesh);
    IdentityReport report;
    report.rectangular_domain = f.corners == 4;
    auto add = [&](std::string name, bool applicable, long twice_lhs, long twice_rhs) {
        report.checks.push_back({std::move(name), applicable, twice_lhs == twice_rhs, twice_lhs, twice_rhs});
    };
    const bool rect = report.rectangular_domain;
    add("f2 = f0+ + f0T/2 + f0b/2 - 1", rect, 2L * f.f2, 2L * f.f0_crossing + f.f0_t + f.f0_boundary - 2);
    add("f1o = 2 f0+ + 3 f0T/2 + f0b/2 - 2", rect, 2L * f.f1_interior,
        4L * f.f0_crossing + 3L * f.f0_t + f.f0_boundary - 4);
    add("f0o = f0+ + f0T", rect, 2L * f.f0_interior, 2L * (f.f0_crossing + f.f0_t));
    add("f2 - f1o + f0o = 1", true, 2L * (f.f2 - f.f1_interior + f.f0_interior), 2);
    return report;
}

} // namespace tmesh
