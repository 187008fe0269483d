// Hierarchical T-meshes: single-cell splits, subdivision histories, the
// appearance ordering of maximal interior segments and the (k,k')-weighted rule.
#pragma once

#include "error.hpp"
#include "mesh.hpp"
#include "segments.hpp"
#include "smoothness.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tmesh {

/// One atomic split. `direction` is the direction of the new edge:
/// vertical means the cell is cut along s = coordinate.
struct SplitEvent {
    int cell = -1;
    Rect rect;
    Direction direction = Direction::Vertical;
    Rational coordinate;
    /// Set on the user split of a weighted command.
    std::optional<std::pair<int, int>> weighted;
    /// Extension hops added by the weighted rule.
    bool extension = false;
    /// Index of the command this event belongs to.
    int group = 0;

    /// The new edge as a piece of line: [lo, hi] along the line at `coordinate`.
    Rational lo() const { return direction == Direction::Vertical ? rect.y0 : rect.x0; }
    Rational hi() const { return direction == Direction::Vertical ? rect.y1 : rect.x1; }

    friend bool operator==(const SplitEvent& a, const SplitEvent& b)
    {
        return a.cell == b.cell && a.rect == b.rect && a.direction == b.direction && a.coordinate == b.coordinate
               && a.weighted == b.weighted && a.extension == b.extension && a.group == b.group;
    }
};

struct SubdivisionHistory {
    Rect initial;
    std::vector<SplitEvent> events;

    int command_count() const { return events.empty() ? 0 : events.back().group + 1; }

    friend bool operator==(const SubdivisionHistory& a, const SubdivisionHistory& b)
    {
        return a.initial == b.initial && a.events == b.events;
    }
};

/// A mesh together with the history that produced it.
struct HierarchicalMesh {
    TMesh mesh;
    SubdivisionHistory history;

    explicit HierarchicalMesh(const Rect& initial) : mesh(build_mesh({initial})) { history.initial = initial; }
};

enum class SplitClass { NewMIS, ExtendedMIS, BoundaryReaching };

inline const char* to_string(SplitClass c)
{
    switch (c) {
    case SplitClass::NewMIS: return "new-MIS";
    case SplitClass::ExtendedMIS: return "extended-MIS";
    case SplitClass::BoundaryReaching: return "boundary-reaching";
    }
    return "?";
}

struct SplitOutcome {
    /// Maximal segment containing the new edge, in the updated mesh.
    int segment = -1;
    int edge = -1;
    SplitClass classification = SplitClass::BoundaryReaching;
    /// Atomic events appended by this call (1 for a plain split).
    int events = 0;
};

namespace detail {

/// The edge created by cutting `rect` along the line of `event`.
inline int find_split_edge(const TMesh& mesh, const SplitEvent& event)
{
    auto start = mesh.find_vertex(on_line(event.direction, event.coordinate, event.lo()));
    if (!start) throw std::logic_error("split vertex missing");
    const auto& v = mesh.vertex(*start);
    for (int e : event.direction == Direction::Vertical ? v.vertical_edges : v.horizontal_edges) {
        if (mesh.edge(e).endpoints[0] == *start) return e;
    }
    throw std::logic_error("split edge missing");
}

inline SplitClass classify(const SegmentAnalysis& analysis, int segment)
{
    const auto& s = analysis.segment(segment);
    if (!s.interior) return SplitClass::BoundaryReaching;
    return s.edges.size() > 1 ? SplitClass::ExtendedMIS : SplitClass::NewMIS;
}

/// Cuts one cell and appends the event. No weighted bookkeeping.
inline int apply_split(HierarchicalMesh& hm, int cell, Direction direction, const Rational& coordinate,
                       std::optional<std::pair<int, int>> weighted, bool extension, int group)
{
    if (cell < 0 || cell >= static_cast<int>(hm.mesh.cells().size()))
        throw Error(ErrorKind::UnknownCell, "no cell " + std::to_string(cell));
    const Rect r = hm.mesh.cell(cell).rect;
    Rect a = r, b = r;
    if (direction == Direction::Vertical) {
        if (!(r.x0 < coordinate && coordinate < r.x1))
            throw Error(ErrorKind::CoordinateOnCellBoundary, "s = " + to_string(coordinate) + " not inside " + describe(r));
        a.x1 = coordinate;
        b.x0 = coordinate;
    } else {
        if (!(r.y0 < coordinate && coordinate < r.y1))
            throw Error(ErrorKind::CoordinateOnCellBoundary, "t = " + to_string(coordinate) + " not inside " + describe(r));
        a.y1 = coordinate;
        b.y0 = coordinate;
    }
    auto rects = hm.mesh.rectangles();
    rects.erase(rects.begin() + cell);
    rects.push_back(a);
    rects.push_back(b);
    hm.mesh = build_mesh(std::move(rects));

    SplitEvent event;
    event.cell = cell;
    event.rect = r;
    event.direction = direction;
    event.coordinate = coordinate;
    event.weighted = weighted;
    event.extension = extension;
    event.group = group;
    hm.history.events.push_back(event);
    return find_split_edge(hm.mesh, event);
}

} // namespace detail

/// Splits `cell` along the line `direction` = `coordinate` and records it.
inline SplitOutcome split_cell(HierarchicalMesh& hm, int cell, Direction direction, const Rational& coordinate)
{
    int group = hm.history.command_count();
    SplitOutcome out;
    out.edge = detail::apply_split(hm, cell, direction, coordinate, std::nullopt, false, group);
    auto analysis = maximal_segments(hm.mesh);
    out.segment = analysis.edge_segment[out.edge];
    out.classification = detail::classify(analysis, out.segment);
    out.events = 1;
    return out;
}

/// MIS ordered by the first split event that produced a piece of them.
/// Blocking pairs are always respected: if the raw appearance order breaks
/// one (possible once segments merge), ties are resolved topologically with
/// the appearance index as priority.
inline Ordering appearance_ordering(const SubdivisionHistory& history, const SegmentAnalysis& analysis)
{
    std::vector<long> first_event(analysis.segments.size(), -1);
    for (int id : analysis.mis) {
        const auto& s = analysis.segment(id);
        for (std::size_t k = 0; k < history.events.size(); ++k) {
            const auto& e = history.events[k];
            if (e.direction == s.direction && e.coordinate == s.coordinate && s.lo <= e.lo() && e.hi() <= s.hi) {
                first_event[id] = static_cast<long>(k);
                break;
            }
        }
        if (first_event[id] < 0)
            throw Error(ErrorKind::HistoryMismatch, "no split event produced segment " + std::to_string(id));
    }
    Ordering out;
    out.sequence = analysis.mis;
    std::sort(out.sequence.begin(), out.sequence.end(), [&](int a, int b) { return first_event[a] < first_event[b]; });
    out.source = "appearance";
    if (out.respects_blocking(analysis)) return out;
    if (auto order = blocking_topological_sort(analysis, [&](int id) { return first_event[id]; })) {
        out.sequence = std::move(*order);
        out.source = "appearance-topological";
        return out;
    }
    out.cyclic = true;
    return out;
}

/// Appearance order when a history is known, else the blocking order.
inline Ordering default_ordering(const SegmentAnalysis& analysis, const SubdivisionHistory* history = nullptr)
{
    if (history) return appearance_ordering(*history, analysis);
    return blocking_ordering(analysis);
}

namespace detail {

inline int weight_of(const HierarchicalMesh& hm, const SegmentAnalysis& analysis, const SmoothnessDistribution& dist,
                     const Degree& deg, int segment)
{
    auto ordering = appearance_ordering(hm.history, analysis);
    return gamma_lambda_weight(hm.mesh, analysis, dist, deg, ordering, segment).omega;
}

/// Prolongs segment `segment` one hop beyond its `upper` or lower end by
/// splitting the cell on the far side. Returns false if nothing lies beyond.
inline bool extend_once(HierarchicalMesh& hm, const MaxSegment& s, bool upper, int group)
{
    const Rational& along = upper ? s.hi : s.lo;
    for (const auto& c : hm.mesh.cells()) {
        const Rect& r = c.rect;
        bool beyond;
        if (s.direction == Direction::Vertical)
            beyond = r.x0 < s.coordinate && s.coordinate < r.x1 && (upper ? r.y0 == along : r.y1 == along);
        else
            beyond = r.y0 < s.coordinate && s.coordinate < r.y1 && (upper ? r.x0 == along : r.x1 == along);
        if (beyond) {
            apply_split(hm, c.id, s.direction, s.coordinate, std::nullopt, true, group);
            return true;
        }
    }
    return false;
}

} // namespace detail

/// Split followed by the (k,k')-weighted rule: while a maximal interior
/// segment carrying an edge of this command is lighter than k (horizontal)
/// or k' (vertical), prolong it by one cell at a time, alternating ends,
/// upper/right end first.
inline SplitOutcome weighted_split(HierarchicalMesh& hm, int cell, Direction direction, const Rational& coordinate,
                                   const SmoothnessDistribution& dist, const Degree& deg, int k, int k_prime)
{
    const int group = hm.history.command_count();
    const std::size_t first_event = hm.history.events.size();
    int edge = detail::apply_split(hm, cell, direction, coordinate, std::pair{k, k_prime}, false, group);
    const SplitEvent root = hm.history.events.back();

    auto analysis = maximal_segments(hm.mesh);
    SplitOutcome out;
    out.segment = analysis.edge_segment[edge];
    out.classification = detail::classify(analysis, out.segment);

    // Hop parity per line, so each segment alternates its own ends.
    std::map<std::pair<Direction, Rational>, int> hops;
    for (;;) {
        int deficient = -1;
        for (int id : analysis.mis) {
            const auto& s = analysis.segment(id);
            bool touched = false;
            for (std::size_t e = first_event; e < hm.history.events.size() && !touched; ++e) {
                const auto& ev = hm.history.events[e];
                touched = ev.direction == s.direction && ev.coordinate == s.coordinate && s.lo <= ev.lo()
                          && ev.hi() <= s.hi;
            }
            if (!touched) continue;
            int needed = s.direction == Direction::Horizontal ? k : k_prime;
            if (detail::weight_of(hm, analysis, dist, deg, id) < needed) {
                deficient = id;
                break;
            }
        }
        if (deficient < 0) break;
        const MaxSegment s = analysis.segment(deficient);
        int& parity = hops[{s.direction, s.coordinate}];
        bool upper = parity % 2 == 0;
        if (!detail::extend_once(hm, s, upper, group) && !detail::extend_once(hm, s, !upper, group))
            throw std::logic_error("interior segment cannot be extended");
        ++parity;
        analysis = maximal_segments(hm.mesh);
    }

    edge = detail::find_split_edge(hm.mesh, root);
    out.edge = edge;
    out.segment = analysis.edge_segment[edge];
    out.events = static_cast<int>(hm.history.events.size() - first_event);
    return out;
}

/// Rebuilds a hierarchical mesh from its commands and checks that every
/// recorded event, extension hops included, is reproduced.
inline HierarchicalMesh replay(const SubdivisionHistory& history, const SmoothnessDistribution* dist = nullptr,
                               const Degree* deg = nullptr)
{
    HierarchicalMesh hm(history.initial);
    for (const auto& e : history.events) {
        if (e.extension) continue;
        try {
            if (e.weighted) {
                if (!dist || !deg)
                    throw Error(ErrorKind::HistoryMismatch, "weighted split needs a degree and smoothness to replay");
                weighted_split(hm, e.cell, e.direction, e.coordinate, *dist, *deg, e.weighted->first, e.weighted->second);
            } else {
                split_cell(hm, e.cell, e.direction, e.coordinate);
            }
        } catch (const Error& err) {
            if (err.kind() == ErrorKind::HistoryMismatch) throw;
            throw Error(ErrorKind::HistoryMismatch, std::string("replay failed: ") + err.what());
        }
    }
    // Recorded groups may have been numbered differently; compare shapes only.
    auto same = [](const SplitEvent& a, const SplitEvent& b) {
        return a.cell == b.cell && a.rect == b.rect && a.direction == b.direction && a.coordinate == b.coordinate
               && a.extension == b.extension && a.weighted == b.weighted;
    };
    if (hm.history.events.size() != history.events.size()
        || !std::equal(hm.history.events.begin(), hm.history.events.end(), history.events.begin(), same))
        throw Error(ErrorKind::HistoryMismatch, "replayed events differ from the recorded ones");
    return hm;
}

/// Appearance ordering after checking that `history` replays to `mesh`.
inline Ordering appearance_ordering(const SubdivisionHistory& history, const TMesh& mesh,
                                    const SegmentAnalysis& analysis, const SmoothnessDistribution* dist = nullptr,
                                    const Degree* deg = nullptr)
{
    auto hm = replay(history, dist, deg);
    if (hm.mesh.rectangles() != mesh.rectangles())
        throw Error(ErrorKind::HistoryMismatch, "history does not reproduce the mesh");
    return appearance_ordering(history, analysis);
}

/// Number of atomic splits that introduced a maximal interior segment with
/// no interior vertex. Bounds h for biquadratic C^1 splines.
inline int new_segment_levels(const SubdivisionHistory& history)
{
    HierarchicalMesh hm(history.initial);
    int count = 0;
    for (const auto& e : history.events) {
        int edge = detail::apply_split(hm, e.cell, e.direction, e.coordinate, e.weighted, e.extension, e.group);
        auto analysis = maximal_segments(hm.mesh);
        if (detail::classify(analysis, analysis.edge_segment[edge]) == SplitClass::NewMIS) ++count;
    }
    return count;
}

} // namespace tmesh
