// Maximal segments, maximal interior segments (MIS), blocking, orderings and weights.
#pragma once

#include "mesh.hpp"
#include "smoothness.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

namespace tmesh {

struct MaxSegment {
    int id = -1;
    Direction direction = Direction::Horizontal;
    Rational coordinate;
    Rational lo, hi;
    std::vector<int> edges;    // ordered along the line
    std::vector<int> vertices; // ordered along the line, endpoints included
    bool interior = false;

    int front() const { return vertices.front(); }
    int back() const { return vertices.back(); }
    bool is_endpoint(int v) const { return v == front() || v == back(); }
};

struct SegmentAnalysis {
    /// Ordered by (direction, coordinate, span start); horizontal first.
    std::vector<MaxSegment> segments;
    /// Ids of interior segments, increasing.
    std::vector<int> mis;
    /// Segment of every interior edge, -1 for boundary edges.
    std::vector<int> edge_segment;
    /// Horizontal and vertical maximal segment through each interior vertex, -1 otherwise.
    std::vector<std::array<int, 2>> vertex_segments;
    /// (blocker, blocked) pairs of MIS ids, sorted.
    std::vector<std::pair<int, int>> blocking;

    const MaxSegment& segment(int id) const { return segments.at(id); }

    int segment_through(int vertex, Direction d) const
    {
        return vertex_segments.at(vertex)[d == Direction::Horizontal ? 0 : 1];
    }

    bool is_mis(int id) const { return id >= 0 && segments.at(id).interior; }
};

namespace detail {

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x)
    {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace detail

/// Groups interior edges into maximal segments. Chains continue only
/// through interior vertices, so a segment never passes through the boundary.
inline SegmentAnalysis maximal_segments(const TMesh& mesh)
{
    SegmentAnalysis out;
    const auto edges = mesh.edges();
    detail::DisjointSets sets(edges.size());
    for (const auto& v : mesh.vertices()) {
        if (!v.interior()) continue;
        if (v.horizontal_edges.size() == 2) sets.unite(v.horizontal_edges[0], v.horizontal_edges[1]);
        if (v.vertical_edges.size() == 2) sets.unite(v.vertical_edges[0], v.vertical_edges[1]);
    }
    std::map<int, std::vector<int>> groups;
    for (const auto& e : edges) {
        if (e.interior) groups[sets.find(e.id)].push_back(e.id);
    }
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end(), [&](int a, int b) { return edges[a].lo < edges[b].lo; });
        MaxSegment s;
        const Edge& first = edges[members.front()];
        s.direction = first.direction;
        s.coordinate = first.coordinate;
        s.lo = first.lo;
        s.hi = edges[members.back()].hi;
        s.edges = members;
        s.vertices.push_back(first.endpoints[0]);
        for (int e : members) s.vertices.push_back(edges[e].endpoints[1]);
        s.interior = mesh.vertex(s.front()).interior() && mesh.vertex(s.back()).interior();
        out.segments.push_back(std::move(s));
    }
    std::sort(out.segments.begin(), out.segments.end(), [](const MaxSegment& a, const MaxSegment& b) {
        return std::tie(a.direction, a.coordinate, a.lo) < std::tie(b.direction, b.coordinate, b.lo);
    });

    out.edge_segment.assign(edges.size(), -1);
    out.vertex_segments.assign(mesh.vertices().size(), {-1, -1});
    for (std::size_t i = 0; i < out.segments.size(); ++i) {
        auto& s = out.segments[i];
        s.id = static_cast<int>(i);
        for (int e : s.edges) out.edge_segment[e] = s.id;
        for (int v : s.vertices) {
            if (mesh.vertex(v).interior()) out.vertex_segments[v][s.direction == Direction::Horizontal ? 0 : 1] = s.id;
        }
        if (s.interior) out.mis.push_back(s.id);
    }

    for (int id : out.mis) {
        const auto& s = out.segments[id];
        for (int end : {s.front(), s.back()}) {
            int across = out.segment_through(end, transversal(s.direction));
            if (out.is_mis(across) && !out.segments[across].is_endpoint(end)) out.blocking.emplace_back(across, id);
        }
    }
    std::sort(out.blocking.begin(), out.blocking.end());
    out.blocking.erase(std::unique(out.blocking.begin(), out.blocking.end()), out.blocking.end());
    return out;
}

/// Blocking pairs (blocker, blocked) between maximal interior segments.
inline const std::vector<std::pair<int, int>>& blocking(const SegmentAnalysis& analysis) { return analysis.blocking; }

/// An injective ranking of the MIS. `sequence` lists MIS ids by increasing rank.
struct Ordering {
    std::vector<int> sequence;
    /// Set when the order could not respect every blocking pair.
    bool cyclic = false;
    std::string source;

    int rank(int segment) const
    {
        auto it = std::find(sequence.begin(), sequence.end(), segment);
        return it == sequence.end() ? -1 : static_cast<int>(it - sequence.begin());
    }

    std::vector<int> ranks(std::size_t segment_count) const
    {
        std::vector<int> out(segment_count, -1);
        for (std::size_t i = 0; i < sequence.size(); ++i) out[sequence[i]] = static_cast<int>(i);
        return out;
    }

    bool respects_blocking(const SegmentAnalysis& analysis) const
    {
        auto r = ranks(analysis.segments.size());
        return std::all_of(analysis.blocking.begin(), analysis.blocking.end(),
                           [&](const auto& p) { return r[p.first] < r[p.second]; });
    }
};

/// Kahn's algorithm over the blocking relation, breaking ties with `priority`
/// (smaller first). Returns std::nullopt when the relation has a cycle.
inline std::optional<std::vector<int>> blocking_topological_sort(const SegmentAnalysis& analysis,
                                                                 const std::function<long(int)>& priority)
{
    std::map<int, int> indegree;
    std::map<int, std::vector<int>> successors;
    for (int id : analysis.mis) indegree[id] = 0;
    for (const auto& [from, to] : analysis.blocking) {
        successors[from].push_back(to);
        ++indegree[to];
    }
    using Item = std::pair<long, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;
    for (const auto& [id, deg] : indegree) {
        if (deg == 0) ready.emplace(priority(id), id);
    }
    std::vector<int> order;
    while (!ready.empty()) {
        int id = ready.top().second;
        ready.pop();
        order.push_back(id);
        for (int next : successors[id]) {
            if (--indegree[next] == 0) ready.emplace(priority(next), next);
        }
    }
    if (order.size() != analysis.mis.size()) return std::nullopt;
    return order;
}

/// Ordering used when no subdivision history is available: blockers before
/// the segments they block, else segment id order flagged as cyclic.
inline Ordering blocking_ordering(const SegmentAnalysis& analysis)
{
    Ordering out;
    if (auto order = blocking_topological_sort(analysis, [](int id) { return static_cast<long>(id); })) {
        out.sequence = std::move(*order);
        out.source = "blocking";
    } else {
        out.sequence = analysis.mis;
        out.cyclic = true;
        out.source = "cycle";
    }
    return out;
}

inline Ordering ordering_from_sequence(std::vector<int> sequence, std::string source = "explicit")
{
    Ordering out;
    out.sequence = std::move(sequence);
    out.source = std::move(source);
    return out;
}

struct SegmentWeight {
    std::vector<int> gamma; // vertex ids
    int lambda = 0;
    int omega = 0;
};

/// Transversal multiplicity of a vertex seen from a segment of direction d:
/// (m - r_h) for horizontal segments, (m' - r_v) for vertical ones, floored at 0.
inline int transversal_multiplicity(const TMesh& mesh, const SmoothnessDistribution& dist, const Degree& deg,
                                    Direction d, int vertex)
{
    const auto& p = mesh.vertex(vertex).position;
    int mult = d == Direction::Horizontal ? deg.m - dist.r_h(p.x) : deg.n - dist.r_v(p.y);
    return std::max(0, mult);
}

/// Vertices of `segment` not lying on a MIS of larger rank, their count and weight.
inline SegmentWeight gamma_lambda_weight(const TMesh& mesh, const SegmentAnalysis& analysis,
                                         const SmoothnessDistribution& dist, const Degree& deg,
                                         const std::vector<int>& ranks, int segment)
{
    const auto& s = analysis.segment(segment);
    SegmentWeight out;
    for (int v : s.vertices) {
        int across = analysis.segment_through(v, transversal(s.direction));
        bool excluded = analysis.is_mis(across) && ranks[across] > ranks[segment];
        if (excluded) continue;
        out.gamma.push_back(v);
        out.omega += transversal_multiplicity(mesh, dist, deg, s.direction, v);
    }
    out.lambda = static_cast<int>(out.gamma.size());
    return out;
}

inline SegmentWeight gamma_lambda_weight(const TMesh& mesh, const SegmentAnalysis& analysis,
                                         const SmoothnessDistribution& dist, const Degree& deg,
                                         const Ordering& ordering, int segment)
{
    return gamma_lambda_weight(mesh, analysis, dist, deg, ordering.ranks(analysis.segments.size()), segment);
}

/// Every horizontal MIS has weight >= k and every vertical one >= k_prime.
inline bool is_weighted(const TMesh& mesh, const SegmentAnalysis& analysis, const SmoothnessDistribution& dist,
                        const Degree& deg, const Ordering& ordering, int k, int k_prime)
{
    auto ranks = ordering.ranks(analysis.segments.size());
    for (int id : analysis.mis) {
        int omega = gamma_lambda_weight(mesh, analysis, dist, deg, ranks, id).omega;
        int needed = analysis.segment(id).direction == Direction::Horizontal ? k : k_prime;
        if (omega < needed) return false;
    }
    return true;
}

} // namespace tmesh
