// Node smoothness distributions and the quotient dimensions they induce.
#pragma once

#include "error.hpp"
#include "mesh.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>

namespace tmesh {

/// Bidegree bound (m, m'): degree <= m in s and <= m' in t.
struct Degree {
    int m = 0;
    int n = 0;

    friend bool operator==(const Degree&, const Degree&) = default;
};

/// Pair of exponents, used for edge and vertex bidegrees.
struct Bidegree {
    int s = 0;
    int t = 0;

    friend bool operator==(const Bidegree&, const Bidegree&) = default;
};

/// Smoothness orders on horizontal nodes (r_h, across vertical lines) and
/// vertical nodes (r_v, across horizontal lines). Nodes without an explicit
/// entry fall back to the default pair when one is set.
class SmoothnessDistribution {
public:
    SmoothnessDistribution() = default;
    SmoothnessDistribution(int default_h, int default_v) : default_h_(default_h), default_v_(default_v) {}

    void set_h(const Rational& s, int r) { r_h_[s] = r; }
    void set_v(const Rational& t, int r) { r_v_[t] = r; }
    void set_default(int r_h, int r_v)
    {
        default_h_ = r_h;
        default_v_ = r_v;
    }

    int r_h(const Rational& s) const { return lookup(r_h_, default_h_, s, "horizontal"); }
    int r_v(const Rational& t) const { return lookup(r_v_, default_v_, t, "vertical"); }

    std::optional<int> default_h() const { return default_h_; }
    std::optional<int> default_v() const { return default_v_; }
    const std::map<Rational, int>& explicit_h() const { return r_h_; }
    const std::map<Rational, int>& explicit_v() const { return r_v_; }

    /// (r, r') when every lookup yields the same pair on `mesh`.
    std::optional<std::pair<int, int>> constant_on(const TMesh& mesh) const
    {
        std::optional<int> h, v;
        for (const auto& s : mesh.horizontal_nodes()) {
            int r = r_h(s);
            if (h && *h != r) return std::nullopt;
            h = r;
        }
        for (const auto& t : mesh.vertical_nodes()) {
            int r = r_v(t);
            if (v && *v != r) return std::nullopt;
            v = r;
        }
        return std::pair{h.value_or(default_h_.value_or(0)), v.value_or(default_v_.value_or(0))};
    }

    friend bool operator==(const SmoothnessDistribution&, const SmoothnessDistribution&) = default;

private:
    static int lookup(const std::map<Rational, int>& table, const std::optional<int>& fallback, const Rational& key,
                      const char* which)
    {
        if (auto it = table.find(key); it != table.end()) return it->second;
        if (fallback) return *fallback;
        throw Error(ErrorKind::UnknownNode, std::string("no smoothness for ") + which + " node " + to_string(key));
    }

    std::map<Rational, int> r_h_;
    std::map<Rational, int> r_v_;
    std::optional<int> default_h_;
    std::optional<int> default_v_;
};

inline SmoothnessDistribution constant_distribution(const TMesh& mesh, int r, int r_prime)
{
    if (r < 0 || r_prime < 0) throw std::invalid_argument("smoothness must be nonnegative");
    SmoothnessDistribution dist(r, r_prime);
    for (const auto& s : mesh.horizontal_nodes()) dist.set_h(s, r);
    for (const auto& t : mesh.vertical_nodes()) dist.set_v(t, r_prime);
    return dist;
}

/// Vertical edges take r_h at their abscissa, horizontal ones r_v at their ordinate.
inline int edge_smoothness(const SmoothnessDistribution& dist, const Edge& edge)
{
    return edge.direction == Direction::Vertical ? dist.r_h(edge.coordinate) : dist.r_v(edge.coordinate);
}

inline Bidegree edge_bidegree(const SmoothnessDistribution& dist, const Edge& edge)
{
    int r = edge_smoothness(dist, edge);
    return edge.direction == Direction::Vertical ? Bidegree{r + 1, 0} : Bidegree{0, r + 1};
}

inline Bidegree vertex_bidegree(const SmoothnessDistribution& dist, const Vertex& vertex)
{
    return {dist.r_h(vertex.position.x) + 1, dist.r_v(vertex.position.y) + 1};
}

/// Dimensions of R_{m,m'} modulo the smoothness ideal of a face.
inline int cell_quotient_dim(const Degree& deg) { return (deg.m + 1) * (deg.n + 1); }

inline int edge_quotient_dim(const SmoothnessDistribution& dist, const Degree& deg, const Edge& edge)
{
    int r = edge_smoothness(dist, edge);
    if (edge.direction == Direction::Horizontal) return (deg.m + 1) * (std::min(r, deg.n) + 1);
    return (std::min(r, deg.m) + 1) * (deg.n + 1);
}

inline int vertex_quotient_dim(const SmoothnessDistribution& dist, const Degree& deg, const Vertex& vertex)
{
    int rh = dist.r_h(vertex.position.x);
    int rv = dist.r_v(vertex.position.y);
    return (std::min(rh, deg.m) + 1) * (std::min(rv, deg.n) + 1);
}

/// Dimension of R_{(a,b)}; zero when either exponent is negative.
inline int box_dim(int a, int b) { return (a < 0 || b < 0) ? 0 : (a + 1) * (b + 1); }

} // namespace tmesh
