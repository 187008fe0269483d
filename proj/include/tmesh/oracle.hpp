// Brute-force exact computations over the chain complex of a T-mesh.
//
// Everything here is assembled independently of the closed forms in
// dimension.hpp: spline dimensions come from the kernel of the cell-to-edge
// constraint map, and the homology defect h is computed three ways.
#pragma once

#include "dimension.hpp"
#include "error.hpp"
#include "mesh.hpp"
#include "segments.hpp"
#include "smoothness.hpp"
#include "sparse_matrix.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace tmesh {

namespace detail {

/// Coefficient of (u - a)^k in the Taylor expansion of u^i at a.
inline Rational taylor_coeff(int i, int k, const Rational& a)
{
    if (k > i) return 0;
    return binomial(i, k) * power(a, i - k);
}

/// Monomial coefficients of (u - a)^k, index = exponent.
inline std::vector<Rational> shifted_power(int k, const Rational& a)
{
    std::vector<Rational> out(k + 1);
    Rational minus_a = -a;
    for (int i = 0; i <= k; ++i) out[i] = binomial(k, i) * power(minus_a, k - i);
    return out;
}

/// Dense-by-exponent polynomial product.
inline std::vector<Rational> multiply(const std::vector<Rational>& f, const std::vector<Rational>& g)
{
    if (f.empty() || g.empty()) return {};
    std::vector<Rational> out(f.size() + g.size() - 1);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (std::size_t j = 0; j < g.size(); ++j) out[i + j] += f[i] * g[j];
    }
    return out;
}

} // namespace detail

/// Constraint matrix of the cell-to-edge map of the spline complex.
/// Columns are (cell, s^i t^j); the rows of an interior edge on the line
/// s = a are the Taylor coefficients (s-a)^k t^j, k <= min(r, m), of
/// p_low - p_high, i.e. the difference projected to R / I(edge).
inline SparseRationalMatrix build_spline_system(const TMesh& mesh, const SmoothnessDistribution& dist,
                                                const Degree& deg)
{
    SparseRationalMatrix mat;
    const int block = (deg.m + 1) * (deg.n + 1);
    for (const auto& c : mesh.cells()) {
        for (int i = 0; i <= deg.m; ++i)
            for (int j = 0; j <= deg.n; ++j) mat.add_col({IndexLabel::Face::Cell, c.id, i, j});
    }
    auto col = [&](int cell, int i, int j) { return cell * block + i * (deg.n + 1) + j; };
    for (const auto& e : mesh.edges()) {
        if (!e.interior) continue;
        const int low = e.cells[0], high = e.cells[1];
        const int r = edge_smoothness(dist, e);
        if (e.direction == Direction::Vertical) {
            for (int k = 0; k <= std::min(r, deg.m); ++k) {
                for (int j = 0; j <= deg.n; ++j) {
                    int row = mat.add_row({IndexLabel::Face::Edge, e.id, k, j});
                    for (int i = k; i <= deg.m; ++i) {
                        Rational c = detail::taylor_coeff(i, k, e.coordinate);
                        mat.add(row, col(low, i, j), c);
                        mat.add(row, col(high, i, j), -c);
                    }
                }
            }
        } else {
            for (int i = 0; i <= deg.m; ++i) {
                for (int k = 0; k <= std::min(r, deg.n); ++k) {
                    int row = mat.add_row({IndexLabel::Face::Edge, e.id, i, k});
                    for (int j = k; j <= deg.n; ++j) {
                        Rational c = detail::taylor_coeff(j, k, e.coordinate);
                        mat.add(row, col(low, i, j), c);
                        mat.add(row, col(high, i, j), -c);
                    }
                }
            }
        }
    }
    mat.compress();
    return mat;
}

/// dim S = number of cell coefficients minus the rank of the constraints.
inline int spline_dimension_exact(const TMesh& mesh, const SmoothnessDistribution& dist, const Degree& deg)
{
    auto mat = build_spline_system(mesh, dist, deg);
    return mat.cols() - rational_rank(mat);
}

/// h = dim S - C, the defect between the exact dimension and the combinatorial term.
inline int h_exact(const TMesh& mesh, const SmoothnessDistribution& dist, const Degree& deg)
{
    return spline_dimension_exact(mesh, dist, deg) - combinatorial_term(mesh, dist, deg);
}

/// Matrix of the edge-to-vertex map of the spline complex in Taylor quotient
/// bases. Rows are (vertex, (s-a)^k (t-b)^l), columns (edge, quotient basis).
inline SparseRationalMatrix build_edge_vertex_system(const TMesh& mesh, const SmoothnessDistribution& dist,
                                                     const Degree& deg)
{
    SparseRationalMatrix mat;
    std::vector<int> first_row(mesh.vertices().size(), -1);
    for (const auto& v : mesh.vertices()) {
        if (!v.interior()) continue;
        first_row[v.id] = mat.rows();
        int kh = std::min(dist.r_h(v.position.x), deg.m), kv = std::min(dist.r_v(v.position.y), deg.n);
        for (int k = 0; k <= kh; ++k)
            for (int l = 0; l <= kv; ++l) mat.add_row({IndexLabel::Face::Vertex, v.id, k, l});
    }
    for (const auto& e : mesh.edges()) {
        if (!e.interior) continue;
        const int r = edge_smoothness(dist, e);
        const bool vertical = e.direction == Direction::Vertical;
        const int k_max = std::min(r, vertical ? deg.m : deg.n);
        const int free_max = vertical ? deg.n : deg.m;
        for (int k = 0; k <= k_max; ++k) {
            for (int f = 0; f <= free_max; ++f) {
                int column = vertical ? mat.add_col({IndexLabel::Face::Edge, e.id, k, f})
                                      : mat.add_col({IndexLabel::Face::Edge, e.id, f, k});
                for (int end = 0; end < 2; ++end) {
                    const auto& v = mesh.vertex(e.endpoints[end]);
                    if (!v.interior()) continue;
                    const Rational sign = end == 1 ? 1 : -1;
                    int kh = std::min(dist.r_h(v.position.x), deg.m), kv = std::min(dist.r_v(v.position.y), deg.n);
                    // The free variable is re-expanded at the vertex and truncated.
                    const Rational& shift = vertical ? v.position.y : v.position.x;
                    int free_keep = vertical ? kv : kh;
                    for (int l = 0; l <= std::min(f, free_keep); ++l) {
                        Rational c = sign * detail::taylor_coeff(f, l, shift);
                        int i = vertical ? k : l, j = vertical ? l : k;
                        mat.add(first_row[v.id] + i * (kv + 1) + j, column, c);
                    }
                    (void)kh;
                }
            }
        }
    }
    mat.compress();
    return mat;
}

namespace detail {

/// Monomial coordinates (i * (n+1) + j) of the generators of I(edge) in bidegree <= (m, n).
inline std::vector<std::vector<std::pair<int, Rational>>> edge_ideal_basis(const Edge& e, int r, const Degree& deg)
{
    std::vector<std::vector<std::pair<int, Rational>>> out;
    const bool vertical = e.direction == Direction::Vertical;
    const int along_max = vertical ? deg.m : deg.n;
    const int free_max = vertical ? deg.n : deg.m;
    for (int k = r + 1; k <= along_max; ++k) {
        auto shifted = shifted_power(k, e.coordinate);
        for (int f = 0; f <= free_max; ++f) {
            std::vector<std::pair<int, Rational>> vec;
            for (int p = 0; p <= k; ++p) {
                if (shifted[p] == 0) continue;
                int i = vertical ? p : f, j = vertical ? f : p;
                vec.emplace_back(i * (deg.n + 1) + j, shifted[p]);
            }
            out.push_back(std::move(vec));
        }
    }
    return out;
}

} // namespace detail

/// h as dim of the zeroth homology of the ideal complex: the vertex ideals
/// modulo the image of the edge ideals.
inline int h_via_h0(const TMesh& mesh, const SmoothnessDistribution& dist, const Degree& deg)
{
    const int block = (deg.m + 1) * (deg.n + 1);
    std::vector<int> vertex_slot(mesh.vertices().size(), -1);
    int slots = 0;
    for (const auto& v : mesh.vertices()) {
        if (v.interior()) vertex_slot[v.id] = slots++;
    }

    // dim of each vertex ideal, from the rank of its generators.
    int total_vertex_ideal = 0;
    for (const auto& v : mesh.vertices()) {
        if (!v.interior()) continue;
        SparseRationalMatrix gens;
        for (int c = 0; c < block; ++c) gens.add_col({IndexLabel::Face::Vertex, v.id, c / (deg.n + 1), c % (deg.n + 1)});
        const Edge& ev = mesh.edge(v.vertical_edges.front());
        const Edge& eh = mesh.edge(v.horizontal_edges.front());
        for (const Edge* e : {&ev, &eh}) {
            for (auto& vec : detail::edge_ideal_basis(*e, edge_smoothness(dist, *e), deg)) {
                int row = gens.add_row({IndexLabel::Face::Generator, e->id, 0, 0});
                for (auto& [c, value] : vec) gens.add(row, c, value);
            }
        }
        total_vertex_ideal += rational_rank(gens);
    }

    SparseRationalMatrix image;
    for (int s = 0; s < slots * block; ++s) image.add_col({IndexLabel::Face::Vertex, s / block, 0, s % block});
    for (const auto& e : mesh.edges()) {
        if (!e.interior) continue;
        for (auto& vec : detail::edge_ideal_basis(e, edge_smoothness(dist, e), deg)) {
            int row = image.add_row({IndexLabel::Face::Edge, e.id, 0, 0});
            for (int end = 0; end < 2; ++end) {
                int slot = vertex_slot[e.endpoints[end]];
                if (slot < 0) continue;
                for (auto& [c, value] : vec) image.add(row, slot * block + c, end == 1 ? value : Rational(-value));
            }
        }
    }
    return total_vertex_ideal - rational_rank(image);
}

/// h from the presentation on maximal interior segments: each MIS carries
/// R_{(m,m') - delta(segment)}, modulo one relation family per interior
/// vertex on a MIS. Components on boundary-touching segments vanish.
inline int h_via_mis_presentation(const TMesh& mesh, const SegmentAnalysis& analysis,
                                  const SmoothnessDistribution& dist, const Degree& deg)
{
    SparseRationalMatrix rel;
    // Per-MIS block: bidegree bounds and column offset.
    struct Block {
        int offset = -1;
        int max_i = -1;
        int max_j = -1;
    };
    std::vector<Block> blocks(analysis.segments.size());
    int total = 0;
    for (int id : analysis.mis) {
        const auto& s = analysis.segment(id);
        Block b;
        if (s.direction == Direction::Horizontal) {
            b.max_i = deg.m;
            b.max_j = deg.n - dist.r_v(s.coordinate) - 1;
        } else {
            b.max_i = deg.m - dist.r_h(s.coordinate) - 1;
            b.max_j = deg.n;
        }
        b.offset = total;
        int size = box_dim(b.max_i, b.max_j);
        for (int c = 0; c < size; ++c) rel.add_col({IndexLabel::Face::Segment, id, c / (b.max_j + 1), c % (b.max_j + 1)});
        total += size;
        blocks[id] = b;
    }
    if (total == 0) return 0;

    for (const auto& v : mesh.vertices()) {
        if (!v.interior()) continue;
        const int seg_h = analysis.segment_through(v.id, Direction::Horizontal);
        const int seg_v = analysis.segment_through(v.id, Direction::Vertical);
        const bool on_h = analysis.is_mis(seg_h), on_v = analysis.is_mis(seg_v);
        if (!on_h && !on_v) continue;
        const int rh = dist.r_h(v.position.x), rv = dist.r_v(v.position.y);
        // Delta of the horizontal line multiplies the vertical segment's component and vice versa.
        auto delta_h = detail::shifted_power(rv + 1, v.position.y);
        auto delta_v = detail::shifted_power(rh + 1, v.position.x);
        for (int p = 0; p <= deg.m - rh - 1; ++p) {
            for (int q = 0; q <= deg.n - rv - 1; ++q) {
                int row = rel.add_row({IndexLabel::Face::Vertex, v.id, p, q});
                if (on_v) {
                    const Block& b = blocks[seg_v];
                    for (int l = 0; l < static_cast<int>(delta_h.size()); ++l)
                        rel.add(row, b.offset + p * (b.max_j + 1) + (q + l), delta_h[l]);
                }
                if (on_h) {
                    const Block& b = blocks[seg_h];
                    for (int l = 0; l < static_cast<int>(delta_v.size()); ++l)
                        rel.add(row, b.offset + (p + l) * (b.max_j + 1) + q, -delta_v[l]);
                }
            }
        }
    }
    return total - rational_rank(rel);
}

inline int h_via_mis_presentation(const TMesh& mesh, const SmoothnessDistribution& dist, const Degree& deg)
{
    return h_via_mis_presentation(mesh, maximal_segments(mesh), dist, deg);
}

/// Apolar pairing of binary forms on U_n: <f, g> = sum (-1)^i f_i g_{n-i} / C(n, i).
/// With it, (u - a)^n pairs with g to (-1)^n g(a).
inline Rational apolar_product(int n, const std::vector<Rational>& f, const std::vector<Rational>& g)
{
    Rational out = 0;
    for (int i = 0; i <= n && i < static_cast<int>(f.size()); ++i) {
        const int k = n - i;
        if (k >= static_cast<int>(g.size()) || f[i] == 0 || g[k] == 0) continue;
        Rational term = f[i] * g[k] / binomial(n, i);
        out += i % 2 == 0 ? term : Rational(-term);
    }
    return out;
}

namespace detail {

using IntPoly = std::vector<Integer>;

/// (q u - p)^k for a = p/q: a positive multiple of (u - a)^k with integer coefficients.
inline IntPoly integer_shifted_power(int k, const Rational& a)
{
    IntPoly out{1};
    for (int step = 0; step < k; ++step) {
        IntPoly next(out.size() + 1);
        for (std::size_t i = 0; i < out.size(); ++i) {
            next[i + 1] += out[i] * a.get_den();
            next[i] -= out[i] * a.get_num();
        }
        out = std::move(next);
    }
    return out;
}

inline IntPoly multiply(const IntPoly& f, const IntPoly& g)
{
    IntPoly out(f.size() + g.size() - 1);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) out[i + j] += f[i] * g[j];
    return out;
}

} // namespace detail

/// Rank of the coefficient vectors of u^j (u - a_i)^{d_i}, j <= n - d_i.
/// Also checks that the span is apolar to every multiple of
/// prod (u - a_i)^{n - d_i + 1} of degree <= n; throws std::logic_error otherwise.
inline int apolar_dim_bruteforce(int n, const std::vector<Rational>& points, const std::vector<int>& ds)
{
    detail::check_apolar_inputs(n, points, ds);
    std::vector<detail::SparseIntRow> rows;
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto base = detail::integer_shifted_power(ds[i], points[i]);
        for (int j = 0; j <= n - ds[i]; ++j) {
            detail::SparseIntRow row;
            for (std::size_t c = 0; c < base.size(); ++c) {
                if (base[c] != 0) row.emplace_back(j + static_cast<int>(c), base[c]);
            }
            detail::normalize_row(row);
            rows.push_back(std::move(row));
        }
    }
    const auto basis = detail::echelon_basis(std::move(rows), n + 1);

    // Orthogonality on the echelon basis, which spans the same space.
    detail::IntPoly pi{1};
    for (std::size_t i = 0; i < points.size(); ++i)
        pi = detail::multiply(pi, detail::integer_shifted_power(n - ds[i] + 1, points[i]));
    const int deg_pi = static_cast<int>(pi.size()) - 1;
    // n! / C(n, i) with the sign of the pairing.
    std::vector<Integer> weight(n + 1);
    for (int i = 0; i <= n; ++i) {
        Integer a, b;
        mpz_fac_ui(a.get_mpz_t(), i);
        mpz_fac_ui(b.get_mpz_t(), n - i);
        weight[i] = i % 2 == 0 ? Integer(a * b) : Integer(-(a * b));
    }
    Integer sum;
    for (int k = 0; k + deg_pi <= n; ++k) {
        for (const auto& f : basis) {
            sum = 0;
            for (const auto& [i, fi] : f) {
                const int idx = n - i - k; // coefficient of u^{n-i} in u^k * pi
                if (idx >= 0 && idx <= deg_pi) sum += weight[i] * fi * pi[idx];
            }
            if (sum != 0) throw std::logic_error("apolar orthogonality violated");
        }
    }
    return static_cast<int>(basis.size());
}

} // namespace tmesh
