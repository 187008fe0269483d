// Closed forms: apolar dimensions, the combinatorial dimension term, upper
// bounds on the homology defect h, and certificates that pin h exactly.
#pragma once

#include "error.hpp"
#include "hierarchy.hpp"
#include "mesh.hpp"
#include "segments.hpp"
#include "smoothness.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tmesh {

namespace detail {

inline void check_apolar_inputs(int n, const std::vector<Rational>& points, const std::vector<int>& ds)
{
    if (points.size() != ds.size()) throw std::invalid_argument("points and multiplicities differ in length");
    std::set<Rational> seen(points.begin(), points.end());
    if (seen.size() != points.size()) throw Error(ErrorKind::DuplicatePoints, "apolar points must be distinct");
    for (int d : ds) {
        if (d < 0 || d > n)
            throw Error(ErrorKind::DegreeOutOfRange,
                        "multiplicity " + std::to_string(d) + " outside [0, " + std::to_string(n) + "]");
    }
}

} // namespace detail

/// dim of sum_i (u - a_i)^{d_i} U_{n - d_i} inside U_n.
inline int apolar_dim(int n, const std::vector<Rational>& points, const std::vector<int>& ds)
{
    detail::check_apolar_inputs(n, points, ds);
    long total = 0;
    for (int d : ds) total += n - d + 1;
    return static_cast<int>(std::min<long>(n + 1, total));
}

inline int apolar_codim(int n, const std::vector<Rational>& points, const std::vector<int>& ds)
{
    return n + 1 - apolar_dim(n, points, ds);
}

/// sum over cells - sum over interior edges + sum over interior vertices of
/// the quotient dimensions (truncated when smoothness reaches the degree).
inline int combinatorial_term(const TMesh& mesh, const SmoothnessDistribution& dist, const Degree& deg)
{
    long total = static_cast<long>(mesh.cells().size()) * cell_quotient_dim(deg);
    for (const auto& e : mesh.edges()) {
        if (e.interior) total -= edge_quotient_dim(dist, deg, e);
    }
    for (const auto& v : mesh.vertices()) {
        if (v.interior()) total += vertex_quotient_dim(dist, deg, v);
    }
    return static_cast<int>(total);
}

/// The same term for constant smoothness, from face counts alone.
inline int combinatorial_term_constant(const FaceCounts& counts, const Degree& deg, int r, int r_prime)
{
    const int rh = std::min(r, deg.m), rv = std::min(r_prime, deg.n);
    return (deg.m + 1) * (deg.n + 1) * counts.f2 - (deg.m + 1) * (rv + 1) * counts.f1_horizontal
           - (deg.n + 1) * (rh + 1) * counts.f1_vertical + (rh + 1) * (rv + 1) * counts.f0_interior;
}

struct MisContribution {
    int id = -1;
    Direction direction = Direction::Horizontal;
    int lambda = 0;
    int omega = 0;
    int contribution = 0;
};

struct HBound {
    int total = 0;
    std::vector<MisContribution> per_mis;
    Ordering ordering;
};

/// Upper bound on h for the ordering `ordering`:
/// horizontal MIS add (m+1-w)_+ (m'-r), vertical ones (m-r)(m'+1-w)_+.
inline HBound h_upper_bound(const TMesh& mesh, const SegmentAnalysis& analysis, const SmoothnessDistribution& dist,
                            const Degree& deg, const Ordering& ordering)
{
    HBound out;
    out.ordering = ordering;
    const auto ranks = ordering.ranks(analysis.segments.size());
    for (int id : analysis.mis) {
        if (ranks[id] < 0) throw std::invalid_argument("ordering misses segment " + std::to_string(id));
        const auto& s = analysis.segment(id);
        auto w = gamma_lambda_weight(mesh, analysis, dist, deg, ranks, id);
        MisContribution c{id, s.direction, w.lambda, w.omega, 0};
        if (s.direction == Direction::Horizontal)
            c.contribution = std::max(0, deg.m + 1 - w.omega) * std::max(0, deg.n - dist.r_v(s.coordinate));
        else
            c.contribution = std::max(0, deg.m - dist.r_h(s.coordinate)) * std::max(0, deg.n + 1 - w.omega);
        out.total += c.contribution;
        out.per_mis.push_back(c);
    }
    return out;
}

/// Orderings with at most this many MIS are searched exhaustively.
inline constexpr std::size_t kOrderingSearchLimit = 8;

/// Smallest bound over all orderings; ties go to the lexicographically
/// smallest sequence. Falls back to `fallback` above the search limit.
inline HBound minimize_h_bound(const TMesh& mesh, const SegmentAnalysis& analysis, const SmoothnessDistribution& dist,
                               const Degree& deg, const Ordering& fallback)
{
    if (analysis.mis.size() > kOrderingSearchLimit) return h_upper_bound(mesh, analysis, dist, deg, fallback);
    std::vector<int> perm = analysis.mis;
    std::sort(perm.begin(), perm.end());
    std::optional<HBound> best;
    do {
        auto bound = h_upper_bound(mesh, analysis, dist, deg, ordering_from_sequence(perm, "search"));
        if (!best || bound.total < best->total) best = std::move(bound);
        if (best->total == 0) break;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return *best;
}

enum class CertificateKind { NoMIS, Weighted, SmallWeightsEquality, HierarchicalDegree, Oracle, None };

inline const char* to_string(CertificateKind k)
{
    switch (k) {
    case CertificateKind::NoMIS: return "no-MIS";
    case CertificateKind::Weighted: return "weighted";
    case CertificateKind::SmallWeightsEquality: return "small-weights-equality";
    case CertificateKind::HierarchicalDegree: return "hierarchical-degree";
    case CertificateKind::Oracle: return "oracle";
    case CertificateKind::None: return "none";
    }
    return "?";
}

struct Certificate {
    CertificateKind kind = CertificateKind::None;
    /// The value of h the certificate pins down, if any.
    std::optional<int> h;
};

/// Strongest closed-form statement about h. `hierarchical` says the mesh
/// comes from a subdivision history.
inline Certificate exactness_certificate(const TMesh& mesh, const SegmentAnalysis& analysis,
                                         const SmoothnessDistribution& dist, const Degree& deg,
                                         const Ordering& ordering, bool hierarchical)
{
    if (analysis.mis.empty()) return {CertificateKind::NoMIS, 0};
    if (is_weighted(mesh, analysis, dist, deg, ordering, deg.m + 1, deg.n + 1)) return {CertificateKind::Weighted, 0};

    auto bound = h_upper_bound(mesh, analysis, dist, deg, ordering);
    bool small = std::all_of(bound.per_mis.begin(), bound.per_mis.end(), [&](const MisContribution& c) {
        return c.omega <= (c.direction == Direction::Horizontal ? deg.m + 1 : deg.n + 1);
    });
    if (small) return {CertificateKind::SmallWeightsEquality, bound.total};

    if (hierarchical) {
        if (auto rr = dist.constant_on(mesh)) {
            if (deg.m >= 2 * rr->first + 1 && deg.n >= 2 * rr->second + 1) return {CertificateKind::HierarchicalDegree, 0};
        }
    }
    return {};
}

enum class OrderingPolicy { Auto, Search };

struct DimensionReport {
    int combinatorial = 0;
    int h_lower = 0;
    int h_upper = 0;
    int dim_lower = 0;
    int dim_upper = 0;
    Certificate certificate;
    Ordering ordering;
    std::vector<MisContribution> per_mis;
    /// Filled when the exact computation ran.
    std::optional<int> exact_dim;
    std::optional<int> exact_h;
};

/// C and the certified interval [C + h_lower, C + h_upper]. Pass a history
/// to use the appearance ordering and the hierarchical certificate.
inline DimensionReport dimension_bounds(const TMesh& mesh, const SmoothnessDistribution& dist, const Degree& deg,
                                        OrderingPolicy policy = OrderingPolicy::Auto,
                                        const SubdivisionHistory* history = nullptr)
{
    DimensionReport out;
    const auto analysis = maximal_segments(mesh);
    out.combinatorial = combinatorial_term(mesh, dist, deg);
    Ordering base = default_ordering(analysis, history);
    HBound bound = policy == OrderingPolicy::Search ? minimize_h_bound(mesh, analysis, dist, deg, base)
                                                    : h_upper_bound(mesh, analysis, dist, deg, base);
    // The base ordering may certify more than the searched one, so try both.
    out.certificate = exactness_certificate(mesh, analysis, dist, deg, bound.ordering, history != nullptr);
    if (!out.certificate.h && policy == OrderingPolicy::Search) {
        auto alt = exactness_certificate(mesh, analysis, dist, deg, base, history != nullptr);
        if (alt.h) out.certificate = alt;
    }
    out.ordering = bound.ordering;
    out.per_mis = bound.per_mis;
    out.h_lower = 0;
    out.h_upper = bound.total;
    if (out.certificate.h) {
        out.h_upper = std::min(out.h_upper, *out.certificate.h);
        out.h_lower = *out.certificate.h;
    }
    out.dim_lower = out.combinatorial + out.h_lower;
    out.dim_upper = out.combinatorial + out.h_upper;
    return out;
}

/// Closes the interval with an exactly computed h.
inline void attach_exact(DimensionReport& report, int exact_dim)
{
    report.exact_dim = exact_dim;
    report.exact_h = exact_dim - report.combinatorial;
    if (!report.certificate.h) report.certificate = {CertificateKind::Oracle, *report.exact_h};
    report.h_lower = report.h_upper = *report.exact_h;
    report.dim_lower = report.dim_upper = exact_dim;
}

} // namespace tmesh
