// Acceptance checks. Prints one PASS/FAIL line per criterion.
// Usage: acceptance [criterion...]   (no argument runs all eleven)
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace tmesh;
using namespace fixtures;

namespace {

/// Collects the first failure of a criterion.
struct Check {
    std::ostringstream detail;
    bool ok = true;

    template <class A, class B>
    void eq(const A& got, const B& want, const std::string& what)
    {
        if (ok && !(got == want)) {
            ok = false;
            detail << what << ": got " << got << ", expected " << want;
        }
    }
    void that(bool cond, const std::string& what)
    {
        if (ok && !cond) {
            ok = false;
            detail << what;
        }
    }
};

std::string mesh_tag(const TMesh& mesh)
{
    return "mesh with " + std::to_string(mesh.cells().size()) + " cells";
}

void criterion1(Check& c)
{
    auto mesh = build_mesh(example11_cells());
    auto s = stats(mesh);
    c.eq(s.f2, 7, "f2");
    c.eq(s.f1_interior, 9, "f1o");
    c.eq(s.f1_horizontal, 4, "f1h");
    c.eq(s.f1_vertical, 5, "f1v");
    c.eq(s.f0_interior, 3, "f0o");
    c.eq(s.f0_boundary, 15, "f0b");
    c.eq(s.corners, 12, "corners");
    c.eq(s.f2 - s.f1_interior + s.f0_interior, 1, "Euler");
    c.that(maximal_segments(mesh).mis.empty(), "MIS set should be empty");
}

void criterion2(Check& c)
{
    auto mesh = build_mesh(example51_cells());
    Degree deg{2, 2};
    auto dist = constant_distribution(mesh, 1, 1);
    c.eq(combinatorial_term(mesh, dist, deg), 14, "combinatorial term");
    auto report = dimension_bounds(mesh, dist, deg);
    c.eq(std::string(to_string(report.certificate.kind)), std::string("small-weights-equality"), "certificate");
    c.eq(report.certificate.h.value_or(-1), 1, "certified h");
    c.eq(report.dim_lower, 15, "dim lower");
    c.eq(report.dim_upper, 15, "dim upper");
    auto system = build_spline_system(mesh, dist, deg);
    c.eq(system.rows(), 30, "system rows");
    c.eq(system.cols(), 36, "system cols");
    c.eq(rational_rank(system), 21, "system rank");
    c.eq(spline_dimension_exact(mesh, dist, deg), 15, "oracle dim");
    c.eq(h_exact(mesh, dist, deg), 1, "h_exact");
    c.eq(h_via_h0(mesh, dist, deg), 1, "h_via_h0");
    c.eq(h_via_mis_presentation(mesh, dist, deg), 1, "h_via_mis_presentation");
}

void criterion3(Check& c)
{
    auto t1 = example52_t1();
    auto t2 = example52_t2();
    auto s1 = stats(t1.mesh), s2 = stats(t2.mesh);
    c.eq(s2.f2 - s1.f2, 8, "delta f2");
    c.eq(s2.f1_interior - s1.f1_interior, 20, "delta f1o");
    c.eq(s2.f0_interior - s1.f0_interior, 12, "delta f0o");
    Degree deg{2, 2};
    auto d1 = constant_distribution(t1.mesh, 1, 1), d2 = constant_distribution(t2.mesh, 1, 1);
    int dim1 = spline_dimension_exact(t1.mesh, d1, deg), dim2 = spline_dimension_exact(t2.mesh, d2, deg);
    c.eq(dim1, 25, "dim T1");
    c.eq(dim2, dim1 + 1, "dim T2");
    // Replaying the recorded history reproduces T2.
    auto again = replay(t2.history);
    c.that(again.mesh.rectangles() == t2.mesh.rectangles(), "replay differs");
    auto analysis = maximal_segments(t2.mesh);
    auto ordering = appearance_ordering(t2.history, analysis);
    c.that(is_weighted(t2.mesh, analysis, d2, deg, ordering, 2, 2), "T2 should be (2,2)-weighted");
    c.that(!is_weighted(t2.mesh, analysis, d2, deg, ordering, 3, 3), "T2 should not be (3,3)-weighted");
    // No ordering at all makes it (3,3)-weighted.
    auto perm = analysis.mis;
    do {
        c.that(!is_weighted(t2.mesh, analysis, d2, deg, ordering_from_sequence(perm), 3, 3),
               "some ordering makes T2 (3,3)-weighted");
    } while (std::next_permutation(perm.begin(), perm.end()));
}

void criterion4(Check& c)
{
    auto hm = example19_hierarchy();
    auto analysis = maximal_segments(hm.mesh);
    c.eq(analysis.mis.size(), 4u, "MIS count");
    auto rho = example19_rhos(analysis);
    std::vector<std::pair<int, int>> want{{rho[0], rho[3]}, {rho[1], rho[2]}};
    std::sort(want.begin(), want.end());
    c.that(analysis.blocking == want, "blocking should be rho1->rho4, rho2->rho3");
    auto ordering = ordering_from_sequence(rho);
    c.that(ordering.respects_blocking(analysis), "iota(rho_i) = i should respect blocking");
    c.that(appearance_ordering(hm.history, analysis).sequence == rho, "appearance order should be rho1..rho4");
    Degree deg{2, 2};
    auto dist = constant_distribution(hm.mesh, 1, 1);
    const int expected[] = {2, 2, 3, 3};
    for (int i = 0; i < 4; ++i)
        c.eq(gamma_lambda_weight(hm.mesh, analysis, dist, deg, ordering, rho[i]).omega, expected[i],
             "omega(rho" + std::to_string(i + 1) + ")");
    int bound = h_upper_bound(hm.mesh, analysis, dist, deg, ordering).total;
    c.eq(bound, 2, "h upper bound");
    int h = h_exact(hm.mesh, dist, deg);
    c.that(0 <= h && h <= bound, "oracle h outside [0, 2]");
    c.eq(h_via_h0(hm.mesh, dist, deg), h, "h_via_h0");
    c.eq(h_via_mis_presentation(hm.mesh, dist, deg), h, "h_via_mis_presentation");
    c.detail << "oracle h = " << h;
}

void criterion5(Check& c)
{
    long configurations = 0;
    for (int n = 0; n <= 8 && c.ok; ++n) {
        for (int mask = 1; mask < 32 && c.ok; ++mask) {
            std::vector<Rational> points;
            for (int a = 0; a < 5; ++a)
                if (mask & (1 << a)) points.push_back(a);
            if (points.size() > 4) continue;
            std::vector<int> ds(points.size(), 0);
            for (;;) {
                int closed = apolar_dim(n, points, ds);
                int brute = apolar_dim_bruteforce(n, points, ds);
                ++configurations;
                if (closed != brute) {
                    std::ostringstream what;
                    what << "n=" << n << " points mask " << mask;
                    c.eq(brute, closed, what.str());
                    break;
                }
                std::size_t k = 0;
                while (k < ds.size() && ds[k] == n) ds[k++] = 0;
                if (k == ds.size()) break;
                ++ds[k];
            }
        }
    }
    if (c.ok) c.detail << configurations << " configurations";
}

/// Random (m, m', r, r') with r < m, r' < m'; `exact_case` asks for m >= 2r+1.
struct Params {
    Degree deg;
    int r = 0;
    int rp = 0;
};

Params random_params(std::mt19937& rng, bool exact_case)
{
    Params p;
    p.deg.m = 1 + static_cast<int>(rng() % 4);
    p.deg.n = 1 + static_cast<int>(rng() % 4);
    int rmax = exact_case ? (p.deg.m - 1) / 2 : p.deg.m - 1;
    int rpmax = exact_case ? (p.deg.n - 1) / 2 : p.deg.n - 1;
    p.r = static_cast<int>(rng() % static_cast<unsigned>(rmax + 1));
    p.rp = static_cast<int>(rng() % static_cast<unsigned>(rpmax + 1));
    return p;
}

void criterion6(Check& c)
{
    std::mt19937 rng(6);
    int with_mis = 0, positive_h = 0;
    for (int trial = 0; trial < 200 && c.ok; ++trial) {
        auto hm = random_hierarchy(rng, 40);
        auto p = random_params(rng, false);
        auto dist = constant_distribution(hm.mesh, p.r, p.rp);
        int dim = spline_dimension_exact(hm.mesh, dist, p.deg);
        int C = combinatorial_term(hm.mesh, dist, p.deg);
        int h0 = h_via_h0(hm.mesh, dist, p.deg);
        int hp = h_via_mis_presentation(hm.mesh, dist, p.deg);
        std::string tag = "trial " + std::to_string(trial) + " (" + mesh_tag(hm.mesh) + ")";
        c.eq(dim, C + h0, tag + ": dim vs C + h_via_h0");
        c.eq(h0, hp, tag + ": h_via_h0 vs h_via_mis_presentation");
        with_mis += !maximal_segments(hm.mesh).mis.empty();
        positive_h += h0 > 0;
    }
    if (c.ok) c.detail << "200 meshes, " << with_mis << " with MIS, " << positive_h << " with h > 0";
}

void criterion7(Check& c)
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200 && c.ok; ++trial) {
        auto hm = random_hierarchy(rng, 40);
        auto p = random_params(rng, true);
        auto dist = constant_distribution(hm.mesh, p.r, p.rp);
        int dim = spline_dimension_exact(hm.mesh, dist, p.deg);
        std::string tag = "trial " + std::to_string(trial);
        c.eq(dim - combinatorial_term(hm.mesh, dist, p.deg), 0, tag + ": oracle h");
        c.eq(dim, combinatorial_term_constant(stats(hm.mesh), p.deg, p.r, p.rp), tag + ": constant-smoothness formula");
        auto report = dimension_bounds(hm.mesh, dist, p.deg, OrderingPolicy::Auto, &hm.history);
        c.that(report.certificate.h == 0, tag + ": expected a certificate for h = 0");
    }
}

void criterion8(Check& c)
{
    std::mt19937 rng(8);
    long meshes = 0;
    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        Degree deg{1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3)};
        int r = static_cast<int>(rng() % static_cast<unsigned>(deg.m));
        int rp = static_cast<int>(rng() % static_cast<unsigned>(deg.n));
        SmoothnessDistribution dist(r, rp);
        HierarchicalMesh hm(rect(0, 0, 32, 32));
        int steps = 1 + static_cast<int>(rng() % 10);
        for (int step = 0; step < steps && c.ok; ++step) {
            auto s = pick_split(hm.mesh, rng);
            if (!s) break;
            weighted_split(hm, s->cell, s->direction, s->coordinate, dist, deg, deg.m + 1, deg.n + 1);
            auto analysis = maximal_segments(hm.mesh);
            auto ordering = appearance_ordering(hm.history, analysis);
            std::string tag = "trial " + std::to_string(trial) + " step " + std::to_string(step);
            c.that(is_weighted(hm.mesh, analysis, dist, deg, ordering, deg.m + 1, deg.n + 1), tag + ": not weighted");
            c.eq(h_exact(hm.mesh, dist, deg), 0, tag + ": oracle h");
            ++meshes;
        }
    }
    if (c.ok) c.detail << meshes << " intermediate meshes";
}

void criterion9(Check& c)
{
    std::mt19937 rng(9);
    int tight = 0;
    for (int trial = 0; trial < 50 && c.ok; ++trial) {
        auto hm = random_hierarchy(rng, 30);
        auto s = stats(hm.mesh);
        std::string tag = "trial " + std::to_string(trial);
        auto d00 = constant_distribution(hm.mesh, 0, 0);
        c.eq(spline_dimension_exact(hm.mesh, d00, {1, 1}), s.f0_crossing + s.f0_boundary, tag + ": S^{0,0}_{1,1}");
        auto d11 = constant_distribution(hm.mesh, 1, 1);
        c.eq(spline_dimension_exact(hm.mesh, d11, {3, 3}), 4 * (s.f0_crossing + s.f0_boundary), tag + ": S^{1,1}_{3,3}");
        int lower = 9 * s.f2 - 6 * s.f1_interior + 4 * s.f0_interior;
        int sigma = new_segment_levels(hm.history);
        int dim = spline_dimension_exact(hm.mesh, d11, {2, 2});
        c.that(lower <= dim && dim <= lower + sigma,
               tag + ": biquadratic dim " + std::to_string(dim) + " outside [" + std::to_string(lower) + ", "
                   + std::to_string(lower + sigma) + "]");
        tight += sigma > 0 && dim == lower + sigma;
    }
    if (c.ok) c.detail << tight << " meshes reach the upper bound with sigma > 0";
}

std::vector<Rect> random_resplit(std::vector<Rect> rects, std::mt19937& rng, int splits)
{
    for (int k = 0; k < splits; ++k) {
        auto mesh = build_mesh(rects);
        auto s = pick_split(mesh, rng);
        if (!s) break;
        Rect r = mesh.cell(s->cell).rect, a = r, b = r;
        if (s->direction == Direction::Vertical) {
            a.x1 = s->coordinate;
            b.x0 = s->coordinate;
        } else {
            a.y1 = s->coordinate;
            b.y0 = s->coordinate;
        }
        rects = mesh.rectangles();
        rects.erase(rects.begin() + s->cell);
        rects.push_back(a);
        rects.push_back(b);
    }
    return rects;
}

void criterion10(Check& c)
{
    std::mt19937 rng(10);
    for (int trial = 0; trial < 50 && c.ok; ++trial) {
        auto hm = random_hierarchy(rng, 40);
        auto report = check_counting_identities(hm.mesh);
        c.that(report.rectangular_domain, "random hierarchy should have a rectangular domain");
        for (const auto& check : report.checks) c.that(check.applicable && check.holds, "trial " + std::to_string(trial) + ": " + check.name);
    }
    int non_rectangular = 0;
    std::vector<std::vector<Rect>> others{example11_cells(), pinwheel_cells()};
    for (int trial = 0; trial < 50; ++trial) {
        auto base = random_staircase(rng);
        // Scale by 4 so cells can be cut at integer coordinates.
        for (auto& r : base) r = Rect{r.x0 * 4, r.y0 * 4, r.x1 * 4, r.y1 * 4};
        others.push_back(random_resplit(base, rng, static_cast<int>(rng() % 12)));
    }
    for (const auto& rects : others) {
        if (!c.ok) break;
        auto mesh = build_mesh(rects);
        auto s = stats(mesh);
        non_rectangular += s.corners != 4;
        c.eq(s.f2 - s.f1_interior + s.f0_interior, 1, "Euler on " + mesh_tag(mesh));
        auto report = check_counting_identities(mesh);
        c.that(report.all_hold(), "applicable identities fail on " + mesh_tag(mesh));
    }
    if (c.ok) c.detail << "50 rectangular + " << others.size() << " others (" << non_rectangular << " non-rectangular)";
}

void criterion11(Check& c)
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50 && c.ok; ++trial) {
        auto xs = random_cuts(rng, static_cast<int>(rng() % 3));
        auto ys = random_cuts(rng, static_cast<int>(rng() % 3));
        for (auto& x : xs) x *= 4;
        for (auto& y : ys) y *= 4;
        Degree deg{1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3)};
        // Per-node smoothness, possibly above the degree; new nodes get the default.
        SmoothnessDistribution dist(static_cast<int>(rng() % deg.m), static_cast<int>(rng() % deg.n));
        long uni_s = deg.m + 1, uni_t = deg.n + 1;
        for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
            int r = static_cast<int>(rng() % (deg.m + 2));
            dist.set_h(xs[i], r);
            uni_s += std::max(0, deg.m - r);
        }
        for (std::size_t j = 1; j + 1 < ys.size(); ++j) {
            int r = static_cast<int>(rng() % (deg.n + 2));
            dist.set_v(ys[j], r);
            uni_t += std::max(0, deg.n - r);
        }
        auto rects = grid_cells(xs, ys);
        auto mesh = build_mesh(rects);
        int dim = spline_dimension_exact(mesh, dist, deg);
        std::string tag = "grid trial " + std::to_string(trial);
        c.eq(dim, uni_s * uni_t, tag + ": tensor product");
        // Refinement never loses splines.
        int previous = dim;
        for (int k = 0; k < 3 && c.ok; ++k) {
            rects = random_resplit(rects, rng, 1);
            int refined = spline_dimension_exact(build_mesh(rects), dist, deg);
            c.that(refined >= previous, tag + ": dimension dropped after a split");
            previous = refined;
        }
    }
}

const std::function<void(Check&)> kCriteria[] = {criterion1, criterion2, criterion3, criterion4,
                                                  criterion5, criterion6, criterion7, criterion8,
                                                  criterion9, criterion10, criterion11};

const char* kNames[] = {"example 1.1 face counts",
                        "example 5.1 dimension 15, h = 1 three ways",
                        "example 5.2 refinement adds one spline",
                        "example 1.9 weights and bound",
                        "apolar closed form vs brute force",
                        "dimension formula vs oracle on random hierarchies",
                        "hierarchical exactness for m >= 2r+1",
                        "weighted rule keeps h = 0",
                        "small-degree closed forms",
                        "counting identities and Euler",
                        "tensor grids and refinement monotonicity"};

bool run(int k)
{
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
        kCriteria[k - 1](c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.detail << "exception: " << e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", seconds);
    std::string detail = c.detail.str();
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << k << ": " << kNames[k - 1] << " [" << timing << "]"
              << (detail.empty() ? "" : " - " + detail) << std::endl;
    return c.ok;
}

} // namespace

int main(int argc, char** argv)
{
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) {
        int k = std::atoi(argv[i]);
        if (k < 1 || k > 11) {
            std::cerr << "criterion must be in 1..11\n";
            return 2;
        }
        which.push_back(k);
    }
    if (which.empty())
        for (int k = 1; k <= 11; ++k) which.push_back(k);
    bool ok = true;
    for (int k : which) ok = run(k) && ok;
    return ok ? 0 : 1;
}
