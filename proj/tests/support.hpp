// Shared fixtures and random mesh generators for the test programs.
#pragma once

#include "tmesh/tmesh.hpp"

#include <random>
#include <vector>

namespace fixtures {

using namespace tmesh;

inline Rect rect(long x0, long y0, long x1, long y1) { return Rect{x0, y0, x1, y1}; }

/// 7 cells, 12 corners, every interior segment reaches the boundary.
inline std::vector<Rect> example11_cells()
{
    return {rect(2, 0, 3, 3), rect(3, 0, 4, 3), rect(4, 0, 5, 3), rect(1, 1, 2, 2),
            rect(0, 2, 2, 3), rect(1, 3, 2, 4), rect(2, 3, 4, 4)};
}

/// [0,3]x[0,2] cut by s = 1, s = 2, then the middle strip cut by t = 1.
inline std::vector<Rect> example51_cells()
{
    return {rect(0, 0, 1, 2), rect(1, 0, 2, 1), rect(1, 1, 2, 2), rect(2, 0, 3, 2)};
}

inline HierarchicalMesh example51_hierarchy()
{
    HierarchicalMesh hm(rect(0, 0, 3, 2));
    split_cell(hm, 0, Direction::Vertical, 1);
    split_cell(hm, *hm.mesh.find_cell(rect(1, 0, 3, 2)), Direction::Vertical, 2);
    split_cell(hm, *hm.mesh.find_cell(rect(1, 0, 2, 2)), Direction::Horizontal, 1);
    return hm;
}

inline SplitOutcome split_rect(HierarchicalMesh& hm, const Rect& r, Direction d, long c)
{
    auto id = hm.mesh.find_cell(r);
    if (!id) throw std::logic_error("fixture cell missing: " + detail::describe(r));
    return split_cell(hm, *id, d, c);
}

/// Four full lines x = 6, 7 and y = 1, 7 on [0,8]^2, then four interior
/// segments created in order: rho1 (x = 3), rho2 (x = 5), rho3 (y = 3, x in
/// [5,7]) and rho4 (y = 5, x in [3,6]). rho1 blocks rho4, rho2 blocks rho3.
inline HierarchicalMesh example19_hierarchy()
{
    using D = Direction;
    HierarchicalMesh hm(rect(0, 0, 8, 8));
    split_rect(hm, rect(0, 0, 8, 8), D::Vertical, 6);
    split_rect(hm, rect(6, 0, 8, 8), D::Vertical, 7);
    for (long x : {0, 6, 7}) split_rect(hm, rect(x, 0, x == 0 ? 6 : x + 1, 8), D::Horizontal, 1);
    for (long x : {0, 6, 7}) split_rect(hm, rect(x, 1, x == 0 ? 6 : x + 1, 8), D::Horizontal, 7);
    split_rect(hm, rect(0, 1, 6, 7), D::Vertical, 3);
    split_rect(hm, rect(3, 1, 6, 7), D::Vertical, 5);
    split_rect(hm, rect(5, 1, 6, 7), D::Horizontal, 3);
    split_rect(hm, rect(6, 1, 7, 7), D::Horizontal, 3);
    split_rect(hm, rect(3, 1, 5, 7), D::Horizontal, 5);
    split_rect(hm, rect(5, 3, 6, 7), D::Horizontal, 5);
    return hm;
}

/// The MIS of example 1.9 as (rho1, rho2, rho3, rho4) segment ids.
inline std::vector<int> example19_rhos(const SegmentAnalysis& a)
{
    auto find = [&](Direction d, long c) {
        for (int id : a.mis) {
            if (a.segment(id).direction == d && a.segment(id).coordinate == c) return id;
        }
        throw std::logic_error("rho missing");
    };
    return {find(Direction::Vertical, 3), find(Direction::Vertical, 5), find(Direction::Horizontal, 3),
            find(Direction::Horizontal, 5)};
}

/// T1 = 3x3 grid on [0,9]^2.
inline HierarchicalMesh example52_t1()
{
    using D = Direction;
    HierarchicalMesh hm(rect(0, 0, 9, 9));
    split_rect(hm, rect(0, 0, 9, 9), D::Vertical, 3);
    split_rect(hm, rect(3, 0, 9, 9), D::Vertical, 6);
    for (long x : {0, 3, 6}) split_rect(hm, rect(x, 0, x + 3, 9), D::Horizontal, 3);
    for (long x : {0, 3, 6}) split_rect(hm, rect(x, 3, x + 3, 9), D::Horizontal, 6);
    return hm;
}

/// T2: the centre cell of T1 cut into 3x3 by t = 4, 5 and s = 4, 5.
inline HierarchicalMesh example52_t2()
{
    using D = Direction;
    auto hm = example52_t1();
    split_rect(hm, rect(3, 3, 6, 6), D::Horizontal, 4);
    split_rect(hm, rect(3, 4, 6, 6), D::Horizontal, 5);
    for (long y : {3, 4, 5}) split_rect(hm, rect(3, y, 6, y + 1), D::Vertical, 4);
    for (long y : {3, 4, 5}) split_rect(hm, rect(4, y, 6, y + 1), D::Vertical, 5);
    return hm;
}

/// Four mutually blocking segments around the centre cell [2,3]^2, framed by
/// the full lines x = 1, 4 and y = 1, 4 on [0,5]^2. Not hierarchical.
inline std::vector<Rect> pinwheel_cells()
{
    std::vector<Rect> out;
    const long cuts[] = {0, 1, 4, 5};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != 1 || j != 1) out.push_back(rect(cuts[i], cuts[j], cuts[i + 1], cuts[j + 1]));
    out.push_back(rect(1, 1, 3, 2));
    out.push_back(rect(3, 1, 4, 3));
    out.push_back(rect(2, 3, 4, 4));
    out.push_back(rect(1, 2, 2, 4));
    out.push_back(rect(2, 2, 3, 3));
    return out;
}

/// Full tensor grid with the given cut lines (including the domain ends).
inline std::vector<Rect> grid_cells(const std::vector<long>& xs, const std::vector<long>& ys)
{
    std::vector<Rect> out;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        for (std::size_t j = 0; j + 1 < ys.size(); ++j) out.push_back(rect(xs[i], ys[j], xs[i + 1], ys[j + 1]));
    return out;
}

/// Random split of a random cell at an integer coordinate. Smaller cells
/// are preferred so that interior segments appear often.
struct RandomSplit {
    int cell = -1;
    Direction direction = Direction::Vertical;
    long coordinate = 0;
};

inline std::optional<RandomSplit> pick_split(const TMesh& mesh, std::mt19937& rng)
{
    const auto cells = mesh.cells();
    for (int attempt = 0; attempt < 64; ++attempt) {
        // Two draws, keep the smaller cell.
        int a = static_cast<int>(rng() % cells.size()), b = static_cast<int>(rng() % cells.size());
        auto area = [&](int c) -> Rational { return (cells[c].rect.x1 - cells[c].rect.x0) * (cells[c].rect.y1 - cells[c].rect.y0); };
        int c = area(a) <= area(b) ? a : b;
        const Rect& r = cells[c].rect;
        bool vertical = rng() % 2 == 0;
        Rational lo = vertical ? r.x0 : r.y0, hi = vertical ? r.x1 : r.y1;
        if (hi - lo < 2) {
            vertical = !vertical;
            lo = vertical ? r.x0 : r.y0;
            hi = vertical ? r.x1 : r.y1;
            if (hi - lo < 2) continue;
        }
        long l = lo.get_num().get_si(), h = hi.get_num().get_si();
        long coord = l + 1 + static_cast<long>(rng() % static_cast<unsigned>(h - l - 1));
        return RandomSplit{c, vertical ? Direction::Vertical : Direction::Horizontal, coord};
    }
    return std::nullopt;
}

/// Random hierarchical mesh on [0,size]^2 with at most `max_cells` cells.
inline HierarchicalMesh random_hierarchy(std::mt19937& rng, int max_cells, long size = 16)
{
    HierarchicalMesh hm(rect(0, 0, size, size));
    int target = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_cells));
    while (static_cast<int>(hm.mesh.cells().size()) < target) {
        auto s = pick_split(hm.mesh, rng);
        if (!s) break;
        split_cell(hm, s->cell, s->direction, s->coordinate);
    }
    return hm;
}

/// Grid cells under a random monotone staircase; usually not a rectangle.
inline std::vector<Rect> random_staircase(std::mt19937& rng)
{
    std::vector<long> xs{0}, ys{0};
    int nx = 2 + static_cast<int>(rng() % 3), ny = 2 + static_cast<int>(rng() % 3);
    for (int i = 0; i < nx; ++i) xs.push_back(xs.back() + 1 + static_cast<long>(rng() % 3));
    for (int j = 0; j < ny; ++j) ys.push_back(ys.back() + 1 + static_cast<long>(rng() % 3));
    std::vector<int> height(nx);
    int h = ny;
    for (int i = 0; i < nx; ++i) {
        height[i] = h;
        if (h > 1 && rng() % 2 == 0) h -= 1;
    }
    std::vector<Rect> out;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < height[i]; ++j) out.push_back(rect(xs[i], ys[j], xs[i + 1], ys[j + 1]));
    return out;
}

inline std::vector<long> random_cuts(std::mt19937& rng, int lines)
{
    std::vector<long> out{0};
    for (int i = 0; i <= lines; ++i) out.push_back(out.back() + 1 + static_cast<long>(rng() % 3));
    return out;
}

} // namespace fixtures
