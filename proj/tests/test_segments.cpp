#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace fixtures;

TEST_CASE("MIS-free meshes", "[segments]")
{
    for (auto cells : {example11_cells(), grid_cells({0, 1, 2}, {0, 1}), grid_cells({0, 1, 2, 3}, {0, 1, 2, 3})}) {
        auto mesh = build_mesh(cells);
        auto a = maximal_segments(mesh);
        CHECK(a.mis.empty());
        CHECK(a.blocking.empty());
        CHECK(default_ordering(a).sequence.empty());
        CHECK(is_weighted(mesh, a, SmoothnessDistribution(1, 1), {2, 2}, default_ordering(a), 100, 100));
    }
}

TEST_CASE("segments partition the interior edges", "[segments]")
{
    auto mesh = example19_hierarchy().mesh;
    auto a = maximal_segments(mesh);
    std::size_t total = 0;
    for (const auto& s : a.segments) total += s.edges.size();
    CHECK(static_cast<int>(total) == stats(mesh).f1_interior);
    for (const auto& e : mesh.edges()) CHECK((a.edge_segment[e.id] >= 0) == e.interior);
}

TEST_CASE("example 1.9", "[segments]")
{
    auto hm = example19_hierarchy();
    auto a = maximal_segments(hm.mesh);
    REQUIRE(a.mis.size() == 4);
    auto rho = example19_rhos(a);
    std::vector<std::pair<int, int>> expected{{rho[0], rho[3]}, {rho[1], rho[2]}};
    std::sort(expected.begin(), expected.end());
    CHECK(a.blocking == expected);

    auto iota = ordering_from_sequence(rho);
    CHECK(iota.respects_blocking(a));
    const SmoothnessDistribution dist(1, 1);
    const std::vector<int> omega{2, 2, 3, 3};
    for (int i = 0; i < 4; ++i) CHECK(gamma_lambda_weight(hm.mesh, a, dist, {2, 2}, iota, rho[i]).omega == omega[i]);

    // Endpoints of every MIS are in its own Gamma under this ordering.
    for (int id : a.mis) {
        auto w = gamma_lambda_weight(hm.mesh, a, dist, {2, 2}, iota, id);
        const auto& s = a.segment(id);
        CHECK(std::count(w.gamma.begin(), w.gamma.end(), s.front()) == 1);
        CHECK(std::count(w.gamma.begin(), w.gamma.end(), s.back()) == 1);
    }
}

TEST_CASE("example 5.1 weight", "[segments]")
{
    auto mesh = build_mesh(example51_cells());
    auto a = maximal_segments(mesh);
    REQUIRE(a.mis.size() == 1);
    const auto& s = a.segment(a.mis[0]);
    CHECK(s.direction == Direction::Horizontal);
    auto w = gamma_lambda_weight(mesh, a, SmoothnessDistribution(1, 1), {2, 2}, default_ordering(a), s.id);
    CHECK(w.lambda == 2);
    CHECK(w.omega == 2);
    CHECK_FALSE(is_weighted(mesh, a, SmoothnessDistribution(1, 1), {2, 2}, default_ordering(a), 3, 3));
    CHECK(is_weighted(mesh, a, SmoothnessDistribution(1, 1), {2, 2}, default_ordering(a), 2, 2));
}

TEST_CASE("constant smoothness weight is (m - r) lambda", "[segments]")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        auto hm = random_hierarchy(rng, 25);
        auto a = maximal_segments(hm.mesh);
        auto iota = default_ordering(a, &hm.history);
        for (int id : a.mis) {
            auto w = gamma_lambda_weight(hm.mesh, a, SmoothnessDistribution(1, 0), {3, 2}, iota, id);
            int factor = a.segment(id).direction == Direction::Horizontal ? 3 - 1 : 2 - 0;
            CHECK(w.omega == factor * w.lambda);
        }
    }
}

TEST_CASE("weights are invariant under scaling", "[segments]")
{
    auto cells = pinwheel_cells();
    std::vector<Rect> scaled;
    for (const auto& r : cells) scaled.push_back(Rect{r.x0 * 3 + 1, r.y0 / 2, r.x1 * 3 + 1, r.y1 / 2});
    auto m1 = build_mesh(cells), m2 = build_mesh(scaled);
    auto a1 = maximal_segments(m1), a2 = maximal_segments(m2);
    REQUIRE(a1.mis == a2.mis);
    auto o1 = default_ordering(a1), o2 = default_ordering(a2);
    CHECK(o1.sequence == o2.sequence);
    for (int id : a1.mis) {
        CHECK(gamma_lambda_weight(m1, a1, SmoothnessDistribution(0, 1), {2, 3}, o1, id).omega
              == gamma_lambda_weight(m2, a2, SmoothnessDistribution(0, 1), {2, 3}, o2, id).omega);
    }
}

TEST_CASE("pinwheel blocking cycle", "[segments]")
{
    auto mesh = build_mesh(pinwheel_cells());
    auto a = maximal_segments(mesh);
    REQUIRE(a.mis.size() == 4);
    CHECK(a.blocking.size() == 4);
    // Every MIS blocks exactly one other and is blocked by exactly one.
    for (int id : a.mis) {
        CHECK(std::count_if(a.blocking.begin(), a.blocking.end(), [&](auto p) { return p.first == id; }) == 1);
        CHECK(std::count_if(a.blocking.begin(), a.blocking.end(), [&](auto p) { return p.second == id; }) == 1);
    }
    auto iota = default_ordering(a);
    CHECK(iota.cyclic);
    CHECK(iota.source == "cycle");
    CHECK(iota.sequence.size() == 4);
    CHECK_FALSE(blocking_topological_sort(a, [](int id) { return static_cast<long>(id); }).has_value());
}
