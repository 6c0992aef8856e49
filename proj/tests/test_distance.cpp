#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "perc/distance.hpp"
#include "perc/rng.hpp"

using namespace perc;

namespace {

Configuration sample_bond(int n, double p, std::uint64_t seed) {
    return Configuration::sample({ModelKind::square_bond, p},
                                 Grid::centered_box(n), seed);
}

long linf(Vertex a, Vertex b) {
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

bool connected_within(const Configuration& config, int k) {
    return restricted_chemical_distance(config, {0, 0}, {1, 0}, 1 << k)
        .value.has_value();
}

long restricted_distance(const Configuration& config, int k) {
    auto r = restricted_chemical_distance(config, {0, 0}, {1, 0}, 1 << k);
    return r.value ? *r.value : -1;
}

}  // namespace

TEST_CASE("chemical distance basics") {
    auto open = sample_bond(2, 1.0, 1);
    auto r = chemical_distance(open, {0, 0}, {1, 0});
    REQUIRE(r.value.has_value());
    CHECK(*r.value == 1);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->length() == 1);

    auto self = chemical_distance(open, {1, 1}, {1, 1});
    CHECK(*self.value == 0);
    CHECK(self.witness->vertices.size() == 1);

    auto closed = sample_bond(2, 0.0, 1);
    CHECK_FALSE(chemical_distance(closed, {0, 0}, {1, 0}).value.has_value());
    CHECK_THROWS_AS(chemical_distance(open, {0, 0}, {9, 0}),
                    std::invalid_argument);
}

TEST_CASE("forced detour around a closed edge") {
    // only {0,e1} closed among the edges of the unit square above it
    const Grid g = Grid::centered_box(2);
    // find a seed-free construction: start from all-open and flip via p-trick
    // not possible; instead scan seeds for the wanted local pattern
    for (std::uint64_t seed = 0;; ++seed) {
        auto config = sample_bond(2, 0.5, seed);
        bool pattern = !config.edge_open({{0, 0}, {1, 0}}) &&
                       config.edge_open({{0, 0}, {0, 1}}) &&
                       config.edge_open({{0, 1}, {1, 1}}) &&
                       config.edge_open({{1, 0}, {1, 1}}) &&
                       !config.edge_open({{0, -1}, {0, 0}}) &&
                       !config.edge_open({{1, -1}, {1, 0}}) &&
                       !config.edge_open({{-1, 0}, {0, 0}}) &&
                       !config.edge_open({{1, 0}, {2, 0}});
        if (!pattern) continue;
        auto r = chemical_distance(config, {0, 0}, {1, 0});
        REQUIRE(r.value.has_value());
        CHECK(*r.value == 3);
        break;
    }
}

TEST_CASE("distance properties on random configurations") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto config = sample_bond(4, 0.5, mix_pair(9000, seed));
        const Grid& g = config.grid();
        Vertex x{-2, 1}, y{1, -2}, z{2, 2};
        auto xy = chemical_distance(config, x, y);
        auto yx = chemical_distance(config, y, x);
        CHECK(xy.value == yx.value);  // symmetry
        if (xy.value) {
            CHECK(*xy.value >= linf(x, y));  // L-infinity lower bound
            CHECK(xy.witness->length() == *xy.value);
            CHECK(is_open_path(config, *xy.witness));
        }
        auto xz = chemical_distance(config, x, z);
        auto yz = chemical_distance(config, y, z);
        if (xy.value && yz.value && xz.value)
            CHECK(*xz.value <= *xy.value + *yz.value);  // triangle
    }
}

TEST_CASE("boundary distance equals the minimum over boundary targets") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto config = sample_bond(3, 0.5, mix_pair(9100, seed));
        const Grid& g = config.grid();
        auto fast = distance_to_boundary(config, {0, 0});
        std::optional<long> expected;
        for (int i = 0; i < g.vertex_count(); ++i) {
            Vertex t = g.vertex_at(i);
            if (!g.on_boundary(t)) continue;
            auto r = chemical_distance(config, {0, 0}, t);
            if (r.value && (!expected || *r.value < *expected))
                expected = *r.value;
        }
        REQUIRE(fast.value == expected);
    }
    auto any = sample_bond(3, 0.5, 1);
    CHECK(*distance_to_boundary(any, {3, 1}).value == 0);
    auto open = sample_bond(3, 1.0, 1);
    CHECK(*distance_to_boundary(open, {0, 0}).value == 3);
}

TEST_CASE("dyadic connection scale") {
    LatticeModel bond{ModelKind::square_bond, 0.5};
    // edge {0,e1} open implies k = 1
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Grid b2 = Grid::centered_box(2);
        auto probe = Configuration::sample(bond, Grid::centered_box(4), seed);
        auto k = dyadic_connection_scale(bond, seed, 2);
        if (probe.edge_open({{0, 0}, {1, 0}})) CHECK(*k == 1);
        if (k) {
            // invariant: connected at scale k, not at k-1 (for k >= 2)
            auto config = Configuration::sample(bond, Grid::centered_box(4),
                                                seed);
            CHECK(connected_within(config, *k));
            if (*k >= 2) CHECK_FALSE(connected_within(config, *k - 1));
        }
    }
    CHECK_FALSE(dyadic_connection_scale({ModelKind::square_bond, 0.0}, 9, 3)
                    .has_value());
    CHECK(*dyadic_connection_scale({ModelKind::square_bond, 1.0}, 9, 3) == 1);
}

TEST_CASE("dyadic scale forces a long connection") {
    LatticeModel bond{ModelKind::square_bond, 0.5};
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        auto k = dyadic_connection_scale(bond, mix_pair(9200, seed), 4);
        if (!k || *k < 2) continue;
        ++hits;
        const int sub = 1 << *k;
        auto config = Configuration::sample(bond, Grid::centered_box(16),
                                            mix_pair(9200, seed));
        // distance within the connecting box is at least 2^{k-1} - 1
        long dist = restricted_distance(config, *k);
        CHECK(dist >= (1L << (*k - 1)) - 1);
    }
    CHECK(hits > 0);
}

TEST_CASE("truncated second moment: degenerate p") {
    auto ones = truncated_second_moment({ModelKind::square_bond, 1.0}, 3, 50,
                                        4);
    for (auto [k, est] : ones) CHECK(est == 1.0);
    auto zeros = truncated_second_moment({ModelKind::square_bond, 0.0}, 3, 50,
                                         4);
    for (auto [k, est] : zeros) CHECK(est == 0.0);
}

TEST_CASE("truncated second moment is nondecreasing in k per construction") {
    auto est = truncated_second_moment({ModelKind::square_bond, 0.5}, 5, 3000,
                                       99);
    REQUIRE(est.size() == 5);
    for (std::size_t i = 1; i < est.size(); ++i)
        CHECK(est[i].second >= est[i - 1].second);
}

TEST_CASE("conditional tail estimates") {
    LatticeModel bond{ModelKind::square_bond, 0.5};
    auto tiny = conditional_pair_distance(bond, 4, 800, 12, 1e-9);
    CHECK(tiny.accepted > 0);
    CHECK(tiny.estimate == 1.0);  // threshold below any positive distance

    auto huge = conditional_pair_distance(bond, 1, 800, 12, 1e9);
    CHECK(huge.estimate == 0.0);

    // nonincreasing in lambda on matched seeds; threshold scales linearly
    double last = 2.0;
    double base = -1.0;
    for (double lambda : {1.0, 2.0, 4.0, 8.0}) {
        auto t = conditional_pair_distance(bond, 6, 2000, 12, lambda);
        CHECK(t.estimate <= last);
        last = t.estimate;
        if (base < 0.0) base = t.threshold / lambda;
        CHECK(t.threshold == doctest::Approx(base * lambda).epsilon(1e-12));
    }
}

TEST_CASE("restriction monotonicity on one coupled configuration") {
    LatticeModel bond{ModelKind::square_bond, 0.5};
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto config = Configuration::sample(bond, Grid::centered_box(8),
                                            mix_pair(9300, seed));
        long d_small = restricted_distance(config, 2);
        long d_big = restricted_distance(config, 3);
        if (d_small >= 0) {
            REQUIRE(d_big >= 0);
            CHECK(d_big <= d_small);
        }
    }
}
