#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "perc/clusters.hpp"
#include "perc/rng.hpp"

using namespace perc;

namespace {

Configuration sample_bond(int n, double p, std::uint64_t seed) {
    return Configuration::sample({ModelKind::square_bond, p},
                                 Grid::centered_box(n), seed);
}

}  // namespace

TEST_CASE("cluster labels match DFS oracle") {
    for (auto kind : {ModelKind::square_bond, ModelKind::triangular_site}) {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            auto config = Configuration::sample({kind, 0.5},
                                                Grid::centered_box(3), seed);
            ClusterView clusters = build_clusters(config);
            auto oracle_labels = oracle::dfs_component_labels(config);
            const Grid& g = config.grid();
            for (int a = 0; a < g.vertex_count(); ++a)
                for (int b = a + 1; b < g.vertex_count(); ++b) {
                    bool same_fast = clusters.label(g.vertex_at(a)) ==
                                     clusters.label(g.vertex_at(b));
                    bool same_oracle =
                        oracle_labels[static_cast<std::size_t>(a)] ==
                        oracle_labels[static_cast<std::size_t>(b)];
                    REQUIRE(same_fast == same_oracle);
                }
        }
    }
}

TEST_CASE("crossing event on degenerate configurations") {
    CHECK(has_left_right_crossing(sample_bond(3, 1.0, 1)));
    CHECK_FALSE(has_left_right_crossing(sample_bond(3, 0.0, 1)));
    auto sites_open = Configuration::sample({ModelKind::triangular_site, 1.0},
                                            Grid::centered_box(3), 1);
    CHECK(has_left_right_crossing(sites_open));
}

TEST_CASE("connected: basics and errors") {
    auto config = sample_bond(2, 1.0, 3);
    CHECK(connected(config, {0, 0}, {0, 0}));
    CHECK(connected(config, {-2, -2}, {2, 2}));
    CHECK_THROWS_AS(connected(config, {0, 0}, {5, 5}), std::invalid_argument);

    auto closed = sample_bond(2, 0.0, 3);
    CHECK(connected(closed, {1, 1}, {1, 1}));
    CHECK_FALSE(connected(closed, {0, 0}, {1, 0}));
}

TEST_CASE("connected_to_boundary matches the oracle labels") {
    for (std::uint64_t seed = 100; seed < 200; ++seed) {
        auto config = sample_bond(3, 0.5, seed);
        const Grid& g = config.grid();
        auto labels = oracle::dfs_component_labels(config);
        std::vector<std::uint8_t> boundary_label(
            static_cast<std::size_t>(g.vertex_count()), 0);
        for (int i = 0; i < g.vertex_count(); ++i)
            if (g.on_boundary(g.vertex_at(i)))
                boundary_label[static_cast<std::size_t>(
                    labels[static_cast<std::size_t>(i)])] = 1;
        for (int i = 0; i < g.vertex_count(); ++i) {
            bool expected = boundary_label[static_cast<std::size_t>(
                                labels[static_cast<std::size_t>(i)])] != 0;
            REQUIRE(connected_to_boundary(config, g.vertex_at(i)) == expected);
        }
    }
    auto closed = sample_bond(2, 0.0, 7);
    CHECK_FALSE(connected_to_boundary(closed, {0, 0}));
    CHECK(connected_to_boundary(closed, {2, 0}));
}

TEST_CASE("exact duality on the self-dual rectangle") {
    const Grid rect = Grid::self_dual_rectangle(8);
    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
        auto config = Configuration::sample({ModelKind::square_bond, 0.5},
                                            rect, mix_pair(404, seed));
        bool primal = has_left_right_crossing(config);
        bool dual = dual_top_bottom_closed_crossing(config);
        REQUIRE(primal != dual);
    }
    // degenerate ends
    auto open = Configuration::sample({ModelKind::square_bond, 1.0}, rect, 0);
    CHECK(has_left_right_crossing(open));
    CHECK_FALSE(dual_top_bottom_closed_crossing(open));
    auto closed = Configuration::sample({ModelKind::square_bond, 0.0}, rect, 0);
    CHECK_FALSE(has_left_right_crossing(closed));
    CHECK(dual_top_bottom_closed_crossing(closed));
}

TEST_CASE("exact duality on the square box") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        auto config = sample_bond(5, 0.5, mix_pair(505, seed));
        REQUIRE(has_left_right_crossing(config) !=
                dual_top_bottom_closed_crossing(config));
    }
}

TEST_CASE("self-matching duality for site percolation") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        auto config = Configuration::sample({ModelKind::triangular_site, 0.5},
                                            Grid::centered_box(4),
                                            mix_pair(606, seed));
        REQUIRE(has_left_right_crossing(config) !=
                closed_site_top_bottom_crossing(config));
    }
}

TEST_CASE("crossing is monotone under coupling") {
    const Grid g = Grid::centered_box(6);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto configs = coupled_configurations({ModelKind::square_bond, 0.5}, g,
                                              seed, {0.3, 0.5, 0.7, 1.0});
        bool previous = false;
        for (const auto& config : configs) {
            bool now = has_left_right_crossing(config);
            if (previous) REQUIRE(now);
            previous = now;
        }
    }
}
