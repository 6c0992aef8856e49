#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "oracles.hpp"
#include "perc/detour.hpp"
#include "perc/rng.hpp"

using namespace perc;

namespace {

Configuration sample_bond(int n, double p, std::uint64_t seed) {
    return Configuration::sample({ModelKind::square_bond, p},
                                 Grid::centered_box(n), seed);
}

}  // namespace

TEST_CASE("no detours in the all-open box") {
    auto config = sample_bond(3, 1.0, 1);
    auto lowest = lowest_crossing(config);
    REQUIRE(lowest.has_value());
    CHECK(find_shielded_detours(config, *lowest, 1.0, 6).empty());
}

TEST_CASE("epsilon below 1/window leaves condition 3 unsatisfiable") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto config = sample_bond(4, 0.5, mix_pair(8000, seed));
        auto lowest = lowest_crossing(config);
        if (!lowest) continue;
        const int window = 6;
        CHECK(find_shielded_detours(config, *lowest, 0.9 / window, window)
                  .empty());
    }
}

TEST_CASE("argument validation") {
    auto config = sample_bond(3, 0.5, 77);
    auto lowest = lowest_crossing(config);
    REQUIRE(lowest.has_value());
    CHECK_THROWS_AS(find_shielded_detours(config, *lowest, 0.0, 6),
                    std::invalid_argument);
    CHECK_THROWS_AS(find_shielded_detours(config, *lowest, 0.5, 1),
                    std::invalid_argument);
    Path bogus{{{-3, 0}, {-2, 0}}};
    CHECK_THROWS_AS(find_shielded_detours(config, bogus, 0.5, 6),
                    std::invalid_argument);
    auto site = Configuration::sample({ModelKind::triangular_site, 0.5},
                                      Grid::centered_box(3), 77);
    CHECK_THROWS_AS(find_shielded_detours(site, *lowest, 0.5, 6),
                    std::invalid_argument);
}

TEST_CASE("found anchor pairs match the exhaustive oracle") {
    for (int n : {2, 3}) {
        for (double epsilon : {0.5, 1.0}) {
            for (std::uint64_t seed = 0; seed < 150; ++seed) {
                auto config = sample_bond(n, 0.5, mix_pair(8100 + n, seed));
                auto lowest = lowest_crossing(config);
                if (!lowest) continue;
                // window = full length: unwindowed, as the oracle runs
                auto found = find_shielded_detours(
                    config, *lowest, epsilon,
                    std::max(2, lowest->length()));
                std::set<std::pair<int, int>> fast_pairs;
                for (const Detour& d : found)
                    fast_pairs.insert({d.span_begin, d.span_end});
                auto slow_pairs =
                    oracle::detour_anchor_pairs(config, *lowest, epsilon);
                REQUIRE(fast_pairs == slow_pairs);
            }
        }
    }
}

TEST_CASE("every found detour passes the independent validator") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto config = sample_bond(5, 0.5, mix_pair(8200, seed));
        auto lowest = lowest_crossing(config);
        if (!lowest) continue;
        for (const Detour& d :
             find_shielded_detours(config, *lowest, 1.0, 10)) {
            REQUIRE(validate_detour(config, *lowest, d, 1.0));
            // stored shield witness: a closed dual path linking the anchors
            REQUIRE_FALSE(d.shield.vertices.empty());
            for (std::size_t k = 1; k < d.shield.vertices.size(); ++k) {
                Vertex a = d.shield.vertices[k - 1];
                Vertex b = d.shield.vertices[k];
                CHECK(std::abs(a.x - b.x) + std::abs(a.y - b.y) == 1);
                Edge crossing = dual_step_primal_edge(
                    {a.x, a.y}, {b.x - a.x, b.y - a.y});
                CHECK_FALSE(config.edge_open(crossing));
            }
        }
    }
}

TEST_CASE("greedy selection rules") {
    auto make = [](int b, int e) {
        Detour d;
        d.span_begin = b;
        d.span_end = e;
        return d;
    };
    CHECK(select_detour_collection({}).empty());

    auto both = select_detour_collection({make(0, 3), make(5, 8)});
    CHECK(both.size() == 2);

    auto packed = select_detour_collection({make(0, 5), make(3, 6)});
    REQUIRE(packed.size() == 1);
    CHECK(packed[0].span_begin == 0);
    CHECK(packed[0].span_end == 5);

    // shared endpoint counts as overlap
    auto shared = select_detour_collection({make(0, 4), make(4, 7)});
    REQUIRE(shared.size() == 1);
    CHECK(shared[0].span_length() == 4);
}

TEST_CASE("splice arithmetic and failure modes") {
    Path lowest;
    for (int x = -3; x <= 3; ++x) lowest.vertices.push_back({x, -3});

    Detour d;
    d.span_begin = 1;
    d.span_end = 5;
    d.gamma.vertices = {{-2, -3}, {-2, -2}, {1, -2}, {2, -3}};
    // not a real lattice path; splice only checks the walk structure
    d.gamma.vertices = {{-2, -3}, {-2, -2}, {-1, -2}, {0, -2}, {1, -2}, {2, -3}};
    Path sigma = shortcut_crossing(lowest, {d});
    CHECK(sigma.length() ==
          lowest.length() - d.span_length() + d.gamma.length());

    CHECK(shortcut_crossing(lowest, {}).vertices == lowest.vertices);

    Detour clash = d;
    clash.span_begin = 3;
    clash.span_end = 6;
    CHECK_THROWS_AS(shortcut_crossing(lowest, {d, clash}), std::runtime_error);
}

TEST_CASE("sigma is a valid open crossing between shortest and lowest") {
    int checked = 0;
    for (std::uint64_t seed = 0; checked < 120; ++seed) {
        auto config = sample_bond(8, 0.5, mix_pair(8300, seed));
        auto lowest = lowest_crossing(config);
        if (!lowest) continue;
        ++checked;
        DetourReport report = detour_report(config, *lowest, 0.5, 16);
        REQUIRE(is_open_path(config, report.sigma));
        REQUIRE(is_crossing_path(config.grid(), ModelKind::square_bond,
                                 report.sigma));
        REQUIRE(report.shortest_length <= report.sigma_length);
        REQUIRE(report.sigma_length <= report.lowest_length);
        // non-detoured indices: complement of the admitted span interiors
        std::set<int> interior;
        for (const Detour& d : report.collection)
            for (int k = d.span_begin + 1; k < d.span_end; ++k)
                interior.insert(k);
        CHECK(report.non_detoured.size() + interior.size() ==
              static_cast<std::size_t>(report.lowest_length + 1));
    }
}

TEST_CASE("detour statistics: no qualifying detours means ratio one") {
    // epsilon below 1/window: sigma equals the lowest crossing
    auto summary = detour_statistics({ModelKind::square_bond, 0.5}, 4,
                                     0.9 / 8, 8, 200, 42);
    CHECK(summary.accepted > 0);
    CHECK(summary.sigma_ratio.mean == 1.0);
    CHECK(summary.non_detoured.mean == 1.0);
}

TEST_CASE("mean non-detoured fraction is nonincreasing in epsilon") {
    auto at = [](double eps) {
        return detour_statistics({ModelKind::square_bond, 0.5}, 8, eps, 16,
                                 400, 314);
    };
    auto low = at(0.25);
    auto mid = at(0.5);
    auto high = at(1.0);
    CHECK(low.non_detoured.mean >= mid.non_detoured.mean);
    CHECK(mid.non_detoured.mean >= high.non_detoured.mean);
}
