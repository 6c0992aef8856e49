#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "perc/config.hpp"

using namespace perc;

TEST_CASE("box vertex and edge counts") {
    Grid b1 = Grid::centered_box(1);
    CHECK(b1.vertex_count() == 9);
    CHECK(b1.edge_count() == 12);
    Grid b2 = Grid::centered_box(2);
    CHECK(b2.vertex_count() == 25);
    CHECK(b2.edge_count() == 40);
    CHECK_THROWS_AS(Grid::centered_box(0), std::invalid_argument);
    CHECK_THROWS_AS(Grid::centered_box(-3), std::invalid_argument);
}

TEST_CASE("edge indexing round trips") {
    Grid g = Grid::centered_box(3);
    for (int e = 0; e < g.edge_count(); ++e)
        CHECK(g.edge_index(g.edge_at(e)) == e);
    for (int i = 0; i < g.vertex_count(); ++i)
        CHECK(g.vertex_index(g.vertex_at(i)) == i);
    for (int i = 0; i < g.dual_count(); ++i)
        CHECK(g.dual_index(g.dual_at(i)) == i);
}

TEST_CASE("degenerate occupation probabilities") {
    Grid g = Grid::centered_box(3);
    auto all_open = Configuration::sample({ModelKind::square_bond, 1.0}, g, 42);
    CHECK(all_open.open_count() == static_cast<std::size_t>(g.edge_count()));
    auto all_closed =
        Configuration::sample({ModelKind::square_bond, 0.0}, g, 42);
    CHECK(all_closed.open_count() == 0);
    auto sites = Configuration::sample({ModelKind::triangular_site, 1.0}, g, 7);
    CHECK(sites.open_count() == static_cast<std::size_t>(g.vertex_count()));
}

TEST_CASE("sampling is deterministic in (model, box, seed)") {
    Grid g = Grid::centered_box(5);
    auto a = Configuration::sample({ModelKind::square_bond, 0.5}, g, 123);
    auto b = Configuration::sample({ModelKind::square_bond, 0.5}, g, 123);
    for (int e = 0; e < g.edge_count(); ++e) CHECK(a.open(e) == b.open(e));
    auto c = Configuration::sample({ModelKind::square_bond, 0.5}, g, 124);
    int differs = 0;
    for (int e = 0; e < g.edge_count(); ++e) differs += a.open(e) != c.open(e);
    CHECK(differs > 0);
}

TEST_CASE("lazy view agrees with materialized sampling") {
    Grid g = Grid::centered_box(4);
    LatticeModel model{ModelKind::square_bond, 0.37};
    auto config = Configuration::sample(model, g, 99);
    LazyConfig lazy(model, g, 99);
    for (int e = 0; e < g.edge_count(); ++e)
        CHECK(config.open(e) == lazy.open(e));
}

TEST_CASE("open fraction within four standard errors over 1e6 edges") {
    // one big rectangle gives just over 10^6 edges
    Grid g(0, 0, 1000, 501);
    const double p = 0.37;
    auto config = Configuration::sample({ModelKind::square_bond, p}, g, 2024);
    double total = static_cast<double>(g.edge_count());
    REQUIRE(total > 1e6);
    double fraction = static_cast<double>(config.open_count()) / total;
    double se = std::sqrt(p * (1 - p) / total);
    CHECK(std::abs(fraction - p) < 4 * se);
}

TEST_CASE("dual edge geometry and state convention") {
    Grid g = Grid::centered_box(2);
    auto config = Configuration::sample({ModelKind::square_bond, 0.5}, g, 5);

    Edge e{{0, 0}, {1, 0}};
    auto dual = dual_state(config, e);
    CHECK(dual.a == DualVertex{0, -1});  // (1/2, -1/2)
    CHECK(dual.b == DualVertex{0, 0});   // (1/2, 1/2)
    CHECK(dual.open == config.edge_open(e));

    // involution: the dual pair determines the primal edge
    for (int idx = 0; idx < g.edge_count(); ++idx) {
        Edge edge = g.edge_at(idx);
        auto [a, b] = Grid::dual_of(edge);
        Edge back = (a.x == b.x) ? Edge{{a.x, b.y}, {a.x + 1, b.y}}
                                 : Edge{{b.x, b.y}, {b.x, b.y + 1}};
        CHECK(back == edge);
        CHECK(dual_state(config, edge).open == config.open(idx));
    }

    auto site = Configuration::sample({ModelKind::triangular_site, 0.5}, g, 5);
    CHECK_THROWS_AS(dual_state(site, e), std::invalid_argument);
}

TEST_CASE("monotone coupling across p") {
    Grid g = Grid::centered_box(4);
    LatticeModel base{ModelKind::square_bond, 0.5};

    auto extremes = coupled_configurations(base, g, 11, {0.0, 1.0});
    CHECK(extremes[0].open_count() == 0);
    CHECK(extremes[1].open_count() ==
          static_cast<std::size_t>(g.edge_count()));

    auto pair = coupled_configurations(base, g, 11, {0.4, 0.6});
    for (int e = 0; e < g.edge_count(); ++e)
        if (pair[0].open(e)) CHECK(pair[1].open(e));

    auto same = coupled_configurations(base, g, 11, {0.5, 0.5});
    for (int e = 0; e < g.edge_count(); ++e)
        CHECK(same[0].open(e) == same[1].open(e));

    CHECK_THROWS_AS(coupled_configurations(base, g, 11, {0.6, 0.4}),
                    std::invalid_argument);
}

TEST_CASE("self-dual rectangle dimensions") {
    Grid r = Grid::self_dual_rectangle(16);
    CHECK(r.width() == 17);
    CHECK(r.height() == 16);
}
