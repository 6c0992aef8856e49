#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "perc/stats.hpp"

using namespace perc;

TEST_CASE("merge identities") {
    RunningStats x;
    x.add(3.0);
    x.add(5.0);
    RunningStats empty;
    auto merged = RunningStats::merged(x, empty);
    CHECK(merged.count() == 2);
    CHECK(merged.mean() == 4.0);

    RunningStats a, b;
    a.add(3.0);
    b.add(5.0);
    auto ab = RunningStats::merged(a, b);
    CHECK(ab.count() == 2);
    CHECK(ab.mean() == 4.0);
    CHECK(ab.min() == 3.0);
    CHECK(ab.max() == 5.0);
}

TEST_CASE("random split-merge equals single pass within 1e-9") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> value(-10.0, 10.0);
    std::vector<double> data(1000);
    for (double& v : data) v = value(rng);

    RunningStats single;
    for (double v : data) single.add(v);

    for (int rep = 0; rep < 20; ++rep) {
        std::shuffle(data.begin(), data.end(), rng);
        std::uniform_int_distribution<std::size_t> cut(1, data.size() - 1);
        std::size_t k = cut(rng), j = cut(rng);
        std::size_t lo = std::min(k, j);
        std::size_t hi = std::max(k, j);
        if (lo == hi) hi = lo + 1;
        RunningStats p1, p2, p3;
        for (std::size_t i = 0; i < lo; ++i) p1.add(data[i]);
        for (std::size_t i = lo; i < hi; ++i) p2.add(data[i]);
        for (std::size_t i = hi; i < data.size(); ++i) p3.add(data[i]);
        auto merged = RunningStats::merged(RunningStats::merged(p1, p2), p3);
        auto swapped = RunningStats::merged(p3, RunningStats::merged(p2, p1));

        for (const auto& m : {merged, swapped}) {
            CHECK(m.count() == single.count());
            CHECK(std::abs(m.mean() - single.mean()) < 1e-9);
            CHECK(std::abs(m.variance() - single.variance()) < 1e-9);
            CHECK(m.min() == single.min());
            CHECK(m.max() == single.max());
        }
    }
}

TEST_CASE("named statistics refuse mismatched merges") {
    NamedStats a{"shortest_crossing", {}};
    NamedStats b{"lowest_crossing", {}};
    CHECK_THROWS_AS(merge_statistics(a, b), std::invalid_argument);
    NamedStats c{"shortest_crossing", {}};
    CHECK_NOTHROW(merge_statistics(a, c));
}

TEST_CASE("exact power law is recovered exactly") {
    std::vector<FitPoint> points;
    for (double n : {8.0, 16.0, 32.0, 64.0, 128.0})
        points.push_back({n, n * n, 0.0});
    auto fit = fit_exponent(points);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.slope_stderr == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("constant data fits slope zero") {
    std::vector<FitPoint> points{{8, 5, 0}, {16, 5, 0}, {32, 5, 0}};
    auto fit = fit_exponent(points);
    CHECK(fit.slope == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("noisy power law recovered within two slope stderr") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> noise(0.0, 0.05);
    const double target = 1.37;
    std::vector<FitPoint> points;
    for (double n = 8; n <= 1024; n *= 2)
        points.push_back({n, std::pow(n, target) * std::exp(noise(rng)), 0.0});
    auto fit = fit_exponent(points);
    CHECK(std::abs(fit.slope - target) < 2 * fit.slope_stderr + 1e-6);
}

TEST_CASE("fit input validation") {
    CHECK_THROWS_AS(fit_exponent({{8, 1, 0}, {16, 2, 0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(fit_exponent({{8, 1, 0}, {16, 0.0, 0}, {32, 2, 0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(fit_exponent({{8, 1, 0}, {16, -3, 0}, {32, 2, 0}}),
                    std::invalid_argument);
}
