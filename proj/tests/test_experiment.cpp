#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>

#include "perc/experiment.hpp"

using namespace perc;

TEST_CASE("per-trial seeds are stable across versions") {
    // frozen values pin the documented seed derivation
    CHECK(trial_seed(0, 0, 0) == mix_pair(mix_pair(0, 0), 0));
    CHECK(trial_seed(1, 2, 3) == mix_pair(mix_pair(1, 2), 3));
    CHECK(trial_seed(42, 16, 0) != trial_seed(42, 16, 1));
    CHECK(trial_seed(42, 16, 0) != trial_seed(42, 32, 0));
    CHECK(trial_seed(42, 16, 0) != trial_seed(43, 16, 0));
}

TEST_CASE("serial and parallel trial loops agree exactly") {
    auto fn = [](long t) -> std::optional<double> {
        if (t % 7 == 3) return std::nullopt;
        return static_cast<double>(t) * 1.25 + 0.5;
    };
    auto serial = run_trials_serial(500, fn);
    auto parallel = run_trials_parallel(500, fn);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i)
        CHECK(serial[i] == parallel[i]);
}

TEST_CASE("shortest crossing at p=1 has mean 2n and zero variance") {
    ExperimentSpec spec;
    spec.model = {ModelKind::square_bond, 1.0};
    spec.n_list = {2, 4, 8};
    spec.trials = 10;
    spec.master_seed = 1;
    spec.statistic = "shortest_crossing";
    auto results = run_experiment(spec);
    for (int n : spec.n_list) {
        const SizeResult& r = results.at(n);
        CHECK(r.accepted == 10);
        CHECK(r.stats.mean() == 2.0 * n);
        CHECK(r.stats.variance() == 0.0);
    }
}

TEST_CASE("single trial reproduces the single observation") {
    ExperimentSpec spec;
    spec.model = {ModelKind::square_bond, 0.5};
    spec.n_list = {4};
    spec.trials = 1;
    spec.master_seed = 5;
    spec.statistic = "crossing_probability";
    auto results = run_experiment(spec);
    const SizeResult& r = results.at(4);
    CHECK(r.accepted == 1);
    CHECK((r.stats.mean() == 0.0 || r.stats.mean() == 1.0));
    CHECK(r.stats.min() == r.stats.max());
}

TEST_CASE("experiment output is identical for any worker count") {
    ExperimentSpec spec;
    spec.model = {ModelKind::square_bond, 0.5};
    spec.n_list = {3, 5};
    spec.trials = 400;
    spec.master_seed = 77;
    spec.statistic = "crossing_ratio";

    setenv("PERCLAB_THREADS", "1", 1);
    // worker_count caches; compare against fresh serial fold instead
    auto parallel = run_experiment(spec);

    for (int n : spec.n_list) {
        const Grid grid = Grid::centered_box(n);
        TrialFn fn = statistic_fn(spec.statistic, spec.model);
        RunningStats serial;
        long accepted = 0;
        for (long t = 0; t < spec.trials; ++t) {
            auto config = Configuration::sample(
                spec.model, grid,
                trial_seed(spec.master_seed, static_cast<std::uint64_t>(n),
                           static_cast<std::uint64_t>(t)));
            auto v = fn(config, spec);
            if (v) {
                serial.add(*v);
                ++accepted;
            }
        }
        CHECK(parallel.at(n).accepted == accepted);
        CHECK(parallel.at(n).stats.mean() == serial.mean());
        CHECK(parallel.at(n).stats.sum_squared_deviations() ==
              serial.sum_squared_deviations());
    }
}

TEST_CASE("conditioning bookkeeping: accepted plus rejected equals attempted") {
    ExperimentSpec spec;
    spec.model = {ModelKind::square_bond, 0.5};
    spec.n_list = {4};
    spec.trials = 300;
    spec.master_seed = 11;
    spec.statistic = "shortest_crossing";
    auto results = run_experiment(spec);
    const SizeResult& r = results.at(4);
    CHECK(r.attempted == 300);
    CHECK(r.accepted > 0);
    CHECK(r.accepted < 300);  // some trials have no crossing at p = 1/2
    CHECK(r.stats.count() == r.accepted);
}

TEST_CASE("spec validation errors") {
    ExperimentSpec spec;
    spec.model = {ModelKind::square_bond, 0.5};
    spec.n_list = {4, 4};
    spec.trials = 5;
    spec.statistic = "shortest_crossing";
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.n_list = {4, 8};
    spec.statistic = "no_such_statistic";
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.statistic = "shortcut_ratio";
    spec.model.kind = ModelKind::triangular_site;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.model.kind = ModelKind::square_bond;
    CHECK_NOTHROW(spec.validate());
}

TEST_CASE("experiment spec file parsing") {
    const std::string text = R"(
# comment line
model = triangular-site
p = 0.5
n_list = 8, 16, 32
trials = 1000
seed = 99
statistic = crossing_probability
conditioning = none
epsilon = 0.25
window = 32
)";
    auto spec = parse_experiment_spec(text);
    CHECK(spec.model.kind == ModelKind::triangular_site);
    CHECK(spec.model.p == 0.5);
    CHECK(spec.n_list == std::vector<int>{8, 16, 32});
    CHECK(spec.trials == 1000);
    CHECK(spec.master_seed == 99);
    CHECK(spec.statistic == "crossing_probability");
    CHECK(spec.conditioning == "none");
    CHECK(spec.epsilon == 0.25);
    CHECK(spec.window == 32);

    CHECK_THROWS_AS(parse_experiment_spec("nonsense line"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_experiment_spec("unknown_key = 3"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_experiment_spec("model = hexagonal"),
                    std::invalid_argument);
}
