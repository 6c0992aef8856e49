// Serial vs OpenMP throughput on the crossing statistic; both paths must
// produce identical aggregates.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "perc/crossing.hpp"
#include "perc/experiment.hpp"

using namespace perc;

namespace {

struct RunResult {
    RunningStats stats;
    double seconds;
};

RunResult timed(bool parallel, int n, long trials, std::uint64_t seed) {
    const Grid grid = Grid::centered_box(n);
    LatticeModel model{ModelKind::square_bond, 0.5};
    auto fn = [&](long t) -> std::optional<double> {
        auto config = Configuration::sample(
            model, grid,
            trial_seed(seed, static_cast<std::uint64_t>(n),
                       static_cast<std::uint64_t>(t)));
        auto path = shortest_crossing(config);
        if (!path) return std::nullopt;
        return static_cast<double>(path->length());
    };
    auto start = std::chrono::steady_clock::now();
    auto values = parallel ? run_trials_parallel(trials, fn)
                           : run_trials_serial(trials, fn);
    auto stop = std::chrono::steady_clock::now();
    RunResult out;
    out.seconds = std::chrono::duration<double>(stop - start).count();
    for (const auto& v : values)
        if (v) out.stats.add(*v);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 64;
    long trials = argc > 2 ? std::atol(argv[2]) : 2000;
    const std::uint64_t seed = 20240801;

    std::printf("shortest-crossing benchmark: n=%d trials=%ld workers=%d\n", n,
                trials, worker_count());
    RunResult serial = timed(false, n, trials, seed);
    RunResult parallel = timed(true, n, trials, seed);
    std::printf("serial   %8.3f s  (%.1f trials/s)\n", serial.seconds,
                trials / serial.seconds);
    std::printf("parallel %8.3f s  (%.1f trials/s)  speedup %.2fx\n",
                parallel.seconds, trials / parallel.seconds,
                serial.seconds / parallel.seconds);

    bool identical = serial.stats.count() == parallel.stats.count() &&
                     serial.stats.mean() == parallel.stats.mean() &&
                     serial.stats.sum_squared_deviations() ==
                         parallel.stats.sum_squared_deviations();
    std::printf("aggregates identical: %s (mean %.6f over %ld accepted)\n",
                identical ? "yes" : "NO", serial.stats.mean(),
                serial.stats.count());
    return identical ? 0 : 1;
}
