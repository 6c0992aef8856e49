// Monte Carlo orchestration: per-trial seed derivation, serial and
// OpenMP-parallel trial loops with identical results, rejection
// conditioning, and named per-size statistics.
#pragma once

#include <functional>
#include <map>
#include <optional>

#include "perc/config.hpp"
#include "perc/stats.hpp"

namespace perc {

// Worker cap: PERCLAB_THREADS if set (>=1), else the OpenMP default. The
// result of any experiment is independent of this value.
int worker_count();

// Runs fn(t) for t in [0, trials) and returns the per-trial values in trial
// order. The parallel variant distributes trials over OpenMP threads and
// stores into preallocated slots, so folding the returned vector serially
// gives byte-identical aggregates for any thread count.
std::vector<std::optional<double>> run_trials_serial(
    long trials, const std::function<std::optional<double>(long)>& fn);
std::vector<std::optional<double>> run_trials_parallel(
    long trials, const std::function<std::optional<double>(long)>& fn);

struct ExperimentSpec {
    LatticeModel model{ModelKind::square_bond, 0.5};
    std::vector<int> n_list;
    long trials = 0;  // attempted per size; conditioning rejects some
    std::uint64_t master_seed = 0;
    std::string statistic;     // registry name, e.g. "shortest_crossing"
    std::string conditioning;  // "none", "crossing", "origin_to_boundary"
    double epsilon = 0.5;
    int window = 64;

    void validate() const;
};

// Key-value configuration file: one `key = value` per line, '#' comments.
// Keys: model, p, n_list, trials, seed, statistic, conditioning, epsilon,
// window.
ExperimentSpec load_experiment_spec(const std::string& path);
ExperimentSpec parse_experiment_spec(const std::string& text);

struct SizeResult {
    RunningStats stats;
    long attempted = 0;
    long accepted = 0;
};

// Statistic registry: per-trial estimator on one sampled configuration;
// nullopt means the trial was rejected by the conditioning event.
using TrialFn =
    std::function<std::optional<double>(const Configuration&,
                                        const ExperimentSpec&)>;
std::vector<std::string> known_statistics();
TrialFn statistic_fn(const std::string& name, const LatticeModel& model);

// For each n: `trials` configurations sampled with seeds
// trial_seed(master_seed, n, t); identical output for any thread count.
std::map<int, SizeResult> run_experiment(const ExperimentSpec& spec);

}  // namespace perc
