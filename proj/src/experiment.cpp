#include "perc/experiment.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "perc/clusters.hpp"
#include "perc/crossing.hpp"
#include "perc/detour.hpp"
#include "perc/distance.hpp"

namespace perc {

int worker_count() {
    static const int cached = [] {
        if (const char* env = std::getenv("PERCLAB_THREADS")) {
            int v = std::atoi(env);
            if (v >= 1) return v;
        }
#ifdef _OPENMP
        return omp_get_max_threads();
#else
        return 1;
#endif
    }();
    return cached;
}

std::vector<std::optional<double>> run_trials_serial(
    long trials, const std::function<std::optional<double>(long)>& fn) {
    std::vector<std::optional<double>> out(static_cast<std::size_t>(trials));
    for (long t = 0; t < trials; ++t)
        out[static_cast<std::size_t>(t)] = fn(t);
    return out;
}

std::vector<std::optional<double>> run_trials_parallel(
    long trials, const std::function<std::optional<double>(long)>& fn) {
    std::vector<std::optional<double>> out(static_cast<std::size_t>(trials));
    bool failed = false;
    std::string error;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(worker_count())
#endif
    for (long t = 0; t < trials; ++t) {
        try {
            out[static_cast<std::size_t>(t)] = fn(t);
        } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
            {
                failed = true;
                error = e.what();
            }
        }
    }
    if (failed) throw std::runtime_error("trial failed: " + error);
    return out;
}

void ExperimentSpec::validate() const {
    if (n_list.empty()) throw std::invalid_argument("n_list must be nonempty");
    for (std::size_t i = 0; i + 1 < n_list.size(); ++i)
        if (n_list[i] >= n_list[i + 1])
            throw std::invalid_argument("n_list must be strictly increasing");
    if (n_list.front() < 1)
        throw std::invalid_argument("box sizes must be >= 1");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    statistic_fn(statistic, model);  // throws on unknown/incompatible
}

namespace {

std::optional<double> reject() { return std::nullopt; }

}  // namespace

std::vector<std::string> known_statistics() {
    return {"crossing_probability", "shortest_crossing",  "lowest_crossing",
            "crossing_ratio",       "shortcut_ratio",     "non_detoured_fraction",
            "boundary_distance",    "pair_distance"};
}

TrialFn statistic_fn(const std::string& name, const LatticeModel& model) {
    const bool bond = model.kind == ModelKind::square_bond;
    if (name == "crossing_probability")
        return [](const Configuration& c, const ExperimentSpec&) {
            return std::optional<double>(has_left_right_crossing(c) ? 1.0
                                                                    : 0.0);
        };
    if (name == "shortest_crossing")
        return [](const Configuration& c, const ExperimentSpec&) {
            auto path = shortest_crossing(c);
            if (!path) return reject();
            return std::optional<double>(path->length());
        };
    if (name == "lowest_crossing")
        return [](const Configuration& c, const ExperimentSpec&) {
            auto path = lowest_crossing(c);
            if (!path) return reject();
            return std::optional<double>(path->length());
        };
    if (name == "crossing_ratio")
        return [](const Configuration& c, const ExperimentSpec&) {
            auto result = crossing_result(c);
            if (!result.shortest) return reject();
            return std::optional<double>(
                static_cast<double>(result.shortest->length()) /
                static_cast<double>(result.lowest->length()));
        };
    if (name == "shortcut_ratio" || name == "non_detoured_fraction") {
        if (!bond)
            throw std::invalid_argument(
                name + " requires the square-bond model");
        bool want_ratio = name == "shortcut_ratio";
        return [want_ratio](const Configuration& c,
                            const ExperimentSpec& spec) {
            auto lowest = lowest_crossing(c);
            if (!lowest) return reject();
            DetourReport report =
                detour_report(c, *lowest, spec.epsilon, spec.window);
            if (want_ratio)
                return std::optional<double>(
                    static_cast<double>(report.sigma.length()) /
                    static_cast<double>(lowest->length()));
            return std::optional<double>(report.non_detoured_fraction());
        };
    }
    if (name == "boundary_distance")
        return [](const Configuration& c, const ExperimentSpec&) {
            auto result = distance_to_boundary(c, {0, 0});
            if (!result.value) return reject();
            return std::optional<double>(*result.value);
        };
    if (name == "pair_distance")
        return [](const Configuration& c, const ExperimentSpec&) {
            auto result = chemical_distance(c, {0, 0}, {1, 0});
            if (!result.value) return reject();
            return std::optional<double>(*result.value);
        };
    throw std::invalid_argument("unknown statistic: " + name);
}

std::map<int, SizeResult> run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    TrialFn fn = statistic_fn(spec.statistic, spec.model);

    std::map<int, SizeResult> out;
    for (int n : spec.n_list) {
        const Grid grid = Grid::centered_box(n);
        auto trial = [&](long t) -> std::optional<double> {
            Configuration config = Configuration::sample(
                spec.model, grid,
                trial_seed(spec.master_seed, static_cast<std::uint64_t>(n),
                           static_cast<std::uint64_t>(t)));
            return fn(config, spec);
        };
        auto values = run_trials_parallel(spec.trials, trial);
        SizeResult result;
        result.attempted = spec.trials;
        for (const auto& v : values)
            if (v) {
                result.stats.add(*v);
                ++result.accepted;
            }
        out.emplace(n, std::move(result));
    }
    return out;
}

namespace {

std::string trimmed(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

ExperimentSpec parse_experiment_spec(const std::string& text) {
    ExperimentSpec spec;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::string stripped = trimmed(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("bad spec line: " + line);
        std::string key = trimmed(stripped.substr(0, eq));
        std::string value = trimmed(stripped.substr(eq + 1));
        if (key == "model") {
            if (value == "square-bond")
                spec.model.kind = ModelKind::square_bond;
            else if (value == "triangular-site")
                spec.model.kind = ModelKind::triangular_site;
            else
                throw std::invalid_argument("unknown model: " + value);
        } else if (key == "p") {
            spec.model.p = std::stod(value);
        } else if (key == "n_list") {
            spec.n_list.clear();
            std::istringstream items(value);
            std::string item;
            while (std::getline(items, item, ','))
                spec.n_list.push_back(std::stoi(trimmed(item)));
        } else if (key == "trials") {
            spec.trials = std::stol(value);
        } else if (key == "seed") {
            spec.master_seed = std::stoull(value);
        } else if (key == "statistic") {
            spec.statistic = value;
        } else if (key == "conditioning") {
            spec.conditioning = value;
        } else if (key == "epsilon") {
            spec.epsilon = std::stod(value);
        } else if (key == "window") {
            spec.window = std::stoi(value);
        } else {
            throw std::invalid_argument("unknown spec key: " + key);
        }
    }
    return spec;
}

ExperimentSpec load_experiment_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spec file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment_spec(buffer.str());
}

}  // namespace perc
