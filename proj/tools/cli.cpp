#include "perc/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "oracles.hpp"
#include "perc/arms.hpp"
#include "perc/clusters.hpp"
#include "perc/detour.hpp"
#include "perc/distance.hpp"
#include "perc/experiment.hpp"
#include "perc/records.hpp"

namespace perc::cli {
namespace {

struct CommonOptions {
    std::string model = "square-bond";
    double p = 0.5;
    int n = 32;
    std::vector<int> n_list;
    long trials = 1000;
    std::uint64_t seed = 1;
    double epsilon = 0.5;
    int window = 64;
    std::string format = "csv";
    std::string out;
    std::string config_path;

    LatticeModel lattice() const {
        ModelKind kind;
        if (model == "square-bond")
            kind = ModelKind::square_bond;
        else if (model == "triangular-site")
            kind = ModelKind::triangular_site;
        else
            throw CLI::ValidationError("--model", "unknown model: " + model);
        return {kind, p};
    }
    std::vector<int> sizes() const { return n_list.empty() ? std::vector<int>{n} : n_list; }
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--model", opt.model, "square-bond or triangular-site");
    cmd->add_option("--p", opt.p, "occupation probability (default 0.5)");
    cmd->add_option("--n", opt.n, "box half side-length");
    cmd->add_option("--n-list", opt.n_list, "comma-separated box sizes")
        ->delimiter(',');
    cmd->add_option("--trials", opt.trials, "trials per size");
    cmd->add_option("--seed", opt.seed, "master seed");
    cmd->add_option("--epsilon", opt.epsilon, "detour length tolerance");
    cmd->add_option("--window", opt.window, "maximum detour span");
    cmd->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", opt.out, "output path (default: stdout)");
    cmd->add_option("--config", opt.config_path,
                    "experiment spec file providing defaults");
}

void apply_config_file(CommonOptions& opt) {
    if (opt.config_path.empty()) return;
    ExperimentSpec spec = load_experiment_spec(opt.config_path);
    opt.model = model_name(spec.model.kind);
    opt.p = spec.model.p;
    if (!spec.n_list.empty()) opt.n_list = spec.n_list;
    if (spec.trials > 0) opt.trials = spec.trials;
    opt.seed = spec.master_seed;
    opt.epsilon = spec.epsilon;
    opt.window = spec.window;
}

void write_records(const std::vector<ResultRecord>& records,
                   const CommonOptions& opt) {
    OutputFormat format = parse_format(opt.format);
    if (opt.out.empty()) {
        emit(records, format, std::cout);
        return;
    }
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output: " + opt.out);
    emit(records, format, file);
}

ResultRecord base_record(const CommonOptions& opt, int n,
                         const std::string& statistic) {
    ResultRecord r;
    r.model = opt.model;
    r.p = opt.p;
    r.n = n;
    r.trials = opt.trials;
    r.seed = opt.seed;
    r.statistic = statistic;
    return r;
}

// ---- crossing ------------------------------------------------------------

int run_crossing(const CommonOptions& opt) {
    LatticeModel model = opt.lattice();
    std::vector<ResultRecord> records;
    for (int n : opt.sizes()) {
        const Grid grid = Grid::centered_box(n);
        struct Row {
            double s, l, ratio;
        };
        std::vector<std::optional<Row>> rows(
            static_cast<std::size_t>(opt.trials));
        run_trials_parallel(opt.trials, [&](long t) -> std::optional<double> {
            auto config = Configuration::sample(
                model, grid,
                trial_seed(opt.seed, static_cast<std::uint64_t>(n),
                           static_cast<std::uint64_t>(t)));
            auto result = crossing_result(config);
            if (result.shortest)
                rows[static_cast<std::size_t>(t)] =
                    Row{static_cast<double>(result.shortest->length()),
                        static_cast<double>(result.lowest->length()),
                        static_cast<double>(result.shortest->length()) /
                            static_cast<double>(result.lowest->length())};
            return 0.0;
        });
        RunningStats s, l, ratio;
        for (const auto& row : rows)
            if (row) {
                s.add(row->s);
                l.add(row->l);
                ratio.add(row->ratio);
            }
        auto push = [&](const std::string& name, const RunningStats& st) {
            ResultRecord r = base_record(opt, n, name);
            r.mean = st.mean();
            r.stderror = st.stderror();
            r.count = st.count();
            records.push_back(std::move(r));
        };
        push("shortest_crossing", s);
        push("lowest_crossing", l);
        push("crossing_ratio", ratio);
        std::cerr << "crossing n=" << n << " accepted=" << s.count() << "/"
                  << opt.trials << "\n";
    }
    write_records(records, opt);
    return 0;
}

// ---- arms ----------------------------------------------------------------

ArmSpec named_arm_spec(const std::string& name, int radius) {
    if (name == "pi3") return three_arm_spec(radius);
    if (name == "pi4") return four_arm_spec(radius);
    if (name == "pi5") return five_arm_spec(radius);
    throw CLI::ValidationError("--arm-spec", "unknown arm spec: " + name);
}

ArmSpec colors_arm_spec(const std::string& colors, int radius) {
    ArmSpec spec{radius, {}, {false, {0, 0}}};
    std::istringstream in(colors);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item == "open")
            spec.colors.push_back(ArmColor::open);
        else if (item == "closed" || item == "closed-dual")
            spec.colors.push_back(ArmColor::closed);
        else
            throw CLI::ValidationError("--colors", "unknown color: " + item);
    }
    return spec;
}

int run_arms(const CommonOptions& opt, const std::string& spec_name,
             const std::string& colors) {
    LatticeModel model = opt.lattice();
    std::vector<ResultRecord> records;
    std::vector<FitPoint> fit_points;
    for (int radius : opt.sizes()) {
        ArmSpec spec = colors.empty() ? named_arm_spec(spec_name, radius)
                                      : colors_arm_spec(colors, radius);
        ArmEstimate est =
            estimate_arm_probability(model, spec, opt.trials, opt.seed);
        ResultRecord r = base_record(opt, radius, "arm_probability");
        r.mean = est.probability;
        r.stderror = est.stderror;
        r.count = est.trials;
        r.extra.emplace_back("arm_spec", colors.empty() ? spec_name : colors);
        records.push_back(std::move(r));
        if (est.probability > 0.0)
            fit_points.push_back(
                {static_cast<double>(radius), est.probability, est.stderror});
        std::cerr << "arms radius=" << radius << " p=" << est.probability
                  << "\n";
    }
    if (fit_points.size() >= 3) {
        ExponentFit fit = fit_exponent(fit_points);
        ResultRecord r = base_record(opt, opt.sizes().back(), "arm_decay_fit");
        r.mean = fit.slope;
        r.stderror = fit.slope_stderr;
        r.count = static_cast<long>(fit.points.size());
        r.extra.emplace_back("intercept", format_double(fit.intercept));
        r.extra.emplace_back("r_squared", format_double(fit.r_squared));
        records.push_back(std::move(r));
    }
    write_records(records, opt);
    return 0;
}

// ---- distance ------------------------------------------------------------

int run_distance(const CommonOptions& opt, const std::string& mode,
                 int separation, int max_k,
                 const std::vector<double>& lambdas) {
    LatticeModel model = opt.lattice();
    std::vector<ResultRecord> records;

    if (mode == "pair" || mode == "boundary") {
        for (int n : opt.sizes()) {
            const Grid grid = Grid::centered_box(n);
            auto values = run_trials_parallel(
                opt.trials, [&](long t) -> std::optional<double> {
                    auto config = Configuration::sample(
                        model, grid,
                        trial_seed(opt.seed, static_cast<std::uint64_t>(n),
                                   static_cast<std::uint64_t>(t)));
                    auto result =
                        mode == "pair"
                            ? chemical_distance(config, {0, 0}, {1, 0})
                            : distance_to_boundary(config, {0, 0});
                    if (!result.value) return std::nullopt;
                    return static_cast<double>(*result.value);
                });
            RunningStats stats;
            for (const auto& v : values)
                if (v) stats.add(*v);
            ResultRecord r = base_record(
                opt, n, mode == "pair" ? "pair_distance" : "boundary_distance");
            r.mean = stats.mean();
            r.stderror = stats.stderror();
            r.count = stats.count();
            records.push_back(std::move(r));
            std::cerr << "distance " << mode << " n=" << n
                      << " accepted=" << stats.count() << "\n";
        }
    } else if (mode == "dyadic") {
        std::vector<long> histogram(static_cast<std::size_t>(max_k) + 1, 0);
        std::vector<std::optional<double>> scales = run_trials_parallel(
            opt.trials, [&](long t) -> std::optional<double> {
                auto k = dyadic_connection_scale(
                    model, trial_seed(opt.seed, 0, static_cast<std::uint64_t>(t)),
                    max_k);
                if (!k) return std::nullopt;
                return static_cast<double>(*k);
            });
        long connected = 0;
        for (const auto& v : scales)
            if (v) {
                ++connected;
                ++histogram[static_cast<std::size_t>(*v)];
            }
        for (int k = 1; k <= max_k; ++k) {
            double fraction =
                static_cast<double>(histogram[static_cast<std::size_t>(k)]) /
                static_cast<double>(opt.trials);
            ArmEstimate pi4 = estimate_arm_probability(
                model, four_arm_spec(1 << (k - 1)), opt.trials,
                mix_pair(opt.seed, static_cast<std::uint64_t>(k)));
            ResultRecord r = base_record(opt, 1 << k, "dyadic_scale");
            r.mean = fraction;
            r.stderror = std::sqrt(fraction * (1 - fraction) /
                                   static_cast<double>(opt.trials));
            r.count = histogram[static_cast<std::size_t>(k)];
            r.extra.emplace_back("k", std::to_string(k));
            r.extra.emplace_back("four_arm", format_double(pi4.probability));
            r.extra.emplace_back(
                "ratio", format_double(pi4.probability > 0
                                           ? fraction / pi4.probability
                                           : 0.0));
            records.push_back(std::move(r));
            std::cerr << "dyadic k=" << k << " fraction=" << fraction << "\n";
        }
        ResultRecord r = base_record(opt, 1 << max_k, "dyadic_connected");
        r.mean = static_cast<double>(connected) /
                 static_cast<double>(opt.trials);
        r.count = connected;
        records.push_back(std::move(r));
    } else if (mode == "second-moment") {
        auto estimates =
            truncated_second_moment(model, max_k, opt.trials, opt.seed);
        for (auto [k, value] : estimates) {
            ResultRecord r = base_record(opt, 1 << k, "second_moment");
            r.mean = value;
            r.count = opt.trials;
            r.extra.emplace_back("k", std::to_string(k));
            records.push_back(std::move(r));
        }
    } else if (mode == "tail") {
        for (double lambda : lambdas) {
            TailEstimate tail = conditional_pair_distance(
                model, separation, opt.trials, opt.seed, lambda);
            ResultRecord r = base_record(opt, separation, "pair_tail");
            r.mean = tail.estimate;
            r.stderror = tail.stderror;
            r.count = tail.accepted;
            r.extra.emplace_back("separation", std::to_string(separation));
            r.extra.emplace_back("lambda", format_double(lambda));
            r.extra.emplace_back("threshold", format_double(tail.threshold));
            r.extra.emplace_back("accepted", std::to_string(tail.accepted));
            records.push_back(std::move(r));
            std::cerr << "tail lambda=" << lambda
                      << " estimate=" << tail.estimate << "\n";
        }
    } else {
        throw CLI::ValidationError("--mode", "unknown mode: " + mode);
    }
    write_records(records, opt);
    return 0;
}

// ---- detour ----------------------------------------------------------------

int run_detour(const CommonOptions& opt, bool single) {
    LatticeModel model = opt.lattice();
    if (single) {
        std::ostringstream all;
        all << "[";
        bool first = true;
        for (int n : opt.sizes()) {
            const Grid grid = Grid::centered_box(n);
            for (long t = 0; t < opt.trials; ++t) {
                auto config = Configuration::sample(
                    model, grid,
                    trial_seed(opt.seed, static_cast<std::uint64_t>(n),
                               static_cast<std::uint64_t>(t)));
                auto lowest = lowest_crossing(config);
                if (!lowest) continue;
                DetourReport report =
                    detour_report(config, *lowest, opt.epsilon, opt.window);
                if (!first) all << ",";
                all << "\n  " << detour_report_json(report, n);
                first = false;
                break;  // first crossing configuration per size
            }
        }
        all << "\n]\n";
        if (opt.out.empty()) {
            std::cout << all.str();
        } else {
            std::ofstream file(opt.out, std::ios::binary);
            if (!file)
                throw std::runtime_error("cannot open output: " + opt.out);
            file << all.str();
        }
        return 0;
    }

    std::vector<ResultRecord> records;
    for (int n : opt.sizes()) {
        DetourSummary summary = detour_statistics(
            model, n, opt.epsilon, opt.window, opt.trials, opt.seed);
        auto push = [&](const std::string& name, double mean, double se) {
            ResultRecord r = base_record(opt, n, name);
            r.mean = mean;
            r.stderror = se;
            r.count = summary.accepted;
            r.extra.emplace_back("epsilon", format_double(opt.epsilon));
            r.extra.emplace_back("window", std::to_string(opt.window));
            records.push_back(std::move(r));
        };
        push("shortcut_ratio", summary.sigma_ratio.mean,
             summary.sigma_ratio.stderror);
        push("non_detoured_fraction", summary.non_detoured.mean,
             summary.non_detoured.stderror);
        std::cerr << "detour n=" << n << " accepted=" << summary.accepted
                  << "\n";
    }
    write_records(records, opt);
    return 0;
}

// ---- fit -------------------------------------------------------------------

int run_fit(const CommonOptions& opt, const std::string& in_path,
            const std::string& statistic) {
    std::ifstream in(in_path);
    if (!in) throw std::runtime_error("cannot open input: " + in_path);
    auto rows = parse_csv_records(in);
    std::vector<FitPoint> points;
    for (const ResultRecord& r : rows) {
        if (!statistic.empty() && r.statistic != statistic) continue;
        if (r.mean <= 0.0 || r.n <= 0) continue;
        points.push_back(
            {static_cast<double>(r.n), r.mean, r.stderror});
    }
    ExponentFit fit = fit_exponent(points);
    ResultRecord r;
    r.model = opt.model;
    r.p = opt.p;
    r.n = static_cast<long>(points.back().n);
    r.trials = static_cast<long>(points.size());
    r.seed = opt.seed;
    r.statistic = "exponent_fit";
    r.mean = fit.slope;
    r.stderror = fit.slope_stderr;
    r.count = static_cast<long>(points.size());
    r.extra.emplace_back("intercept", format_double(fit.intercept));
    r.extra.emplace_back("r_squared", format_double(fit.r_squared));
    if (!statistic.empty()) r.extra.emplace_back("fitted", statistic);
    write_records({r}, opt);
    return 0;
}

// ---- validate ----------------------------------------------------------------

int run_validate(const CommonOptions& opt) {
    std::ostringstream report;
    bool all_ok = true;
    auto check = [&](const std::string& name, bool ok) {
        report << (ok ? "ok   " : "FAIL ") << name << "\n";
        all_ok = all_ok && ok;
    };

    const int n_small = std::min(opt.n, 3);
    const long trials = opt.trials;
    LatticeModel bond{ModelKind::square_bond, 0.5};

    // exact planar duality on the self-dual rectangle
    {
        bool ok = true;
        const Grid rect = Grid::self_dual_rectangle(std::max(2, opt.n));
        for (long t = 0; t < trials; ++t) {
            auto config = Configuration::sample(
                bond, rect, trial_seed(opt.seed, 1, static_cast<std::uint64_t>(t)));
            if (has_left_right_crossing(config) ==
                dual_top_bottom_closed_crossing(config))
                ok = false;
        }
        check("duality_exactness", ok);
    }

    // shortest and lowest crossing against exhaustive enumeration
    {
        bool ok = true;
        const Grid box = Grid::centered_box(n_small);
        for (long t = 0; t < trials && ok; ++t) {
            auto config = Configuration::sample(
                bond, box, trial_seed(opt.seed, 2, static_cast<std::uint64_t>(t)));
            auto shortest = shortest_crossing(config);
            auto lowest = lowest_crossing(config);
            auto all = oracle::enumerate_crossings(config);
            if (all.empty()) {
                ok = !shortest && !lowest;
                continue;
            }
            int best = all.front().length();
            for (const Path& p : all) best = std::min(best, p.length());
            if (!shortest || shortest->length() != best) ok = false;
            auto expected = oracle::minimal_lower_crossing(config);
            if (!expected || !lowest ||
                !(lowest->vertices == expected->vertices))
                ok = false;
        }
        check("crossing_oracle_equivalence", ok);
    }

    // three-arm characterization of the lowest crossing
    {
        bool ok = true;
        const Grid box = Grid::centered_box(std::max(4, 2 * opt.n));
        long checked = 0;
        for (long t = 0; checked < trials / 4 + 1 && t < 8 * trials; ++t) {
            auto config = Configuration::sample(
                bond, box, trial_seed(opt.seed, 3, static_cast<std::uint64_t>(t)));
            if (!lowest_crossing(config)) continue;
            ++checked;
            if (!verify_lowest_crossing_arms(config)) ok = false;
        }
        check("three_arm_characterization", ok);
    }

    // spliced shortcut crossing validity and length sandwich
    {
        bool ok = true;
        const Grid box = Grid::centered_box(std::max(4, 2 * opt.n));
        long checked = 0;
        for (long t = 0; checked < trials / 4 + 1 && t < 8 * trials; ++t) {
            auto config = Configuration::sample(
                bond, box, trial_seed(opt.seed, 4, static_cast<std::uint64_t>(t)));
            auto lowest = lowest_crossing(config);
            if (!lowest) continue;
            ++checked;
            DetourReport r = detour_report(config, *lowest, 0.5, 16);
            if (!is_open_path(config, r.sigma)) ok = false;
            if (!is_crossing_path(box, ModelKind::square_bond, r.sigma))
                ok = false;
            if (r.shortest_length > r.sigma_length ||
                r.sigma_length > r.lowest_length)
                ok = false;
            for (const Detour& d : r.collection)
                if (!validate_detour(config, *lowest, d, 0.5)) ok = false;
        }
        check("shortcut_splice_validity", ok);
    }

    // merge-order independence of running statistics
    {
        bool ok = true;
        std::vector<double> data;
        for (long t = 0; t < 1000; ++t)
            data.push_back(static_cast<double>(
                               mix_pair(opt.seed, static_cast<std::uint64_t>(t)) >>
                               11) *
                           0x1.0p-53);
        RunningStats single;
        for (double v : data) single.add(v);
        for (int pieces : {2, 3, 7}) {
            std::vector<RunningStats> parts(static_cast<std::size_t>(pieces));
            for (std::size_t i = 0; i < data.size(); ++i)
                parts[i % static_cast<std::size_t>(pieces)].add(data[i]);
            RunningStats merged;
            for (const auto& part : parts)
                merged = RunningStats::merged(merged, part);
            if (merged.count() != single.count()) ok = false;
            if (std::abs(merged.mean() - single.mean()) > 1e-9) ok = false;
            if (std::abs(merged.variance() - single.variance()) > 1e-9)
                ok = false;
        }
        check("stats_merge_permutation", ok);
    }

    report << (all_ok ? "validate: all checks passed\n"
                      : "validate: FAILURES above\n");
    if (opt.out.empty()) {
        std::cout << report.str();
    } else {
        std::ofstream file(opt.out, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output: " + opt.out);
        file << report.str();
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"Monte Carlo laboratory for two-dimensional critical "
                 "percolation"};
    app.require_subcommand(1);

    CommonOptions opt;

    auto* crossing =
        app.add_subcommand("crossing",
                           "shortest/lowest crossing lengths and their ratio");
    add_common(crossing, opt);

    auto* arms = app.add_subcommand(
        "arms", "arm-event probability estimation and decay fit");
    add_common(arms, opt);
    std::string arm_spec = "pi3";
    std::string colors;
    arms->add_option("--arm-spec", arm_spec, "pi3, pi4 or pi5");
    arms->add_option("--colors", colors,
                     "custom color list, e.g. open,open,closed");

    auto* distance = app.add_subcommand(
        "distance", "chemical distances: pair, boundary, dyadic scale, "
                    "second moment, conditional tail");
    add_common(distance, opt);
    std::string mode = "boundary";
    int separation = 16;
    int max_k = 6;
    std::vector<double> lambdas{1.0};
    distance->add_option("--mode", mode,
                         "pair, boundary, dyadic, second-moment or tail");
    distance->add_option("--separation", separation,
                         "pair separation for tail estimates");
    distance->add_option("--max-k", max_k, "largest dyadic exponent");
    distance->add_option("--lambda", lambdas, "tail thresholds")
        ->delimiter(',');

    auto* detour = app.add_subcommand(
        "detour", "shielded detour statistics along the lowest crossing");
    add_common(detour, opt);
    bool single = false;
    detour->add_flag("--single", single,
                     "emit one full detour report per size as JSON");

    auto* fit = app.add_subcommand("fit", "log-log exponent fit over a CSV");
    add_common(fit, opt);
    std::string in_path;
    std::string fit_statistic;
    fit->add_option("--in", in_path, "input CSV produced by this tool")
        ->required();
    fit->add_option("--statistic", fit_statistic,
                    "restrict the fit to rows of this statistic");

    auto* validate = app.add_subcommand(
        "validate", "deterministic invariant suite (exit 0 on pass)");
    add_common(validate, opt);

    try {
        app.parse(argc, argv);
        apply_config_file(opt);
        if (crossing->parsed()) return run_crossing(opt);
        if (arms->parsed()) return run_arms(opt, arm_spec, colors);
        if (distance->parsed())
            return run_distance(opt, mode, separation, max_k, lambdas);
        if (detour->parsed()) return run_detour(opt, single);
        if (fit->parsed()) return run_fit(opt, in_path, fit_statistic);
        if (validate->parsed()) return run_validate(opt);
    } catch (const CLI::ParseError& e) {
        std::ostringstream usage;
        usage << app.help();
        if (e.get_exit_code() != 0) std::cerr << e.what() << "\n" << usage.str();
        return app.exit(e, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace perc::cli
