#include "perc/distance.hpp"

#include <algorithm>

#include "perc/arms.hpp"
#include "perc/experiment.hpp"

namespace perc {
namespace {

// BFS over the open part. `sub` optionally restricts traversal to
// [-sub, sub]^2. Returns parents for witness extraction; target may be a
// single vertex or "any boundary vertex".
struct BfsResult {
    std::optional<long> dist;
    std::vector<int> parent;
    int end_index = -1;
};

BfsResult open_bfs(const Configuration& config, Vertex from,
                   std::optional<Vertex> to, bool to_boundary,
                   std::optional<int> sub) {
    const Grid& g = config.grid();
    const bool bond = config.model().kind == ModelKind::square_bond;
    const auto dirs = neighbor_dirs(config.model().kind);
    auto inside = [&](Vertex v) {
        if (!g.contains(v)) return false;
        if (sub && (std::abs(v.x) > *sub || std::abs(v.y) > *sub))
            return false;
        return true;
    };

    BfsResult result;
    result.parent.assign(static_cast<std::size_t>(g.vertex_count()), -2);
    if (!inside(from)) return result;
    if (!bond && !config.site_open(from)) {
        // A closed site connects only to itself.
        if (to && from == *to) {
            result.dist = 0;
            result.end_index = g.vertex_index(from);
            result.parent[static_cast<std::size_t>(result.end_index)] = -1;
        }
        if (to_boundary && g.on_boundary(from)) {
            result.dist = 0;
            result.end_index = g.vertex_index(from);
            result.parent[static_cast<std::size_t>(result.end_index)] = -1;
        }
        return result;
    }

    std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
    const int start = g.vertex_index(from);
    dist[static_cast<std::size_t>(start)] = 0;
    result.parent[static_cast<std::size_t>(start)] = -1;
    std::vector<int> queue{start};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int ui = queue[head];
        Vertex u = g.vertex_at(ui);
        if ((to && u == *to) || (to_boundary && g.on_boundary(u))) {
            result.dist = dist[static_cast<std::size_t>(ui)];
            result.end_index = ui;
            return result;
        }
        for (Dir d : dirs) {
            Vertex v{u.x + d.dx, u.y + d.dy};
            if (!inside(v)) continue;
            int vi = g.vertex_index(v);
            if (dist[static_cast<std::size_t>(vi)] != -1) continue;
            if (bond ? !config.open(g.step_edge_index(u, d))
                     : !config.open(vi))
                continue;
            dist[static_cast<std::size_t>(vi)] = dist[static_cast<std::size_t>(ui)] + 1;
            result.parent[static_cast<std::size_t>(vi)] = ui;
            queue.push_back(vi);
        }
    }
    return result;
}

Path witness_path(const Grid& g, const BfsResult& bfs) {
    std::vector<Vertex> rev;
    for (int v = bfs.end_index; v != -1;
         v = bfs.parent[static_cast<std::size_t>(v)])
        rev.push_back(g.vertex_at(v));
    std::reverse(rev.begin(), rev.end());
    return Path{std::move(rev)};
}

DistanceResult from_bfs(const Grid& g, const BfsResult& bfs) {
    if (!bfs.dist) return {std::nullopt, std::nullopt};
    return {bfs.dist, witness_path(g, bfs)};
}

}  // namespace

DistanceResult chemical_distance(const Configuration& config, Vertex x,
                                 Vertex y) {
    const Grid& g = config.grid();
    if (!g.contains(x) || !g.contains(y))
        throw std::invalid_argument("vertex outside box");
    if (x == y) return {0, Path{{x}}};
    return from_bfs(g, open_bfs(config, x, y, false, std::nullopt));
}

DistanceResult distance_to_boundary(const Configuration& config, Vertex x) {
    const Grid& g = config.grid();
    if (!g.contains(x)) throw std::invalid_argument("vertex outside box");
    if (g.on_boundary(x)) return {0, Path{{x}}};
    return from_bfs(g, open_bfs(config, x, std::nullopt, true, std::nullopt));
}

DistanceResult restricted_chemical_distance(const Configuration& config,
                                            Vertex x, Vertex y, int sub) {
    const Grid& g = config.grid();
    if (!g.contains(x) || !g.contains(y))
        throw std::invalid_argument("vertex outside box");
    if (sub < 1) throw std::invalid_argument("sub-box half side must be >= 1");
    if (x == y) return {0, Path{{x}}};
    return from_bfs(g, open_bfs(config, x, y, false, sub));
}

std::optional<int> dyadic_connection_scale(LatticeModel model,
                                           std::uint64_t seed, int max_k) {
    if (max_k < 1) throw std::invalid_argument("max_k must be >= 1");
    const Grid grid = Grid::centered_box(1 << max_k);
    Configuration config = Configuration::sample(model, grid, seed);
    for (int k = 1; k <= max_k; ++k) {
        auto bfs = open_bfs(config, {0, 0}, Vertex{1, 0}, false, 1 << k);
        if (bfs.dist) return k;
    }
    return std::nullopt;
}

std::vector<std::pair<int, double>> truncated_second_moment(
    LatticeModel model, int max_k, long trials, std::uint64_t seed) {
    if (max_k < 1) throw std::invalid_argument("max_k must be >= 1");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const Grid grid = Grid::centered_box(1 << max_k);

    std::vector<std::vector<double>> per_trial(
        static_cast<std::size_t>(trials));
    auto one = [&](long t) -> std::optional<double> {
        Configuration config = Configuration::sample(
            model, grid,
            trial_seed(seed, static_cast<std::uint64_t>(max_k),
                       static_cast<std::uint64_t>(t)));
        std::vector<double>& row = per_trial[static_cast<std::size_t>(t)];
        row.assign(static_cast<std::size_t>(max_k), 0.0);
        // Disconnected in the full box implies disconnected in every
        // restriction of the same coupled configuration.
        auto full = open_bfs(config, {0, 0}, Vertex{1, 0}, false, std::nullopt);
        if (!full.dist) return 0.0;
        for (int k = 1; k <= max_k; ++k) {
            auto bfs = open_bfs(config, {0, 0}, Vertex{1, 0}, false, 1 << k);
            if (bfs.dist)
                row[static_cast<std::size_t>(k - 1)] =
                    static_cast<double>(*bfs.dist) *
                    static_cast<double>(*bfs.dist);
        }
        return 0.0;
    };
    run_trials_parallel(trials, one);

    std::vector<std::pair<int, double>> out;
    for (int k = 1; k <= max_k; ++k) {
        double sum = 0.0;
        for (const auto& row : per_trial)
            sum += row[static_cast<std::size_t>(k - 1)];
        out.emplace_back(k, sum / static_cast<double>(trials));
    }
    return out;
}

TailEstimate conditional_pair_distance(LatticeModel model, int separation,
                                       long trials, std::uint64_t seed,
                                       double lambda) {
    if (separation < 1) throw std::invalid_argument("separation must be >= 1");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (lambda <= 0.0) throw std::invalid_argument("lambda must be > 0");

    ArmEstimate pi3 = estimate_arm_probability(
        model, three_arm_spec(separation), trials, mix_pair(seed, 0x9e3779b9));
    const double threshold = lambda * static_cast<double>(separation) *
                             static_cast<double>(separation) *
                             pi3.probability;

    const Grid grid = Grid::centered_box(2 * separation);
    const Vertex x{-(separation / 2), 0};
    const Vertex y{x.x + separation, 0};

    std::vector<std::optional<double>> values = run_trials_parallel(
        trials, [&](long t) -> std::optional<double> {
            Configuration config = Configuration::sample(
                model, grid,
                trial_seed(seed, static_cast<std::uint64_t>(separation),
                           static_cast<std::uint64_t>(t)));
            auto bfs = open_bfs(config, x, y, false, std::nullopt);
            if (!bfs.dist) return std::nullopt;
            return static_cast<double>(*bfs.dist) > threshold ? 1.0 : 0.0;
        });

    TailEstimate out;
    out.separation = separation;
    out.lambda = lambda;
    out.threshold = threshold;
    out.trials = trials;
    long hits = 0;
    for (const auto& v : values)
        if (v) {
            ++out.accepted;
            hits += *v > 0.5 ? 1 : 0;
        }
    if (out.accepted > 0) {
        out.estimate = static_cast<double>(hits) /
                       static_cast<double>(out.accepted);
        out.stderror = std::sqrt(out.estimate * (1.0 - out.estimate) /
                                 static_cast<double>(out.accepted));
    }
    return out;
}

}  // namespace perc
