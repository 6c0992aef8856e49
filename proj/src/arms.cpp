#include "perc/arms.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "perc/crossing.hpp"
#include "perc/dual_clusters.hpp"
#include "perc/experiment.hpp"

namespace perc {

ArmSpec three_arm_spec(int radius) {
    return {radius,
            {ArmColor::open, ArmColor::open, ArmColor::closed},
            {false, {0, 0}}};
}

ArmSpec four_arm_spec(int radius) {
    return {radius,
            {ArmColor::open, ArmColor::open, ArmColor::closed,
             ArmColor::closed},
            {true, {0, 0}}};
}

ArmSpec five_arm_spec(int radius) {
    return {radius,
            {ArmColor::open, ArmColor::open, ArmColor::closed,
             ArmColor::closed, ArmColor::closed},
            {false, {0, 0}}};
}

bool has_arm_event(const Configuration& config, const ArmSpec& spec) {
    return detail::has_arm_event_impl(config, spec);
}

bool has_arm_event(const LazyConfig& config, const ArmSpec& spec) {
    return detail::has_arm_event_impl(config, spec);
}

ArmEstimate estimate_arm_probability(LatticeModel model, const ArmSpec& spec,
                                     long trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const Grid grid = Grid::centered_box(spec.radius);

    // Nested-radius cascade: the event at the full radius implies it at any
    // smaller radius on the same configuration, so cheap small-radius
    // rejections are exact.
    std::vector<int> ladder;
    for (int r : {8, 32, 128})
        if (r < spec.radius) ladder.push_back(r);
    ladder.push_back(spec.radius);

    long hits = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : hits) \
    num_threads(worker_count())
#endif
    for (long t = 0; t < trials; ++t) {
        LazyConfig config(model, grid,
                          trial_seed(seed, static_cast<std::uint64_t>(
                                               spec.radius),
                                     static_cast<std::uint64_t>(t)));
        bool event = true;
        for (int r : ladder) {
            ArmSpec stage = spec;
            stage.radius = r;
            if (!detail::has_arm_event_impl(config, stage)) {
                event = false;
                break;
            }
        }
        hits += event ? 1 : 0;
    }
    double p = static_cast<double>(hits) / static_cast<double>(trials);
    double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    return {spec, p, se, trials};
}

std::vector<Vertex> three_arm_points(const Configuration& config) {
    const Grid& g = config.grid();
    std::vector<Vertex> out;
    for (int i = 0; i < g.vertex_count(); ++i) {
        Vertex v = g.vertex_at(i);
        int radius = std::min(std::min(v.x - g.x_lo(), g.x_hi() - v.x),
                              std::min(v.y - g.y_lo(), g.y_hi() - v.y));
        if (radius < 1) continue;
        ArmSpec spec = three_arm_spec(radius);
        spec.center.v = v;
        if (detail::has_arm_event_impl(config, spec)) out.push_back(v);
    }
    return out;
}

bool verify_lowest_crossing_arms(const Configuration& config) {
    auto lowest = lowest_crossing(config);
    if (!lowest)
        throw std::logic_error(
            "lowest crossing arms check requires a crossing");
    const Grid& g = config.grid();
    const Path& path = *lowest;

    // The two open arms along the crossing itself exist by construction;
    // check the path really is an open crossing, then the closed arm to the
    // bottom for every vertex above the bottom row.
    if (!is_open_path(config, path) ||
        !is_crossing_path(g, config.model().kind, path))
        return false;

    if (config.model().kind == ModelKind::square_bond) {
        ClosedClusters clusters = closed_dual_clusters(config);
        for (Vertex v : path.vertices) {
            if (g.on_bottom(v)) continue;
            bool linked = false;
            for (DualVertex f : {DualVertex{v.x - 1, v.y - 1},
                                 DualVertex{v.x, v.y - 1},
                                 DualVertex{v.x - 1, v.y},
                                 DualVertex{v.x, v.y}})
                if (clusters.bottom_linked(g.dual_index(f))) linked = true;
            if (!linked) return false;
        }
        return true;
    }

    ClosedClusters clusters = closed_site_clusters(config);
    for (Vertex v : path.vertices) {
        if (g.on_bottom(v)) continue;
        bool linked = false;
        for (Dir d : triangular_dirs) {
            Vertex w{v.x + d.dx, v.y + d.dy};
            if (!g.contains(w) || config.site_open(w)) continue;
            if (clusters.bottom_linked(g.vertex_index(w))) linked = true;
        }
        if (!linked) return false;
    }
    return true;
}

}  // namespace perc
