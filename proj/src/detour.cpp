#include "perc/detour.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "perc/dual_clusters.hpp"
#include "perc/experiment.hpp"

namespace perc {
namespace {

// Angles in 45-degree units: axis directions are even, the four faces
// around a vertex sit at the odd diagonals.
int angle_of(Dir d) {
    if (d == Dir{1, 0}) return 0;
    if (d == Dir{0, 1}) return 2;
    if (d == Dir{-1, 0}) return 4;
    return 6;  // {0,-1}
}

bool ccw_strictly_between(int angle, int from, int to) {
    return ((angle - from) & 7) > 0 && ((angle - from) & 7) < ((to - from) & 7);
}

// The four faces incident to v with their diagonal angles.
struct IncidentFace {
    DualVertex face;
    int angle;
};
std::array<IncidentFace, 4> incident_faces(Vertex v) {
    return {IncidentFace{{v.x, v.y}, 1}, IncidentFace{{v.x - 1, v.y}, 3},
            IncidentFace{{v.x - 1, v.y - 1}, 5},
            IncidentFace{{v.x, v.y - 1}, 7}};
}

}  // namespace

std::vector<DualVertex> upper_sector_faces(Vertex v, Dir d_in, Dir d_out) {
    int from = angle_of(d_out);
    int to = angle_of({-d_in.dx, -d_in.dy});
    std::vector<DualVertex> out;
    for (const IncidentFace& f : incident_faces(v))
        if (ccw_strictly_between(f.angle, from, to)) out.push_back(f.face);
    return out;
}

Edge dual_step_primal_edge(DualVertex f, Dir d) {
    if (d.dx == 1) return {{f.x + 1, f.y}, {f.x + 1, f.y + 1}};
    if (d.dx == -1) return {{f.x, f.y}, {f.x, f.y + 1}};
    if (d.dy == 1) return {{f.x, f.y + 1}, {f.x + 1, f.y + 1}};
    return {{f.x, f.y}, {f.x + 1, f.y}};
}

namespace {

Dir step_dir(Vertex a, Vertex b) { return {b.x - a.x, b.y - a.y}; }

struct CurveSectors {
    std::vector<DualVertex> start_faces;  // above at gamma's first vertex
    std::vector<DualVertex> end_faces;    // above at gamma's last vertex
};

CurveSectors shield_sectors(const Path& lowest, const Path& gamma, int i,
                            int j) {
    Dir in_at_start = i > 0 ? step_dir(lowest.vertices[static_cast<std::size_t>(
                                           i - 1)],
                                       lowest.vertices[static_cast<std::size_t>(i)])
                            : Dir{1, 0};
    Dir out_at_start = step_dir(gamma.vertices[0], gamma.vertices[1]);
    Dir in_at_end = step_dir(gamma.vertices[gamma.vertices.size() - 2],
                             gamma.vertices.back());
    Dir out_at_end =
        j < lowest.length()
            ? step_dir(lowest.vertices[static_cast<std::size_t>(j)],
                       lowest.vertices[static_cast<std::size_t>(j + 1)])
            : Dir{1, 0};
    return {upper_sector_faces(lowest.vertices[static_cast<std::size_t>(i)],
                               in_at_start, out_at_start),
            upper_sector_faces(lowest.vertices[static_cast<std::size_t>(j)],
                               in_at_end, out_at_end)};
}

// BFS over closed dual edges from the seed faces to any target face.
std::optional<Path> closed_dual_path(const Configuration& config,
                                     const std::vector<DualVertex>& seeds,
                                     const std::vector<DualVertex>& targets) {
    const Grid& g = config.grid();
    std::vector<int> parent(static_cast<std::size_t>(g.dual_count()), -2);
    std::vector<std::uint8_t> is_target(
        static_cast<std::size_t>(g.dual_count()), 0);
    for (DualVertex t : targets)
        is_target[static_cast<std::size_t>(g.dual_index(t))] = 1;

    std::vector<int> queue;
    for (DualVertex s : seeds) {
        int si = g.dual_index(s);
        if (parent[static_cast<std::size_t>(si)] == -2) {
            parent[static_cast<std::size_t>(si)] = -1;
            queue.push_back(si);
        }
    }
    auto extract = [&](int end) {
        std::vector<Vertex> rev;
        for (int f = end; f != -1; f = parent[static_cast<std::size_t>(f)]) {
            DualVertex d = g.dual_at(f);
            rev.push_back({d.x, d.y});
        }
        std::reverse(rev.begin(), rev.end());
        return Path{std::move(rev)};
    };
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int ui = queue[head];
        if (is_target[static_cast<std::size_t>(ui)]) return extract(ui);
        DualVertex u = g.dual_at(ui);
        for (Dir d : square_dirs) {
            DualVertex v{u.x + d.dx, u.y + d.dy};
            if (!g.contains_dual(v)) continue;
            Edge crossing = dual_step_primal_edge(u, d);
            if (!g.contains_edge(crossing) || config.edge_open(crossing))
                continue;
            int vi = g.dual_index(v);
            if (parent[static_cast<std::size_t>(vi)] != -2) continue;
            parent[static_cast<std::size_t>(vi)] = ui;
            queue.push_back(vi);
        }
    }
    return std::nullopt;
}

std::vector<Detour> find_impl(const Configuration& config, const Path& lowest,
                              double epsilon, int window, bool with_witness) {
    if (config.model().kind != ModelKind::square_bond)
        throw std::invalid_argument("detours are defined for square-bond only");
    if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be > 0");
    if (window < 2) throw std::invalid_argument("window must be >= 2");
    const Grid& g = config.grid();
    if (!is_crossing_path(g, ModelKind::square_bond, lowest) ||
        !is_open_path(config, lowest))
        throw std::invalid_argument(
            "detour search requires an open crossing of this configuration");

    const int L = lowest.length();
    std::vector<int> pos(static_cast<std::size_t>(g.vertex_count()), -1);
    for (int k = 0; k <= L; ++k)
        pos[static_cast<std::size_t>(
            g.vertex_index(lowest.vertices[static_cast<std::size_t>(k)]))] = k;

    auto lower = lower_component_mask(g, ModelKind::square_bond, lowest);
    ClosedClusters clusters = closed_dual_clusters(config);

    // Scratch for the per-anchor bounded BFS.
    std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<int> parent(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<int> touched;

    std::vector<Detour> found;
    for (int i = 0; i < L; ++i) {
        const Vertex v0 = lowest.vertices[static_cast<std::size_t>(i)];
        const int max_span = std::min(window, L - i);
        const int depth_cap = static_cast<int>(
            std::floor(epsilon * static_cast<double>(max_span)));
        if (depth_cap < 1) continue;

        touched.clear();
        const int v0i = g.vertex_index(v0);
        dist[static_cast<std::size_t>(v0i)] = 0;
        touched.push_back(v0i);
        std::vector<int> queue{v0i};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int ui = queue[head];
            int du = dist[static_cast<std::size_t>(ui)];
            if (du == depth_cap) break;  // queue is in distance order
            Vertex u = g.vertex_at(ui);
            // Crossing vertices other than v0 are terminals, never expanded.
            if (ui != v0i && pos[static_cast<std::size_t>(ui)] != -1) continue;
            for (Dir d : square_dirs) {
                Vertex v{u.x + d.dx, u.y + d.dy};
                if (!g.contains(v)) continue;
                int vi = g.vertex_index(v);
                if (dist[static_cast<std::size_t>(vi)] != -1) continue;
                if (!config.open(g.step_edge_index(u, d))) continue;
                int pv = pos[static_cast<std::size_t>(vi)];
                bool above = !lower[static_cast<std::size_t>(vi)] && pv == -1;
                if (!above && pv == -1) continue;  // strictly below: unusable
                if (pv != -1 && pv <= i) continue;  // backward anchors
                dist[static_cast<std::size_t>(vi)] = du + 1;
                parent[static_cast<std::size_t>(vi)] = ui;
                touched.push_back(vi);
                queue.push_back(vi);
            }
        }

        for (int j = i + 1; j <= i + max_span; ++j) {
            const Vertex vm = lowest.vertices[static_cast<std::size_t>(j)];
            const int vmi = g.vertex_index(vm);
            const int d = dist[static_cast<std::size_t>(vmi)];
            if (d < 0) continue;
            if (static_cast<double>(d) >
                epsilon * static_cast<double>(j - i) + 1e-12)
                continue;
            if (j == i + 1 && d == 1) continue;  // gamma would be the span edge
            Path gamma;
            for (int v = vmi; v != -1; v = parent[static_cast<std::size_t>(v)])
                gamma.vertices.push_back(g.vertex_at(v));
            std::reverse(gamma.vertices.begin(), gamma.vertices.end());

            CurveSectors sectors = shield_sectors(lowest, gamma, i, j);
            bool shielded = false;
            for (DualVertex s : sectors.start_faces) {
                for (DualVertex t : sectors.end_faces)
                    if (clusters.same(g.dual_index(s), g.dual_index(t)))
                        shielded = true;
                if (shielded) break;
            }
            if (!shielded) continue;

            Detour detour{std::move(gamma), i, j, {}};
            if (with_witness) {
                auto witness = closed_dual_path(config, sectors.start_faces,
                                                sectors.end_faces);
                if (!witness) continue;  // cannot happen: same cluster
                detour.shield = std::move(*witness);
            }
            found.push_back(std::move(detour));
        }

        for (int v : touched) {
            dist[static_cast<std::size_t>(v)] = -1;
            parent[static_cast<std::size_t>(v)] = -1;
        }
    }
    return found;
}

}  // namespace

std::vector<Detour> find_shielded_detours(const Configuration& config,
                                          const Path& lowest, double epsilon,
                                          int window) {
    return find_impl(config, lowest, epsilon, window, true);
}

std::vector<Detour> select_detour_collection(std::vector<Detour> detours) {
    std::stable_sort(detours.begin(), detours.end(),
                     [](const Detour& a, const Detour& b) {
                         if (a.span_length() != b.span_length())
                             return a.span_length() > b.span_length();
                         if (a.span_begin != b.span_begin)
                             return a.span_begin < b.span_begin;
                         return a.gamma.length() < b.gamma.length();
                     });
    std::vector<Detour> admitted;
    for (Detour& d : detours) {
        bool clash = false;
        for (const Detour& kept : admitted)
            if (d.span_begin <= kept.span_end && kept.span_begin <= d.span_end)
                clash = true;
        if (!clash) admitted.push_back(std::move(d));
    }
    std::sort(admitted.begin(), admitted.end(),
              [](const Detour& a, const Detour& b) {
                  return a.span_begin < b.span_begin;
              });
    return admitted;
}

Path shortcut_crossing(const Path& lowest,
                       const std::vector<Detour>& collection) {
    std::vector<const Detour*> sorted;
    sorted.reserve(collection.size());
    for (const Detour& d : collection) sorted.push_back(&d);
    std::sort(sorted.begin(), sorted.end(),
              [](const Detour* a, const Detour* b) {
                  return a->span_begin < b->span_begin;
              });
    int cursor = 0;
    Path sigma;
    for (const Detour* d : sorted) {
        if (d->span_begin < cursor)
            throw std::runtime_error("detour spans overlap");
        for (int k = cursor; k <= d->span_begin; ++k)
            sigma.vertices.push_back(
                lowest.vertices[static_cast<std::size_t>(k)]);
        if (!(sigma.vertices.back() == d->gamma.vertices.front()))
            throw std::runtime_error("detour does not anchor on the crossing");
        sigma.vertices.insert(sigma.vertices.end(),
                              d->gamma.vertices.begin() + 1,
                              d->gamma.vertices.end());
        cursor = d->span_end + 1;
    }
    for (int k = cursor; k <= lowest.length(); ++k)
        sigma.vertices.push_back(lowest.vertices[static_cast<std::size_t>(k)]);

    // A failure here means two admitted detour paths intersect.
    std::vector<Vertex> sorted_vertices = sigma.vertices;
    std::sort(sorted_vertices.begin(), sorted_vertices.end(),
              [](Vertex a, Vertex b) {
                  return a.x != b.x ? a.x < b.x : a.y < b.y;
              });
    if (std::adjacent_find(sorted_vertices.begin(), sorted_vertices.end()) !=
        sorted_vertices.end())
        throw std::runtime_error(
            "splice produced a self-intersecting walk (detour disjointness "
            "violation)");
    return sigma;
}

bool validate_detour(const Configuration& config, const Path& lowest,
                     const Detour& detour, double epsilon) {
    const Grid& g = config.grid();
    const Path& gamma = detour.gamma;
    if (gamma.vertices.size() < 2) return false;
    if (detour.span_begin < 0 || detour.span_end <= detour.span_begin ||
        detour.span_end > lowest.length())
        return false;
    // condition 1: anchored on the crossing, interior strictly above it
    if (!(gamma.vertices.front() ==
          lowest.vertices[static_cast<std::size_t>(detour.span_begin)]) ||
        !(gamma.vertices.back() ==
          lowest.vertices[static_cast<std::size_t>(detour.span_end)]))
        return false;
    if (!is_open_path(config, gamma)) return false;
    auto lower = lower_component_mask(g, ModelKind::square_bond, lowest);
    std::vector<std::uint8_t> on_lowest(
        static_cast<std::size_t>(g.vertex_count()), 0);
    for (Vertex v : lowest.vertices)
        on_lowest[static_cast<std::size_t>(g.vertex_index(v))] = 1;
    for (std::size_t k = 1; k + 1 < gamma.vertices.size(); ++k) {
        int vi = g.vertex_index(gamma.vertices[k]);
        if (lower[static_cast<std::size_t>(vi)] ||
            on_lowest[static_cast<std::size_t>(vi)])
            return false;
    }
    // condition 3
    if (static_cast<double>(gamma.length()) >
        epsilon * static_cast<double>(detour.span_length()) + 1e-12)
        return false;

    // condition 2, from scratch: classify faces against the spliced curve by
    // ray casting (a face center is above the curve iff an even number of
    // curve edges lies directly above it), then search closed dual edges
    // over above-side faces only.
    Path spliced = shortcut_crossing(lowest, {detour});
    std::vector<std::pair<int, int>> horizontal;  // (x of left end, y)
    for (std::size_t k = 1; k < spliced.vertices.size(); ++k) {
        Vertex a = spliced.vertices[k - 1], b = spliced.vertices[k];
        if (a.y == b.y) horizontal.emplace_back(std::min(a.x, b.x), a.y);
    }
    auto face_allowed = [&](DualVertex f) {
        int above = 0;
        for (auto [x, y] : horizontal)
            if (x == f.x && y >= f.y + 1) ++above;
        return above % 2 == 0;
    };
    CurveSectors sectors =
        shield_sectors(lowest, gamma, detour.span_begin, detour.span_end);
    std::vector<std::uint8_t> visited(
        static_cast<std::size_t>(g.dual_count()), 0);
    std::vector<std::uint8_t> target(
        static_cast<std::size_t>(g.dual_count()), 0);
    for (DualVertex t : sectors.end_faces)
        target[static_cast<std::size_t>(g.dual_index(t))] = 1;
    std::vector<DualVertex> queue;
    for (DualVertex s : sectors.start_faces) {
        if (!face_allowed(s)) continue;
        int si = g.dual_index(s);
        if (!visited[static_cast<std::size_t>(si)]) {
            visited[static_cast<std::size_t>(si)] = 1;
            queue.push_back(s);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        DualVertex u = queue[head];
        if (target[static_cast<std::size_t>(g.dual_index(u))]) return true;
        for (Dir d : square_dirs) {
            DualVertex v{u.x + d.dx, u.y + d.dy};
            if (!g.contains_dual(v) || !face_allowed(v)) continue;
            Edge crossing = dual_step_primal_edge(u, d);
            if (!g.contains_edge(crossing) || config.edge_open(crossing))
                continue;
            int vi = g.dual_index(v);
            if (visited[static_cast<std::size_t>(vi)]) continue;
            visited[static_cast<std::size_t>(vi)] = 1;
            queue.push_back(v);
        }
    }
    return false;
}

DetourReport detour_report(const Configuration& config, const Path& lowest,
                           double epsilon, int window) {
    DetourReport report;
    report.epsilon = epsilon;
    report.window = window;
    report.lowest_length = lowest.length();
    auto all = find_impl(config, lowest, epsilon, window, false);
    report.collection = select_detour_collection(std::move(all));
    for (Detour& d : report.collection) {
        // attach witnesses for the packed collection only
        CurveSectors sectors =
            shield_sectors(lowest, d.gamma, d.span_begin, d.span_end);
        auto witness =
            closed_dual_path(config, sectors.start_faces, sectors.end_faces);
        if (witness) d.shield = std::move(*witness);
    }
    report.sigma = shortcut_crossing(lowest, report.collection);
    report.sigma_length = report.sigma.length();
    auto shortest = shortest_crossing(config);
    report.shortest_length = shortest ? shortest->length() : -1;

    std::vector<std::uint8_t> covered(
        static_cast<std::size_t>(lowest.length() + 1), 0);
    for (const Detour& d : report.collection)
        for (int k = d.span_begin + 1; k < d.span_end; ++k)
            covered[static_cast<std::size_t>(k)] = 1;
    for (int k = 0; k <= lowest.length(); ++k)
        if (!covered[static_cast<std::size_t>(k)])
            report.non_detoured.push_back(k);
    return report;
}

std::string detour_report_json(const DetourReport& report, int n) {
    nlohmann::json j;
    j["epsilon"] = report.epsilon;
    j["n"] = n;
    j["sigma_length"] = report.sigma_length;
    j["lowest_length"] = report.lowest_length;
    j["shortest_length"] = report.shortest_length;
    j["non_detoured_fraction"] = report.non_detoured_fraction();
    return j.dump();
}

DetourSummary detour_statistics(LatticeModel model, int n, double epsilon,
                                int window, long trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const Grid grid = Grid::centered_box(n);
    std::vector<std::optional<std::pair<double, double>>> per_trial(
        static_cast<std::size_t>(trials));
    auto one = [&](long t) -> std::optional<double> {
        Configuration config = Configuration::sample(
            model, grid,
            trial_seed(seed, static_cast<std::uint64_t>(n),
                       static_cast<std::uint64_t>(t)));
        auto lowest = lowest_crossing(config);
        if (!lowest) return std::nullopt;
        DetourReport report = detour_report(config, *lowest, epsilon, window);
        per_trial[static_cast<std::size_t>(t)] = {
            static_cast<double>(report.sigma_length) /
                static_cast<double>(report.lowest_length),
            report.non_detoured_fraction()};
        return 0.0;
    };
    run_trials_parallel(trials, one);

    DetourSummary summary;
    summary.attempted = trials;
    RunningStats ratio, fraction;
    for (const auto& v : per_trial)
        if (v) {
            ++summary.accepted;
            ratio.add(v->first);
            fraction.add(v->second);
        }
    summary.sigma_ratio = {ratio.mean(), ratio.stderror()};
    summary.non_detoured = {fraction.mean(), fraction.stderror()};
    return summary;
}

}  // namespace perc
