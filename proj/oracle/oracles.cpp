#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "perc/detour.hpp"

namespace perc::oracle {
namespace {

bool step_ok(const Configuration& config, Vertex u, Dir d, Vertex v) {
    if (config.model().kind == ModelKind::square_bond)
        return config.open(config.grid().step_edge_index(u, d));
    return config.site_open(v);
}

}  // namespace

std::vector<int> dfs_component_labels(const Configuration& config) {
    const Grid& g = config.grid();
    const bool bond = config.model().kind == ModelKind::square_bond;
    std::vector<int> label(static_cast<std::size_t>(g.vertex_count()), -1);
    std::function<void(Vertex, int)> visit = [&](Vertex u, int mark) {
        label[static_cast<std::size_t>(g.vertex_index(u))] = mark;
        if (!bond && !config.site_open(u)) return;  // closed site: singleton
        for (Dir d : neighbor_dirs(config.model().kind)) {
            Vertex v{u.x + d.dx, u.y + d.dy};
            if (!g.contains(v)) continue;
            if (label[static_cast<std::size_t>(g.vertex_index(v))] != -1)
                continue;
            if (!step_ok(config, u, d, v)) continue;
            visit(v, mark);
        }
    };
    for (int i = 0; i < g.vertex_count(); ++i)
        if (label[static_cast<std::size_t>(i)] == -1) visit(g.vertex_at(i), i);
    return label;
}

std::vector<Path> enumerate_crossings(const Configuration& config) {
    const Grid& g = config.grid();
    const bool bond = config.model().kind == ModelKind::square_bond;
    std::vector<Path> found;
    std::vector<Vertex> stack;
    std::vector<std::uint8_t> used(static_cast<std::size_t>(g.vertex_count()),
                                   0);

    std::function<void(Vertex)> extend = [&](Vertex u) {
        stack.push_back(u);
        used[static_cast<std::size_t>(g.vertex_index(u))] = 1;
        if (g.on_right(u)) {
            found.push_back(Path{stack});
        } else {
            for (Dir d : neighbor_dirs(config.model().kind)) {
                Vertex v{u.x + d.dx, u.y + d.dy};
                if (!g.contains(v)) continue;
                if (used[static_cast<std::size_t>(g.vertex_index(v))])
                    continue;
                if (g.on_left(v)) continue;  // would touch the left side twice
                if (!step_ok(config, u, d, v)) continue;
                extend(v);
            }
        }
        used[static_cast<std::size_t>(g.vertex_index(u))] = 0;
        stack.pop_back();
    };

    for (Vertex s : g.left_side()) {
        if (!bond && !config.site_open(s)) continue;
        extend(s);
    }
    return found;
}

std::vector<std::uint8_t> flood_lower(const Grid& grid, ModelKind kind,
                                      const Path& path) {
    std::vector<std::uint8_t> on_path(
        static_cast<std::size_t>(grid.vertex_count()), 0);
    for (Vertex v : path.vertices)
        on_path[static_cast<std::size_t>(grid.vertex_index(v))] = 1;
    std::vector<std::uint8_t> mask(
        static_cast<std::size_t>(grid.vertex_count()), 0);
    std::function<void(Vertex)> visit = [&](Vertex u) {
        mask[static_cast<std::size_t>(grid.vertex_index(u))] = 1;
        for (Dir d : neighbor_dirs(kind)) {
            Vertex v{u.x + d.dx, u.y + d.dy};
            if (!grid.contains(v)) continue;
            int vi = grid.vertex_index(v);
            if (mask[static_cast<std::size_t>(vi)] ||
                on_path[static_cast<std::size_t>(vi)])
                continue;
            visit(v);
        }
    };
    for (Vertex s : grid.bottom_side()) {
        int si = grid.vertex_index(s);
        if (!on_path[static_cast<std::size_t>(si)] &&
            !mask[static_cast<std::size_t>(si)])
            visit(s);
    }
    return mask;
}

namespace {

// Planar region strictly below a crossing, discretized by ray casting at two
// probe points per face, one in each half-triangle (diagonal steps of the
// triangular lattice split faces in two). Distinct crossings can tie on
// vertex sets alone (a degenerate excursion moves vertices between "on the
// path" and "below it"), but the under-region orders curves exactly.
std::vector<std::uint8_t> under_faces(const Grid& g, const Path& path) {
    std::vector<std::pair<int, int>> horizontal;  // (left x, y)
    std::vector<std::pair<int, int>> diagonal;    // lower-left corner
    for (std::size_t k = 1; k < path.vertices.size(); ++k) {
        Vertex a = path.vertices[k - 1], b = path.vertices[k];
        if (a.y == b.y)
            horizontal.emplace_back(std::min(a.x, b.x), a.y);
        else if (a.x != b.x)
            diagonal.emplace_back(std::min(a.x, b.x), std::min(a.y, b.y));
    }
    std::vector<std::uint8_t> mask(
        static_cast<std::size_t>(2 * (g.width() - 1) * (g.height() - 1)), 0);
    for (int fy = g.y_lo(); fy < g.y_hi(); ++fy)
        for (int fx = g.x_lo(); fx < g.x_hi(); ++fx) {
            int h = 0, diag_high = 0, diag_low = 0;
            for (auto [x, y] : horizontal)
                if (x == fx && y >= fy + 1) ++h;
            for (auto [x, y] : diagonal)
                if (x == fx) {
                    if (y >= fy + 1) ++diag_high;
                    if (y >= fy) ++diag_low;
                }
            std::size_t base = 2 * static_cast<std::size_t>(
                                       (fy - g.y_lo()) * (g.width() - 1) +
                                       (fx - g.x_lo()));
            mask[base] = static_cast<std::uint8_t>((h + diag_high) % 2);
            mask[base + 1] = static_cast<std::uint8_t>((h + diag_low) % 2);
        }
    return mask;
}

}  // namespace

std::optional<Path> minimal_lower_crossing(const Configuration& config) {
    const Grid& g = config.grid();
    auto crossings = enumerate_crossings(config);
    if (crossings.empty()) return std::nullopt;

    std::vector<std::vector<std::uint8_t>> lowers;
    lowers.reserve(crossings.size());
    for (const Path& path : crossings) lowers.push_back(under_faces(g, path));

    auto subset = [](const std::vector<std::uint8_t>& a,
                     const std::vector<std::uint8_t>& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] && !b[i]) return false;
        return true;
    };
    auto size_of = [](const std::vector<std::uint8_t>& m) {
        return std::count(m.begin(), m.end(), std::uint8_t{1});
    };
    std::size_t best = 0;
    for (std::size_t i = 1; i < crossings.size(); ++i)
        if (size_of(lowers[i]) < size_of(lowers[best])) best = i;
    for (std::size_t i = 0; i < crossings.size(); ++i)
        if (!subset(lowers[best], lowers[i])) return std::nullopt;
    return crossings[best];
}

namespace {

template <typename C>
struct ArmSearch {
    const C& config;
    const ArmSpec& spec;
    int x_lo, x_hi, y_lo, y_hi;
    std::vector<std::uint8_t> used_primal;
    std::vector<std::uint8_t> used_dual;

    bool on_ring(Vertex v) const {
        return v.x == x_lo || v.x == x_hi || v.y == y_lo || v.y == y_hi;
    }
    bool in_box(Vertex v) const {
        return v.x >= x_lo && v.x <= x_hi && v.y >= y_lo && v.y <= y_hi;
    }
    bool face_in_box(DualVertex f) const {
        return f.x >= x_lo && f.x < x_hi && f.y >= y_lo && f.y < y_hi;
    }
    bool face_on_ring(DualVertex f) const {
        return f.x == x_lo || f.x == x_hi - 1 || f.y == y_lo ||
               f.y == y_hi - 1;
    }

    bool open_arm_then(Vertex u, bool at_center,
                       const std::function<bool()>& rest) {
        const Grid& g = config.grid();
        if (!at_center && on_ring(u)) {
            if (rest()) return true;
        }
        for (Dir d : square_dirs) {
            Vertex v{u.x + d.dx, u.y + d.dy};
            if (!in_box(v)) continue;
            int vi = g.vertex_index(v);
            if (used_primal[static_cast<std::size_t>(vi)]) continue;
            if (!config.open(g.step_edge_index(u, d))) continue;
            used_primal[static_cast<std::size_t>(vi)] = 1;
            if (open_arm_then(v, false, rest)) return true;
            used_primal[static_cast<std::size_t>(vi)] = 0;
        }
        return false;
    }

    bool closed_arm_then(DualVertex f, int steps,
                         const std::function<bool()>& rest) {
        const Grid& g = config.grid();
        if (steps >= 1 && face_on_ring(f)) {
            if (rest()) return true;
        }
        for (Dir d : square_dirs) {
            DualVertex t{f.x + d.dx, f.y + d.dy};
            if (!face_in_box(t)) continue;
            int ti = g.dual_index(t);
            if (used_dual[static_cast<std::size_t>(ti)]) continue;
            if (config.edge_open(dual_step_primal_edge(f, d))) continue;
            used_dual[static_cast<std::size_t>(ti)] = 1;
            if (closed_arm_then(t, steps + 1, rest)) return true;
            used_dual[static_cast<std::size_t>(ti)] = 0;
        }
        return false;
    }

    bool site_arm_then(Vertex u, bool want_open,
                       const std::function<bool()>& rest) {
        const Grid& g = config.grid();
        if (on_ring(u)) {
            if (rest()) return true;
        }
        for (Dir d : triangular_dirs) {
            Vertex v{u.x + d.dx, u.y + d.dy};
            if (!in_box(v) || v == spec.center.v) continue;
            int vi = g.vertex_index(v);
            if (used_primal[static_cast<std::size_t>(vi)]) continue;
            if (config.site_open(v) != want_open) continue;
            used_primal[static_cast<std::size_t>(vi)] = 1;
            if (site_arm_then(v, want_open, rest)) return true;
            used_primal[static_cast<std::size_t>(vi)] = 0;
        }
        return false;
    }

    bool search(std::size_t color_index) {
        const Grid& g = config.grid();
        if (color_index == spec.colors.size()) return true;
        auto rest = [&] { return search(color_index + 1); };
        const bool open_color = spec.colors[color_index] == ArmColor::open;

        if (config.model().kind == ModelKind::square_bond) {
            if (open_color) {
                int open_seen = 0;
                for (std::size_t k = 0; k < color_index; ++k)
                    open_seen += spec.colors[k] == ArmColor::open ? 1 : 0;
                Vertex start = spec.center.v;
                if (spec.center.edge && open_seen == 1)
                    start = {spec.center.v.x + 1, spec.center.v.y};
                return open_arm_then(start, true, rest);
            }
            std::vector<DualVertex> starts;
            if (spec.center.edge) {
                starts = {{spec.center.v.x, spec.center.v.y - 1},
                          {spec.center.v.x, spec.center.v.y}};
            } else {
                Vertex c = spec.center.v;
                starts = {{c.x - 1, c.y - 1},
                          {c.x, c.y - 1},
                          {c.x - 1, c.y},
                          {c.x, c.y}};
            }
            for (DualVertex s : starts) {
                int si = g.dual_index(s);
                if (used_dual[static_cast<std::size_t>(si)]) continue;
                used_dual[static_cast<std::size_t>(si)] = 1;
                if (closed_arm_then(s, 0, rest)) return true;
                used_dual[static_cast<std::size_t>(si)] = 0;
            }
            return false;
        }

        for (Dir d : triangular_dirs) {
            Vertex s{spec.center.v.x + d.dx, spec.center.v.y + d.dy};
            if (!in_box(s)) continue;
            int si = g.vertex_index(s);
            if (used_primal[static_cast<std::size_t>(si)]) continue;
            if (config.site_open(s) != open_color) continue;
            used_primal[static_cast<std::size_t>(si)] = 1;
            if (site_arm_then(s, open_color, rest)) return true;
            used_primal[static_cast<std::size_t>(si)] = 0;
        }
        return false;
    }
};

// Configuration whose states come from an explicit bit mask.
struct MaskView {
    const Grid& g;
    LatticeModel m;
    const std::vector<std::uint8_t>& bits;
    const Grid& grid() const { return g; }
    LatticeModel model() const { return m; }
    bool open(int i) const { return bits[static_cast<std::size_t>(i)] != 0; }
    bool edge_open(Edge e) const { return open(g.edge_index(e)); }
    bool site_open(Vertex v) const { return open(g.vertex_index(v)); }
};

template <typename C>
bool disjoint_arms_search(const C& config, const ArmSpec& spec) {
    const Grid& g = config.grid();
    ArmSearch<C> search{
        config,
        spec,
        spec.center.v.x - spec.radius,
        spec.center.v.x + spec.radius,
        spec.center.v.y - spec.radius,
        spec.center.v.y + spec.radius,
        std::vector<std::uint8_t>(static_cast<std::size_t>(g.vertex_count()),
                                  0),
        std::vector<std::uint8_t>(static_cast<std::size_t>(g.dual_count()),
                                  0)};
    if (spec.center.edge) {
        // the arm from one endpoint may not pass through the other
        search.used_primal[static_cast<std::size_t>(
            g.vertex_index(spec.center.v))] = 1;
        search.used_primal[static_cast<std::size_t>(g.vertex_index(
            {spec.center.v.x + 1, spec.center.v.y}))] = 1;
    }
    return search.search(0);
}

}  // namespace

bool disjoint_arms(const Configuration& config, const ArmSpec& spec) {
    return disjoint_arms_search(config, spec);
}

double exact_arm_probability(LatticeModel model, const ArmSpec& spec) {
    const Grid grid = Grid::centered_box(spec.radius);
    const int states = grid.state_count(model.kind);
    if (states > 26)
        throw std::invalid_argument("state enumeration too large");
    long hits = 0;
    const long total = 1L << states;
    std::vector<std::uint8_t> open(static_cast<std::size_t>(states));
    for (long mask = 0; mask < total; ++mask) {
        for (int i = 0; i < states; ++i)
            open[static_cast<std::size_t>(i)] =
                static_cast<std::uint8_t>((mask >> i) & 1);
        MaskView view{grid, model, open};
        hits += disjoint_arms_search(view, spec) ? 1 : 0;
    }
    // every mask has weight 2^-states only at p = 1/2
    return static_cast<double>(hits) / static_cast<double>(total);
}

std::set<std::pair<int, int>> detour_anchor_pairs(const Configuration& config,
                                                  const Path& lowest,
                                                  double epsilon) {
    const Grid& g = config.grid();
    const int L = lowest.length();
    auto lower = flood_lower(g, ModelKind::square_bond, lowest);
    std::vector<int> pos(static_cast<std::size_t>(g.vertex_count()), -1);
    for (int k = 0; k <= L; ++k)
        pos[static_cast<std::size_t>(
            g.vertex_index(lowest.vertices[static_cast<std::size_t>(k)]))] = k;

    auto dir_between = [](Vertex a, Vertex b) {
        return Dir{b.x - a.x, b.y - a.y};
    };

    auto shield_ok = [&](int i, int j, const Path& gamma) {
        std::vector<Detour> one{Detour{gamma, i, j, {}}};
        Path spliced = shortcut_crossing(lowest, one);
        // ray casting: face center is above the spliced curve iff an even
        // number of curve edges lies straight above it
        std::vector<std::pair<int, int>> horizontal;
        for (std::size_t k = 1; k < spliced.vertices.size(); ++k) {
            Vertex a = spliced.vertices[k - 1], b = spliced.vertices[k];
            if (a.y == b.y) horizontal.emplace_back(std::min(a.x, b.x), a.y);
        }
        auto allowed = [&](DualVertex f) {
            int above = 0;
            for (auto [x, y] : horizontal)
                if (x == f.x && y >= f.y + 1) ++above;
            return above % 2 == 0;
        };
        Dir in_start =
            i > 0 ? dir_between(lowest.vertices[static_cast<std::size_t>(i - 1)],
                                lowest.vertices[static_cast<std::size_t>(i)])
                  : Dir{1, 0};
        Dir out_start = dir_between(gamma.vertices[0], gamma.vertices[1]);
        Dir in_end = dir_between(gamma.vertices[gamma.vertices.size() - 2],
                                 gamma.vertices.back());
        Dir out_end =
            j < L ? dir_between(lowest.vertices[static_cast<std::size_t>(j)],
                                lowest.vertices[static_cast<std::size_t>(j + 1)])
                  : Dir{1, 0};
        auto seeds = upper_sector_faces(
            lowest.vertices[static_cast<std::size_t>(i)], in_start, out_start);
        auto targets = upper_sector_faces(
            lowest.vertices[static_cast<std::size_t>(j)], in_end, out_end);

        std::set<int> target_ids;
        for (DualVertex t : targets)
            if (allowed(t)) target_ids.insert(g.dual_index(t));
        if (target_ids.empty()) return false;
        std::vector<std::uint8_t> visited(
            static_cast<std::size_t>(g.dual_count()), 0);
        std::vector<DualVertex> queue;
        for (DualVertex s : seeds) {
            if (!allowed(s)) continue;
            int si = g.dual_index(s);
            if (!visited[static_cast<std::size_t>(si)]) {
                visited[static_cast<std::size_t>(si)] = 1;
                queue.push_back(s);
            }
        }
        for (std::size_t head = 0; head < queue.size(); ++head) {
            DualVertex u = queue[head];
            if (target_ids.count(g.dual_index(u))) return true;
            for (Dir d : square_dirs) {
                DualVertex v{u.x + d.dx, u.y + d.dy};
                if (!g.contains_dual(v) || !allowed(v)) continue;
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
    };

    std::set<std::pair<int, int>> pairs;
    std::vector<Vertex> walk;  // interior vertices of the candidate
    std::vector<std::uint8_t> used(static_cast<std::size_t>(g.vertex_count()),
                                   0);
    std::function<void(int, Vertex)> extend = [&](int i, Vertex u) {
        for (Dir d : square_dirs) {
            Vertex v{u.x + d.dx, u.y + d.dy};
            if (!g.contains(v)) continue;
            int vi = g.vertex_index(v);
            if (used[static_cast<std::size_t>(vi)]) continue;
            if (!config.open(g.step_edge_index(u, d))) continue;
            int pv = pos[static_cast<std::size_t>(vi)];
            int len = static_cast<int>(walk.size()) + 1;  // edges used
            if (pv > i) {
                if (pairs.count({i, pv}) == 0 &&
                    static_cast<double>(len) <=
                        epsilon * static_cast<double>(pv - i) + 1e-12 &&
                    !(pv == i + 1 && len == 1)) {
                    Path gamma;
                    gamma.vertices.push_back(
                        lowest.vertices[static_cast<std::size_t>(i)]);
                    gamma.vertices.insert(gamma.vertices.end(), walk.begin(),
                                          walk.end());
                    gamma.vertices.push_back(v);
                    if (shield_ok(i, pv, gamma)) pairs.insert({i, pv});
                }
                continue;
            }
            if (pv != -1) continue;  // backward or current anchor
            if (lower[static_cast<std::size_t>(vi)]) continue;
            if (len >= static_cast<int>(std::floor(
                           epsilon * static_cast<double>(L - i) + 1e-12)))
                continue;  // no target could still satisfy the length bound
            used[static_cast<std::size_t>(vi)] = 1;
            walk.push_back(v);
            extend(i, v);
            walk.pop_back();
            used[static_cast<std::size_t>(vi)] = 0;
        }
    };

    for (int i = 0; i < L; ++i) {
        if (std::floor(epsilon * static_cast<double>(L - i) + 1e-12) < 1.0)
            continue;
        walk.clear();
        Vertex v0 = lowest.vertices[static_cast<std::size_t>(i)];
        used[static_cast<std::size_t>(g.vertex_index(v0))] = 1;
        extend(i, v0);
        used[static_cast<std::size_t>(g.vertex_index(v0))] = 0;
    }
    return pairs;
}

}  // namespace perc::oracle
