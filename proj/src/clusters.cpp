#include "perc/clusters.hpp"

namespace perc {
namespace {

// BFS from every open left-side vertex over the open subgraph; early exit on
// touching the right side.
bool crossing_bfs(const Configuration& config) {
    const Grid& g = config.grid();
    const bool bond = config.model().kind == ModelKind::square_bond;
    const auto dirs = neighbor_dirs(config.model().kind);

    std::vector<std::uint8_t> visited(
        static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<int> queue;
    queue.reserve(static_cast<std::size_t>(g.vertex_count()));

    for (Vertex s : g.left_side()) {
        if (!bond && !config.site_open(s)) continue;
        int si = g.vertex_index(s);
        if (!visited[static_cast<std::size_t>(si)]) {
            visited[static_cast<std::size_t>(si)] = 1;
            queue.push_back(si);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = g.vertex_at(queue[head]);
        if (g.on_right(u)) return true;
        for (Dir d : dirs) {
            Vertex v{u.x + d.dx, u.y + d.dy};
            if (!g.contains(v)) continue;
            int vi = g.vertex_index(v);
            if (visited[static_cast<std::size_t>(vi)]) continue;
            if (bond) {
                if (!config.open(g.step_edge_index(u, d))) continue;
            } else {
                if (!config.open(vi)) continue;
            }
            visited[static_cast<std::size_t>(vi)] = 1;
            queue.push_back(vi);
        }
    }
    return false;
}

}  // namespace

ClusterView build_clusters(const Configuration& config) {
    const Grid& g = config.grid();
    UnionFind uf(g.vertex_count());
    if (config.model().kind == ModelKind::square_bond) {
        for (int e = 0; e < g.edge_count(); ++e) {
            if (!config.open(e)) continue;
            Edge edge = g.edge_at(e);
            uf.unite(g.vertex_index(edge.a), g.vertex_index(edge.b));
        }
    } else {
        for (int i = 0; i < g.vertex_count(); ++i) {
            if (!config.open(i)) continue;
            Vertex u = g.vertex_at(i);
            for (Dir d : triangular_dirs) {
                Vertex v{u.x + d.dx, u.y + d.dy};
                if (!g.contains(v)) continue;
                int vi = g.vertex_index(v);
                if (config.open(vi)) uf.unite(i, vi);
            }
        }
    }
    std::vector<int> labels(static_cast<std::size_t>(g.vertex_count()));
    for (int i = 0; i < g.vertex_count(); ++i)
        labels[static_cast<std::size_t>(i)] = uf.find(i);
    return ClusterView(config, std::move(labels));
}

bool has_left_right_crossing(const Configuration& config) {
    return crossing_bfs(config);
}

bool connected(const Configuration& config, Vertex x, Vertex y) {
    const Grid& g = config.grid();
    if (!g.contains(x) || !g.contains(y))
        throw std::invalid_argument("vertex outside box");
    if (x == y) return true;
    if (config.model().kind == ModelKind::triangular_site &&
        (!config.site_open(x) || !config.site_open(y)))
        return false;

    const bool bond = config.model().kind == ModelKind::square_bond;
    const auto dirs = neighbor_dirs(config.model().kind);
    std::vector<std::uint8_t> visited(
        static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<int> queue{g.vertex_index(x)};
    visited[static_cast<std::size_t>(queue[0])] = 1;
    const int target = g.vertex_index(y);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        if (queue[head] == target) return true;
        Vertex u = g.vertex_at(queue[head]);
        for (Dir d : dirs) {
            Vertex v{u.x + d.dx, u.y + d.dy};
            if (!g.contains(v)) continue;
            int vi = g.vertex_index(v);
            if (visited[static_cast<std::size_t>(vi)]) continue;
            if (bond ? !config.open(g.step_edge_index(u, d))
                     : !config.open(vi))
                continue;
            visited[static_cast<std::size_t>(vi)] = 1;
            queue.push_back(vi);
        }
    }
    return false;
}

bool connected_to_boundary(const Configuration& config, Vertex x) {
    const Grid& g = config.grid();
    if (!g.contains(x)) throw std::invalid_argument("vertex outside box");
    if (g.on_boundary(x)) return true;
    if (config.model().kind == ModelKind::triangular_site &&
        !config.site_open(x))
        return false;

    const bool bond = config.model().kind == ModelKind::square_bond;
    const auto dirs = neighbor_dirs(config.model().kind);
    std::vector<std::uint8_t> visited(
        static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<int> queue{g.vertex_index(x)};
    visited[static_cast<std::size_t>(queue[0])] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = g.vertex_at(queue[head]);
        if (g.on_boundary(u)) return true;
        for (Dir d : dirs) {
            Vertex v{u.x + d.dx, u.y + d.dy};
            if (!g.contains(v)) continue;
            int vi = g.vertex_index(v);
            if (visited[static_cast<std::size_t>(vi)]) continue;
            if (bond ? !config.open(g.step_edge_index(u, d))
                     : !config.open(vi))
                continue;
            visited[static_cast<std::size_t>(vi)] = 1;
            queue.push_back(vi);
        }
    }
    return false;
}

bool dual_top_bottom_closed_crossing(const Configuration& config) {
    if (config.model().kind != ModelKind::square_bond)
        throw std::invalid_argument(
            "dual crossing is defined for square-bond only");
    const Grid& g = config.grid();

    // Dual vertices strictly between the left and right sides, one extra row
    // above and below. A step between neighboring dual vertices is allowed
    // iff the primal edge it bisects lies in the box and is closed.
    const int lo_x = g.x_lo(), hi_x = g.x_hi() - 1;
    const int lo_y = g.y_lo() - 1, hi_y = g.y_hi();
    const int w = hi_x - lo_x + 1, h = hi_y - lo_y + 1;
    auto idx = [&](int x, int y) { return (y - lo_y) * w + (x - lo_x); };

    std::vector<std::uint8_t> visited(static_cast<std::size_t>(w) * h, 0);
    std::vector<std::pair<int, int>> queue;
    for (int x = lo_x; x <= hi_x; ++x) {
        visited[static_cast<std::size_t>(idx(x, hi_y))] = 1;
        queue.emplace_back(x, hi_y);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        auto [x, y] = queue[head];
        if (y == lo_y) return true;
        auto try_step = [&](int nx, int ny, Edge primal) {
            if (nx < lo_x || nx > hi_x || ny < lo_y || ny > hi_y) return;
            if (visited[static_cast<std::size_t>(idx(nx, ny))]) return;
            if (!g.contains_edge(primal) || config.edge_open(primal)) return;
            visited[static_cast<std::size_t>(idx(nx, ny))] = 1;
            queue.emplace_back(nx, ny);
        };
        // vertical dual steps cross horizontal primal edges
        try_step(x, y - 1, Edge{{x, y}, {x + 1, y}});
        try_step(x, y + 1, Edge{{x, y + 1}, {x + 1, y + 1}});
        // horizontal dual steps cross vertical primal edges
        try_step(x - 1, y, Edge{{x, y}, {x, y + 1}});
        try_step(x + 1, y, Edge{{x + 1, y}, {x + 1, y + 1}});
    }
    return false;
}

bool closed_site_top_bottom_crossing(const Configuration& config) {
    if (config.model().kind != ModelKind::triangular_site)
        throw std::invalid_argument(
            "closed-site crossing is defined for triangular-site only");
    const Grid& g = config.grid();
    std::vector<std::uint8_t> visited(
        static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<int> queue;
    for (Vertex s : g.top_side()) {
        if (config.site_open(s)) continue;
        int si = g.vertex_index(s);
        visited[static_cast<std::size_t>(si)] = 1;
        queue.push_back(si);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = g.vertex_at(queue[head]);
        if (g.on_bottom(u)) return true;
        for (Dir d : triangular_dirs) {
            Vertex v{u.x + d.dx, u.y + d.dy};
            if (!g.contains(v)) continue;
            int vi = g.vertex_index(v);
            if (visited[static_cast<std::size_t>(vi)] || config.open(vi))
                continue;
            visited[static_cast<std::size_t>(vi)] = 1;
            queue.push_back(vi);
        }
    }
    return false;
}

}  // namespace perc
