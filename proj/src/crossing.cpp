#include "perc/crossing.hpp"

#include <algorithm>

namespace perc {
namespace {

// BFS expansion priority: right, up, down, left, with the triangular
// diagonals slotted after their nearest axis.
constexpr std::array<Dir, 4> square_bfs_order = {
    Dir{1, 0}, Dir{0, 1}, Dir{0, -1}, Dir{-1, 0}};
constexpr std::array<Dir, 6> triangular_bfs_order = {
    Dir{1, 0}, Dir{1, 1}, Dir{0, 1}, Dir{0, -1}, Dir{-1, -1}, Dir{-1, 0}};

std::span<const Dir> bfs_order(ModelKind kind) {
    if (kind == ModelKind::square_bond)
        return {square_bfs_order.data(), square_bfs_order.size()};
    return {triangular_bfs_order.data(), triangular_bfs_order.size()};
}

bool step_open(const Configuration& config, Vertex u, Dir d, int to_index) {
    if (config.model().kind == ModelKind::square_bond)
        return config.open(config.grid().step_edge_index(u, d));
    return config.open(to_index);
}

Path chain_from_parents(const Grid& g, const std::vector<int>& parent,
                        int end) {
    std::vector<Vertex> rev;
    for (int v = end; v != -1; v = parent[static_cast<std::size_t>(v)])
        rev.push_back(g.vertex_at(v));
    std::reverse(rev.begin(), rev.end());
    return Path{std::move(rev)};
}

// Keep the segment from the last left-side touch to the first right-side
// touch so the crossing meets each side exactly once.
Path trim_to_single_touches(const Grid& g, Path path) {
    std::size_t start = 0;
    for (std::size_t i = 0; i < path.vertices.size(); ++i)
        if (g.on_left(path.vertices[i])) start = i;
    std::size_t stop = path.vertices.size() - 1;
    for (std::size_t i = start; i < path.vertices.size(); ++i)
        if (g.on_right(path.vertices[i])) {
            stop = i;
            break;
        }
    return Path{{path.vertices.begin() + static_cast<std::ptrdiff_t>(start),
                 path.vertices.begin() + static_cast<std::ptrdiff_t>(stop) +
                     1}};
}

}  // namespace

std::optional<Path> shortest_crossing(const Configuration& config) {
    const Grid& g = config.grid();
    const bool bond = config.model().kind == ModelKind::square_bond;
    const auto order = bfs_order(config.model().kind);

    std::vector<int> parent(static_cast<std::size_t>(g.vertex_count()), -2);
    std::vector<int> queue;
    for (Vertex s : g.left_side()) {
        if (!bond && !config.site_open(s)) continue;
        int si = g.vertex_index(s);
        parent[static_cast<std::size_t>(si)] = -1;
        queue.push_back(si);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int ui = queue[head];
        Vertex u = g.vertex_at(ui);
        if (g.on_right(u)) return chain_from_parents(g, parent, ui);
        for (Dir d : order) {
            Vertex v{u.x + d.dx, u.y + d.dy};
            if (!g.contains(v)) continue;
            int vi = g.vertex_index(v);
            if (parent[static_cast<std::size_t>(vi)] != -2) continue;
            if (!step_open(config, u, d, vi)) continue;
            parent[static_cast<std::size_t>(vi)] = ui;
            queue.push_back(vi);
        }
    }
    return std::nullopt;
}

std::optional<Path> lowest_crossing(const Configuration& config) {
    const Grid& g = config.grid();
    const bool bond = config.model().kind == ModelKind::square_bond;
    const auto dirs = neighbor_dirs(config.model().kind);
    const int m = static_cast<int>(dirs.size());

    auto dir_index = [&](Dir d) {
        for (int i = 0; i < m; ++i)
            if (dirs[static_cast<std::size_t>(i)] == d) return i;
        return -1;
    };
    const int east = dir_index({1, 0});

    // Walk frame: vertex, direction we arrived by (index into the CCW list),
    // and how many turn options were already tried.
    struct Frame {
        int vertex;
        int in_dir;
        int tried;
    };

    std::vector<std::uint8_t> visited(
        static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<Frame> stack;

    for (Vertex s : g.left_side()) {  // bottom to top
        if (!bond && !config.site_open(s)) continue;
        int si = g.vertex_index(s);
        if (visited[static_cast<std::size_t>(si)]) continue;
        visited[static_cast<std::size_t>(si)] = 1;
        stack.clear();
        stack.push_back({si, east, 0});
        while (!stack.empty()) {
            Frame& top = stack.back();
            Vertex u = g.vertex_at(top.vertex);
            if (g.on_right(u)) {
                std::vector<Vertex> chain;
                chain.reserve(stack.size());
                for (const Frame& f : stack)
                    chain.push_back(g.vertex_at(f.vertex));
                return trim_to_single_touches(g, Path{std::move(chain)});
            }
            if (top.tried == m - 1) {  // all turns but the reverse exhausted
                stack.pop_back();
                continue;
            }
            // Sharpest right turn first: counterclockwise enumeration
            // starting just past the reverse of the arrival direction.
            int reverse = (top.in_dir + m / 2) % m;
            int k = (reverse + 1 + top.tried) % m;
            ++top.tried;
            Dir d = dirs[static_cast<std::size_t>(k)];
            Vertex v{u.x + d.dx, u.y + d.dy};
            if (!g.contains(v)) continue;
            int vi = g.vertex_index(v);
            if (visited[static_cast<std::size_t>(vi)]) continue;
            if (!step_open(config, u, d, vi)) continue;
            visited[static_cast<std::size_t>(vi)] = 1;
            stack.push_back({vi, k, 0});
        }
    }
    return std::nullopt;
}

CrossingResult crossing_result(const Configuration& config) {
    return {shortest_crossing(config), lowest_crossing(config)};
}

std::vector<std::uint8_t> lower_component_mask(const Grid& grid,
                                               ModelKind kind,
                                               const Path& path) {
    if (!is_crossing_path(grid, kind, path))
        throw std::invalid_argument("path is not a valid crossing");
    const auto dirs = neighbor_dirs(kind);
    std::vector<std::uint8_t> on_path(
        static_cast<std::size_t>(grid.vertex_count()), 0);
    for (Vertex v : path.vertices)
        on_path[static_cast<std::size_t>(grid.vertex_index(v))] = 1;

    std::vector<std::uint8_t> mask(
        static_cast<std::size_t>(grid.vertex_count()), 0);
    std::vector<int> queue;
    for (Vertex s : grid.bottom_side()) {
        int si = grid.vertex_index(s);
        if (on_path[static_cast<std::size_t>(si)]) continue;
        if (mask[static_cast<std::size_t>(si)]) continue;
        mask[static_cast<std::size_t>(si)] = 1;
        queue.push_back(si);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = grid.vertex_at(queue[head]);
        for (Dir d : dirs) {
            Vertex v{u.x + d.dx, u.y + d.dy};
            if (!grid.contains(v)) continue;
            int vi = grid.vertex_index(v);
            if (mask[static_cast<std::size_t>(vi)] ||
                on_path[static_cast<std::size_t>(vi)])
                continue;
            mask[static_cast<std::size_t>(vi)] = 1;
            queue.push_back(vi);
        }
    }
    return mask;
}

std::vector<Vertex> lower_component(const Grid& grid, ModelKind kind,
                                    const Path& path) {
    auto mask = lower_component_mask(grid, kind, path);
    std::vector<Vertex> out;
    for (int i = 0; i < grid.vertex_count(); ++i)
        if (mask[static_cast<std::size_t>(i)]) out.push_back(grid.vertex_at(i));
    return out;
}

}  // namespace perc
