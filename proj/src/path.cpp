#include "perc/path.hpp"

#include <unordered_set>

#include "json.hpp"

namespace perc {

bool is_self_avoiding_lattice_path(const Grid& grid, ModelKind kind,
                                   const Path& path) {
    if (path.vertices.empty()) return false;
    std::unordered_set<long long> seen;
    seen.reserve(path.vertices.size() * 2);
    auto key = [](Vertex v) {
        return (static_cast<long long>(v.x) << 32) ^
               static_cast<unsigned int>(v.y);
    };
    const auto dirs = neighbor_dirs(kind);
    for (std::size_t i = 0; i < path.vertices.size(); ++i) {
        Vertex v = path.vertices[i];
        if (!grid.contains(v)) return false;
        if (!seen.insert(key(v)).second) return false;
        if (i == 0) continue;
        Vertex u = path.vertices[i - 1];
        bool adjacent = false;
        for (Dir d : dirs)
            if (u.x + d.dx == v.x && u.y + d.dy == v.y) adjacent = true;
        if (!adjacent) return false;
    }
    return true;
}

bool is_open_path(const Configuration& config, const Path& path) {
    const Grid& g = config.grid();
    if (!is_self_avoiding_lattice_path(g, config.model().kind, path))
        return false;
    if (config.model().kind == ModelKind::square_bond) {
        for (std::size_t i = 1; i < path.vertices.size(); ++i) {
            Vertex u = path.vertices[i - 1], v = path.vertices[i];
            if (!config.open(g.step_edge_index(u, {v.x - u.x, v.y - u.y})))
                return false;
        }
    } else {
        for (Vertex v : path.vertices)
            if (!config.site_open(v)) return false;
    }
    return true;
}

bool is_crossing_path(const Grid& grid, ModelKind kind, const Path& path) {
    if (!is_self_avoiding_lattice_path(grid, kind, path)) return false;
    if (!grid.on_left(path.front()) || !grid.on_right(path.back()))
        return false;
    int left_touches = 0, right_touches = 0;
    for (Vertex v : path.vertices) {
        left_touches += grid.on_left(v);
        right_touches += grid.on_right(v);
    }
    return left_touches == 1 && right_touches == 1;
}

std::string path_to_json(const Path& path) {
    nlohmann::json arr = nlohmann::json::array();
    for (Vertex v : path.vertices) arr.push_back({v.x, v.y});
    return arr.dump();
}

Path path_from_json(const std::string& text) {
    Path out;
    for (const auto& pair : nlohmann::json::parse(text))
        out.vertices.push_back({pair.at(0).get<int>(), pair.at(1).get<int>()});
    return out;
}

}  // namespace perc
