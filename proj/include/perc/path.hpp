// Self-avoiding lattice paths and their validation/serialization.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perc/config.hpp"

namespace perc {

struct Path {
    std::vector<Vertex> vertices;

    // Length in edges.
    int length() const { return static_cast<int>(vertices.size()) - 1; }
    bool empty() const { return vertices.empty(); }
    Vertex front() const { return vertices.front(); }
    Vertex back() const { return vertices.back(); }
};

// Consecutive vertices adjacent under the model's lattice, no repeats.
bool is_self_avoiding_lattice_path(const Grid& grid, ModelKind kind,
                                   const Path& path);

// Additionally: every traversed edge open (bond) or every vertex open (site).
bool is_open_path(const Configuration& config, const Path& path);

// Left-right crossing touching each of the left/right sides exactly once.
bool is_crossing_path(const Grid& grid, ModelKind kind, const Path& path);

// JSON array of [x,y] pairs.
std::string path_to_json(const Path& path);
Path path_from_json(const std::string& text);

}  // namespace perc
