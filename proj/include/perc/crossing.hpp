// Left-right crossings: the shortest open crossing S_n and the lowest open
// crossing l_n (minimal lower component), plus the lower-component geometry.
#pragma once

#include <optional>

#include "perc/path.hpp"

namespace perc {

struct CrossingResult {
    std::optional<Path> shortest;  // length = S_n when present
    std::optional<Path> lowest;    // length = L_n when present
};

// Minimum-edge-count open left-right crossing, or nullopt when H_n fails.
// Multi-source BFS from the left side; ties broken by a fixed direction
// priority (square: right, up, down, left; triangular: right, up-right, up,
// down, down-left, left) so output paths are deterministic.
std::optional<Path> shortest_crossing(const Configuration& config);

// The open crossing whose lower component is contained in the lower
// component of every other open crossing, or nullopt when H_n fails.
// Computed by walking the open frontier just above the closed region grown
// from below the bottom side: a depth-first walk over open steps that always
// tries the sharpest available right turn first, started from the left side
// bottom-to-top. Certified against exhaustive enumeration at small n.
std::optional<Path> lowest_crossing(const Configuration& config);

CrossingResult crossing_result(const Configuration& config);

// Vertices of the component of box \ path reachable from the bottom side
// (empty if the path runs along the bottom). The path must be a left-right
// crossing touching each side once.
std::vector<Vertex> lower_component(const Grid& grid, ModelKind kind,
                                    const Path& path);

// Same as a flat 0/1 mask indexed by Grid::vertex_index; path vertices are 0.
std::vector<std::uint8_t> lower_component_mask(const Grid& grid,
                                               ModelKind kind,
                                               const Path& path);

}  // namespace perc
