// Brute-force reference implementations used to certify the fast library
// code on small boxes. These deliberately use naive exhaustive search and
// touch configurations only through state queries.
#pragma once

#include <set>
#include <vector>

#include "perc/arms.hpp"
#include "perc/config.hpp"
#include "perc/path.hpp"

namespace perc::oracle {

// Component representative per vertex via recursive DFS (smallest vertex
// index in the component).
std::vector<int> dfs_component_labels(const Configuration& config);

// All open left-right crossings that touch each side exactly once.
std::vector<Path> enumerate_crossings(const Configuration& config);

// Lower component via plain recursive flood fill from the bottom side.
std::vector<std::uint8_t> flood_lower(const Grid& grid, ModelKind kind,
                                      const Path& path);

// The crossing whose lower component is contained in every other crossing's
// lower component, from exhaustive enumeration; nullopt when there is no
// crossing or no crossing is minimal under set inclusion.
std::optional<Path> minimal_lower_crossing(const Configuration& config);

// Exhaustive backtracking search for pairwise vertex-disjoint arms.
bool disjoint_arms(const Configuration& config, const ArmSpec& spec);

// Exact arm probability by enumerating all 2^states configurations of the
// box of half side `radius` (feasible only for tiny state counts).
double exact_arm_probability(LatticeModel model, const ArmSpec& spec);

// Anchor pairs (i, j) on the lowest crossing admitting at least one shielded
// detour, by enumerating every above-region path of admissible length
// (unwindowed) and checking the shield with a region-restricted search.
std::set<std::pair<int, int>> detour_anchor_pairs(const Configuration& config,
                                                  const Path& lowest,
                                                  double epsilon);

}  // namespace perc::oracle
