// Chemical distances (graph distance over the open part), the dyadic scale
// at which the origin first connects to its neighbor, and related Monte
// Carlo probes. All distances are in-box distances; the enclosing box is
// part of every result.
#pragma once

#include "perc/path.hpp"

namespace perc {

struct DistanceResult {
    std::optional<long> value;    // nullopt: no open path (infinite)
    std::optional<Path> witness;  // a shortest open path when finite
};

DistanceResult chemical_distance(const Configuration& config, Vertex x,
                                 Vertex y);

// Minimum chemical distance from x to any vertex of the box boundary;
// infinite iff x is not connected to the boundary.
DistanceResult distance_to_boundary(const Configuration& config, Vertex x);

// Chemical distance with paths confined to the sub-box [-sub, sub]^2 of the
// host configuration (used for the nested-box probes below).
DistanceResult restricted_chemical_distance(const Configuration& config,
                                            Vertex x, Vertex y, int sub);

// Smallest k >= 1 such that the origin connects to (1,0) inside the box of
// half side 2^k, on one configuration sampled on the box of half side
// 2^max_k; nullopt when not connected even there.
std::optional<int> dyadic_connection_scale(LatticeModel model,
                                           std::uint64_t seed, int max_k);

// For each k <= max_k, the Monte Carlo estimate of
// E[ dist(0, e1)^2 ; 0 and e1 connected inside the box of half side 2^k ].
// Each trial reuses a single configuration across all k (nested boxes share
// randomness), so the sequence is nondecreasing in k by construction.
std::vector<std::pair<int, double>> truncated_second_moment(
    LatticeModel model, int max_k, long trials, std::uint64_t seed);

struct TailEstimate {
    int separation = 0;
    double lambda = 0.0;
    double threshold = 0.0;  // lambda * separation^2 * estimated pi3
    double estimate = 0.0;   // P(dist > threshold | endpoints connected)
    double stderror = 0.0;
    long accepted = 0;  // trials where the endpoints were connected
    long trials = 0;
};

// Rejection-sampling estimate of the conditional distance tail for two
// points `separation` apart on the x-axis, inside a box of side
// 4*separation. The three-arm probability entering the threshold is
// estimated internally from a derived seed with the same trial count.
TailEstimate conditional_pair_distance(LatticeModel model, int separation,
                                       long trials, std::uint64_t seed,
                                       double lambda);

}  // namespace perc
