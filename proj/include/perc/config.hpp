// Percolation configurations: one Bernoulli state per edge (square-bond) or
// per site (triangular-site), a deterministic function of (model, grid, seed).
#pragma once

#include <concepts>
#include <cstdint>
#include <vector>

#include "perc/geometry.hpp"
#include "perc/rng.hpp"

namespace perc {

// Anything that exposes a grid, a model and per-index open states. Both the
// materialized Configuration and the lazy view below satisfy it, so analysis
// code can run on either.
template <typename C>
concept ConfigLike = requires(const C& c, int i) {
    { c.grid() } -> std::convertible_to<const Grid&>;
    { c.model() } -> std::convertible_to<LatticeModel>;
    { c.open(i) } -> std::convertible_to<bool>;
};

// Immutable after construction; safe to share across threads.
class Configuration {
  public:
    static Configuration sample(LatticeModel model, const Grid& grid,
                                std::uint64_t seed);

    const Grid& grid() const { return grid_; }
    LatticeModel model() const { return model_; }
    std::uint64_t seed() const { return seed_; }

    bool open(int state_index) const { return open_[state_index] != 0; }
    bool edge_open(Edge e) const { return open(grid_.edge_index(e)); }
    bool site_open(Vertex v) const { return open(grid_.vertex_index(v)); }

    std::size_t open_count() const;

  private:
    Configuration(LatticeModel model, Grid grid, std::uint64_t seed,
                  std::vector<std::uint8_t> open)
        : model_(model), grid_(grid), seed_(seed), open_(std::move(open)) {}

    LatticeModel model_;
    Grid grid_;
    std::uint64_t seed_;
    std::vector<std::uint8_t> open_;
};

// Same sampling rule as Configuration, but states are hashed on demand.
// Useful for large boxes where an estimator only ever touches a small
// neighborhood of the cluster it explores.
class LazyConfig {
  public:
    LazyConfig(LatticeModel model, const Grid& grid, std::uint64_t seed)
        : model_(model), grid_(grid), seed_(seed) {}

    const Grid& grid() const { return grid_; }
    LatticeModel model() const { return model_; }

    bool open(int state_index) const {
        return unit_uniform(seed_, static_cast<std::uint64_t>(state_index)) <=
               model_.p;
    }

  private:
    LatticeModel model_;
    Grid grid_;
    std::uint64_t seed_;
};

// Standard monotone coupling: one uniform per state shared across all p in
// p_list, open at p iff the uniform is <= p. Open sets are nested along the
// (ascending) list.
std::vector<Configuration> coupled_configurations(
    LatticeModel base, const Grid& grid, std::uint64_t seed,
    const std::vector<double>& p_list);

// State of the dual edge e* bisecting e; by convention e* carries the same
// state as e. Square-bond only.
struct DualEdgeState {
    DualVertex a, b;
    bool open;
};
DualEdgeState dual_state(const Configuration& config, Edge e);

}  // namespace perc
