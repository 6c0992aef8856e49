#include "perc/config.hpp"

#include <numeric>

namespace perc {

Configuration Configuration::sample(LatticeModel model, const Grid& grid,
                                    std::uint64_t seed) {
    if (model.p < 0.0 || model.p > 1.0)
        throw std::invalid_argument("occupation probability must be in [0,1]");
    const int count = grid.state_count(model.kind);
    std::vector<std::uint8_t> open(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        open[static_cast<std::size_t>(i)] =
            unit_uniform(seed, static_cast<std::uint64_t>(i)) <= model.p;
    return Configuration(model, grid, seed, std::move(open));
}

std::size_t Configuration::open_count() const {
    return static_cast<std::size_t>(
        std::accumulate(open_.begin(), open_.end(), std::size_t{0}));
}

std::vector<Configuration> coupled_configurations(
    LatticeModel base, const Grid& grid, std::uint64_t seed,
    const std::vector<double>& p_list) {
    for (std::size_t i = 0; i + 1 < p_list.size(); ++i)
        if (p_list[i] > p_list[i + 1])
            throw std::invalid_argument("p_list must be sorted ascending");
    std::vector<Configuration> out;
    out.reserve(p_list.size());
    for (double p : p_list)
        out.push_back(Configuration::sample({base.kind, p}, grid, seed));
    return out;
}

DualEdgeState dual_state(const Configuration& config, Edge e) {
    if (config.model().kind != ModelKind::square_bond)
        throw std::invalid_argument(
            "dual edges are defined for square-bond only; the triangular "
            "lattice is self-matching");
    if (!config.grid().contains_edge(e))
        throw std::invalid_argument("edge outside configuration box");
    auto [a, b] = Grid::dual_of(e);
    return {a, b, config.edge_open(e)};
}

}  // namespace perc
