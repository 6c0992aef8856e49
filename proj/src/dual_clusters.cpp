#include "perc/dual_clusters.hpp"

namespace perc {

ClosedClusters closed_dual_clusters(const Configuration& config) {
    if (config.model().kind != ModelKind::square_bond)
        throw std::invalid_argument("closed dual clusters are square-bond only");
    const Grid& g = config.grid();
    UnionFind uf(g.dual_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        if (config.open(e)) continue;
        auto [a, b] = Grid::dual_of(g.edge_at(e));
        uf.unite(g.dual_index(a), g.dual_index(b));
    }
    ClosedClusters out;
    out.label.resize(static_cast<std::size_t>(g.dual_count()));
    for (int i = 0; i < g.dual_count(); ++i)
        out.label[static_cast<std::size_t>(i)] = uf.find(i);
    out.reaches_bottom.assign(static_cast<std::size_t>(g.dual_count()), 0);
    for (int x = g.dual_x_lo(); x <= g.dual_x_hi(); ++x) {
        int idx = g.dual_index({x, g.dual_y_lo()});
        out.reaches_bottom[static_cast<std::size_t>(
            out.label[static_cast<std::size_t>(idx)])] = 1;
    }
    return out;
}

ClosedClusters closed_site_clusters(const Configuration& config) {
    if (config.model().kind != ModelKind::triangular_site)
        throw std::invalid_argument(
            "closed site clusters are triangular-site only");
    const Grid& g = config.grid();
    UnionFind uf(g.vertex_count());
    for (int i = 0; i < g.vertex_count(); ++i) {
        if (config.open(i)) continue;
        Vertex u = g.vertex_at(i);
        for (Dir d : triangular_dirs) {
            Vertex v{u.x + d.dx, u.y + d.dy};
            if (!g.contains(v)) continue;
            int vi = g.vertex_index(v);
            if (!config.open(vi)) uf.unite(i, vi);
        }
    }
    ClosedClusters out;
    out.label.resize(static_cast<std::size_t>(g.vertex_count()));
    for (int i = 0; i < g.vertex_count(); ++i)
        out.label[static_cast<std::size_t>(i)] = uf.find(i);
    out.reaches_bottom.assign(static_cast<std::size_t>(g.vertex_count()), 0);
    for (Vertex v : g.bottom_side()) {
        int idx = g.vertex_index(v);
        if (!config.open(idx))
            out.reaches_bottom[static_cast<std::size_t>(
                out.label[static_cast<std::size_t>(idx)])] = 1;
    }
    return out;
}

}  // namespace perc
