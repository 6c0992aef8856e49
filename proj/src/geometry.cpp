#include "perc/geometry.hpp"

namespace perc {

LatticeModel make_model(ModelKind kind, double p) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("occupation probability must be in [0,1]");
    return {kind, p};
}

std::span<const Dir> neighbor_dirs(ModelKind kind) {
    if (kind == ModelKind::square_bond)
        return {square_dirs.data(), square_dirs.size()};
    return {triangular_dirs.data(), triangular_dirs.size()};
}

Grid::Grid(int x_lo, int y_lo, int width, int height)
    : x_lo_(x_lo), y_lo_(y_lo), w_(width), h_(height) {
    if (width < 2 || height < 1)
        throw std::invalid_argument("grid must be at least 2 wide and 1 tall");
}

Grid Grid::centered_box(int n) {
    if (n < 1) throw std::invalid_argument("box half side-length must be >= 1");
    return Grid(-n, -n, 2 * n + 1, 2 * n + 1);
}

Grid Grid::self_dual_rectangle(int n) {
    if (n < 1) throw std::invalid_argument("rectangle size must be >= 1");
    return Grid(0, 0, n + 1, n);
}

std::vector<Vertex> Grid::left_side() const {
    std::vector<Vertex> out;
    out.reserve(h_);
    for (int y = y_lo_; y <= y_hi(); ++y) out.push_back({x_lo_, y});
    return out;
}

std::vector<Vertex> Grid::right_side() const {
    std::vector<Vertex> out;
    out.reserve(h_);
    for (int y = y_lo_; y <= y_hi(); ++y) out.push_back({x_hi(), y});
    return out;
}

std::vector<Vertex> Grid::top_side() const {
    std::vector<Vertex> out;
    out.reserve(w_);
    for (int x = x_lo_; x <= x_hi(); ++x) out.push_back({x, y_hi()});
    return out;
}

std::vector<Vertex> Grid::bottom_side() const {
    std::vector<Vertex> out;
    out.reserve(w_);
    for (int x = x_lo_; x <= x_hi(); ++x) out.push_back({x, y_lo_});
    return out;
}

int Grid::edge_index(Edge e) const {
    if (!contains_edge(e)) throw std::invalid_argument("edge outside grid");
    if (e.b.x == e.a.x + 1 && e.b.y == e.a.y)
        return (e.a.y - y_lo_) * (w_ - 1) + (e.a.x - x_lo_);
    if (e.b.x == e.a.x && e.b.y == e.a.y + 1)
        return horizontal_edge_count() + (e.a.y - y_lo_) * w_ +
               (e.a.x - x_lo_);
    throw std::invalid_argument("edge is not in canonical unit form");
}

Edge Grid::edge_at(int index) const {
    if (index < 0 || index >= edge_count())
        throw std::invalid_argument("edge index out of range");
    if (index < horizontal_edge_count()) {
        int y = y_lo_ + index / (w_ - 1);
        int x = x_lo_ + index % (w_ - 1);
        return {{x, y}, {x + 1, y}};
    }
    int k = index - horizontal_edge_count();
    int y = y_lo_ + k / w_;
    int x = x_lo_ + k % w_;
    return {{x, y}, {x, y + 1}};
}

int Grid::step_edge_index(Vertex v, Dir d) const {
    Vertex w{v.x + d.dx, v.y + d.dy};
    Vertex a = v, b = w;
    if (b.x < a.x || (b.x == a.x && b.y < a.y)) std::swap(a, b);
    return edge_index({a, b});
}

std::pair<DualVertex, DualVertex> Grid::dual_of(Edge e) {
    if (e.b.x == e.a.x + 1 && e.b.y == e.a.y)
        return {DualVertex{e.a.x, e.a.y - 1}, DualVertex{e.a.x, e.a.y}};
    if (e.b.x == e.a.x && e.b.y == e.a.y + 1)
        return {DualVertex{e.a.x - 1, e.a.y}, DualVertex{e.a.x, e.a.y}};
    throw std::invalid_argument("edge is not in canonical unit form");
}

}  // namespace perc
