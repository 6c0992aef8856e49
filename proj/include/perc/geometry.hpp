// Lattice geometry: rectangular vertex grids on Z^2, bond/site adjacency,
// edge enumeration and the shifted dual lattice.
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace perc {

struct Vertex {
    int x = 0, y = 0;
    friend bool operator==(Vertex, Vertex) = default;
};

// Face of the primal lattice; integer pair (x,y) stands for the dual lattice
// point (x + 1/2, y + 1/2).
struct DualVertex {
    int x = 0, y = 0;
    friend bool operator==(DualVertex, DualVertex) = default;
};

struct Dir {
    int dx = 0, dy = 0;
    friend bool operator==(Dir, Dir) = default;
};

enum class ModelKind { square_bond, triangular_site };

struct LatticeModel {
    ModelKind kind = ModelKind::square_bond;
    double p = 0.5;
    // p_c = 1/2 for both square-bond and triangular-site in d = 2.
    static constexpr double critical_p = 0.5;
};

LatticeModel make_model(ModelKind kind, double p);

// Neighbor directions in counterclockwise angular order. The triangular
// lattice is embedded as the square lattice plus an up-right diagonal per
// face; it is self-matching, so closed-site blocking paths use the same
// adjacency.
inline constexpr std::array<Dir, 4> square_dirs = {
    Dir{1, 0}, Dir{0, 1}, Dir{-1, 0}, Dir{0, -1}};
inline constexpr std::array<Dir, 6> triangular_dirs = {
    Dir{1, 0}, Dir{1, 1}, Dir{0, 1}, Dir{-1, 0}, Dir{-1, -1}, Dir{0, -1}};

std::span<const Dir> neighbor_dirs(ModelKind kind);

struct Edge {
    Vertex a, b;  // canonical: b = a + (1,0) or b = a + (0,1)
    friend bool operator==(Edge, Edge) = default;
};

// Rectangle of lattice vertices [x_lo, x_hi] x [y_lo, y_hi]. Crossings run
// between the left side {x = x_lo} and the right side {x = x_hi}.
class Grid {
  public:
    Grid(int x_lo, int y_lo, int width, int height);

    // B_n = [-n,n]^2, the centered box of half side-length n >= 1.
    static Grid centered_box(int n);

    // Width n+1, height n vertices. For bond percolation this geometry is
    // self-dual: the left-right crossing probability at p = 1/2 is exactly
    // 1/2, which makes it a zero-tolerance calibration target.
    static Grid self_dual_rectangle(int n);

    int x_lo() const { return x_lo_; }
    int y_lo() const { return y_lo_; }
    int x_hi() const { return x_lo_ + w_ - 1; }
    int y_hi() const { return y_lo_ + h_ - 1; }
    int width() const { return w_; }
    int height() const { return h_; }

    bool contains(Vertex v) const {
        return v.x >= x_lo_ && v.x <= x_hi() && v.y >= y_lo_ && v.y <= y_hi();
    }
    int vertex_count() const { return w_ * h_; }
    int vertex_index(Vertex v) const {
        return (v.y - y_lo_) * w_ + (v.x - x_lo_);
    }
    Vertex vertex_at(int index) const {
        return {x_lo_ + index % w_, y_lo_ + index / w_};
    }

    bool on_left(Vertex v) const { return v.x == x_lo_; }
    bool on_right(Vertex v) const { return v.x == x_hi(); }
    bool on_top(Vertex v) const { return v.y == y_hi(); }
    bool on_bottom(Vertex v) const { return v.y == y_lo_; }
    bool on_boundary(Vertex v) const {
        return on_left(v) || on_right(v) || on_top(v) || on_bottom(v);
    }
    std::vector<Vertex> left_side() const;
    std::vector<Vertex> right_side() const;
    std::vector<Vertex> top_side() const;
    std::vector<Vertex> bottom_side() const;

    // Bond edges: horizontal block first, then vertical, each row-major.
    int horizontal_edge_count() const { return (w_ - 1) * h_; }
    int vertical_edge_count() const { return w_ * (h_ - 1); }
    int edge_count() const {
        return horizontal_edge_count() + vertical_edge_count();
    }
    bool contains_edge(Edge e) const {
        return contains(e.a) && contains(e.b);
    }
    int edge_index(Edge e) const;
    Edge edge_at(int index) const;
    // Index of the edge {v, v+d} for |d| a unit step; the edge must lie in
    // the grid.
    int step_edge_index(Vertex v, Dir d) const;

    // Dual vertices live on faces (x+1/2, y+1/2) with x in [x_lo-1, x_hi]
    // and y in [y_lo-1, y_hi]; that range covers every face incident to an
    // in-grid edge, including the half-faces straddling the boundary.
    int dual_x_lo() const { return x_lo_ - 1; }
    int dual_y_lo() const { return y_lo_ - 1; }
    int dual_x_hi() const { return x_hi(); }
    int dual_y_hi() const { return y_hi(); }
    bool contains_dual(DualVertex d) const {
        return d.x >= dual_x_lo() && d.x <= dual_x_hi() &&
               d.y >= dual_y_lo() && d.y <= dual_y_hi();
    }
    int dual_count() const { return (w_ + 1) * (h_ + 1); }
    int dual_index(DualVertex d) const {
        return (d.y - dual_y_lo()) * (w_ + 1) + (d.x - dual_x_lo());
    }
    DualVertex dual_at(int index) const {
        return {dual_x_lo() + index % (w_ + 1), dual_y_lo() + index / (w_ + 1)};
    }

    // Dual edge bisecting a primal edge: a horizontal primal edge
    // {(x,y),(x+1,y)} maps to the vertical dual edge {(x,y-1),(x,y)} and a
    // vertical primal edge {(x,y),(x,y+1)} to the horizontal dual edge
    // {(x-1,y),(x,y)} (integer dual coordinates).
    static std::pair<DualVertex, DualVertex> dual_of(Edge e);

    // Number of per-unit random states a configuration carries.
    int state_count(ModelKind kind) const {
        return kind == ModelKind::square_bond ? edge_count() : vertex_count();
    }

  private:
    int x_lo_, y_lo_, w_, h_;
};

}  // namespace perc
