// Arm events: existence of vertex-disjoint paths of prescribed colors from a
// center to the boundary of a surrounding box, Monte Carlo estimation of
// their probabilities, and the three-arm test along the lowest crossing.
//
// Conventions. Disjointness means vertex-disjoint except at the shared
// center; it is certified by a unit-vertex-capacity max flow. For bond
// percolation open arms start at the center vertex and closed arms are paths
// of closed dual edges starting at a face incident to the center; a closed
// arm must contain at least one dual edge. For site percolation arms start
// at neighbors of the center (the center's own state is not part of the
// event) and closed arms run over closed sites under the same adjacency.
// The cyclic order of arms is not constrained, only their existence.
#pragma once

#include <cmath>
#include <span>

#include "perc/config.hpp"
#include "perc/maxflow.hpp"

namespace perc {

enum class ArmColor { open, closed };

struct ArmCenter {
    bool edge = false;  // center is the horizontal edge {v, v+(1,0)}
    Vertex v{0, 0};
};

struct ArmSpec {
    int radius = 1;
    std::vector<ArmColor> colors;
    ArmCenter center;
};

// Three arms (two open, one closed) around a vertex.
ArmSpec three_arm_spec(int radius);
// Four arms around the edge {0, e1}: one open arm from each endpoint, one
// closed arm from each endpoint of the bisecting dual edge.
ArmSpec four_arm_spec(int radius);
// Five arms around a vertex: two open, three closed.
ArmSpec five_arm_spec(int radius);

struct ArmEstimate {
    ArmSpec spec;
    double probability = 0.0;
    double stderror = 0.0;
    long trials = 0;
};

namespace detail {

// Epoch-stamped scratch: grid-sized maps reset in O(1) between queries
// instead of a full clear, which would otherwise dominate sparse searches on
// large boxes. One instance per thread; queries never run concurrently
// within a thread.
class IndexScratch {
  public:
    void reset(std::size_t size) {
        if (slots_.size() < size) slots_.resize(size, {0, -1});
        ++epoch_;
    }
    int get(std::size_t i) const {
        return slots_[i].first == epoch_ ? slots_[i].second : -1;
    }
    void set(std::size_t i, int value) { slots_[i] = {epoch_, value}; }

  private:
    std::vector<std::pair<long, int>> slots_;
    long epoch_ = 0;
};

inline IndexScratch& thread_scratch() {
    thread_local IndexScratch scratch;
    return scratch;
}

struct SubBox {
    int x_lo, x_hi, y_lo, y_hi;
    bool contains(Vertex v) const {
        return v.x >= x_lo && v.x <= x_hi && v.y >= y_lo && v.y <= y_hi;
    }
    bool on_ring(Vertex v) const {
        return v.x == x_lo || v.x == x_hi || v.y == y_lo || v.y == y_hi;
    }
};

// Open arms for square-bond: explore the open cluster(s) of the center
// within the sub-box, then certify `need` vertex-disjoint paths to the ring.
template <ConfigLike C>
bool bond_open_arms(const C& config, const SubBox& box, const ArmCenter& c,
                    int need) {
    if (need <= 0) return true;
    const Grid& g = config.grid();

    IndexScratch& local_of = thread_scratch();
    local_of.reset(static_cast<std::size_t>(g.vertex_count()));
    std::vector<Vertex> nodes;
    std::vector<int> queue;
    auto add = [&](Vertex v) {
        int gi = g.vertex_index(v);
        if (int known = local_of.get(static_cast<std::size_t>(gi));
            known != -1)
            return known;
        int id = static_cast<int>(nodes.size());
        local_of.set(static_cast<std::size_t>(gi), id);
        nodes.push_back(v);
        queue.push_back(gi);
        return id;
    };
    add(c.v);
    if (c.edge) add({c.v.x + 1, c.v.y});

    // Duplicate undirected edges are harmless under unit vertex capacities,
    // so adjacencies are recorded unconditionally.
    bool ring_reached = false;
    std::vector<std::pair<int, int>> edges;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = g.vertex_at(queue[head]);
        int ui = local_of.get(static_cast<std::size_t>(g.vertex_index(u)));
        if (box.on_ring(u)) {
            ring_reached = true;
            continue;  // arms end on the ring; no need to expand past it
        }
        for (Dir d : square_dirs) {
            Vertex v{u.x + d.dx, u.y + d.dy};
            if (!box.contains(v)) continue;
            if (!config.open(g.step_edge_index(u, d))) continue;
            edges.emplace_back(ui, add(v));
        }
    }
    if (!ring_reached) return false;
    if (need == 1 && !c.edge) return true;

    DisjointPathsProblem prob;
    prob.vertex_count = static_cast<int>(nodes.size());
    prob.undirected_edges = std::move(edges);
    if (c.edge) {
        prob.sources = {{0, 1}, {1, 1}};
    } else {
        prob.sources = {{0, need}};
        prob.uncapacitated = {0};
    }
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
        if (box.on_ring(nodes[static_cast<std::size_t>(i)]))
            prob.sinks.push_back(i);
    return has_disjoint_paths(prob, need);
}

// Closed-dual arms for square-bond: same exploration over faces joined by
// closed dual edges. Faces carry integer coordinates (x,y) for the dual
// point (x+1/2, y+1/2); faces inside the sub-box have x in [x_lo, x_hi-1],
// y in [y_lo, y_hi-1] and every dual step between them bisects a primal
// edge of the sub-box.
template <ConfigLike C>
bool bond_closed_arms(const C& config, const SubBox& box, const ArmCenter& c,
                      int need) {
    if (need <= 0) return true;
    const Grid& g = config.grid();
    const int fw = box.x_hi - box.x_lo;  // faces per row
    const int fh = box.y_hi - box.y_lo;
    auto in_range = [&](DualVertex f) {
        return f.x >= box.x_lo && f.x < box.x_hi && f.y >= box.y_lo &&
               f.y < box.y_hi;
    };
    auto on_ring = [&](DualVertex f) {
        return f.x == box.x_lo || f.x == box.x_hi - 1 || f.y == box.y_lo ||
               f.y == box.y_hi - 1;
    };
    auto face_id = [&](DualVertex f) {
        return (f.y - box.y_lo) * fw + (f.x - box.x_lo);
    };

    std::vector<DualVertex> sources;
    if (c.edge) {
        sources = {{c.v.x, c.v.y - 1}, {c.v.x, c.v.y}};
    } else {
        sources = {{c.v.x - 1, c.v.y - 1},
                   {c.v.x, c.v.y - 1},
                   {c.v.x - 1, c.v.y},
                   {c.v.x, c.v.y}};
    }

    IndexScratch& local_of = thread_scratch();
    local_of.reset(static_cast<std::size_t>(fw) * fh);
    std::vector<DualVertex> nodes;
    std::vector<DualVertex> queue;
    std::vector<std::uint8_t> is_source_node;
    auto add = [&](DualVertex f) {
        int fi = face_id(f);
        if (int known = local_of.get(static_cast<std::size_t>(fi));
            known != -1)
            return known;
        int id = static_cast<int>(nodes.size());
        local_of.set(static_cast<std::size_t>(fi), id);
        nodes.push_back(f);
        is_source_node.push_back(0);
        queue.push_back(f);
        return id;
    };
    for (DualVertex s : sources)
        is_source_node[static_cast<std::size_t>(add(s))] = 1;

    // A dual step from face f: up crosses the primal horizontal edge
    // {(f.x, f.y+1), (f.x+1, f.y+1)}, right crosses the primal vertical edge
    // {(f.x+1, f.y), (f.x+1, f.y+1)}, and symmetrically down/left.
    auto crossing_edge = [](DualVertex f, Dir d) -> Edge {
        if (d.dx == 1) return {{f.x + 1, f.y}, {f.x + 1, f.y + 1}};
        if (d.dx == -1) return {{f.x, f.y}, {f.x, f.y + 1}};
        if (d.dy == 1) return {{f.x, f.y + 1}, {f.x + 1, f.y + 1}};
        return {{f.x, f.y}, {f.x + 1, f.y}};
    };

    // A closed arm must contain at least one dual edge, so the ring counts
    // as reached only when a closed step lands on it.
    bool ring_reached_by_edge = false;
    std::vector<std::pair<int, int>> edges;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        DualVertex u = queue[head];
        int ui = local_of.get(static_cast<std::size_t>(face_id(u)));
        if (!is_source_node[static_cast<std::size_t>(ui)] && on_ring(u))
            continue;  // arm endpoint; do not extend past the ring
        for (Dir d : square_dirs) {
            DualVertex v{u.x + d.dx, u.y + d.dy};
            if (!in_range(v)) continue;
            if (config.open(g.edge_index(crossing_edge(u, d)))) continue;
            if (on_ring(v)) ring_reached_by_edge = true;
            edges.emplace_back(ui, add(v));
        }
    }
    if (!ring_reached_by_edge) return false;
    if (need == 1) return true;

    DisjointPathsProblem prob;
    prob.vertex_count = static_cast<int>(nodes.size());
    prob.undirected_edges = std::move(edges);
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
        if (is_source_node[static_cast<std::size_t>(i)])
            prob.sources.emplace_back(i, 1);
        else if (on_ring(nodes[static_cast<std::size_t>(i)]))
            prob.sinks.push_back(i);
    }
    return has_disjoint_paths(prob, need);
}

// Site arms of one color: paths of `want_open` sites under triangular
// adjacency, starting at neighbors of the center (the center itself is not
// traversable) and ending on the ring.
template <ConfigLike C>
bool site_arms(const C& config, const SubBox& box, Vertex center,
               bool want_open, int need) {
    if (need <= 0) return true;
    const Grid& g = config.grid();
    auto colored = [&](Vertex v) {
        return config.open(g.vertex_index(v)) == want_open;
    };

    IndexScratch& local_of = thread_scratch();
    local_of.reset(static_cast<std::size_t>(g.vertex_count()));
    std::vector<Vertex> nodes;
    std::vector<int> queue;
    std::vector<std::uint8_t> is_source_node;
    auto add = [&](Vertex v) {
        int gi = g.vertex_index(v);
        if (int known = local_of.get(static_cast<std::size_t>(gi));
            known != -1)
            return known;
        int id = static_cast<int>(nodes.size());
        local_of.set(static_cast<std::size_t>(gi), id);
        nodes.push_back(v);
        is_source_node.push_back(0);
        queue.push_back(gi);
        return id;
    };
    for (Dir d : triangular_dirs) {
        Vertex v{center.x + d.dx, center.y + d.dy};
        if (box.contains(v) && colored(v))
            is_source_node[static_cast<std::size_t>(add(v))] = 1;
    }

    bool ring_reached = false;
    std::vector<std::pair<int, int>> edges;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = g.vertex_at(queue[head]);
        int ui = local_of.get(static_cast<std::size_t>(g.vertex_index(u)));
        if (box.on_ring(u)) {
            ring_reached = true;
            continue;
        }
        for (Dir d : triangular_dirs) {
            Vertex v{u.x + d.dx, u.y + d.dy};
            if (!box.contains(v) || (v == center) || !colored(v)) continue;
            edges.emplace_back(ui, add(v));
        }
    }
    if (!ring_reached) return false;
    if (need == 1) return true;

    DisjointPathsProblem prob;
    prob.vertex_count = static_cast<int>(nodes.size());
    prob.undirected_edges = std::move(edges);
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
        if (is_source_node[static_cast<std::size_t>(i)])
            prob.sources.emplace_back(i, 1);
        if (box.on_ring(nodes[static_cast<std::size_t>(i)]))
            prob.sinks.push_back(i);
    }
    return has_disjoint_paths(prob, need);
}

template <ConfigLike C>
bool has_arm_event_impl(const C& config, const ArmSpec& spec) {
    if (spec.colors.empty())
        throw std::invalid_argument("arm spec needs at least one color");
    if (spec.radius < 1) throw std::invalid_argument("arm radius must be >= 1");
    const Grid& g = config.grid();
    const Vertex c = spec.center.v;
    SubBox box{c.x - spec.radius, c.x + spec.radius, c.y - spec.radius,
               c.y + spec.radius};
    if (box.x_lo < g.x_lo() || box.x_hi > g.x_hi() || box.y_lo < g.y_lo() ||
        box.y_hi > g.y_hi())
        throw std::invalid_argument("arm radius too large for box");

    int open_need = 0, closed_need = 0;
    for (ArmColor color : spec.colors)
        (color == ArmColor::open ? open_need : closed_need) += 1;

    if (config.model().kind == ModelKind::square_bond) {
        if (spec.center.edge && (open_need != 2 || closed_need != 2))
            throw std::invalid_argument(
                "edge-centered arm events support exactly two open and two "
                "closed arms");
        return bond_open_arms(config, box, spec.center, open_need) &&
               bond_closed_arms(config, box, spec.center, closed_need);
    }
    if (spec.center.edge)
        throw std::invalid_argument(
            "edge-centered arm events are square-bond only");
    return site_arms(config, box, c, true, open_need) &&
           site_arms(config, box, c, false, closed_need);
}

}  // namespace detail

bool has_arm_event(const Configuration& config, const ArmSpec& spec);
bool has_arm_event(const LazyConfig& config, const ArmSpec& spec);

// Frequency estimator over independent configurations on the box of half
// side spec.radius centered at the origin; trial t uses seed
// trial_seed(seed, radius, t). Deterministic and thread-count independent.
ArmEstimate estimate_arm_probability(LatticeModel model, const ArmSpec& spec,
                                     long trials, std::uint64_t seed);

// Vertices v of the box interior having three arms (two open, one closed) to
// the boundary of the largest centered sub-box around v, i.e. radius equal
// to the L-infinity distance from v to the box boundary.
std::vector<Vertex> three_arm_points(const Configuration& config);

// Checks that every vertex v of the lowest crossing has an open arm along
// the crossing to each of the left and right sides and a closed connection
// from a face (bond) or neighboring site (site) of v to the bottom of the
// box; a vertex on the bottom row passes vacuously. Throws when H_n fails.
bool verify_lowest_crossing_arms(const Configuration& config);

}  // namespace perc
