// Small Dinic max-flow used for certifying vertex-disjoint arms: unit vertex
// capacities are realized by the usual in/out node splitting.
#pragma once

#include <vector>

namespace perc {

class FlowNetwork {
  public:
    explicit FlowNetwork(int node_count)
        : head_(static_cast<std::size_t>(node_count), -1) {}

    int node_count() const { return static_cast<int>(head_.size()); }

    void add_edge(int from, int to, int capacity) {
        edges_.push_back({to, head_[static_cast<std::size_t>(from)], capacity});
        head_[static_cast<std::size_t>(from)] =
            static_cast<int>(edges_.size()) - 1;
        edges_.push_back({from, head_[static_cast<std::size_t>(to)], 0});
        head_[static_cast<std::size_t>(to)] =
            static_cast<int>(edges_.size()) - 1;
    }

    // Max flow from s to t, stopping early once `enough` is reached.
    int max_flow(int s, int t, int enough);

  private:
    struct Arc {
        int to;
        int next;
        int cap;
    };
    bool bfs_levels(int s, int t);
    int dfs_push(int v, int t, int limit);

    std::vector<Arc> edges_;
    std::vector<int> head_;
    std::vector<int> level_;
    std::vector<int> iter_;
};

// Convenience for vertex-disjoint path feasibility on an undirected graph
// with unit vertex capacities. Vertices listed in `uncapacitated` (e.g. a
// shared center) are exempt from the unit capacity. Sources/sinks are given
// as (vertex, capacity) pairs against a virtual source/sink.
struct DisjointPathsProblem {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> undirected_edges;
    std::vector<std::pair<int, int>> sources;  // vertex, capacity
    std::vector<int> sinks;                    // capacity 1 each
    std::vector<int> uncapacitated;
};

bool has_disjoint_paths(const DisjointPathsProblem& problem, int need);

}  // namespace perc
