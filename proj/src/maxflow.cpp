#include "perc/maxflow.hpp"

#include <algorithm>

namespace perc {

bool FlowNetwork::bfs_levels(int s, int t) {
    level_.assign(head_.size(), -1);
    std::vector<int> queue{s};
    level_[static_cast<std::size_t>(s)] = 0;
    for (std::size_t headpos = 0; headpos < queue.size(); ++headpos) {
        int v = queue[headpos];
        for (int e = head_[static_cast<std::size_t>(v)]; e != -1;
             e = edges_[static_cast<std::size_t>(e)].next) {
            const Arc& a = edges_[static_cast<std::size_t>(e)];
            if (a.cap > 0 && level_[static_cast<std::size_t>(a.to)] < 0) {
                level_[static_cast<std::size_t>(a.to)] =
                    level_[static_cast<std::size_t>(v)] + 1;
                queue.push_back(a.to);
            }
        }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
}

// Iterative blocking-flow walk; augmenting paths in grid graphs can be long
// enough to make recursion unsafe.
int FlowNetwork::dfs_push(int s, int t, int limit) {
    std::vector<int> path;  // arc indices along the current walk
    int v = s;
    while (true) {
        if (v == t) {
            int pushed = limit;
            for (int e : path)
                pushed = std::min(pushed, edges_[static_cast<std::size_t>(e)].cap);
            for (int e : path) {
                edges_[static_cast<std::size_t>(e)].cap -= pushed;
                edges_[static_cast<std::size_t>(e ^ 1)].cap += pushed;
            }
            return pushed;
        }
        int& e = iter_[static_cast<std::size_t>(v)];
        bool advanced = false;
        while (e != -1) {
            const Arc& a = edges_[static_cast<std::size_t>(e)];
            if (a.cap > 0 && level_[static_cast<std::size_t>(a.to)] ==
                                 level_[static_cast<std::size_t>(v)] + 1) {
                path.push_back(e);
                v = a.to;
                advanced = true;
                break;
            }
            e = a.next;
        }
        if (advanced) continue;
        level_[static_cast<std::size_t>(v)] = -1;  // dead end
        if (path.empty()) return 0;
        v = edges_[static_cast<std::size_t>(path.back() ^ 1)].to;
        path.pop_back();
    }
}

int FlowNetwork::max_flow(int s, int t, int enough) {
    int flow = 0;
    while (flow < enough && bfs_levels(s, t)) {
        iter_ = head_;
        while (flow < enough) {
            int pushed = dfs_push(s, t, enough - flow);
            if (pushed == 0) break;
            flow += pushed;
        }
    }
    return flow;
}

bool has_disjoint_paths(const DisjointPathsProblem& problem, int need) {
    if (need <= 0) return true;
    // node layout: 2*v (in), 2*v+1 (out), then source S and sink T
    const int n = problem.vertex_count;
    FlowNetwork net(2 * n + 2);
    const int S = 2 * n, T = 2 * n + 1;

    std::vector<std::uint8_t> exempt(static_cast<std::size_t>(n), 0);
    for (int v : problem.uncapacitated)
        exempt[static_cast<std::size_t>(v)] = 1;
    for (int v = 0; v < n; ++v)
        net.add_edge(2 * v, 2 * v + 1,
                     exempt[static_cast<std::size_t>(v)] ? need : 1);
    for (auto [u, v] : problem.undirected_edges) {
        net.add_edge(2 * u + 1, 2 * v, 1);
        net.add_edge(2 * v + 1, 2 * u, 1);
    }
    for (auto [v, cap] : problem.sources) net.add_edge(S, 2 * v, cap);
    for (int v : problem.sinks) net.add_edge(2 * v + 1, T, 1);
    return net.max_flow(S, T, need) >= need;
}

}  // namespace perc
