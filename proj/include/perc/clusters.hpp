// Open-cluster connectivity: bulk labeling via union-find, the crossing
// event H_n, point/boundary connections, and the exact planar-duality test.
#pragma once

#include <vector>

#include "perc/config.hpp"

namespace perc {

class UnionFind {
  public:
    explicit UnionFind(int n) : parent_(n), size_(n, 1) {
        for (int i = 0; i < n; ++i) parent_[i] = i;
    }
    int find(int v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }
    bool same(int a, int b) { return find(a) == find(b); }

  private:
    std::vector<int> parent_;
    std::vector<int> size_;
};

// Vertex -> component label. Two vertices share a label iff they are joined
// by an open path inside the box. For site percolation a closed site is a
// singleton component.
class ClusterView {
  public:
    ClusterView(const Configuration& config, std::vector<int> labels)
        : config_(&config), labels_(std::move(labels)) {}

    const Configuration& config() const { return *config_; }
    int label(Vertex v) const {
        return labels_[static_cast<std::size_t>(
            config_->grid().vertex_index(v))];
    }
    const std::vector<int>& labels() const { return labels_; }

  private:
    const Configuration* config_;
    std::vector<int> labels_;
};

ClusterView build_clusters(const Configuration& config);

// Event H_n: an open path inside the box joins the left side to the right
// side. For site percolation the path consists of open sites.
bool has_left_right_crossing(const Configuration& config);

bool connected(const Configuration& config, Vertex x, Vertex y);

// Event A_n for x: the cluster of x contains a vertex of the box boundary.
bool connected_to_boundary(const Configuration& config, Vertex x);

// True iff a path of closed dual edges joins the dual row just above the top
// side to the dual row just below the bottom side, staying strictly between
// the left and right sides. On any rectangle exactly one of this event and
// H_n occurs. Square-bond only.
bool dual_top_bottom_closed_crossing(const Configuration& config);

// Closed-site analogue on the self-matching triangular lattice: a top-bottom
// path of closed sites under the same adjacency.
bool closed_site_top_bottom_crossing(const Configuration& config);

}  // namespace perc
