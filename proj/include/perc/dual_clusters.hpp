// Connected components of the closed part of a configuration: closed dual
// edges for square-bond, closed sites for triangular-site. Built once per
// configuration and queried O(1) by the arm and detour machinery.
#pragma once

#include "perc/clusters.hpp"

namespace perc {

struct ClosedClusters {
    // Component label per dual index (bond) or vertex index (site).
    std::vector<int> label;
    // Flat set over labels: component contains a face of the dual row just
    // below the bottom side (bond) or a closed bottom-row site (site).
    std::vector<std::uint8_t> reaches_bottom;

    bool bottom_linked(int index) const {
        return reaches_bottom[static_cast<std::size_t>(
                   label[static_cast<std::size_t>(index)])] != 0;
    }
    bool same(int a, int b) const {
        return label[static_cast<std::size_t>(a)] ==
               label[static_cast<std::size_t>(b)];
    }
};

ClosedClusters closed_dual_clusters(const Configuration& config);
ClosedClusters closed_site_clusters(const Configuration& config);

}  // namespace perc
