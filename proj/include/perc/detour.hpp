// Shielded detours along the lowest crossing and the shortcut crossing
// spliced from them. Square-bond only.
//
// An open path gamma with vertices v_0..v_m is a shielded detour for
// tolerance epsilon when
//   1. v_0 = l[i] and v_m = l[j] lie on the lowest crossing l and the
//      interior vertices lie strictly above l,
//   2. a path of closed dual edges joins a face incident to v_0 to a face
//      incident to v_m inside the region above l and gamma, and
//   3. gamma has at most epsilon * (j - i) edges.
// Candidate anchor pairs are limited to spans j - i <= window and one
// candidate per pair is considered: the shortest above-region path (shorter
// candidates only make conditions easier).
#pragma once

#include "perc/crossing.hpp"

namespace perc {

struct Detour {
    Path gamma;          // open path; endpoints on the lowest crossing
    int span_begin = 0;  // indices into the lowest crossing
    int span_end = 0;
    Path shield;  // witness path of dual vertices ((x,y) meaning (x+1/2,y+1/2))

    int span_length() const { return span_end - span_begin; }
};

// Faces incident to v on the left (upper) side of an oriented curve through
// v arriving by d_in and leaving by d_out. Walking a crossing left to right,
// the upper region is on the left, so these are the faces a shield may
// start or end at.
std::vector<DualVertex> upper_sector_faces(Vertex v, Dir d_in, Dir d_out);

// Primal edge bisected by the dual step from face f in axis direction d.
Edge dual_step_primal_edge(DualVertex f, Dir d);

// All shielded detours found for the given lowest crossing, ordered by
// (span_begin, span_end). Throws if `lowest` is not an open crossing of the
// configuration.
std::vector<Detour> find_shielded_detours(const Configuration& config,
                                          const Path& lowest, double epsilon,
                                          int window);

// Greedy span packing: sort by detoured span length descending and admit a
// detour iff its span shares no index with any admitted span.
std::vector<Detour> select_detour_collection(std::vector<Detour> detours);

// Splices each detour in place of its span. Throws if the spans overlap or
// the spliced walk fails to be a self-avoiding crossing, which would signal
// a detour-disjointness violation.
Path shortcut_crossing(const Path& lowest, const std::vector<Detour>& collection);

// Re-derives conditions 1-3 for one detour from scratch: condition 2 is
// checked by an explicit closed-dual search restricted to faces above the
// spliced curve, independent of the cluster shortcut used by the finder.
bool validate_detour(const Configuration& config, const Path& lowest,
                     const Detour& detour, double epsilon);

struct DetourReport {
    double epsilon = 0.0;
    int window = 0;
    std::vector<Detour> collection;  // the packed subcollection
    Path sigma;
    std::vector<int> non_detoured;  // crossing indices in no admitted span
                                    // interior (span endpoints stay on sigma)
    long shortest_length = 0;
    long sigma_length = 0;
    long lowest_length = 0;

    double non_detoured_fraction() const {
        return static_cast<double>(non_detoured.size()) /
               static_cast<double>(lowest_length + 1);
    }
};

DetourReport detour_report(const Configuration& config, const Path& lowest,
                           double epsilon, int window);

std::string detour_report_json(const DetourReport& report, int n);

// Aggregated over `trials` configurations on B_n conditioned on a crossing:
// per-trial sigma-to-lowest length ratio and non-detoured vertex fraction.
struct DetourSummary {
    long attempted = 0;
    long accepted = 0;
    // mean/stderr via RunningStats
    struct {
        double mean = 0.0, stderror = 0.0;
    } sigma_ratio, non_detoured;
};

DetourSummary detour_statistics(LatticeModel model, int n, double epsilon,
                                int window, long trials, std::uint64_t seed);

}  // namespace perc
