#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gumap/graph.hpp"
#include "gumap/report.hpp"

namespace gumap::metrics {

/// Mean over vertices of the Jaccard index between the r-hop neighborhood
/// and the same number of Euclidean-nearest vertices (ties by id).
double neighborhood_preservation(const Graph& g, const Layout& layout, unsigned radius = 2);

struct StressOptions {
    /// Rescale the layout by the least-squares optimal factor first.
    bool optimal_scale = true;
};

/// Optimal uniform scale s* = sum(D/d) / sum(D^2/d^2) over ordered pairs.
double optimal_stress_scale(const Graph& g, const Layout& layout);

/// Mean over ordered pairs of ((d - s D) / d)^2, with hop distance d and
/// layout distance D. Throws for disconnected graphs.
double stress(const Graph& g, const Layout& layout, const StressOptions& options = {});

/// Sign of the orientation determinant of (a, b, c), exact.
int orientation(Point a, Point b, Point c);

/// True when the open segments intersect: a proper crossing or a collinear
/// overlap of positive length.
bool segments_cross(Point p1, Point p2, Point q1, Point q2);

/// Number of unordered edge pairs without a shared endpoint whose segments cross.
std::uint64_t count_crossings(const Graph& g, const Layout& layout);

enum class ProximityVariant { RNG, DRNG };

/// Relative neighborhood graph of the points, canonical (u < v) sorted edges.
std::vector<Edge> relative_neighborhood_graph(const std::vector<Point>& points);

/// Jaccard similarity between the graph's edges and the proximity graph of
/// its drawing. Coincident points are separated by seeded 1e-9 jitter first.
/// DRNG adds mutual degree-nearest pairs on top of the RNG; that rule is
/// implementation-defined.
double shape_metric(const Graph& g, const Layout& layout, ProximityVariant variant = ProximityVariant::RNG,
                    std::uint64_t seed = 0);

/// Relative change against a baseline: (baseline - candidate) / baseline for
/// lower-is-better values, (candidate - baseline) / baseline otherwise.
double improvement(double baseline, double candidate, bool higher_is_better);

struct MetricSelection {
    bool neighborhood_preservation = true;
    bool stress = true;
    bool crossings = true;
    bool shape = true;
};

MetricReport evaluate(const Graph& g, const Layout& layout, const MetricSelection& selection = {});

}  // namespace gumap::metrics
