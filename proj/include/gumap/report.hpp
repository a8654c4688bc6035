#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "gumap/graph.hpp"

namespace gumap {

struct MetricReport {
    double neighborhood_preservation = 0.0;
    double stress = 0.0;
    std::uint64_t crossings = 0;
    double shape_jaccard = 0.0;
};

/// Timings follow the C0/C1/C2 split: C0 distances, C1 kNN graph, C2
/// initialization plus optimization. Sparsification is preprocessing and is
/// reported on its own, outside total_ms.
struct RunReport {
    AlgorithmTag algorithm = AlgorithmTag::GUMAP;
    double sparsify_ms = 0.0;
    double c0_ms = 0.0;
    double c1_ms = 0.0;
    double c2_ms = 0.0;
    double total_ms = 0.0;
    std::optional<MetricReport> metrics;
    std::uint64_t seed = 0;
    std::string graph_name;
    std::size_t n = 0;
    std::size_t m = 0;
    /// Edges of the graph the layout was computed on (m for GUMAP/SL).
    std::size_t layout_edges = 0;
    std::size_t knn_edges = 0;
};

}  // namespace gumap
