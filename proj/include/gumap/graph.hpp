#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gumap {

using VertexId = std::uint32_t;

struct Edge {
    VertexId u;
    VertexId v;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Weighted undirected edge; the weight is an effective resistance or a
/// fuzzy membership depending on where it comes from.
struct EdgeWeighted {
    VertexId u;
    VertexId v;
    double weight;
};

/**
 * Immutable undirected simple graph.
 *
 * Vertices are 0..n-1. Adjacency is stored in CSR form with each neighbor
 * list sorted ascending; `edges()` holds every edge once as (u, v) with
 * u < v, sorted lexicographically. A sidecar label table maps dense ids back
 * to the labels the graph was built from.
 */
class Graph {
public:
    Graph() = default;

    /// Builds from canonical edges: u < v, sorted, no duplicates.
    /// Labels may be empty, in which case the dense id is used as the label.
    static Graph from_canonical(std::size_t n, std::vector<Edge> edges,
                                std::vector<std::string> labels = {});

    std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t num_edges() const { return edges_.size(); }

    std::span<const VertexId> neighbors(VertexId v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
    bool has_edge(VertexId u, VertexId v) const;

    const std::vector<Edge>& edges() const { return edges_; }
    const std::string& label(VertexId v) const { return labels_[v]; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Number of self-loops and duplicate edges dropped while building.
    std::size_t dropped_edges() const { return dropped_; }

    bool is_connected() const;

private:
    friend Graph build_graph(const std::vector<std::pair<std::string, std::string>>&);

    std::vector<std::size_t> offsets_;
    std::vector<VertexId> adjacency_;
    std::vector<Edge> edges_;
    std::vector<std::string> labels_;
    std::size_t dropped_ = 0;
};

/// Orders labels numerically when both are unsigned integers, otherwise
/// lexicographically; numeric labels sort before non-numeric ones.
bool label_less(const std::string& a, const std::string& b);

/// Relabels to 0..n-1 in label order, drops self-loops and duplicates.
/// Throws std::invalid_argument("empty graph") when no edge survives.
Graph build_graph(const std::vector<std::pair<std::string, std::string>>& edge_pairs);
Graph build_graph(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& edge_pairs);

/// Connected component id per vertex, numbered in order of smallest member.
std::vector<std::uint32_t> connected_components(const Graph& g);

/// Induced subgraph on the largest component. Ties go to the component that
/// contains the smallest vertex id (equivalently the smallest label).
Graph largest_connected_component(const Graph& g);

/// Subgraph on the same vertex set with the given canonical edges.
Graph with_edges(const Graph& g, std::vector<Edge> edges);

// Layout ---------------------------------------------------------------------

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

enum class AlgorithmTag { GUMAP, SS, SL, SSSL, SPECTRAL_INIT, RANDOM };

const char* to_string(AlgorithmTag tag);
AlgorithmTag algorithm_from_string(const std::string& name);

struct Layout {
    std::vector<Point> coords;
    AlgorithmTag algorithm = AlgorithmTag::RANDOM;
    std::uint64_t seed = 0;
    std::size_t iterations = 0;

    std::size_t size() const { return coords.size(); }
    bool all_finite() const;
};

/// Uniform random layout in [0, side)^2.
Layout random_layout(std::size_t n, std::uint64_t seed, double side = 20.0);

}  // namespace gumap
