#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "gumap/graph.hpp"

namespace gumap {

using HopDistance = std::uint16_t;

/// Hop distance used for unreachable pairs.
inline constexpr HopDistance kUnreachable = std::numeric_limits<HopDistance>::max();

/// Dense all-pairs hop distances, row-major. Rows are full BFS results.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), data_(n * n, kUnreachable) {}

    std::size_t size() const { return n_; }
    HopDistance operator()(VertexId i, VertexId j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }
    std::span<const HopDistance> row(VertexId i) const { return {data_.data() + static_cast<std::size_t>(i) * n_, n_}; }
    std::span<HopDistance> row(VertexId i) { return {data_.data() + static_cast<std::size_t>(i) * n_, n_}; }

private:
    std::size_t n_ = 0;
    std::vector<HopDistance> data_;
};

struct Neighbor {
    VertexId id;
    std::uint32_t distance;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Per-vertex neighbor lists sorted by (distance, id), CSR layout.
class SparseDistanceSet {
public:
    enum class Mode { Full, Partial };

    SparseDistanceSet() = default;
    SparseDistanceSet(Mode mode, std::vector<std::size_t> offsets, std::vector<Neighbor> entries)
        : mode_(mode), offsets_(std::move(offsets)), entries_(std::move(entries)) {}

    Mode mode() const { return mode_; }
    std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::span<const Neighbor> neighbors(VertexId v) const {
        return {entries_.data() + offsets_[v], entries_.data() + offsets_[v + 1]};
    }
    std::size_t total_entries() const { return entries_.size(); }

private:
    Mode mode_ = Mode::Partial;
    std::vector<std::size_t> offsets_;
    std::vector<Neighbor> entries_;
};

struct KnnEdge {
    VertexId from;
    VertexId to;
    double distance;
};

/// Single-source BFS hop distances; unreachable vertices get kUnreachable.
void bfs_distances(const Graph& g, VertexId source, std::span<HopDistance> out, std::vector<VertexId>& queue);

/// Full BFS from every vertex. Throws when n does not fit the 16-bit hop range.
DistanceMatrix all_pairs_bfs(const Graph& g);

struct PartialBfsResult {
    SparseDistanceSet distances;
    std::vector<KnnEdge> knn;
    /// Vertices whose component had fewer than k other vertices.
    std::size_t short_rows = 0;
};

/// For every vertex, the k nearest other vertices by hop distance. Vertices
/// tied at the last BFS level are chosen uniformly at random from a stream
/// derived from (seed, v).
PartialBfsResult partial_bfs(const Graph& g, std::size_t k, std::uint64_t seed);

struct KnnSelection {
    std::vector<KnnEdge> knn;
    std::size_t short_rows = 0;
};

/// Same selection rule as partial_bfs applied to precomputed distances;
/// under the same seed both return identical neighbor sets.
KnnSelection knn_from_full_distances(const DistanceMatrix& distances, std::size_t k, std::uint64_t seed);

struct SmoothKnnOptions {
    std::size_t iterations = 64;
    double tolerance = 1e-5;
    double sigma_min = 1e-3;
    double sigma_max = 1e3;
};

/// Undirected kNN edge with fuzzy membership h in (0, 1].
struct FuzzyEdge {
    VertexId u;
    VertexId v;
    double distance;
    double weight;
};

struct KnnGraph {
    std::size_t num_vertices = 0;
    /// Deduplicated directed edges with membership weights before symmetrization.
    std::vector<KnnEdge> directed;
    std::vector<double> directed_weight;
    std::vector<double> rho;
    std::vector<double> sigma;
    std::vector<char> sigma_clamped;
    /// Symmetrized edges, u < v, sorted; zero-weight pairs are dropped.
    std::vector<FuzzyEdge> edges;
};

/// a + b - a*b.
inline double fuzzy_union(double a, double b) { return a + b - a * b; }

/// Bandwidth search: returns sigma such that sum_j exp(-(d_j - rho)/sigma)
/// hits `target`, clamped to [sigma_min, sigma_max]. `clamped` reports when
/// no interior solution exists.
double solve_sigma(std::span<const double> distances, double rho, double target, const SmoothKnnOptions& options,
                   bool* clamped = nullptr);

/// Per-vertex rho and sigma with target log2(k), directed weights
/// exp(-(d - rho)/sigma), then fuzzy-union symmetrization.
KnnGraph smooth_knn_weights(std::size_t num_vertices, const std::vector<KnnEdge>& knn, std::size_t k,
                            const SmoothKnnOptions& options = {});

}  // namespace gumap
