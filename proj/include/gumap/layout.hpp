#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>

#include "gumap/graph.hpp"
#include "gumap/neighborhoods.hpp"
#include "gumap/report.hpp"
#include "gumap/sparsify.hpp"

namespace gumap {

struct CurveParams {
    double a = 1.0;
    double b = 1.0;
    /// Mean squared residual of the fit over the sample grid.
    double residual = 0.0;
};

/// Least-squares fit of 1 / (1 + a d^(2b)) to the target membership curve
/// (1 below min_dist, exp(-(d - min_dist) / spread) above), sampled at 300
/// points on [0, 3 spread]. Levenberg-Marquardt from (1, 1).
CurveParams fit_ab(double min_dist = 0.1, double spread = 1.0);

/// 1 / (1 + a |xa - xb|^(2b)).
double low_dim_similarity(Point xa, Point xb, double a, double b);

/// Per-pair cross-entropy h log(h/w) + (1-h) log((1-h)/(1-w)).
double pair_cost(double h, Point xa, Point xb, double a, double b);

/// Gradient of pair_cost with respect to xa; the gradient for xb is its negation.
Point pair_gradient(double h, Point xa, Point xb, double a, double b);

/// Scalar c with attractive gradient of -log w equal to c (xa - xb).
double attractive_coefficient(double dist_sq, double a, double b);
/// Scalar c with repulsive gradient of -log(1 - w) equal to -c (xa - xb).
/// `eps` regularizes the pole at coincident points.
double repulsive_coefficient(double dist_sq, double a, double b, double eps = 0.0);

struct OptimizerConfig {
    std::size_t iterations = 500;
    std::size_t k = 15;
    double sample_exponent = 0.9;
    double min_dist = 0.1;
    double spread = 1.0;
    /// Curve parameters; fitted from min_dist/spread when left at zero.
    double a = 0.0;
    double b = 0.0;
    double learning_rate = 1.0;
    std::size_t negative_samples = 5;
    double clip = 4.0;
    std::uint64_t seed = 0;
    /// Vertex cap for the dense exact resistance solver in SS/SSSL.
    std::size_t exact_resistance_cap = kDefaultExactResistanceCap;

    /// Returns a copy with a and b filled in and the invariants checked.
    OptimizerConfig resolved() const;
};

/// Optional instrumentation. on_edge sees every attractive update as
/// (iteration, index into KnnGraph::edges); on_checkpoint fires after every
/// `checkpoint_every` iterations with the current coordinates.
struct OptimizerHooks {
    std::function<void(std::size_t, std::size_t)> on_edge;
    std::function<void(std::size_t, const std::vector<Point>&)> on_checkpoint;
    std::size_t checkpoint_every = 0;
};

class NonFiniteLayoutError : public std::runtime_error {
public:
    NonFiniteLayoutError(std::size_t iteration)
        : std::runtime_error("non-finite coordinate at iteration " + std::to_string(iteration)),
          iteration_(iteration) {}
    std::size_t iteration() const { return iteration_; }

private:
    std::size_t iteration_;
};

struct SpectralOptions {
    /// Block operator applications before giving up; 0 means 10 n.
    std::size_t max_iterations = 0;
    double tolerance = 1e-6;
    /// Block width of the subspace iteration.
    std::size_t block = 6;
    std::size_t filter_degree = 8;
};

/// Two eigenvectors of the normalized Laplacian with smallest nonzero
/// eigenvalues, found by Chebyshev-filtered subspace iteration on
/// I + D^-1/2 A D^-1/2 with the trivial eigenvector projected out. Scaled to
/// [-10, 10]^2 plus seeded jitter of 1e-4 of the extent.
Layout spectral_init(const Graph& g, std::uint64_t seed, const SpectralOptions& options = {});

/// Mean pair_cost over the edges of the kNN graph.
double mean_edge_cost(const KnnGraph& knn, const std::vector<Point>& coords, double a, double b);

/// Every symmetrized edge once per iteration, in a fresh seeded order.
Layout optimize_full(const KnnGraph& knn, Layout layout, const OptimizerConfig& cfg,
                     const OptimizerHooks& hooks = {});

/// Sliding window of floor(|E|^samp) edges over a single seeded shuffle.
Layout optimize_sampled(const KnnGraph& knn, Layout layout, const OptimizerConfig& cfg,
                        const OptimizerHooks& hooks = {});

std::size_t window_size(std::size_t num_edges, double sample_exponent);

struct RunResult {
    Layout layout;
    RunReport report;
};

RunResult run_gumap(const Graph& g, const OptimizerConfig& cfg);
RunResult run_ss_gumap(const Graph& g, const OptimizerConfig& cfg);
RunResult run_sl_gumap(const Graph& g, const OptimizerConfig& cfg);
RunResult run_sssl_gumap(const Graph& g, const OptimizerConfig& cfg);
RunResult run_algorithm(AlgorithmTag algorithm, const Graph& g, const OptimizerConfig& cfg);

/// SS/SSSL with a precomputed sparsifier G' (same vertex set as g).
RunResult run_ss_gumap(const Graph& g, const Graph& sparsified, const OptimizerConfig& cfg);
RunResult run_sssl_gumap(const Graph& g, const Graph& sparsified, const OptimizerConfig& cfg);

}  // namespace gumap
