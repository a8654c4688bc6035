#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gumap/graph.hpp"

namespace gumap {

/// Effective resistance per edge, aligned with Graph::edges().
struct ResistanceTable {
    std::vector<double> values;
};

/// Raised when an iterative solver stops short of its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

inline constexpr std::size_t kDefaultExactResistanceCap = 20000;

/// Exact resistances from a dense Cholesky factor of the grounded Laplacian:
/// with L_g = C C^T, r_uv = |C^{-1}(e_u - e_v)|^2. O(n^3) time, O(n^2) memory.
ResistanceTable effective_resistance_exact(const Graph& g, std::size_t max_vertices = kDefaultExactResistanceCap);

struct ApproxResistanceOptions {
    double epsilon = 0.3;
    std::uint64_t seed = 0;
    /// Sketch rows: ceil(jl_constant * ln(n) / epsilon^2).
    double jl_constant = 24.0;
    double solver_tolerance = 1e-10;
    std::size_t max_solver_iterations = 0;  // 0: 10 * n
};

/// Random-projection estimate: each sketch row solves one Laplacian system by
/// preconditioned conjugate gradients.
ResistanceTable effective_resistance_approx(const Graph& g, const ApproxResistanceOptions& options);
ResistanceTable effective_resistance_approx(const Graph& g, double epsilon, std::uint64_t seed);

/// Exact below the cap, sketched above it.
ResistanceTable effective_resistance(const Graph& g, std::uint64_t seed,
                                     std::size_t exact_cap = kDefaultExactResistanceCap);

/// min(m, ceil(n log2 n)).
std::size_t sparsifier_target(std::size_t n, std::size_t m);

/// Maximum spanning tree under resistance weights, then remaining edges by
/// decreasing resistance until `target` edges are kept. Ties in both phases
/// follow canonical edge order.
Graph sparsify(const Graph& g, const ResistanceTable& resistances);
Graph sparsify(const Graph& g, const ResistanceTable& resistances, std::size_t target);

/// Resistances plus sparsify with the default target. Returns g unchanged,
/// without computing resistances, when the target already covers every edge.
Graph spectral_sparsify(const Graph& g, std::uint64_t seed, std::size_t exact_cap = kDefaultExactResistanceCap);

}  // namespace gumap
