#include "gumap/sparsify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "gumap/rng.hpp"

namespace gumap {

namespace {

void require_connected(const Graph& g) {
    if (!g.is_connected()) {
        throw std::invalid_argument("sparsifier requires connected graph");
    }
}

struct DisjointSets {
    std::vector<VertexId> parent;
    std::vector<std::uint8_t> rank;

    explicit DisjointSets(std::size_t n) : parent(n), rank(n, 0) {
        std::iota(parent.begin(), parent.end(), VertexId{0});
    }

    VertexId find(VertexId x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    bool unite(VertexId a, VertexId b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        if (rank[a] < rank[b]) {
            std::swap(a, b);
        }
        parent[b] = a;
        if (rank[a] == rank[b]) {
            ++rank[a];
        }
        return true;
    }
};

// y = L x for the combinatorial Laplacian.
void laplacian_apply(const Graph& g, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    const auto n = static_cast<VertexId>(g.num_vertices());
    for (VertexId v = 0; v < n; ++v) {
        double acc = static_cast<double>(g.degree(v)) * x[v];
        for (VertexId w : g.neighbors(v)) {
            acc -= x[w];
        }
        y[v] = acc;
    }
}

// Solves L x = b for mean-zero b with Jacobi-preconditioned CG, keeping the
// iterate orthogonal to the constant vector.
Eigen::VectorXd solve_laplacian(const Graph& g, const Eigen::VectorXd& b, double tolerance,
                                std::size_t max_iterations) {
    const auto n = static_cast<Eigen::Index>(g.num_vertices());
    Eigen::VectorXd inv_diag(n);
    for (Eigen::Index v = 0; v < n; ++v) {
        inv_diag[v] = 1.0 / static_cast<double>(g.degree(static_cast<VertexId>(v)));
    }
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd r = b;
    const double b_norm = b.norm();
    if (b_norm == 0.0) {
        return x;
    }
    Eigen::VectorXd z = inv_diag.cwiseProduct(r);
    z.array() -= z.mean();
    Eigen::VectorXd p = z;
    Eigen::VectorXd lp(n);
    double rz = r.dot(z);
    double residual = 1.0;
    for (std::size_t it = 0; it < max_iterations; ++it) {
        laplacian_apply(g, p, lp);
        const double alpha = rz / p.dot(lp);
        x += alpha * p;
        r -= alpha * lp;
        residual = r.norm() / b_norm;
        if (residual <= tolerance) {
            x.array() -= x.mean();
            return x;
        }
        z = inv_diag.cwiseProduct(r);
        z.array() -= z.mean();
        const double rz_next = r.dot(z);
        p = z + (rz_next / rz) * p;
        rz = rz_next;
    }
    throw ConvergenceError("Laplacian solver did not converge (relative residual " + std::to_string(residual) + ")",
                           residual);
}

}  // namespace

ResistanceTable effective_resistance_exact(const Graph& g, std::size_t max_vertices) {
    require_connected(g);
    const std::size_t n = g.num_vertices();
    if (n > max_vertices) {
        throw std::invalid_argument("graph has " + std::to_string(n) + " vertices, above the exact resistance cap of " +
                                    std::to_string(max_vertices));
    }
    ResistanceTable table;
    table.values.resize(g.num_edges());
    if (n < 2) {
        return table;
    }

    // Ground the last vertex: the reduced Laplacian is positive definite.
    const auto k = static_cast<Eigen::Index>(n - 1);
    const auto ground = static_cast<VertexId>(n - 1);
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(k, k);
    for (VertexId v = 0; v < ground; ++v) {
        lap(v, v) = static_cast<double>(g.degree(v));
    }
    for (const auto& e : g.edges()) {
        if (e.v != ground) {
            lap(e.u, e.v) = -1.0;
            lap(e.v, e.u) = -1.0;
        }
    }
    Eigen::LLT<Eigen::Ref<Eigen::MatrixXd>> llt(lap);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("grounded Laplacian is not positive definite");
    }
    Eigen::MatrixXd factor_inv = Eigen::MatrixXd::Identity(k, k);
    llt.matrixL().solveInPlace(factor_inv);

    // Column u of C^{-1} is nonzero only from row u down.
    for (std::size_t i = 0; i < g.num_edges(); ++i) {
        const auto [u, v] = g.edges()[i];
        double r = 0.0;
        if (v == ground) {
            r = factor_inv.col(u).tail(k - u).squaredNorm();
        } else {
            r = factor_inv.col(u).segment(u, v - u).squaredNorm() +
                (factor_inv.col(u).tail(k - v) - factor_inv.col(v).tail(k - v)).squaredNorm();
        }
        table.values[i] = r;
    }
    return table;
}

ResistanceTable effective_resistance_approx(const Graph& g, const ApproxResistanceOptions& options) {
    require_connected(g);
    if (!(options.epsilon > 0.0 && options.epsilon < 1.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    }
    const std::size_t n = g.num_vertices();
    const std::size_t m = g.num_edges();
    ResistanceTable table;
    table.values.assign(m, 0.0);
    if (n < 2) {
        return table;
    }
    const auto rows = static_cast<std::size_t>(
        std::ceil(options.jl_constant * std::log(static_cast<double>(n)) / (options.epsilon * options.epsilon)));
    const std::size_t max_iterations = options.max_solver_iterations ? options.max_solver_iterations : 10 * n;
    const double scale = 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(rows, 1)));

    Rng rng = derive_rng(options.seed, stream::kSketch);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
    for (std::size_t row = 0; row < std::max<std::size_t>(rows, 1); ++row) {
        // rhs = B^T q for a random sign vector q over edges.
        rhs.setZero();
        for (const auto& e : g.edges()) {
            const double s = (rng() & 1U) ? scale : -scale;
            rhs[e.u] += s;
            rhs[e.v] -= s;
        }
        Eigen::VectorXd z = solve_laplacian(g, rhs, options.solver_tolerance, max_iterations);
        for (std::size_t i = 0; i < m; ++i) {
            const double d = z[g.edges()[i].u] - z[g.edges()[i].v];
            table.values[i] += d * d;
        }
    }
    return table;
}

ResistanceTable effective_resistance_approx(const Graph& g, double epsilon, std::uint64_t seed) {
    ApproxResistanceOptions options;
    options.epsilon = epsilon;
    options.seed = seed;
    return effective_resistance_approx(g, options);
}

ResistanceTable effective_resistance(const Graph& g, std::uint64_t seed, std::size_t exact_cap) {
    if (g.num_vertices() <= exact_cap) {
        return effective_resistance_exact(g, exact_cap);
    }
    return effective_resistance_approx(g, 0.3, seed);
}

std::size_t sparsifier_target(std::size_t n, std::size_t m) {
    if (n < 2) {
        return 0;
    }
    const double nd = static_cast<double>(n);
    return std::min(m, static_cast<std::size_t>(std::ceil(nd * std::log2(nd))));
}

Graph sparsify(const Graph& g, const ResistanceTable& resistances) {
    return sparsify(g, resistances, sparsifier_target(g.num_vertices(), g.num_edges()));
}

Graph sparsify(const Graph& g, const ResistanceTable& resistances, std::size_t target) {
    require_connected(g);
    const std::size_t m = g.num_edges();
    if (resistances.values.size() != m) {
        throw std::invalid_argument("resistance table does not match edge list");
    }
    target = std::min(target, m);
    if (target == m) {
        return g;
    }

    // Edges are canonical already, so a stable sort by descending resistance
    // breaks ties by (u, v).
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return resistances.values[a] > resistances.values[b];
    });

    DisjointSets sets(g.num_vertices());
    std::vector<char> keep(m, 0);
    std::size_t kept = 0;
    for (std::size_t i : order) {
        if (sets.unite(g.edges()[i].u, g.edges()[i].v)) {
            keep[i] = 1;
            ++kept;
        }
    }
    for (std::size_t i : order) {
        if (kept >= target) {
            break;
        }
        if (!keep[i]) {
            keep[i] = 1;
            ++kept;
        }
    }
    std::vector<Edge> edges;
    edges.reserve(kept);
    for (std::size_t i = 0; i < m; ++i) {
        if (keep[i]) {
            edges.push_back(g.edges()[i]);
        }
    }
    return Graph::from_canonical(g.num_vertices(), std::move(edges), g.labels());
}

Graph spectral_sparsify(const Graph& g, std::uint64_t seed, std::size_t exact_cap) {
    require_connected(g);
    if (sparsifier_target(g.num_vertices(), g.num_edges()) >= g.num_edges()) {
        return g;
    }
    return sparsify(g, effective_resistance(g, seed, exact_cap));
}

}  // namespace gumap
