#include "gumap/layout.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "gumap/rng.hpp"

namespace gumap {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

double clip(double value, double limit) { return std::clamp(value, -limit, limit); }

}  // namespace

// Curve fitting ---------------------------------------------------------------

CurveParams fit_ab(double min_dist, double spread) {
    if (!(min_dist > 0.0 && min_dist < spread)) {
        throw std::invalid_argument("fit_ab requires 0 < min_dist < spread");
    }
    constexpr int kSamples = 300;
    std::vector<double> xs(kSamples);
    std::vector<double> ys(kSamples);
    for (int i = 0; i < kSamples; ++i) {
        xs[i] = 3.0 * spread * i / (kSamples - 1);
        ys[i] = xs[i] < min_dist ? 1.0 : std::exp(-(xs[i] - min_dist) / spread);
    }
    auto sse = [&](double a, double b) {
        double s = 0.0;
        for (int i = 0; i < kSamples; ++i) {
            const double r = 1.0 / (1.0 + a * std::pow(xs[i], 2.0 * b)) - ys[i];
            s += r * r;
        }
        return s;
    };

    double a = 1.0;
    double b = 1.0;
    double lambda = 1e-3;
    double current = sse(a, b);
    for (int it = 0; it < 500; ++it) {
        // Normal equations J^T J and J^T r for the two parameters.
        double jaa = 0, jab = 0, jbb = 0, ga = 0, gb = 0;
        for (int i = 0; i < kSamples; ++i) {
            const double x = xs[i];
            const double p = x > 0.0 ? std::pow(x, 2.0 * b) : 0.0;
            const double denom = 1.0 + a * p;
            const double f = 1.0 / denom;
            const double r = f - ys[i];
            const double da = -p / (denom * denom);
            const double db = x > 0.0 ? -a * p * 2.0 * std::log(x) / (denom * denom) : 0.0;
            jaa += da * da;
            jab += da * db;
            jbb += db * db;
            ga += da * r;
            gb += db * r;
        }
        bool improved = false;
        for (int attempt = 0; attempt < 30 && !improved; ++attempt) {
            const double maa = jaa * (1.0 + lambda);
            const double mbb = jbb * (1.0 + lambda);
            const double det = maa * mbb - jab * jab;
            if (det == 0.0) {
                lambda *= 10.0;
                continue;
            }
            const double step_a = -(mbb * ga - jab * gb) / det;
            const double step_b = -(maa * gb - jab * ga) / det;
            const double na = a + step_a;
            const double nb = b + step_b;
            if (na > 0.0 && nb > 0.0) {
                const double candidate = sse(na, nb);
                if (candidate < current) {
                    const double change = current - candidate;
                    a = na;
                    b = nb;
                    current = candidate;
                    lambda = std::max(lambda / 10.0, 1e-12);
                    improved = true;
                    if (change < 1e-15 * std::max(current, 1e-300)) {
                        it = 500;
                    }
                    break;
                }
            }
            lambda *= 10.0;
        }
        if (!improved) {
            break;
        }
    }
    CurveParams params{a, b, current / kSamples};
    if (params.residual > 1e-2) {
        throw std::runtime_error("curve fit residual " + std::to_string(params.residual) + " above 1e-2");
    }
    return params;
}

// Similarity and gradients ----------------------------------------------------

double low_dim_similarity(Point xa, Point xb, double a, double b) {
    const double dx = xa.x - xb.x;
    const double dy = xa.y - xb.y;
    const double d2 = dx * dx + dy * dy;
    if (d2 == 0.0) {
        return 1.0;
    }
    return 1.0 / (1.0 + a * std::pow(d2, b));
}

double pair_cost(double h, Point xa, Point xb, double a, double b) {
    const double w = low_dim_similarity(xa, xb, a, b);
    double cost = 0.0;
    if (h > 0.0) {
        cost += h * std::log(h / w);
    }
    if (h < 1.0) {
        cost += (1.0 - h) * std::log((1.0 - h) / (1.0 - w));
    }
    return cost;
}

double attractive_coefficient(double dist_sq, double a, double b) {
    if (dist_sq <= 0.0) {
        return 0.0;
    }
    const double p = std::pow(dist_sq, b);
    return 2.0 * a * b * (p / dist_sq) / (1.0 + a * p);
}

double repulsive_coefficient(double dist_sq, double a, double b, double eps) {
    return 2.0 * b / ((eps + dist_sq) * (1.0 + a * std::pow(dist_sq, b)));
}

Point pair_gradient(double h, Point xa, Point xb, double a, double b) {
    const double dx = xa.x - xb.x;
    const double dy = xa.y - xb.y;
    const double d2 = dx * dx + dy * dy;
    const double c = h * attractive_coefficient(d2, a, b) - (1.0 - h) * repulsive_coefficient(d2, a, b);
    return {c * dx, c * dy};
}

// Configuration ---------------------------------------------------------------

OptimizerConfig OptimizerConfig::resolved() const {
    OptimizerConfig cfg = *this;
    if (cfg.k < 1) {
        throw std::invalid_argument("k must be at least 1");
    }
    if (!(cfg.sample_exponent > 0.0 && cfg.sample_exponent <= 1.0)) {
        throw std::invalid_argument("sample exponent must lie in (0, 1]");
    }
    if (cfg.a == 0.0 && cfg.b == 0.0) {
        auto fit = fit_ab(cfg.min_dist, cfg.spread);
        cfg.a = fit.a;
        cfg.b = fit.b;
    }
    if (!(cfg.a > 0.0 && cfg.b > 0.0)) {
        throw std::invalid_argument("curve parameters a and b must be positive");
    }
    return cfg;
}

// Spectral initialization -------------------------------------------------------

Layout spectral_init(const Graph& g, std::uint64_t seed, const SpectralOptions& options) {
    const auto n = static_cast<Eigen::Index>(g.num_vertices());
    Layout layout;
    layout.algorithm = AlgorithmTag::SPECTRAL_INIT;
    layout.seed = seed;
    layout.coords.assign(static_cast<std::size_t>(n), Point{});
    if (n < 2) {
        return layout;
    }
    if (!g.is_connected()) {
        throw std::invalid_argument("spectral initialization requires a connected graph");
    }

    Eigen::VectorXd inv_sqrt_deg(n);
    Eigen::VectorXd trivial(n);
    for (Eigen::Index v = 0; v < n; ++v) {
        const auto d = static_cast<double>(g.degree(static_cast<VertexId>(v)));
        inv_sqrt_deg[v] = 1.0 / std::sqrt(d);
        trivial[v] = std::sqrt(d);
    }
    trivial.normalize();

    const auto block = static_cast<Eigen::Index>(std::min<std::size_t>(options.block, static_cast<std::size_t>(n - 1)));
    const std::size_t max_matvecs = options.max_iterations ? options.max_iterations : 10 * static_cast<std::size_t>(n);

    auto project = [&](Eigen::MatrixXd& x) { x -= trivial * (trivial.transpose() * x); };
    // y = P (I + D^-1/2 A D^-1/2) P x; eigenvalues lie in [0, 2].
    std::size_t matvecs = 0;
    auto apply = [&](const Eigen::MatrixXd& x) {
        Eigen::MatrixXd px = x;
        project(px);
        Eigen::MatrixXd scaled = inv_sqrt_deg.asDiagonal() * px;
        Eigen::MatrixXd y = px;
        for (Eigen::Index v = 0; v < n; ++v) {
            for (VertexId w : g.neighbors(static_cast<VertexId>(v))) {
                y.row(v) += inv_sqrt_deg[v] * scaled.row(w);
            }
        }
        project(y);
        ++matvecs;
        return y;
    };
    auto orthonormalize = [&](Eigen::MatrixXd& x) {
        project(x);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
        x = qr.householderQ() * Eigen::MatrixXd::Identity(n, block);
        project(x);
    };

    Rng rng = derive_rng(seed, stream::kSpectral);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd x(n, block);
    for (Eigen::Index j = 0; j < block; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            x(i, j) = normal(rng);
        }
    }
    orthonormalize(x);

    const Eigen::Index wanted = std::min<Eigen::Index>(2, block);
    Eigen::VectorXd theta;
    double residual = std::numeric_limits<double>::infinity();
    while (true) {
        // Rayleigh-Ritz on the current basis, Ritz values descending.
        Eigen::MatrixXd mx = apply(x);
        Eigen::MatrixXd h = x.transpose() * mx;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (h + h.transpose()));
        Eigen::MatrixXd basis = eig.eigenvectors().rowwise().reverse();
        theta = eig.eigenvalues().reverse();
        x = x * basis;
        mx = mx * basis;
        residual = 0.0;
        for (Eigen::Index j = 0; j < wanted; ++j) {
            residual = std::max(residual, (mx.col(j) - theta[j] * x.col(j)).norm());
        }
        if (residual <= options.tolerance || block == n - 1) {
            break;
        }
        if (matvecs >= max_matvecs) {
            throw ConvergenceError(
                "spectral initialization did not converge (residual " + std::to_string(residual) + ")", residual);
        }
        // Chebyshev filter damping [0, smallest Ritz value].
        const double upper = std::max(theta[block - 1], 1e-3);
        const double half = upper / 2.0;
        Eigen::MatrixXd prev = x;
        Eigen::MatrixXd cur = (mx - half * x) / half;
        for (std::size_t deg = 2; deg <= options.filter_degree; ++deg) {
            Eigen::MatrixXd next = 2.0 * (apply(cur) - half * cur) / half - prev;
            prev = std::move(cur);
            cur = std::move(next);
        }
        x = std::move(cur);
        orthonormalize(x);
    }

    // Fix signs so the largest-magnitude entry of each vector is positive.
    for (Eigen::Index j = 0; j < wanted; ++j) {
        Eigen::Index arg = 0;
        x.col(j).cwiseAbs().maxCoeff(&arg);
        if (x(arg, j) < 0.0) {
            x.col(j) = -x.col(j);
        }
    }
    const double max_abs = x.leftCols(wanted).cwiseAbs().maxCoeff();
    const double expansion = max_abs > 0.0 ? 10.0 / max_abs : 1.0;
    for (Eigen::Index v = 0; v < n; ++v) {
        layout.coords[static_cast<std::size_t>(v)] = {expansion * x(v, 0), wanted > 1 ? expansion * x(v, 1) : 0.0};
    }

    double min_x = layout.coords[0].x, max_x = min_x, min_y = layout.coords[0].y, max_y = min_y;
    for (const auto& p : layout.coords) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double jitter = 1e-4 * std::max({max_x - min_x, max_y - min_y, 1e-12});
    Rng jitter_rng = derive_rng(seed, stream::kJitter);
    std::uniform_real_distribution<double> noise(-jitter, jitter);
    for (auto& p : layout.coords) {
        p.x += noise(jitter_rng);
        p.y += noise(jitter_rng);
    }
    return layout;
}

// Optimization ----------------------------------------------------------------

double mean_edge_cost(const KnnGraph& knn, const std::vector<Point>& coords, double a, double b) {
    if (knn.edges.empty()) {
        return 0.0;
    }
    double total = 0.0;
    for (const auto& e : knn.edges) {
        total += pair_cost(e.weight, coords[e.u], coords[e.v], a, b);
    }
    return total / static_cast<double>(knn.edges.size());
}

std::size_t window_size(std::size_t num_edges, double sample_exponent) {
    if (num_edges == 0) {
        return 0;
    }
    if (sample_exponent >= 1.0) {
        return num_edges;
    }
    auto s = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(num_edges), sample_exponent)));
    return std::clamp<std::size_t>(s, 1, num_edges);
}

namespace {

/// Applies the per-edge update rule shared by both optimizers.
class EdgeUpdater {
public:
    EdgeUpdater(const KnnGraph& knn, std::vector<Point>& coords, const OptimizerConfig& cfg)
        : knn_(knn), coords_(coords), cfg_(cfg), rng_(derive_rng(cfg.seed, stream::kOptimizer)) {
        const std::size_t n = knn.num_vertices;
        offsets_.assign(n + 1, 0);
        for (const auto& e : knn.edges) {
            ++offsets_[e.u + 1];
            ++offsets_[e.v + 1];
        }
        std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
        adjacency_.resize(offsets_.back());
        std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
        for (const auto& e : knn.edges) {
            adjacency_[fill[e.u]++] = e.v;
            adjacency_[fill[e.v]++] = e.u;
        }
        for (std::size_t v = 0; v < n; ++v) {
            std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
                      adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
        }
    }

    Rng& rng() { return rng_; }

    void update(std::size_t edge_index, double alpha, std::size_t iteration) {
        const auto& e = knn_.edges[edge_index];
        Point& pu = coords_[e.u];
        Point& pv = coords_[e.v];
        const double dx = pu.x - pv.x;
        const double dy = pu.y - pv.y;
        const double d2 = dx * dx + dy * dy;
        if (d2 > 0.0) {
            const double c = e.weight * attractive_coefficient(d2, cfg_.a, cfg_.b);
            const double gx = clip(c * dx, cfg_.clip);
            const double gy = clip(c * dy, cfg_.clip);
            pu.x -= alpha * gx;
            pu.y -= alpha * gy;
            pv.x += alpha * gx;
            pv.y += alpha * gy;
        }
        repel(e.u, alpha);
        repel(e.v, alpha);
        if (!finite(pu) || !finite(pv)) {
            throw NonFiniteLayoutError(iteration);
        }
    }

private:
    static bool finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

    bool is_knn_neighbor(VertexId v, VertexId w) const {
        auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
        auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
        return std::binary_search(first, last, w);
    }

    void repel(VertexId v, double alpha) {
        constexpr int kAttempts = 8;
        const std::size_t n = knn_.num_vertices;
        for (std::size_t s = 0; s < cfg_.negative_samples; ++s) {
            VertexId other = v;
            bool found = false;
            for (int attempt = 0; attempt < kAttempts; ++attempt) {
                other = static_cast<VertexId>(uniform_below(rng_, n));
                if (other != v && !is_knn_neighbor(v, other)) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                continue;
            }
            Point& p = coords_[v];
            const Point& q = coords_[other];
            const double dx = p.x - q.x;
            const double dy = p.y - q.y;
            const double d2 = dx * dx + dy * dy;
            if (d2 > 0.0) {
                const double c = repulsive_coefficient(d2, cfg_.a, cfg_.b, 1e-3);
                p.x += alpha * clip(c * dx, cfg_.clip);
                p.y += alpha * clip(c * dy, cfg_.clip);
            } else {
                const double angle = 2.0 * M_PI * uniform01(rng_);
                p.x += alpha * cfg_.clip * std::cos(angle);
                p.y += alpha * cfg_.clip * std::sin(angle);
            }
        }
    }

    const KnnGraph& knn_;
    std::vector<Point>& coords_;
    const OptimizerConfig& cfg_;
    Rng rng_;
    std::vector<std::size_t> offsets_;
    std::vector<VertexId> adjacency_;
};

void check_layout(const KnnGraph& knn, const Layout& layout) {
    if (layout.size() != knn.num_vertices) {
        throw std::invalid_argument("layout does not cover the kNN graph");
    }
}

void shuffle_indices(std::vector<std::size_t>& order, Rng& rng) {
    for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[uniform_below(rng, i)]);
    }
}

void checkpoint(const OptimizerHooks& hooks, std::size_t iteration, const std::vector<Point>& coords) {
    if (hooks.on_checkpoint && hooks.checkpoint_every > 0 && (iteration + 1) % hooks.checkpoint_every == 0) {
        hooks.on_checkpoint(iteration + 1, coords);
    }
}

}  // namespace

Layout optimize_full(const KnnGraph& knn, Layout layout, const OptimizerConfig& config, const OptimizerHooks& hooks) {
    check_layout(knn, layout);
    const OptimizerConfig cfg = config.resolved();
    const std::size_t t = cfg.iterations;
    if (t == 0 || knn.edges.empty()) {
        return layout;
    }
    EdgeUpdater updater(knn, layout.coords, cfg);
    std::vector<std::size_t> order(knn.edges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t it = 0; it < t; ++it) {
        const double alpha = cfg.learning_rate * (1.0 - static_cast<double>(it) / static_cast<double>(t));
        shuffle_indices(order, updater.rng());
        for (std::size_t idx : order) {
            if (hooks.on_edge) {
                hooks.on_edge(it, idx);
            }
            updater.update(idx, alpha, it);
        }
        checkpoint(hooks, it, layout.coords);
    }
    layout.iterations += t;
    layout.seed = cfg.seed;
    return layout;
}

Layout optimize_sampled(const KnnGraph& knn, Layout layout, const OptimizerConfig& config,
                        const OptimizerHooks& hooks) {
    check_layout(knn, layout);
    const OptimizerConfig cfg = config.resolved();
    const std::size_t t = cfg.iterations;
    if (t == 0 || knn.edges.empty()) {
        return layout;
    }
    EdgeUpdater updater(knn, layout.coords, cfg);
    const std::size_t num_edges = knn.edges.size();
    std::vector<std::size_t> order(num_edges);
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle_indices(order, updater.rng());
    const std::size_t s = window_size(num_edges, cfg.sample_exponent);
    std::size_t start = 0;
    for (std::size_t it = 0; it < t; ++it) {
        const double alpha = cfg.learning_rate * (1.0 - static_cast<double>(it) / static_cast<double>(t));
        std::size_t pos = start;
        for (std::size_t l = 0; l < s; ++l) {
            const std::size_t idx = order[pos];
            if (hooks.on_edge) {
                hooks.on_edge(it, idx);
            }
            updater.update(idx, alpha, it);
            if (++pos == num_edges) {
                pos = 0;
            }
        }
        start = (start + s) % num_edges;
        checkpoint(hooks, it, layout.coords);
    }
    layout.iterations += t;
    layout.seed = cfg.seed;
    return layout;
}

// Drivers -----------------------------------------------------------------------

namespace {

enum class Pipeline { Full, Partial };

RunResult run_pipeline(const Graph& layout_graph, const OptimizerConfig& config, Pipeline pipeline) {
    const OptimizerConfig cfg = config.resolved();
    RunResult result;
    auto& report = result.report;
    report.seed = cfg.seed;
    report.n = layout_graph.num_vertices();
    report.m = layout_graph.num_edges();
    report.layout_edges = layout_graph.num_edges();

    const auto start = Clock::now();
    KnnGraph knn;
    if (pipeline == Pipeline::Full) {
        auto t0 = Clock::now();
        DistanceMatrix dist = all_pairs_bfs(layout_graph);
        report.c0_ms = elapsed_ms(t0);
        auto t1 = Clock::now();
        auto selection = knn_from_full_distances(dist, cfg.k, cfg.seed);
        knn = smooth_knn_weights(layout_graph.num_vertices(), selection.knn, cfg.k);
        report.c1_ms = elapsed_ms(t1);
    } else {
        auto t0 = Clock::now();
        auto partial = partial_bfs(layout_graph, cfg.k, cfg.seed);
        report.c0_ms = elapsed_ms(t0);
        auto t1 = Clock::now();
        knn = smooth_knn_weights(layout_graph.num_vertices(), partial.knn, cfg.k);
        report.c1_ms = elapsed_ms(t1);
    }
    report.knn_edges = knn.edges.size();

    auto t2 = Clock::now();
    Layout init = spectral_init(layout_graph, cfg.seed);
    init.iterations = 0;
    result.layout = pipeline == Pipeline::Full ? optimize_full(knn, std::move(init), cfg)
                                               : optimize_sampled(knn, std::move(init), cfg);
    report.c2_ms = elapsed_ms(t2);
    report.total_ms = elapsed_ms(start);
    return result;
}

RunResult finish(RunResult result, const Graph& g, AlgorithmTag tag, double sparsify_ms) {
    result.layout.algorithm = tag;
    result.report.algorithm = tag;
    result.report.sparsify_ms = sparsify_ms;
    result.report.n = g.num_vertices();
    result.report.m = g.num_edges();
    return result;
}

Graph sparsify_for(const Graph& g, const OptimizerConfig& cfg, double& elapsed) {
    auto t = Clock::now();
    Graph sparse = spectral_sparsify(g, cfg.seed, cfg.exact_resistance_cap);
    elapsed = elapsed_ms(t);
    return sparse;
}

}  // namespace

RunResult run_gumap(const Graph& g, const OptimizerConfig& cfg) {
    return finish(run_pipeline(g, cfg, Pipeline::Full), g, AlgorithmTag::GUMAP, 0.0);
}

RunResult run_sl_gumap(const Graph& g, const OptimizerConfig& cfg) {
    return finish(run_pipeline(g, cfg, Pipeline::Partial), g, AlgorithmTag::SL, 0.0);
}

RunResult run_ss_gumap(const Graph& g, const Graph& sparsified, const OptimizerConfig& cfg) {
    return finish(run_pipeline(sparsified, cfg, Pipeline::Full), g, AlgorithmTag::SS, 0.0);
}

RunResult run_sssl_gumap(const Graph& g, const Graph& sparsified, const OptimizerConfig& cfg) {
    return finish(run_pipeline(sparsified, cfg, Pipeline::Partial), g, AlgorithmTag::SSSL, 0.0);
}

RunResult run_ss_gumap(const Graph& g, const OptimizerConfig& cfg) {
    double ms = 0.0;
    Graph sparse = sparsify_for(g, cfg, ms);
    auto result = run_ss_gumap(g, sparse, cfg);
    result.report.sparsify_ms = ms;
    return result;
}

RunResult run_sssl_gumap(const Graph& g, const OptimizerConfig& cfg) {
    double ms = 0.0;
    Graph sparse = sparsify_for(g, cfg, ms);
    auto result = run_sssl_gumap(g, sparse, cfg);
    result.report.sparsify_ms = ms;
    return result;
}

RunResult run_algorithm(AlgorithmTag algorithm, const Graph& g, const OptimizerConfig& cfg) {
    switch (algorithm) {
        case AlgorithmTag::GUMAP: return run_gumap(g, cfg);
        case AlgorithmTag::SS: return run_ss_gumap(g, cfg);
        case AlgorithmTag::SL: return run_sl_gumap(g, cfg);
        case AlgorithmTag::SSSL: return run_sssl_gumap(g, cfg);
        default: break;
    }
    throw std::invalid_argument(std::string("not a layout algorithm: ") + to_string(algorithm));
}

}  // namespace gumap
