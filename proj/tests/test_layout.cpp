#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "gumap/layout.hpp"
#include "oracles.hpp"

using namespace gumap;

TEST_CASE("curve fit matches reference values") {
    // Reference fit for min_dist 0.1, spread 1 from scipy.optimize.curve_fit.
    auto fit = fit_ab();
    CHECK(fit.a == doctest::Approx(1.5769434602697652).epsilon(1e-4));
    CHECK(fit.b == doctest::Approx(0.8950608778515733).epsilon(1e-4));
    CHECK(fit.residual < 1e-2);
    for (double md : {0.05, 0.25, 0.5, 0.9}) {
        auto lm = fit_ab(md, 1.0);
        auto nm = oracle::fit_ab(md, 1.0);
        CHECK(lm.a == doctest::Approx(nm.first).epsilon(1e-4));
        CHECK(lm.b == doctest::Approx(nm.second).epsilon(1e-4));
    }
    CHECK(fit_ab(0.5).b < fit_ab(0.9).b);
    CHECK_THROWS_AS(fit_ab(1.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(fit_ab(-0.1, 1.0), std::invalid_argument);
}

TEST_CASE("similarity and cost") {
    const double a = 1.5769434602697652, b = 0.8950608778515733;
    CHECK(low_dim_similarity({0, 0}, {2, 0}, a, b) == doctest::Approx(0.15494829915888678).epsilon(1e-12));
    CHECK(low_dim_similarity({1, 1}, {1, 1}, a, b) == 1.0);
    const double w = low_dim_similarity({0, 0}, {0.3, 0.4}, a, b);
    CHECK(pair_cost(0.7, {0, 0}, {0.3, 0.4}, a, b) ==
          doctest::Approx(0.7 * std::log(0.7 / w) + 0.3 * std::log(0.3 / (1 - w))));
    CHECK(pair_cost(1.0, {0, 0}, {0.3, 0.4}, a, b) == doctest::Approx(-std::log(w)));
}

TEST_CASE("pair gradient agrees with central differences") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> coord(-3, 3), weight(0.01, 0.99), pa(0.2, 3.0), pb(0.6, 1.8);
    for (int trial = 0; trial < 100; ++trial) {
        Point xa{coord(rng), coord(rng)}, xb{coord(rng), coord(rng)};
        if (std::hypot(xa.x - xb.x, xa.y - xb.y) < 0.05) continue;
        const double h = weight(rng), a = pa(rng), b = pb(rng);
        auto g = pair_gradient(h, xa, xb, a, b);
        const double step = 1e-6;
        const double fx = (pair_cost(h, {xa.x + step, xa.y}, xb, a, b) - pair_cost(h, {xa.x - step, xa.y}, xb, a, b)) /
                          (2 * step);
        const double fy = (pair_cost(h, {xa.x, xa.y + step}, xb, a, b) - pair_cost(h, {xa.x, xa.y - step}, xb, a, b)) /
                          (2 * step);
        CHECK(std::abs(g.x - fx) <= 1e-4 * std::max(1.0, std::abs(fx)));
        CHECK(std::abs(g.y - fy) <= 1e-4 * std::max(1.0, std::abs(fy)));
    }
}

TEST_CASE("attractive and repulsive coefficients") {
    const double a = 1.2, b = 0.9, d2 = 2.5;
    const double p = std::pow(d2, b);
    CHECK(attractive_coefficient(d2, a, b) == doctest::Approx(2 * a * b * std::pow(d2, b - 1) / (1 + a * p)));
    CHECK(repulsive_coefficient(d2, a, b) == doctest::Approx(2 * b / (d2 * (1 + a * p))));
}

TEST_CASE("window size") {
    CHECK(window_size(0, 0.9) == 0);
    CHECK(window_size(1000, 1.0) == 1000);
    CHECK(window_size(1000, 0.9) == 501);
    CHECK(window_size(2, 0.01) == 1);
}

TEST_CASE("config validation") {
    OptimizerConfig cfg;
    auto r = cfg.resolved();
    CHECK(r.a > 0);
    CHECK(r.b > 0);
    cfg.sample_exponent = 0.0;
    CHECK_THROWS_AS(cfg.resolved(), std::invalid_argument);
    cfg = {};
    cfg.k = 0;
    CHECK_THROWS_AS(cfg.resolved(), std::invalid_argument);
}

TEST_CASE("spectral init spans the low normalized-Laplacian eigenvectors") {
    std::mt19937_64 rng(41);
    Graph g = oracle::random_connected(60, 50, rng);
    const auto n = static_cast<Eigen::Index>(g.num_vertices());
    Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(n, n);
    for (const auto& e : g.edges()) {
        const double w = 1.0 / std::sqrt(double(g.degree(e.u)) * double(g.degree(e.v)));
        lap(e.u, e.v) -= w;
        lap(e.v, e.u) -= w;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lap);
    REQUIRE(eig.eigenvalues()[3] - eig.eigenvalues()[2] > 1e-3);
    Eigen::MatrixXd span = eig.eigenvectors().middleCols(1, 2);

    auto layout = spectral_init(g, 1);
    CHECK(layout.algorithm == AlgorithmTag::SPECTRAL_INIT);
    double max_abs = 0;
    for (int col = 0; col < 2; ++col) {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            v[i] = col == 0 ? layout.coords[i].x : layout.coords[i].y;
            max_abs = std::max(max_abs, std::abs(v[i]));
        }
        v.normalize();
        CHECK((span.transpose() * v).norm() > 0.999);
    }
    CHECK(max_abs == doctest::Approx(10.0).epsilon(1e-3));
    CHECK(spectral_init(g, 1).coords == layout.coords);
    CHECK_THROWS_AS(spectral_init(Graph::from_canonical(4, {{0, 1}, {2, 3}}), 0), std::invalid_argument);
}

namespace {

KnnGraph fixture_knn(std::size_t n, std::uint64_t seed, std::size_t k) {
    std::mt19937_64 rng(seed);
    Graph g = oracle::random_connected(n, n / 2, rng);
    return smooth_knn_weights(n, partial_bfs(g, k, seed).knn, k);
}

}  // namespace

TEST_CASE("sampled optimizer covers edges evenly from one shuffle") {
    auto knn = fixture_knn(50, 2, 5);
    OptimizerConfig cfg;
    cfg.iterations = 37;
    cfg.sample_exponent = 0.8;
    const std::size_t m = knn.edges.size();
    const std::size_t s = window_size(m, cfg.sample_exponent);
    std::vector<std::size_t> counts(m, 0);
    std::vector<std::size_t> sequence;
    OptimizerHooks hooks;
    hooks.on_edge = [&](std::size_t, std::size_t idx) {
        ++counts[idx];
        sequence.push_back(idx);
    };
    optimize_sampled(knn, random_layout(50, 1), cfg, hooks);
    REQUIRE(sequence.size() == cfg.iterations * s);
    auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    CHECK(*hi - *lo <= 1);
    // The visit order repeats with period m.
    for (std::size_t i = m; i < sequence.size(); ++i) CHECK(sequence[i] == sequence[i - m]);
}

TEST_CASE("full optimizer visits every edge every iteration") {
    auto knn = fixture_knn(40, 3, 5);
    OptimizerConfig cfg;
    cfg.iterations = 6;
    std::vector<std::vector<std::size_t>> per_iter(cfg.iterations);
    OptimizerHooks hooks;
    hooks.on_edge = [&](std::size_t it, std::size_t idx) { per_iter[it].push_back(idx); };
    std::size_t checkpoints = 0;
    hooks.checkpoint_every = 2;
    hooks.on_checkpoint = [&](std::size_t, const std::vector<Point>&) { ++checkpoints; };
    auto out = optimize_full(knn, random_layout(40, 1), cfg, hooks);
    CHECK(checkpoints == 3);
    CHECK(out.iterations == 6);
    for (auto& order : per_iter) {
        std::vector<std::size_t> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted.size() == knn.edges.size());
        for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == i);
    }
    CHECK(per_iter[0] != per_iter[1]);
}

TEST_CASE("optimization lowers the edge cost and is deterministic") {
    auto knn = fixture_knn(80, 4, 8);
    OptimizerConfig cfg;
    cfg.iterations = 200;
    cfg = cfg.resolved();
    auto start = random_layout(80, 9, 5.0);
    const double before = mean_edge_cost(knn, start.coords, cfg.a, cfg.b);
    auto a = optimize_full(knn, start, cfg);
    auto b = optimize_full(knn, start, cfg);
    CHECK(a.coords == b.coords);
    CHECK(a.all_finite());
    CHECK(mean_edge_cost(knn, a.coords, cfg.a, cfg.b) < before);
    auto c = optimize_sampled(knn, start, cfg);
    CHECK(mean_edge_cost(knn, c.coords, cfg.a, cfg.b) < before);
}

TEST_CASE("drivers tag their results") {
    std::mt19937_64 rng(8);
    Graph g = oracle::random_connected(60, 800, rng);
    OptimizerConfig cfg;
    cfg.iterations = 20;
    for (auto tag : {AlgorithmTag::GUMAP, AlgorithmTag::SS, AlgorithmTag::SL, AlgorithmTag::SSSL}) {
        auto run = run_algorithm(tag, g, cfg);
        CHECK(run.layout.algorithm == tag);
        CHECK(run.report.algorithm == tag);
        CHECK(run.layout.size() == g.num_vertices());
        CHECK(run.layout.all_finite());
        CHECK(run.report.m == g.num_edges());
        CHECK(run.report.total_ms >= run.report.c0_ms);
        const bool sparse = tag == AlgorithmTag::SS || tag == AlgorithmTag::SSSL;
        CHECK((run.report.layout_edges < g.num_edges()) == sparse);
    }
    CHECK_THROWS_AS(run_algorithm(AlgorithmTag::RANDOM, g, cfg), std::invalid_argument);
}
