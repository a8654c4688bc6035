#include <doctest.h>

#include <random>

#include "gumap/metrics.hpp"
#include "oracles.hpp"

using namespace gumap;

namespace {

Layout from_points(std::vector<Point> pts) {
    Layout l;
    l.coords = std::move(pts);
    return l;
}

// Coordinates on a coarse lattice so that ties, collinear edges and shared
// positions actually occur.
std::vector<Point> lattice_points(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> c(0, 6);
    std::vector<Point> pts(n);
    for (auto& p : pts) p = {double(c(rng)), double(c(rng))};
    return pts;
}

}  // namespace

TEST_CASE("stress of the unit square") {
    // C4 drawn as a unit square: s* = (8 + 2 sqrt 2) / 10.
    Graph c4 = Graph::from_canonical(4, {{0, 1}, {0, 3}, {1, 2}, {2, 3}});
    auto square = from_points({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(metrics::optimal_stress_scale(c4, square) == doctest::Approx(1.082842712474619).epsilon(1e-12));
    CHECK(metrics::stress(c4, square) == doctest::Approx(0.022876383367174652).epsilon(1e-12));
    // Unscaled: diagonals contribute ((2 - sqrt 2) / 2)^2 each.
    const double diag = (2 - std::sqrt(2.0)) / 2;
    CHECK(metrics::stress(c4, square, {.optimal_scale = false}) == doctest::Approx(4 * diag * diag / 12));
}

TEST_CASE("stress is scale invariant and rejects disconnected graphs") {
    std::mt19937_64 rng(1);
    Graph g = oracle::random_connected(20, 10, rng);
    auto pts = oracle::random_points(20, rng);
    auto scaled = pts;
    for (auto& p : scaled) p = {p.x * 7.5, p.y * 7.5};
    CHECK(metrics::stress(g, from_points(pts)) == doctest::Approx(metrics::stress(g, from_points(scaled))));
    Graph split = Graph::from_canonical(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(metrics::stress(split, from_points({{0, 0}, {1, 0}, {2, 0}, {3, 0}})), std::invalid_argument);
}

TEST_CASE("metrics agree with brute-force oracles on random instances") {
    std::mt19937_64 rng(2024);
    for (int instance = 0; instance < 30; ++instance) {
        const std::size_t n = 8 + instance;
        Graph g = oracle::random_connected(n, n / 2 + instance % 7, rng);
        auto pts = instance % 2 ? lattice_points(n, rng) : oracle::random_points(n, rng);
        auto layout = from_points(pts);
        CAPTURE(instance);
        CHECK(metrics::neighborhood_preservation(g, layout) ==
              doctest::Approx(oracle::neighborhood_preservation(g, pts)).epsilon(1e-12));
        CHECK(metrics::count_crossings(g, layout) == oracle::crossings(g, pts));
        bool distinct = true;
        for (std::size_t i = 0; i < n && distinct; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (pts[i] == pts[j]) distinct = false;
        if (distinct) {
            CHECK(metrics::stress(g, layout) == doctest::Approx(oracle::stress(g, pts)).epsilon(1e-9));
            CHECK(metrics::relative_neighborhood_graph(pts) == oracle::rng_graph(pts));
        }
    }
}

TEST_CASE("segment crossing predicate") {
    using metrics::segments_cross;
    CHECK(segments_cross({0, 0}, {2, 2}, {0, 2}, {2, 0}));
    CHECK_FALSE(segments_cross({0, 0}, {1, 1}, {1, 1}, {2, 0}));  // shared endpoint position
    CHECK_FALSE(segments_cross({0, 0}, {2, 0}, {1, 0}, {1, 1}));  // T-junction touches only
    CHECK(segments_cross({0, 0}, {2, 0}, {1, 0}, {3, 0}));        // collinear overlap
    CHECK_FALSE(segments_cross({0, 0}, {1, 0}, {1, 0}, {2, 0}));  // collinear, touching
    CHECK_FALSE(segments_cross({0, 0}, {1, 0}, {0, 1}, {1, 1}));  // parallel
    // Nearly parallel segments where a floating-point determinant is unreliable.
    CHECK(segments_cross({0, 0}, {1e8, 1}, {1, 0}, {1e8 - 1, 1}) ==
          oracle::open_segments_intersect({0, 0}, {1e8, 1}, {1, 0}, {1e8 - 1, 1}));
    CHECK(metrics::orientation({0, 0}, {1, 0}, {0, 1}) == 1);
    CHECK(metrics::orientation({0, 0}, {1, 0}, {0, -1}) == -1);
    CHECK(metrics::orientation({0, 0}, {1, 1}, {3, 3}) == 0);
}

TEST_CASE("crossings of K4 drawn as a square with diagonals") {
    Graph k4 = Graph::from_canonical(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(metrics::count_crossings(k4, from_points({{0, 0}, {1, 0}, {1, 1}, {0, 1}})) == 1);
    CHECK(metrics::count_crossings(k4, from_points({{0, 0}, {4, 0}, {2, 3}, {2, 1}})) == 0);
}

TEST_CASE("neighborhood preservation of a faithful drawing") {
    // Path drawn on a line: the 2-hop ball is exactly the nearest points.
    Graph path = Graph::from_canonical(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    auto line = from_points({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}});
    CHECK(metrics::neighborhood_preservation(path, line) == doctest::Approx(1.0));
}

TEST_CASE("shape metric") {
    // A path drawn on a line is its own RNG.
    Graph path = Graph::from_canonical(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(metrics::shape_metric(path, from_points({{0, 0}, {1, 0}, {2, 0}, {3, 0}})) == 1.0);
    auto shuffled = from_points({{0, 0}, {2, 0}, {1, 0}, {3, 0}});
    // RNG = {0-2, 2-1, 1-3}; shared with path edges {1-2}: 1 / 5.
    CHECK(metrics::shape_metric(path, shuffled) == doctest::Approx(0.2));
    // Coincident points do not crash and stay deterministic.
    auto stacked = from_points({{0, 0}, {0, 0}, {1, 0}, {1, 0}});
    const double s = metrics::shape_metric(path, stacked, metrics::ProximityVariant::RNG, 3);
    CHECK(s == metrics::shape_metric(path, stacked, metrics::ProximityVariant::RNG, 3));
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
    std::mt19937_64 rng(6);
    Graph g = oracle::random_connected(30, 20, rng);
    auto layout = from_points(oracle::random_points(30, rng));
    CHECK(metrics::shape_metric(g, layout, metrics::ProximityVariant::DRNG) >= 0.0);
}

TEST_CASE("improvement") {
    CHECK(metrics::improvement(100, 40, false) == doctest::Approx(0.6));
    CHECK(metrics::improvement(0.5, 0.6, true) == doctest::Approx(0.2));
    CHECK_THROWS_AS(metrics::improvement(0, 1, true), std::invalid_argument);
}

TEST_CASE("evaluate respects the selection") {
    Graph c4 = Graph::from_canonical(4, {{0, 1}, {0, 3}, {1, 2}, {2, 3}});
    auto square = from_points({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    metrics::MetricSelection only_stress{false, true, false, false};
    auto r = metrics::evaluate(c4, square, only_stress);
    CHECK(r.stress == doctest::Approx(0.022876383367174652));
    CHECK(r.crossings == 0);
    CHECK(r.neighborhood_preservation == 0.0);
}
