#include "gumap/metrics.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gumap/neighborhoods.hpp"
#include "gumap/rng.hpp"

namespace gumap::metrics {

namespace {

void require_matching(const Graph& g, const Layout& layout) {
    if (layout.size() != g.num_vertices()) {
        throw std::invalid_argument("layout does not match graph");
    }
}

double dist_sq(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

}  // namespace

// Neighborhood preservation ------------------------------------------------------

double neighborhood_preservation(const Graph& g, const Layout& layout, unsigned radius) {
    require_matching(g, layout);
    const std::size_t n = g.num_vertices();
    if (n == 0) {
        return 0.0;
    }
    std::vector<std::uint32_t> stamp(n, 0);
    std::vector<std::uint32_t> graph_mark(n, 0);
    std::vector<VertexId> frontier;
    std::vector<VertexId> next;
    std::vector<VertexId> ball;
    std::vector<std::pair<double, VertexId>> by_distance;
    by_distance.reserve(n);
    double total = 0.0;
    for (VertexId v = 0; v < n; ++v) {
        const std::uint32_t mark = v + 1;
        ball.clear();
        frontier.assign(1, v);
        stamp[v] = mark;
        for (unsigned level = 0; level < radius && !frontier.empty(); ++level) {
            next.clear();
            for (VertexId u : frontier) {
                for (VertexId w : g.neighbors(u)) {
                    if (stamp[w] != mark) {
                        stamp[w] = mark;
                        next.push_back(w);
                        ball.push_back(w);
                    }
                }
            }
            std::swap(frontier, next);
        }
        const std::size_t size = ball.size();
        if (size == 0) {
            continue;
        }
        for (VertexId w : ball) {
            graph_mark[w] = mark;
        }
        by_distance.clear();
        for (VertexId w = 0; w < n; ++w) {
            if (w != v) {
                by_distance.emplace_back(dist_sq(layout.coords[v], layout.coords[w]), w);
            }
        }
        std::nth_element(by_distance.begin(), by_distance.begin() + static_cast<std::ptrdiff_t>(size - 1),
                         by_distance.end());
        std::size_t shared = 0;
        for (std::size_t i = 0; i < size; ++i) {
            if (graph_mark[by_distance[i].second] == mark) {
                ++shared;
            }
        }
        // Both sets have `size` members.
        total += static_cast<double>(shared) / static_cast<double>(2 * size - shared);
    }
    return total / static_cast<double>(n);
}

// Stress ------------------------------------------------------------------------

namespace {

// Visits every ordered pair (i, j), i != j, as (hop distance, layout distance).
template <typename Visit>
void for_each_pair(const Graph& g, const Layout& layout, Visit&& visit) {
    const std::size_t n = g.num_vertices();
    std::vector<HopDistance> row(n);
    std::vector<VertexId> queue;
    queue.reserve(n);
    for (VertexId i = 0; i < n; ++i) {
        bfs_distances(g, i, row, queue);
        if (queue.size() != n) {
            throw std::invalid_argument("stress requires a connected graph");
        }
        for (VertexId j = 0; j < n; ++j) {
            if (j != i) {
                visit(static_cast<double>(row[j]), std::sqrt(dist_sq(layout.coords[i], layout.coords[j])));
            }
        }
    }
}

}  // namespace

double optimal_stress_scale(const Graph& g, const Layout& layout) {
    require_matching(g, layout);
    double num = 0.0;
    double den = 0.0;
    for_each_pair(g, layout, [&](double d, double e) {
        num += e / d;
        den += (e * e) / (d * d);
    });
    return den > 0.0 ? num / den : 1.0;
}

double stress(const Graph& g, const Layout& layout, const StressOptions& options) {
    require_matching(g, layout);
    const std::size_t n = g.num_vertices();
    if (n < 2) {
        return 0.0;
    }
    const double scale = options.optimal_scale ? optimal_stress_scale(g, layout) : 1.0;
    double total = 0.0;
    for_each_pair(g, layout, [&](double d, double e) {
        const double r = (d - scale * e) / d;
        total += r * r;
    });
    const double nd = static_cast<double>(n);
    return total / (nd * nd - nd);
}

// Crossings -------------------------------------------------------------------------

int orientation(Point a, Point b, Point c) {
    const double left = (b.x - a.x) * (c.y - a.y);
    const double right = (b.y - a.y) * (c.x - a.x);
    const double det = left - right;
    constexpr double kEps = std::numeric_limits<double>::epsilon() / 2.0;
    constexpr double kBound = (3.0 + 16.0 * kEps) * kEps;
    const double bound = kBound * (std::abs(left) + std::abs(right));
    if (det > bound) {
        return 1;
    }
    if (-det > bound) {
        return -1;
    }
    const mpq_class ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
    const mpq_class exact = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    return sgn(exact);
}

bool segments_cross(Point p1, Point p2, Point q1, Point q2) {
    if (p1 == p2 || q1 == q2) {
        return false;
    }
    const int o1 = orientation(p1, p2, q1);
    const int o2 = orientation(p1, p2, q2);
    if (o1 == 0 && o2 == 0) {
        // Collinear: compare along an axis on which the supporting line is injective.
        const bool use_x = p1.x != p2.x;
        auto key = [use_x](Point p) { return use_x ? p.x : p.y; };
        const double lo = std::max(std::min(key(p1), key(p2)), std::min(key(q1), key(q2)));
        const double hi = std::min(std::max(key(p1), key(p2)), std::max(key(q1), key(q2)));
        return lo < hi;
    }
    if (o1 * o2 >= 0) {
        return false;
    }
    const int o3 = orientation(q1, q2, p1);
    const int o4 = orientation(q1, q2, p2);
    return o3 * o4 < 0;
}

std::uint64_t count_crossings(const Graph& g, const Layout& layout) {
    require_matching(g, layout);
    struct Box {
        double min_x, max_x, min_y, max_y;
        std::size_t edge;
    };
    const auto& edges = g.edges();
    std::vector<Box> boxes;
    boxes.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Point a = layout.coords[edges[i].u];
        const Point b = layout.coords[edges[i].v];
        boxes.push_back({std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y), std::max(a.y, b.y), i});
    }
    std::sort(boxes.begin(), boxes.end(), [](const Box& l, const Box& r) {
        return l.min_x != r.min_x ? l.min_x < r.min_x : l.edge < r.edge;
    });

    std::uint64_t count = 0;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        const Box& bi = boxes[i];
        const Edge ei = edges[bi.edge];
        for (std::size_t j = i + 1; j < boxes.size() && boxes[j].min_x <= bi.max_x; ++j) {
            const Box& bj = boxes[j];
            if (bj.min_y > bi.max_y || bj.max_y < bi.min_y) {
                continue;
            }
            const Edge ej = edges[bj.edge];
            if (ei.u == ej.u || ei.u == ej.v || ei.v == ej.u || ei.v == ej.v) {
                continue;
            }
            if (segments_cross(layout.coords[ei.u], layout.coords[ei.v], layout.coords[ej.u], layout.coords[ej.v])) {
                ++count;
            }
        }
    }
    return count;
}

// Shape metric ------------------------------------------------------------------------

std::vector<Edge> relative_neighborhood_graph(const std::vector<Point>& points) {
    const std::size_t n = points.size();
    // Any RNG neighbor of u is among the nearest points of u inside one of
    // eight 45-degree cones: a closer point in the same cone is closer to both
    // ends. Candidates are then checked against every point.
    constexpr int kCones = 8;
    std::vector<Edge> candidates;
    std::array<double, kCones> best{};
    std::array<std::vector<VertexId>, kCones> nearest;
    for (VertexId u = 0; u < n; ++u) {
        best.fill(std::numeric_limits<double>::infinity());
        for (auto& list : nearest) {
            list.clear();
        }
        for (VertexId v = 0; v < n; ++v) {
            if (v == u) {
                continue;
            }
            const double dx = points[v].x - points[u].x;
            const double dy = points[v].y - points[u].y;
            const double d2 = dx * dx + dy * dy;
            int cone = static_cast<int>(std::floor((std::atan2(dy, dx) + M_PI) / (2.0 * M_PI / kCones)));
            cone = std::clamp(cone, 0, kCones - 1);
            if (d2 < best[cone]) {
                best[cone] = d2;
                nearest[cone].assign(1, v);
            } else if (d2 == best[cone]) {
                nearest[cone].push_back(v);
            }
        }
        for (const auto& list : nearest) {
            for (VertexId v : list) {
                candidates.push_back({std::min(u, v), std::max(u, v)});
            }
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<Edge> result;
    for (const auto& e : candidates) {
        const double duv = dist_sq(points[e.u], points[e.v]);
        bool empty = true;
        for (VertexId w = 0; w < n && empty; ++w) {
            if (w == e.u || w == e.v) {
                continue;
            }
            if (std::max(dist_sq(points[e.u], points[w]), dist_sq(points[e.v], points[w])) < duv) {
                empty = false;
            }
        }
        if (empty) {
            result.push_back(e);
        }
    }
    return result;
}

namespace {

std::vector<Point> separate_coincident(const std::vector<Point>& points, std::uint64_t seed) {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto less = [&](std::size_t a, std::size_t b) {
        return points[a].x != points[b].x ? points[a].x < points[b].x : points[a].y < points[b].y;
    };
    std::sort(order.begin(), order.end(), less);
    bool duplicates = false;
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (points[order[i]] == points[order[i - 1]]) {
            duplicates = true;
            break;
        }
    }
    if (!duplicates) {
        return points;
    }
    double extent = 0.0;
    for (const auto& p : points) {
        extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
    }
    const double amount = 1e-9 * std::max(extent, 1.0);
    Rng rng = derive_rng(seed, stream::kJitter);
    std::uniform_real_distribution<double> noise(-amount, amount);
    std::vector<Point> out = points;
    for (auto& p : out) {
        p.x += noise(rng);
        p.y += noise(rng);
    }
    return out;
}

// Mutual pairs where each endpoint is among the other's deg_G nearest points.
std::vector<Edge> mutual_degree_neighbors(const Graph& g, const std::vector<Point>& points) {
    const std::size_t n = points.size();
    std::vector<std::vector<VertexId>> nearest(n);
    std::vector<std::pair<double, VertexId>> by_distance;
    for (VertexId u = 0; u < n; ++u) {
        by_distance.clear();
        for (VertexId v = 0; v < n; ++v) {
            if (v != u) {
                by_distance.emplace_back(dist_sq(points[u], points[v]), v);
            }
        }
        const std::size_t k = std::min(g.degree(u), by_distance.size());
        std::partial_sort(by_distance.begin(), by_distance.begin() + static_cast<std::ptrdiff_t>(k),
                          by_distance.end());
        for (std::size_t i = 0; i < k; ++i) {
            nearest[u].push_back(by_distance[i].second);
        }
        std::sort(nearest[u].begin(), nearest[u].end());
    }
    std::vector<Edge> out;
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v : nearest[u]) {
            if (u < v && std::binary_search(nearest[v].begin(), nearest[v].end(), u)) {
                out.push_back({u, v});
            }
        }
    }
    return out;
}

}  // namespace

double shape_metric(const Graph& g, const Layout& layout, ProximityVariant variant, std::uint64_t seed) {
    require_matching(g, layout);
    const auto points = separate_coincident(layout.coords, seed);
    std::vector<Edge> proximity = relative_neighborhood_graph(points);
    if (variant == ProximityVariant::DRNG) {
        auto extra = mutual_degree_neighbors(g, points);
        proximity.insert(proximity.end(), extra.begin(), extra.end());
        std::sort(proximity.begin(), proximity.end());
        proximity.erase(std::unique(proximity.begin(), proximity.end()), proximity.end());
    }
    const auto& edges = g.edges();
    std::vector<Edge> shared;
    std::set_intersection(edges.begin(), edges.end(), proximity.begin(), proximity.end(), std::back_inserter(shared));
    const std::size_t unite = edges.size() + proximity.size() - shared.size();
    return unite == 0 ? 1.0 : static_cast<double>(shared.size()) / static_cast<double>(unite);
}

double improvement(double baseline, double candidate, bool higher_is_better) {
    if (!(baseline > 0.0)) {
        throw std::invalid_argument("improvement requires a positive baseline");
    }
    return higher_is_better ? (candidate - baseline) / baseline : (baseline - candidate) / baseline;
}

MetricReport evaluate(const Graph& g, const Layout& layout, const MetricSelection& selection) {
    MetricReport report;
    if (selection.neighborhood_preservation) {
        report.neighborhood_preservation = neighborhood_preservation(g, layout);
    }
    if (selection.stress) {
        report.stress = stress(g, layout);
    }
    if (selection.crossings) {
        report.crossings = count_crossings(g, layout);
    }
    if (selection.shape) {
        report.shape_jaccard = shape_metric(g, layout);
    }
    return report;
}

}  // namespace gumap::metrics
