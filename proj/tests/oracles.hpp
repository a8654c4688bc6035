// Brute-force reference implementations used only by tests. Each one is
// written directly from the defining formula and shares no code path with
// the library routine it checks.
#pragma once

#include <gmpxx.h>

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <limits>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "gumap/graph.hpp"

namespace oracle {

using gumap::Edge;
using gumap::Graph;
using gumap::Point;
using gumap::VertexId;

inline constexpr int kInf = std::numeric_limits<int>::max() / 4;

/// Floyd-Warshall on unit weights.
inline std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
    const std::size_t n = g.num_vertices();
    std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
    for (std::size_t i = 0; i < n; ++i) {
        d[i][i] = 0;
    }
    for (const auto& e : g.edges()) {
        d[e.u][e.v] = d[e.v][e.u] = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (d[i][k] + d[k][j] < d[i][j]) {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    return d;
}

/// Effective resistances from the Moore-Penrose pseudoinverse of the dense Laplacian.
inline std::vector<double> resistances_pinv(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.num_vertices());
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : g.edges()) {
        lap(e.u, e.u) += 1;
        lap(e.v, e.v) += 1;
        lap(e.u, e.v) -= 1;
        lap(e.v, e.u) -= 1;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lap);
    Eigen::VectorXd inv = eig.eigenvalues();
    for (Eigen::Index i = 0; i < n; ++i) {
        inv[i] = std::abs(inv[i]) > 1e-9 ? 1.0 / inv[i] : 0.0;
    }
    Eigen::MatrixXd pinv = eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
    std::vector<double> r;
    for (const auto& e : g.edges()) {
        r.push_back(pinv(e.u, e.u) + pinv(e.v, e.v) - 2 * pinv(e.u, e.v));
    }
    return r;
}

/// Mean Jaccard of r-hop ball against equally many nearest points, with the
/// geometric ranking done by a full sort on (distance, id).
inline double neighborhood_preservation(const Graph& g, const std::vector<Point>& x, int r = 2) {
    const auto d = floyd_warshall(g);
    const std::size_t n = g.num_vertices();
    double total = 0;
    for (std::size_t v = 0; v < n; ++v) {
        std::set<std::size_t> graph_ball;
        for (std::size_t w = 0; w < n; ++w) {
            if (w != v && d[v][w] <= r) {
                graph_ball.insert(w);
            }
        }
        std::vector<std::pair<double, std::size_t>> ranked;
        for (std::size_t w = 0; w < n; ++w) {
            if (w != v) {
                const double dx = x[v].x - x[w].x, dy = x[v].y - x[w].y;
                ranked.emplace_back(dx * dx + dy * dy, w);
            }
        }
        std::sort(ranked.begin(), ranked.end());
        std::set<std::size_t> drawn;
        for (std::size_t i = 0; i < graph_ball.size(); ++i) {
            drawn.insert(ranked[i].second);
        }
        std::set<std::size_t> inter, uni;
        std::set_intersection(graph_ball.begin(), graph_ball.end(), drawn.begin(), drawn.end(),
                              std::inserter(inter, inter.begin()));
        std::set_union(graph_ball.begin(), graph_ball.end(), drawn.begin(), drawn.end(),
                       std::inserter(uni, uni.begin()));
        if (!uni.empty()) {
            total += static_cast<double>(inter.size()) / static_cast<double>(uni.size());
        }
    }
    return total / static_cast<double>(n);
}

/// Aggregated stress after optimal uniform scaling, straight from the sums.
inline double stress(const Graph& g, const std::vector<Point>& x) {
    const auto d = floyd_warshall(g);
    const std::size_t n = g.num_vertices();
    long double num = 0, den = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const long double e = std::hypot(x[i].x - x[j].x, x[i].y - x[j].y);
            num += e / d[i][j];
            den += e * e / (static_cast<long double>(d[i][j]) * d[i][j]);
        }
    }
    const long double s = den > 0 ? num / den : 1;
    long double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const long double e = std::hypot(x[i].x - x[j].x, x[i].y - x[j].y);
            const long double t = (d[i][j] - s * e) / d[i][j];
            total += t * t;
        }
    }
    return static_cast<double>(total / (static_cast<long double>(n) * n - n));
}

inline int sign(const mpq_class& q) { return sgn(q); }

/// Open-segment intersection in exact rational arithmetic, by solving for the
/// intersection parameters rather than via orientation tests.
inline bool open_segments_intersect(Point a, Point b, Point c, Point d) {
    const mpq_class ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y), dx(d.x), dy(d.y);
    const mpq_class rx = bx - ax, ry = by - ay, sx = dx - cx, sy = dy - cy;
    if ((rx == 0 && ry == 0) || (sx == 0 && sy == 0)) {
        return false;
    }
    const mpq_class denom = rx * sy - ry * sx;
    const mpq_class qpx = cx - ax, qpy = cy - ay;
    if (denom != 0) {
        const mpq_class t = (qpx * sy - qpy * sx) / denom;
        const mpq_class u = (qpx * ry - qpy * rx) / denom;
        return t > 0 && t < 1 && u > 0 && u < 1;
    }
    if (qpx * ry - qpy * rx != 0) {
        return false;  // parallel, not collinear
    }
    // Collinear: parameters of c and d along a -> b.
    const mpq_class rr = rx * rx + ry * ry;
    mpq_class t0 = (qpx * rx + qpy * ry) / rr;
    mpq_class t1 = ((dx - ax) * rx + (dy - ay) * ry) / rr;
    if (t0 > t1) std::swap(t0, t1);
    const mpq_class lo = t0 > 0 ? t0 : mpq_class(0);
    const mpq_class hi = t1 < 1 ? t1 : mpq_class(1);
    return lo < hi;
}

inline std::uint64_t crossings(const Graph& g, const std::vector<Point>& x) {
    std::uint64_t count = 0;
    const auto& e = g.edges();
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = i + 1; j < e.size(); ++j) {
            if (e[i].u == e[j].u || e[i].u == e[j].v || e[i].v == e[j].u || e[i].v == e[j].v) continue;
            if (open_segments_intersect(x[e[i].u], x[e[i].v], x[e[j].u], x[e[j].v])) ++count;
        }
    }
    return count;
}

/// O(n^3) relative neighborhood graph.
inline std::vector<Edge> rng_graph(const std::vector<Point>& x) {
    auto d2 = [&](std::size_t a, std::size_t b) {
        const double dx = x[a].x - x[b].x, dy = x[a].y - x[b].y;
        return dx * dx + dy * dy;
    };
    std::vector<Edge> out;
    for (std::size_t u = 0; u < x.size(); ++u) {
        for (std::size_t v = u + 1; v < x.size(); ++v) {
            bool keep = true;
            for (std::size_t w = 0; w < x.size() && keep; ++w) {
                if (w != u && w != v && std::max(d2(u, w), d2(v, w)) < d2(u, v)) keep = false;
            }
            if (keep) out.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v)});
        }
    }
    return out;
}

/// Nelder-Mead on the curve-fit sum of squares, independent of the
/// library's Levenberg-Marquardt.
inline std::pair<double, double> fit_ab(double min_dist, double spread) {
    std::vector<double> xs, ys;
    for (int i = 0; i < 300; ++i) {
        const double x = 3.0 * spread * i / 299.0;
        xs.push_back(x);
        ys.push_back(x < min_dist ? 1.0 : std::exp(-(x - min_dist) / spread));
    }
    auto f = [&](const std::array<double, 2>& p) {
        if (p[0] <= 0 || p[1] <= 0) return 1e300;
        double s = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double r = 1.0 / (1.0 + p[0] * std::pow(xs[i], 2 * p[1])) - ys[i];
            s += r * r;
        }
        return s;
    };
    std::array<std::array<double, 2>, 3> simplex{{{1.0, 1.0}, {1.5, 1.0}, {1.0, 1.5}}};
    for (int it = 0; it < 20000; ++it) {
        std::sort(simplex.begin(), simplex.end(), [&](auto& a, auto& b) { return f(a) < f(b); });
        std::array<double, 2> c{(simplex[0][0] + simplex[1][0]) / 2, (simplex[0][1] + simplex[1][1]) / 2};
        auto lerp = [&](double t) {
            return std::array<double, 2>{c[0] + t * (simplex[2][0] - c[0]), c[1] + t * (simplex[2][1] - c[1])};
        };
        auto refl = lerp(-1.0);
        if (f(refl) < f(simplex[0])) {
            auto exp = lerp(-2.0);
            simplex[2] = f(exp) < f(refl) ? exp : refl;
        } else if (f(refl) < f(simplex[1])) {
            simplex[2] = refl;
        } else {
            auto con = lerp(0.5);
            if (f(con) < f(simplex[2])) {
                simplex[2] = con;
            } else {
                for (int k = 1; k < 3; ++k) {
                    simplex[k] = {(simplex[k][0] + simplex[0][0]) / 2, (simplex[k][1] + simplex[0][1]) / 2};
                }
            }
        }
    }
    std::sort(simplex.begin(), simplex.end(), [&](auto& a, auto& b) { return f(a) < f(b); });
    return {simplex[0][0], simplex[0][1]};
}

/// Random connected graph: a random spanning tree plus extra random edges.
inline Graph random_connected(std::size_t n, std::size_t extra, std::mt19937_64& rng) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    for (std::size_t v = 1; v < n; ++v) {
        pairs.emplace_back(v, std::uniform_int_distribution<std::size_t>(0, v - 1)(rng));
    }
    for (std::size_t i = 0; i < extra; ++i) {
        pairs.emplace_back(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng),
                           std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
    }
    return gumap::build_graph(pairs);
}

inline std::vector<Point> random_points(std::size_t n, std::mt19937_64& rng, double side = 10.0) {
    std::uniform_real_distribution<double> u(0.0, side);
    std::vector<Point> pts(n);
    for (auto& p : pts) {
        p = {u(rng), u(rng)};
    }
    return pts;
}

}  // namespace oracle
