#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "gumap/bench.hpp"
#include "gumap/rng.hpp"

namespace gumap {

namespace {

std::uint64_t pair_key(VertexId a, VertexId b) {
    if (a > b) {
        std::swap(a, b);
    }
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

Graph from_edge_set(std::size_t n, std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end());
    return Graph::from_canonical(n, std::move(edges));
}

Graph grid(std::size_t n) {
    const auto width = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        if ((i % width) + 1 < width && i + 1 < n) {
            edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 1)});
        }
        if (i + width < n) {
            edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + width)});
        }
    }
    return from_edge_set(n, std::move(edges));
}

Graph scale_free(std::size_t n, std::size_t m0, Rng& rng) {
    if (m0 < 1 || n <= m0 + 1) {
        throw std::invalid_argument("scale_free needs m0 >= 1 and n > m0 + 1");
    }
    std::vector<Edge> edges;
    std::vector<VertexId> endpoints;  // each vertex once per incident edge
    for (VertexId u = 0; u <= m0; ++u) {
        for (VertexId v = u + 1; v <= m0; ++v) {
            edges.push_back({u, v});
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    }
    std::vector<VertexId> targets;
    for (auto v = static_cast<VertexId>(m0 + 1); v < n; ++v) {
        targets.clear();
        while (targets.size() < m0) {
            VertexId t = endpoints[uniform_below(rng, endpoints.size())];
            if (std::find(targets.begin(), targets.end(), t) == targets.end()) {
                targets.push_back(t);
            }
        }
        for (VertexId t : targets) {
            edges.push_back({t, v});
            endpoints.push_back(t);
            endpoints.push_back(v);
        }
    }
    return from_edge_set(n, std::move(edges));
}

Graph random_regular(std::size_t n, std::size_t d, Rng& rng) {
    if (d < 1 || d >= n || (n * d) % 2 != 0) {
        throw std::invalid_argument("random_regular needs 1 <= d < n and n*d even");
    }
    constexpr int kAttempts = 200;
    std::vector<VertexId> points;
    std::unordered_set<std::uint64_t> seen;
    std::vector<Edge> edges;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        points.clear();
        for (VertexId v = 0; v < n; ++v) {
            points.insert(points.end(), d, v);
        }
        seen.clear();
        edges.clear();
        std::size_t failures = 0;
        bool stuck = false;
        while (!points.empty()) {
            const std::size_t i = uniform_below(rng, points.size());
            std::size_t j = uniform_below(rng, points.size() - 1);
            if (j >= i) {
                ++j;
            }
            const VertexId a = points[i];
            const VertexId b = points[j];
            if (a == b || seen.count(pair_key(a, b))) {
                if (++failures > 50 * points.size() + 100) {
                    stuck = true;
                    break;
                }
                continue;
            }
            failures = 0;
            seen.insert(pair_key(a, b));
            edges.push_back({std::min(a, b), std::max(a, b)});
            // Remove the larger index first so the smaller stays valid.
            for (std::size_t idx : {std::max(i, j), std::min(i, j)}) {
                points[idx] = points.back();
                points.pop_back();
            }
        }
        if (stuck) {
            continue;
        }
        Graph g = from_edge_set(n, edges);
        if (g.is_connected()) {
            return g;
        }
    }
    throw std::runtime_error("random_regular: no connected simple graph after retries");
}

}  // namespace

SynthKind synth_kind_from_string(const std::string& name) {
    if (name == "grid") return SynthKind::Grid;
    if (name == "scale_free") return SynthKind::ScaleFree;
    if (name == "random_regular") return SynthKind::RandomRegular;
    throw std::invalid_argument("unknown graph kind: " + name);
}

const char* to_string(SynthKind kind) {
    switch (kind) {
        case SynthKind::Grid: return "grid";
        case SynthKind::ScaleFree: return "scale_free";
        case SynthKind::RandomRegular: return "random_regular";
    }
    return "unknown";
}

Graph synth_graph(SynthKind kind, std::size_t n, const SynthParams& params, std::uint64_t seed) {
    if (n < 3) {
        throw std::invalid_argument("synthetic graphs need n >= 3");
    }
    Rng rng(splitmix64(seed));
    switch (kind) {
        case SynthKind::Grid: return grid(n);
        case SynthKind::ScaleFree: return scale_free(n, params.m0, rng);
        case SynthKind::RandomRegular: return random_regular(n, params.degree, rng);
    }
    throw std::invalid_argument("unknown graph kind");
}

}  // namespace gumap
