#include "gumap/neighborhoods.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gumap/rng.hpp"

namespace gumap {

namespace {

// Picks `count` of `pool` uniformly at random. The pool must already be in a
// canonical order (ascending id) so both kNN routes consume the stream alike.
void choose_tied(std::vector<VertexId>& pool, std::size_t count, Rng& rng) {
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t j = i + uniform_below(rng, pool.size() - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
}

void sort_row(std::vector<Neighbor>& row) {
    std::sort(row.begin(), row.end(), [](const Neighbor& a, const Neighbor& b) {
        return a.distance != b.distance ? a.distance < b.distance : a.id < b.id;
    });
}

}  // namespace

void bfs_distances(const Graph& g, VertexId source, std::span<HopDistance> out, std::vector<VertexId>& queue) {
    std::fill(out.begin(), out.end(), kUnreachable);
    queue.clear();
    queue.push_back(source);
    out[source] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        VertexId v = queue[head];
        const HopDistance next = static_cast<HopDistance>(out[v] + 1);
        for (VertexId w : g.neighbors(v)) {
            if (out[w] == kUnreachable) {
                out[w] = next;
                queue.push_back(w);
            }
        }
    }
}

DistanceMatrix all_pairs_bfs(const Graph& g) {
    const std::size_t n = g.num_vertices();
    if (n >= kUnreachable) {
        throw std::invalid_argument("graph too large for a full distance matrix (n = " + std::to_string(n) + ")");
    }
    DistanceMatrix dist(n);
    std::vector<VertexId> queue;
    queue.reserve(n);
    for (VertexId s = 0; s < n; ++s) {
        bfs_distances(g, s, dist.row(s), queue);
    }
    return dist;
}

PartialBfsResult partial_bfs(const Graph& g, std::size_t k, std::uint64_t seed) {
    if (k < 1) {
        throw std::invalid_argument("k must be at least 1");
    }
    const std::size_t n = g.num_vertices();
    PartialBfsResult result;
    std::vector<std::size_t> offsets(n + 1, 0);
    std::vector<Neighbor> entries;
    entries.reserve(n * k);
    result.knn.reserve(n * k);

    // stamp[w] == v + 1 marks w as discovered by the traversal from v.
    std::vector<VertexId> stamp(n, 0);
    std::vector<VertexId> frontier;
    std::vector<VertexId> next;
    std::vector<Neighbor> row;
    for (VertexId v = 0; v < n; ++v) {
        const VertexId mark = v + 1;
        stamp[v] = mark;
        frontier.assign(1, v);
        row.clear();
        std::uint32_t level = 0;
        while (row.size() < k) {
            next.clear();
            for (VertexId u : frontier) {
                for (VertexId w : g.neighbors(u)) {
                    if (stamp[w] != mark) {
                        stamp[w] = mark;
                        next.push_back(w);
                    }
                }
            }
            if (next.empty()) {
                ++result.short_rows;
                break;
            }
            ++level;
            const std::size_t room = k - row.size();
            if (next.size() > room) {
                std::sort(next.begin(), next.end());
                Rng rng = derive_rng(seed, stream::kKnnTies + v);
                choose_tied(next, room, rng);
            }
            for (VertexId w : next) {
                row.push_back({w, level});
            }
            std::swap(frontier, next);
        }
        sort_row(row);
        for (const auto& nb : row) {
            entries.push_back(nb);
            result.knn.push_back({v, nb.id, static_cast<double>(nb.distance)});
        }
        offsets[v + 1] = entries.size();
    }
    result.distances = SparseDistanceSet(SparseDistanceSet::Mode::Partial, std::move(offsets), std::move(entries));
    return result;
}

KnnSelection knn_from_full_distances(const DistanceMatrix& distances, std::size_t k, std::uint64_t seed) {
    if (k < 1) {
        throw std::invalid_argument("k must be at least 1");
    }
    const std::size_t n = distances.size();
    KnnSelection result;
    result.knn.reserve(n * k);
    std::vector<std::size_t> histogram;
    std::vector<VertexId> tied;
    std::vector<Neighbor> row;
    for (VertexId v = 0; v < n; ++v) {
        auto dist = distances.row(v);
        histogram.assign(1, 0);
        for (VertexId j = 0; j < n; ++j) {
            const HopDistance d = dist[j];
            if (j == v || d == kUnreachable) {
                continue;
            }
            if (d >= histogram.size()) {
                histogram.resize(d + 1, 0);
            }
            ++histogram[d];
        }
        // Smallest level at which the cumulative count reaches k.
        std::size_t below = 0;
        std::size_t cut = histogram.size();
        for (std::size_t d = 1; d < histogram.size(); ++d) {
            if (below + histogram[d] >= k) {
                cut = d;
                break;
            }
            below += histogram[d];
        }
        row.clear();
        tied.clear();
        for (VertexId j = 0; j < n; ++j) {
            const HopDistance d = dist[j];
            if (j == v || d == kUnreachable) {
                continue;
            }
            if (d < cut) {
                row.push_back({j, d});
            } else if (d == cut) {
                tied.push_back(j);
            }
        }
        if (cut == histogram.size()) {
            ++result.short_rows;
        } else {
            const std::size_t room = k - row.size();
            if (tied.size() > room) {
                Rng rng = derive_rng(seed, stream::kKnnTies + v);
                choose_tied(tied, room, rng);
            }
            for (VertexId j : tied) {
                row.push_back({j, static_cast<std::uint32_t>(cut)});
            }
        }
        sort_row(row);
        for (const auto& nb : row) {
            result.knn.push_back({v, nb.id, static_cast<double>(nb.distance)});
        }
    }
    return result;
}

double solve_sigma(std::span<const double> distances, double rho, double target, const SmoothKnnOptions& options,
                   bool* clamped) {
    auto mass = [&](double sigma) {
        double sum = 0.0;
        for (double d : distances) {
            sum += std::exp(-(d - rho) / sigma);
        }
        return sum;
    };
    auto set_clamped = [clamped](bool value) {
        if (clamped) {
            *clamped = value;
        }
    };

    const bool all_equal =
        std::all_of(distances.begin(), distances.end(), [rho](double d) { return d == rho; });
    if (all_equal) {
        set_clamped(true);
        return options.sigma_max;
    }
    // mass() increases with sigma, from the tie count at rho up to k.
    if (mass(options.sigma_min) >= target) {
        set_clamped(true);
        return options.sigma_min;
    }
    if (mass(options.sigma_max) <= target) {
        set_clamped(true);
        return options.sigma_max;
    }
    set_clamped(false);
    double lo = options.sigma_min;
    double hi = options.sigma_max;
    double mid = 0.5 * (lo + hi);
    for (std::size_t it = 0; it < options.iterations; ++it) {
        mid = 0.5 * (lo + hi);
        const double value = mass(mid);
        if (std::abs(value - target) < options.tolerance) {
            break;
        }
        if (value > target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return mid;
}

KnnGraph smooth_knn_weights(std::size_t num_vertices, const std::vector<KnnEdge>& knn, std::size_t k,
                            const SmoothKnnOptions& options) {
    if (k < 1) {
        throw std::invalid_argument("k must be at least 1");
    }
    KnnGraph out;
    out.num_vertices = num_vertices;
    out.directed = knn;
    std::sort(out.directed.begin(), out.directed.end(), [](const KnnEdge& a, const KnnEdge& b) {
        return a.from != b.from ? a.from < b.from : (a.to != b.to ? a.to < b.to : a.distance < b.distance);
    });
    out.directed.erase(std::unique(out.directed.begin(), out.directed.end(),
                                   [](const KnnEdge& a, const KnnEdge& b) { return a.from == b.from && a.to == b.to; }),
                       out.directed.end());
    for (const auto& e : out.directed) {
        if (e.from >= num_vertices || e.to >= num_vertices || e.from == e.to) {
            throw std::invalid_argument("invalid kNN edge");
        }
    }

    out.rho.assign(num_vertices, 0.0);
    out.sigma.assign(num_vertices, 1.0);
    out.sigma_clamped.assign(num_vertices, 0);
    out.directed_weight.assign(out.directed.size(), 0.0);
    const double target = std::log2(static_cast<double>(k));
    std::vector<double> row;
    std::size_t begin = 0;
    for (VertexId v = 0; v < num_vertices; ++v) {
        std::size_t end = begin;
        while (end < out.directed.size() && out.directed[end].from == v) {
            ++end;
        }
        if (end == begin) {
            throw std::invalid_argument("vertex " + std::to_string(v) + " has no kNN edges");
        }
        row.clear();
        for (std::size_t i = begin; i < end; ++i) {
            row.push_back(out.directed[i].distance);
        }
        const double rho = *std::min_element(row.begin(), row.end());
        bool clamped = false;
        const double sigma = solve_sigma(row, rho, target, options, &clamped);
        out.rho[v] = rho;
        out.sigma[v] = sigma;
        out.sigma_clamped[v] = clamped ? 1 : 0;
        for (std::size_t i = begin; i < end; ++i) {
            out.directed_weight[i] = std::exp(-(out.directed[i].distance - rho) / sigma);
        }
        begin = end;
    }

    // Fuzzy union over both directions of each pair.
    struct Half {
        VertexId u, v;
        double distance, weight;
    };
    std::vector<Half> halves;
    halves.reserve(out.directed.size());
    for (std::size_t i = 0; i < out.directed.size(); ++i) {
        const auto& e = out.directed[i];
        halves.push_back({std::min(e.from, e.to), std::max(e.from, e.to), e.distance, out.directed_weight[i]});
    }
    std::sort(halves.begin(), halves.end(),
              [](const Half& a, const Half& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
    for (std::size_t i = 0; i < halves.size();) {
        double weight = halves[i].weight;
        double distance = halves[i].distance;
        std::size_t j = i + 1;
        if (j < halves.size() && halves[j].u == halves[i].u && halves[j].v == halves[i].v) {
            weight = fuzzy_union(weight, halves[j].weight);
            distance = std::min(distance, halves[j].distance);
            ++j;
        }
        if (weight > 0.0) {
            out.edges.push_back({halves[i].u, halves[i].v, distance, std::min(weight, 1.0)});
        }
        i = j;
    }
    return out;
}

}  // namespace gumap
