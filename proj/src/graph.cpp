#include "gumap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string_view>

#include "gumap/rng.hpp"

namespace gumap {

namespace {

bool is_unsigned_integer(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string_view strip_leading_zeros(std::string_view s) {
    auto pos = s.find_first_not_of('0');
    return pos == std::string_view::npos ? s.substr(s.size() - 1) : s.substr(pos);
}

}  // namespace

bool label_less(const std::string& a, const std::string& b) {
    const bool na = is_unsigned_integer(a);
    const bool nb = is_unsigned_integer(b);
    if (na != nb) {
        return na;
    }
    if (!na) {
        return a < b;
    }
    auto sa = strip_leading_zeros(a);
    auto sb = strip_leading_zeros(b);
    if (sa.size() != sb.size()) {
        return sa.size() < sb.size();
    }
    if (sa != sb) {
        return sa < sb;
    }
    return a < b;  // "007" vs "7": keep distinct labels strictly ordered
}

Graph Graph::from_canonical(std::size_t n, std::vector<Edge> edges, std::vector<std::string> labels) {
    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        if (e.u >= e.v || e.v >= n || (i > 0 && !(edges[i - 1] < e))) {
            throw std::invalid_argument("edge list is not canonical");
        }
        ++g.offsets_[e.u + 1];
        ++g.offsets_[e.v + 1];
    }
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.adjacency_.resize(2 * edges.size());
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    // Canonical order makes each list come out sorted without a second pass
    // for the u-side; the v-side needs sorting.
    for (const auto& e : edges) {
        g.adjacency_[fill[e.u]++] = e.v;
        g.adjacency_[fill[e.v]++] = e.u;
    }
    for (std::size_t v = 0; v < n; ++v) {
        std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
                  g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
    }
    g.edges_ = std::move(edges);
    if (labels.empty()) {
        labels.reserve(n);
        for (std::size_t v = 0; v < n; ++v) {
            labels.push_back(std::to_string(v));
        }
    }
    if (labels.size() != n) {
        throw std::invalid_argument("label count does not match vertex count");
    }
    g.labels_ = std::move(labels);
    return g;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

bool Graph::is_connected() const {
    if (num_vertices() == 0) {
        return true;
    }
    auto comp = connected_components(*this);
    return std::all_of(comp.begin(), comp.end(), [](std::uint32_t c) { return c == 0; });
}

Graph build_graph(const std::vector<std::pair<std::string, std::string>>& edge_pairs) {
    std::vector<std::string> labels;
    labels.reserve(edge_pairs.size() * 2);
    for (const auto& [a, b] : edge_pairs) {
        labels.push_back(a);
        labels.push_back(b);
    }
    std::sort(labels.begin(), labels.end(), label_less);
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

    auto id_of = [&labels](const std::string& s) {
        return static_cast<VertexId>(std::lower_bound(labels.begin(), labels.end(), s, label_less) - labels.begin());
    };

    std::vector<Edge> edges;
    edges.reserve(edge_pairs.size());
    std::size_t dropped = 0;
    for (const auto& [a, b] : edge_pairs) {
        VertexId u = id_of(a);
        VertexId v = id_of(b);
        if (u == v) {
            ++dropped;
            continue;
        }
        edges.push_back({std::min(u, v), std::max(u, v)});
    }
    std::sort(edges.begin(), edges.end());
    auto last = std::unique(edges.begin(), edges.end());
    dropped += static_cast<std::size_t>(edges.end() - last);
    edges.erase(last, edges.end());
    if (edges.empty()) {
        throw std::invalid_argument("empty graph");
    }

    // Labels that only appeared on self-loops are not vertices of the graph.
    std::vector<char> used(labels.size(), 0);
    for (const auto& e : edges) {
        used[e.u] = used[e.v] = 1;
    }
    std::vector<VertexId> remap(labels.size());
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (used[i]) {
            remap[i] = static_cast<VertexId>(kept.size());
            kept.push_back(std::move(labels[i]));
        }
    }
    for (auto& e : edges) {
        e = {remap[e.u], remap[e.v]};
    }

    const std::size_t n = kept.size();
    Graph g = Graph::from_canonical(n, std::move(edges), std::move(kept));
    g.dropped_ = dropped;
    return g;
}

Graph build_graph(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& edge_pairs) {
    std::vector<std::pair<std::string, std::string>> named;
    named.reserve(edge_pairs.size());
    for (const auto& [a, b] : edge_pairs) {
        named.emplace_back(std::to_string(a), std::to_string(b));
    }
    return build_graph(named);
}

std::vector<std::uint32_t> connected_components(const Graph& g) {
    const std::size_t n = g.num_vertices();
    constexpr auto kUnset = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> comp(n, kUnset);
    std::vector<VertexId> stack;
    std::uint32_t next = 0;
    for (VertexId s = 0; s < n; ++s) {
        if (comp[s] != kUnset) {
            continue;
        }
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (VertexId w : g.neighbors(v)) {
                if (comp[w] == kUnset) {
                    comp[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    return comp;
}

Graph largest_connected_component(const Graph& g) {
    const std::size_t n = g.num_vertices();
    if (n == 0) {
        return g;
    }
    auto comp = connected_components(g);
    std::uint32_t num_comp = *std::max_element(comp.begin(), comp.end()) + 1;
    if (num_comp == 1) {
        return g;
    }
    std::vector<std::size_t> sizes(num_comp, 0);
    for (auto c : comp) {
        ++sizes[c];
    }
    // Components are numbered by smallest member, so the first maximum wins ties.
    auto best = static_cast<std::uint32_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

    std::vector<VertexId> remap(n, 0);
    std::vector<std::string> labels;
    for (VertexId v = 0; v < n; ++v) {
        if (comp[v] == best) {
            remap[v] = static_cast<VertexId>(labels.size());
            labels.push_back(g.label(v));
        }
    }
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
        if (comp[e.u] == best) {
            edges.push_back({remap[e.u], remap[e.v]});
        }
    }
    const std::size_t kept_n = labels.size();
    return Graph::from_canonical(kept_n, std::move(edges), std::move(labels));
}

Graph with_edges(const Graph& g, std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end());
    return Graph::from_canonical(g.num_vertices(), std::move(edges), g.labels());
}

const char* to_string(AlgorithmTag tag) {
    switch (tag) {
        case AlgorithmTag::GUMAP: return "gumap";
        case AlgorithmTag::SS: return "ss";
        case AlgorithmTag::SL: return "sl";
        case AlgorithmTag::SSSL: return "sssl";
        case AlgorithmTag::SPECTRAL_INIT: return "spectral";
        case AlgorithmTag::RANDOM: return "random";
    }
    return "unknown";
}

AlgorithmTag algorithm_from_string(const std::string& name) {
    for (auto tag : {AlgorithmTag::GUMAP, AlgorithmTag::SS, AlgorithmTag::SL, AlgorithmTag::SSSL,
                     AlgorithmTag::SPECTRAL_INIT, AlgorithmTag::RANDOM}) {
        if (name == to_string(tag)) {
            return tag;
        }
    }
    throw std::invalid_argument("unknown algorithm: " + name);
}

bool Layout::all_finite() const {
    return std::all_of(coords.begin(), coords.end(),
                       [](const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); });
}

Layout random_layout(std::size_t n, std::uint64_t seed, double side) {
    Layout layout;
    layout.algorithm = AlgorithmTag::RANDOM;
    layout.seed = seed;
    Rng rng(splitmix64(seed));
    layout.coords.resize(n);
    for (auto& p : layout.coords) {
        p.x = side * uniform01(rng);
        p.y = side * uniform01(rng);
    }
    return layout;
}

}  // namespace gumap
