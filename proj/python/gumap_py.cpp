#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "gumap/bench.hpp"
#include "gumap/io.hpp"
#include "gumap/layout.hpp"
#include "gumap/metrics.hpp"
#include "gumap/neighborhoods.hpp"
#include "gumap/sparsify.hpp"

namespace py = pybind11;
using namespace gumap;

namespace {

py::array_t<double> to_array(const Layout& layout) {
    py::array_t<double> out({static_cast<py::ssize_t>(layout.size()), py::ssize_t{2}});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < layout.size(); ++i) {
        view(i, 0) = layout.coords[i].x;
        view(i, 1) = layout.coords[i].y;
    }
    return out;
}

Layout from_array(const Graph& g, const py::array_t<double, py::array::c_style | py::array::forcecast>& xy) {
    if (xy.ndim() != 2 || xy.shape(1) != 2 || static_cast<std::size_t>(xy.shape(0)) != g.num_vertices()) {
        throw py::value_error("coordinates must have shape (n, 2)");
    }
    auto view = xy.unchecked<2>();
    Layout layout;
    layout.coords.resize(g.num_vertices());
    for (std::size_t i = 0; i < layout.size(); ++i) {
        layout.coords[i] = {view(i, 0), view(i, 1)};
    }
    return layout;
}

OptimizerConfig make_config(std::size_t k, std::size_t iterations, double sample_exponent, std::size_t negative,
                            std::uint64_t seed, double min_dist, double spread, double learning_rate) {
    OptimizerConfig cfg;
    cfg.k = k;
    cfg.iterations = iterations;
    cfg.sample_exponent = sample_exponent;
    cfg.negative_samples = negative;
    cfg.seed = seed;
    cfg.min_dist = min_dist;
    cfg.spread = spread;
    cfg.learning_rate = learning_rate;
    return cfg;
}

py::dict report_dict(const RunReport& r) {
    py::dict d;
    d["algorithm"] = to_string(r.algorithm);
    d["seed"] = r.seed;
    d["n"] = r.n;
    d["m"] = r.m;
    d["layout_edges"] = r.layout_edges;
    d["knn_edges"] = r.knn_edges;
    d["sparsify_ms"] = r.sparsify_ms;
    d["c0_ms"] = r.c0_ms;
    d["c1_ms"] = r.c1_ms;
    d["c2_ms"] = r.c2_ms;
    d["total_ms"] = r.total_ms;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Graph layouts with UMAP-style optimization";

    py::class_<Graph>(m, "Graph")
        .def_static(
            "from_edges",
            [](const std::vector<std::pair<std::string, std::string>>& edges, bool largest_component) {
                Graph g = build_graph(edges);
                return largest_component ? largest_connected_component(g) : g;
            },
            py::arg("edges"), py::arg("largest_component") = false,
            "Build from (label, label) pairs; labels are renumbered in numeric-then-lexicographic order.")
        .def_property_readonly("num_vertices", &Graph::num_vertices)
        .def_property_readonly("num_edges", &Graph::num_edges)
        .def_property_readonly("labels", &Graph::labels)
        .def_property_readonly("dropped_edges", &Graph::dropped_edges)
        .def("edges",
             [](const Graph& g) {
                 std::vector<std::pair<VertexId, VertexId>> out;
                 for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
                 return out;
             })
        .def("neighbors",
             [](const Graph& g, VertexId v) {
                 if (v >= g.num_vertices()) throw py::index_error("vertex out of range");
                 auto nb = g.neighbors(v);
                 return std::vector<VertexId>(nb.begin(), nb.end());
             })
        .def("is_connected", &Graph::is_connected)
        .def("__repr__", [](const Graph& g) {
            return "<Graph n=" + std::to_string(g.num_vertices()) + " m=" + std::to_string(g.num_edges()) + ">";
        });

    m.def(
        "read_graph",
        [](const std::filesystem::path& path, bool largest_component) {
            return io::read_graph(path, {largest_component});
        },
        py::arg("path"), py::arg("largest_component") = true, "Read an edge list or a Matrix Market file.");

    m.def(
        "synth_graph",
        [](const std::string& kind, std::size_t n, std::size_t m0, std::size_t degree, std::uint64_t seed) {
            SynthParams params;
            params.m0 = m0;
            params.degree = degree;
            return synth_graph(synth_kind_from_string(kind), n, params, seed);
        },
        py::arg("kind"), py::arg("n"), py::arg("m0") = 2, py::arg("degree") = 3, py::arg("seed") = 0);

    m.def(
        "layout",
        [](const Graph& g, const std::string& algo, std::size_t k, std::size_t iterations, double sample_exponent,
           std::size_t negative, std::uint64_t seed, double min_dist, double spread, double learning_rate) {
            auto cfg = make_config(k, iterations, sample_exponent, negative, seed, min_dist, spread, learning_rate);
            RunResult run;
            {
                py::gil_scoped_release release;
                run = run_algorithm(algorithm_from_string(algo), g, cfg);
            }
            return py::make_tuple(to_array(run.layout), report_dict(run.report));
        },
        py::arg("graph"), py::arg("algo") = "gumap", py::arg("k") = 15, py::arg("iterations") = 500,
        py::arg("sample_exponent") = 0.9, py::arg("negative_samples") = 5, py::arg("seed") = 0,
        py::arg("min_dist") = 0.1, py::arg("spread") = 1.0, py::arg("learning_rate") = 1.0,
        "Returns (coords of shape (n, 2), timing report).");

    m.def(
        "spectral_init", [](const Graph& g, std::uint64_t seed) { return to_array(spectral_init(g, seed)); },
        py::arg("graph"), py::arg("seed") = 0);

    m.def(
        "sparsify",
        [](const Graph& g, std::uint64_t seed) { return spectral_sparsify(g, seed); }, py::arg("graph"),
        py::arg("seed") = 0, "Keep min(m, ceil(n log2 n)) edges by effective resistance.");

    m.def(
        "effective_resistance", [](const Graph& g, std::uint64_t seed) { return effective_resistance(g, seed).values; },
        py::arg("graph"), py::arg("seed") = 0);

    m.def(
        "knn",
        [](const Graph& g, std::size_t k, std::uint64_t seed) {
            auto weighted = smooth_knn_weights(g.num_vertices(), partial_bfs(g, k, seed).knn, k);
            std::vector<std::tuple<VertexId, VertexId, double, double>> out;
            for (const auto& e : weighted.edges) out.emplace_back(e.u, e.v, e.distance, e.weight);
            return out;
        },
        py::arg("graph"), py::arg("k") = 15, py::arg("seed") = 0, "Symmetrized kNN edges as (i, j, d, h).");

    m.def(
        "metrics",
        [](const Graph& g, const py::array_t<double, py::array::c_style | py::array::forcecast>& xy) {
            auto r = metrics::evaluate(g, from_array(g, xy));
            py::dict d;
            d["np"] = r.neighborhood_preservation;
            d["stress"] = r.stress;
            d["crossings"] = r.crossings;
            d["shape"] = r.shape_jaccard;
            return d;
        },
        py::arg("graph"), py::arg("coords"));

    m.def(
        "fit_ab",
        [](double min_dist, double spread) {
            auto p = fit_ab(min_dist, spread);
            return py::make_tuple(p.a, p.b);
        },
        py::arg("min_dist") = 0.1, py::arg("spread") = 1.0);

    m.def(
        "write_layout_csv",
        [](const Graph& g, const py::array_t<double, py::array::c_style | py::array::forcecast>& xy,
           const std::filesystem::path& path) { io::write_layout_csv(g, from_array(g, xy), path); },
        py::arg("graph"), py::arg("coords"), py::arg("path"));

    m.def(
        "render_svg",
        [](const Graph& g, const py::array_t<double, py::array::c_style | py::array::forcecast>& xy) {
            return io::render_svg_string(g, from_array(g, xy));
        },
        py::arg("graph"), py::arg("coords"));
}
