// gumap command-line front end.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include "gumap/bench.hpp"
#include "gumap/io.hpp"
#include "gumap/layout.hpp"
#include "gumap/metrics.hpp"
#include "gumap/neighborhoods.hpp"
#include "gumap/sparsify.hpp"

namespace fs = std::filesystem;
using namespace gumap;

namespace {

constexpr int kUsageError = 2;

struct OptimizerFlags {
    std::size_t k = 15;
    std::size_t iterations = 500;
    double sample_exponent = 0.9;
    std::size_t negative_samples = 5;
    std::uint64_t seed = 0;
    double min_dist = 0.1;
    double spread = 1.0;
    double learning_rate = 1.0;

    void add_to(CLI::App& app) {
        app.add_option("--k", k, "Nearest neighbors per vertex")->capture_default_str()->check(CLI::PositiveNumber);
        app.add_option("--iters", iterations, "Optimizer iterations")->capture_default_str();
        app.add_option("--samp-exp", sample_exponent, "Edge sample exponent in (0, 1]")
            ->capture_default_str()
            ->check(CLI::Range(std::numeric_limits<double>::min(), 1.0));
        app.add_option("--neg", negative_samples, "Negative samples per endpoint")->capture_default_str();
        app.add_option("--seed", seed, "Base random seed")->capture_default_str();
        app.add_option("--min-dist", min_dist, "Curve min_dist")->capture_default_str();
        app.add_option("--spread", spread, "Curve spread")->capture_default_str()->check(CLI::PositiveNumber);
        app.add_option("--lr", learning_rate, "Initial learning rate")->capture_default_str();
    }

    OptimizerConfig config() const {
        OptimizerConfig cfg;
        cfg.k = k;
        cfg.iterations = iterations;
        cfg.sample_exponent = sample_exponent;
        cfg.negative_samples = negative_samples;
        cfg.seed = seed;
        cfg.min_dist = min_dist;
        cfg.spread = spread;
        cfg.learning_rate = learning_rate;
        return cfg;
    }
};

io::ReadOptions read_options(bool keep_disconnected) {
    io::ReadOptions options;
    options.largest_component = !keep_disconnected;
    return options;
}

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

fs::path default_output(const fs::path& input, const std::string& suffix) {
    return input.parent_path() / (input.stem().string() + suffix);
}

// Benchmark suite file: one graph per line, "path [iters=N] [k=N]".
std::vector<BenchGraph> read_suite_file(const fs::path& path, bool keep_disconnected) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::vector<BenchGraph> graphs;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream tokens(line);
        std::string file;
        if (!(tokens >> file) || file[0] == '#') {
            continue;
        }
        fs::path graph_path = fs::path(file).is_absolute() ? fs::path(file) : path.parent_path() / file;
        BenchGraph entry{graph_path.stem().string(), io::read_graph(graph_path, read_options(keep_disconnected)),
                         std::nullopt, std::nullopt};
        std::string kv;
        while (tokens >> kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) {
                throw std::runtime_error(path.string() + ": expected key=value, got '" + kv + "'");
            }
            auto key = kv.substr(0, eq);
            auto value = std::stoul(kv.substr(eq + 1));
            if (key == "iters") {
                entry.iterations = value;
            } else if (key == "k") {
                entry.k = value;
            } else {
                throw std::runtime_error(path.string() + ": unknown override '" + key + "'");
            }
        }
        graphs.push_back(std::move(entry));
    }
    return graphs;
}

// "kind:n" or "kind:n:param" where param is m0 or the degree.
BenchGraph synth_spec(const std::string& spec, std::uint64_t seed) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ':');) {
        parts.push_back(part);
    }
    if (parts.size() < 2 || parts.size() > 3) {
        throw CLI::ValidationError("--synth", "expected kind:n[:param], got '" + spec + "'");
    }
    SynthKind kind = synth_kind_from_string(parts[0]);
    SynthParams params;
    if (parts.size() == 3) {
        params.m0 = params.degree = std::stoul(parts[2]);
    }
    return {spec, synth_graph(kind, std::stoul(parts[1]), params, seed), std::nullopt, std::nullopt};
}

void print_metrics_table(const MetricReport& r, std::ostream& out) {
    out << std::left << std::setw(26) << "neighborhood_preservation" << r.neighborhood_preservation << '\n'
        << std::setw(26) << "stress" << r.stress << '\n'
        << std::setw(26) << "crossings" << r.crossings << '\n'
        << std::setw(26) << "shape" << r.shape_jaccard << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gumap: graph layouts with UMAP-style optimization"};
    app.set_config("--config", "", "key=value configuration file; flags override it");
    app.require_subcommand(1);
    app.fallthrough();
    bool keep_disconnected = false;
    app.add_flag("--keep-disconnected", keep_disconnected, "Do not reduce input graphs to their largest component");

    // layout
    auto* layout_cmd = app.add_subcommand("layout", "Compute a layout and write it as CSV");
    OptimizerFlags layout_flags;
    layout_flags.add_to(*layout_cmd);
    std::string algo = "gumap";
    fs::path layout_input, layout_out, layout_svg;
    layout_cmd->add_option("--algo", algo, "gumap | ss | sl | sssl")
        ->check(CLI::IsMember({"gumap", "ss", "sl", "sssl"}))
        ->capture_default_str();
    layout_cmd->add_option("graph", layout_input, "Edge list or Matrix Market file")->required();
    layout_cmd->add_option("-o,--out", layout_out, "Layout CSV (default: <graph>.layout.csv)");
    layout_cmd->add_option("--render", layout_svg, "Also write an SVG drawing");

    // metrics
    auto* metrics_cmd = app.add_subcommand("metrics", "Evaluate a layout");
    fs::path metrics_graph, metrics_layout, metrics_out;
    metrics_cmd->add_option("graph", metrics_graph, "Graph file")->required();
    metrics_cmd->add_option("layout", metrics_layout, "Layout CSV (id,x,y)")->required();
    metrics_cmd->add_option("-o,--out", metrics_out, "Write the one-row CSV here instead of stdout");

    // sparsify
    auto* sparsify_cmd = app.add_subcommand("sparsify", "Spectral sparsifier by effective resistance");
    fs::path sparsify_input, sparsify_out;
    std::uint64_t sparsify_seed = 0;
    std::size_t sparsify_target = 0;
    std::size_t exact_cap = kDefaultExactResistanceCap;
    sparsify_cmd->add_option("graph", sparsify_input, "Graph file")->required();
    sparsify_cmd->add_option("-o,--out", sparsify_out, "Edge list (default: <graph>.sparse.txt)");
    sparsify_cmd->add_option("--seed", sparsify_seed, "Seed for sketched resistances")->capture_default_str();
    sparsify_cmd->add_option("--target", sparsify_target, "Edges to keep (default min(m, ceil(n log2 n)))");
    sparsify_cmd->add_option("--exact-cap", exact_cap, "Largest n for exact resistances")->capture_default_str();

    // knn
    auto* knn_cmd = app.add_subcommand("knn", "Weighted kNN graph from hop distances");
    fs::path knn_input, knn_out;
    std::size_t knn_k = 15;
    std::uint64_t knn_seed = 0;
    bool knn_full = false;
    knn_cmd->add_option("graph", knn_input, "Graph file")->required();
    knn_cmd->add_option("-o,--out", knn_out, "CSV i,j,d,h (default: stdout)");
    knn_cmd->add_option("--k", knn_k, "Neighbors per vertex")->capture_default_str()->check(CLI::PositiveNumber);
    knn_cmd->add_option("--seed", knn_seed, "Seed for last-level ties")->capture_default_str();
    knn_cmd->add_flag("--full", knn_full, "Use all-pairs BFS instead of partial BFS");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Run the comparison protocol over a set of graphs");
    OptimizerFlags bench_flags;
    bench_flags.add_to(*bench_cmd);
    std::vector<fs::path> bench_graphs;
    std::vector<std::string> bench_synth, bench_algos{"gumap", "ss", "sl", "sssl"};
    fs::path bench_suite_file, bench_out_dir;
    std::size_t bench_runs = 5;
    bool no_metrics = false;
    bool parallel_graphs = false;
    bench_cmd->add_option("graphs", bench_graphs, "Graph files");
    bench_cmd->add_option("--suite", bench_suite_file, "Suite file: one 'path [iters=N] [k=N]' per line");
    bench_cmd->add_option("--synth", bench_synth, "Synthetic graphs kind:n[:param], e.g. grid:1024");
    bench_cmd->add_option("--algos", bench_algos, "Algorithms to compare")
        ->check(CLI::IsMember({"gumap", "ss", "sl", "sssl"}))
        ->delimiter(',');
    bench_cmd->add_option("--runs", bench_runs, "Runs per graph and algorithm")->capture_default_str();
    bench_cmd->add_option("--out-dir", bench_out_dir, "Output directory (default: $GUMAP_OUTPUT_DIR or .)");
    bench_cmd->add_flag("--no-metrics", no_metrics, "Skip layout quality metrics");
    bench_cmd->add_flag("--parallel-graphs", parallel_graphs,
                        "Run graphs concurrently; timings are then not comparable");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic graph as an edge list");
    std::string synth_kind = "grid";
    std::size_t synth_n = 0;
    SynthParams synth_params;
    std::uint64_t synth_seed = 0;
    fs::path synth_out;
    synth_cmd->add_option("--kind", synth_kind, "grid | scale_free | random_regular")
        ->check(CLI::IsMember({"grid", "scale_free", "random_regular"}))
        ->capture_default_str();
    synth_cmd->add_option("--n", synth_n, "Vertex count")->required();
    synth_cmd->add_option("--m0", synth_params.m0, "Edges per new vertex (scale_free)")->capture_default_str();
    synth_cmd->add_option("--degree", synth_params.degree, "Degree (random_regular)")->capture_default_str();
    synth_cmd->add_option("--seed", synth_seed, "Generator seed")->capture_default_str();
    synth_cmd->add_option("-o,--out", synth_out, "Edge list path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (*layout_cmd) {
            Graph g = io::read_graph(layout_input, read_options(keep_disconnected));
            auto run = run_algorithm(algorithm_from_string(algo), g, layout_flags.config());
            auto out = layout_out.empty() ? default_output(layout_input, ".layout.csv") : layout_out;
            io::write_layout_csv(g, run.layout, out);
            if (!layout_svg.empty()) {
                io::render_svg(g, run.layout, layout_svg);
            }
            const auto& r = run.report;
            std::cerr << algo << ": n=" << r.n << " m=" << r.m << " layout_edges=" << r.layout_edges
                      << " knn_edges=" << r.knn_edges << " sparsify_ms=" << r.sparsify_ms << " c0_ms=" << r.c0_ms
                      << " c1_ms=" << r.c1_ms << " c2_ms=" << r.c2_ms << " total_ms=" << r.total_ms << '\n';
        } else if (*metrics_cmd) {
            Graph g = io::read_graph(metrics_graph, read_options(keep_disconnected));
            Layout layout = io::align_layout(g, io::read_layout_csv(metrics_layout));
            auto report = metrics::evaluate(g, layout);
            std::ostringstream row;
            row << std::setprecision(17) << "np,stress,crossings,shape\n"
                << report.neighborhood_preservation << ',' << report.stress << ',' << report.crossings << ','
                << report.shape_jaccard << '\n';
            if (metrics_out.empty()) {
                std::cout << row.str();
            } else {
                open_out(metrics_out) << row.str();
            }
            print_metrics_table(report, std::cerr);
        } else if (*sparsify_cmd) {
            Graph g = io::read_graph(sparsify_input, read_options(keep_disconnected));
            Graph s = sparsify_target ? sparsify(g, effective_resistance(g, sparsify_seed, exact_cap), sparsify_target)
                                      : spectral_sparsify(g, sparsify_seed, exact_cap);
            auto out = sparsify_out.empty() ? default_output(sparsify_input, ".sparse.txt") : sparsify_out;
            io::write_edge_list(s, out);
            std::cerr << "kept " << s.num_edges() << " of " << g.num_edges() << " edges\n";
        } else if (*knn_cmd) {
            Graph g = io::read_graph(knn_input, read_options(keep_disconnected));
            std::vector<KnnEdge> knn = knn_full ? knn_from_full_distances(all_pairs_bfs(g), knn_k, knn_seed).knn
                                                : partial_bfs(g, knn_k, knn_seed).knn;
            auto weighted = smooth_knn_weights(g.num_vertices(), knn, knn_k);
            std::ostringstream csv;
            csv << std::setprecision(17) << "i,j,d,h\n";
            for (const auto& e : weighted.edges) {
                csv << g.label(e.u) << ',' << g.label(e.v) << ',' << e.distance << ',' << e.weight << '\n';
            }
            if (knn_out.empty()) {
                std::cout << csv.str();
            } else {
                open_out(knn_out) << csv.str();
            }
        } else if (*bench_cmd) {
            BenchSuite suite;
            suite.runs_per_graph = bench_runs;
            suite.config = bench_flags.config();
            suite.compute_metrics = !no_metrics;
            suite.algorithms.clear();
            for (const auto& a : bench_algos) {
                suite.algorithms.push_back(algorithm_from_string(a));
            }
            if (!bench_suite_file.empty()) {
                suite.graphs = read_suite_file(bench_suite_file, keep_disconnected);
            }
            for (const auto& path : bench_graphs) {
                suite.graphs.push_back(
                    {path.stem().string(), io::read_graph(path, read_options(keep_disconnected)), {}, {}});
            }
            for (const auto& spec : bench_synth) {
                suite.graphs.push_back(synth_spec(spec, bench_flags.seed));
            }
            if (suite.graphs.empty()) {
                std::cerr << "bench: no graphs given\n" << bench_cmd->help();
                return kUsageError;
            }
            if (bench_out_dir.empty()) {
                const char* env = std::getenv("GUMAP_OUTPUT_DIR");
                bench_out_dir = env && *env ? fs::path(env) : fs::path(".");
            }
            suite.output_dir = bench_out_dir;

            BenchResult result;
            if (parallel_graphs) {
                std::vector<std::future<BenchResult>> jobs;
                for (auto& entry : suite.graphs) {
                    BenchSuite single = suite;
                    single.graphs = {entry};
                    jobs.push_back(std::async(std::launch::async, [single] { return run_bench(single); }));
                }
                for (auto& job : jobs) {
                    auto part = job.get();
                    result.runs.insert(result.runs.end(), part.runs.begin(), part.runs.end());
                    result.rows.insert(result.rows.end(), part.rows.begin(), part.rows.end());
                }
            } else {
                result = run_bench(suite, &std::cerr);
            }
            auto bench_csv = open_out(bench_out_dir / "bench.csv");
            write_bench_csv(result, bench_csv);
            auto runs_csv = open_out(bench_out_dir / "runs.csv");
            write_runs_csv(result, runs_csv);
            auto scaling_csv = open_out(bench_out_dir / "scaling.csv");
            write_scaling_csv(result, scaling_csv);
            write_bench_csv(result, std::cout);
        } else if (*synth_cmd) {
            Graph g = synth_graph(synth_kind_from_string(synth_kind), synth_n, synth_params, synth_seed);
            io::write_edge_list(g, synth_out);
            std::cerr << "wrote n=" << g.num_vertices() << " m=" << g.num_edges() << " to " << synth_out << '\n';
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
