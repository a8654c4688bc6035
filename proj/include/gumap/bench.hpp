#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gumap/graph.hpp"
#include "gumap/layout.hpp"
#include "gumap/metrics.hpp"
#include "gumap/report.hpp"

namespace gumap {

enum class SynthKind { Grid, ScaleFree, RandomRegular };

SynthKind synth_kind_from_string(const std::string& name);
const char* to_string(SynthKind kind);

struct SynthParams {
    /// Edges per new vertex for scale-free graphs.
    std::size_t m0 = 2;
    /// Degree for random regular graphs.
    std::size_t degree = 3;
};

/// Deterministic synthetic graphs. grid: row-major mesh of width ceil(sqrt n);
/// scale_free: preferential attachment seeded with a clique on m0 + 1
/// vertices; random_regular: pairing model, rejecting loops, multi-edges and
/// disconnected results.
Graph synth_graph(SynthKind kind, std::size_t n, const SynthParams& params, std::uint64_t seed);

struct BenchGraph {
    std::string name;
    Graph graph;
    /// Per-graph overrides applied on top of the suite config.
    std::optional<std::size_t> iterations;
    std::optional<std::size_t> k;
};

struct BenchSuite {
    std::vector<BenchGraph> graphs;
    std::size_t runs_per_graph = 5;
    std::vector<AlgorithmTag> algorithms{AlgorithmTag::GUMAP, AlgorithmTag::SS, AlgorithmTag::SL,
                                         AlgorithmTag::SSSL};
    OptimizerConfig config;
    metrics::MetricSelection metrics;
    bool compute_metrics = true;
    std::filesystem::path output_dir;
};

struct BenchRow {
    std::string graph_name;
    AlgorithmTag algorithm = AlgorithmTag::GUMAP;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t runs = 0;
    double sparsify_ms = 0.0;
    double c0_ms = 0.0;
    double c1_ms = 0.0;
    double c2_ms = 0.0;
    double total_ms = 0.0;
    MetricReport metrics;
    bool has_metrics = false;
    /// Improvement against GUMAP on the same graph (absent for GUMAP itself
    /// or when GUMAP was not run).
    std::optional<double> time_improvement;
    std::optional<double> np_improvement;
    std::optional<double> stress_improvement;
    std::optional<double> crossing_improvement;
    std::optional<double> shape_improvement;
    std::string error;
};

struct BenchResult {
    std::vector<RunReport> runs;
    std::vector<BenchRow> rows;
};

/// Runs every graph x algorithm runs_per_graph times with seeds
/// config.seed .. config.seed + runs - 1 and averages. A failing graph is
/// recorded in its rows' error field; the suite continues.
BenchResult run_bench(const BenchSuite& suite, std::ostream* log = nullptr);

void write_bench_csv(const BenchResult& result, std::ostream& out);
void write_runs_csv(const BenchResult& result, std::ostream& out);
/// n, algorithm, mean total_ms, mean c0/c1/c2, sorted by algorithm then n.
void write_scaling_csv(const BenchResult& result, std::ostream& out);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace gumap
