#include "gumap/bench.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

namespace gumap {

namespace {

std::string cell(std::optional<double> value) {
    if (!value || !std::isfinite(*value)) {
        return "";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", *value);
    return buf;
}

std::string cell(double value) { return cell(std::optional<double>(value)); }

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

bool needs_sparsifier(const std::vector<AlgorithmTag>& algorithms) {
    for (auto a : algorithms) {
        if (a == AlgorithmTag::SS || a == AlgorithmTag::SSSL) {
            return true;
        }
    }
    return false;
}

std::optional<double> improvement_or_none(double baseline, double candidate, bool higher_is_better) {
    if (!(baseline > 0.0)) {
        return std::nullopt;
    }
    return metrics::improvement(baseline, candidate, higher_is_better);
}

}  // namespace

BenchResult run_bench(const BenchSuite& suite, std::ostream* log) {
    if (suite.runs_per_graph < 1) {
        throw std::invalid_argument("runs_per_graph must be at least 1");
    }
    BenchResult result;
    for (const auto& entry : suite.graphs) {
        OptimizerConfig base = suite.config;
        if (entry.iterations) {
            base.iterations = *entry.iterations;
        }
        if (entry.k) {
            base.k = *entry.k;
        }
        const Graph& g = entry.graph;
        const std::size_t first_row = result.rows.size();
        try {
            base = base.resolved();
            std::optional<Graph> sparse;
            double sparsify_ms = 0.0;
            if (needs_sparsifier(suite.algorithms)) {
                auto t = std::chrono::steady_clock::now();
                sparse = spectral_sparsify(g, base.seed, base.exact_resistance_cap);
                sparsify_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t).count();
            }
            for (auto algorithm : suite.algorithms) {
                BenchRow row;
                row.graph_name = entry.name;
                row.algorithm = algorithm;
                row.n = g.num_vertices();
                row.m = g.num_edges();
                row.runs = suite.runs_per_graph;
                row.has_metrics = suite.compute_metrics;
                for (std::size_t r = 0; r < suite.runs_per_graph; ++r) {
                    OptimizerConfig cfg = base;
                    cfg.seed = base.seed + r;
                    RunResult run;
                    switch (algorithm) {
                        case AlgorithmTag::SS: run = run_ss_gumap(g, *sparse, cfg); break;
                        case AlgorithmTag::SSSL: run = run_sssl_gumap(g, *sparse, cfg); break;
                        default: run = run_algorithm(algorithm, g, cfg); break;
                    }
                    run.report.graph_name = entry.name;
                    if (algorithm == AlgorithmTag::SS || algorithm == AlgorithmTag::SSSL) {
                        run.report.sparsify_ms = sparsify_ms;
                    }
                    if (suite.compute_metrics) {
                        run.report.metrics = metrics::evaluate(g, run.layout, suite.metrics);
                        const auto& mr = *run.report.metrics;
                        row.metrics.neighborhood_preservation += mr.neighborhood_preservation;
                        row.metrics.stress += mr.stress;
                        row.metrics.crossings += mr.crossings;
                        row.metrics.shape_jaccard += mr.shape_jaccard;
                    }
                    row.sparsify_ms += run.report.sparsify_ms;
                    row.c0_ms += run.report.c0_ms;
                    row.c1_ms += run.report.c1_ms;
                    row.c2_ms += run.report.c2_ms;
                    row.total_ms += run.report.total_ms;
                    if (log) {
                        *log << entry.name << ' ' << to_string(algorithm) << " seed " << cfg.seed << ": "
                             << run.report.total_ms << " ms\n";
                    }
                    result.runs.push_back(std::move(run.report));
                }
                const auto runs = static_cast<double>(suite.runs_per_graph);
                row.sparsify_ms /= runs;
                row.c0_ms /= runs;
                row.c1_ms /= runs;
                row.c2_ms /= runs;
                row.total_ms /= runs;
                row.metrics.neighborhood_preservation /= runs;
                row.metrics.stress /= runs;
                row.metrics.shape_jaccard /= runs;
                // Crossings are averaged too; the integer field holds the rounded mean.
                row.metrics.crossings = static_cast<std::uint64_t>(
                    std::llround(static_cast<double>(row.metrics.crossings) / runs));
                result.rows.push_back(std::move(row));
            }
        } catch (const std::exception& ex) {
            result.rows.resize(first_row);
            for (auto algorithm : suite.algorithms) {
                BenchRow row;
                row.graph_name = entry.name;
                row.algorithm = algorithm;
                row.n = g.num_vertices();
                row.m = g.num_edges();
                row.error = ex.what();
                result.rows.push_back(std::move(row));
            }
            if (log) {
                *log << entry.name << ": " << ex.what() << '\n';
            }
            continue;
        }

        const BenchRow* baseline = nullptr;
        for (std::size_t i = first_row; i < result.rows.size(); ++i) {
            if (result.rows[i].algorithm == AlgorithmTag::GUMAP) {
                baseline = &result.rows[i];
            }
        }
        if (!baseline) {
            continue;
        }
        for (std::size_t i = first_row; i < result.rows.size(); ++i) {
            BenchRow& row = result.rows[i];
            if (&row == baseline) {
                continue;
            }
            row.time_improvement = improvement_or_none(baseline->total_ms, row.total_ms, false);
            if (row.has_metrics) {
                const auto& b = baseline->metrics;
                row.np_improvement =
                    improvement_or_none(b.neighborhood_preservation, row.metrics.neighborhood_preservation, true);
                row.stress_improvement = improvement_or_none(b.stress, row.metrics.stress, false);
                row.crossing_improvement = improvement_or_none(static_cast<double>(b.crossings),
                                                               static_cast<double>(row.metrics.crossings), false);
                row.shape_improvement = improvement_or_none(b.shape_jaccard, row.metrics.shape_jaccard, true);
            }
        }
    }
    return result;
}

void write_bench_csv(const BenchResult& result, std::ostream& out) {
    out << "graph,algorithm,n,m,runs,sparsify_ms,c0_ms,c1_ms,c2_ms,total_ms,np,stress,crossings,shape,"
           "time_improvement,np_improvement,stress_improvement,crossing_improvement,shape_improvement,error\n";
    for (const auto& row : result.rows) {
        const bool ok = row.error.empty();
        const bool metrics = ok && row.has_metrics;
        out << quote(row.graph_name) << ',' << to_string(row.algorithm) << ',' << row.n << ',' << row.m << ','
            << row.runs << ',' << (ok ? cell(row.sparsify_ms) : "") << ',' << (ok ? cell(row.c0_ms) : "") << ','
            << (ok ? cell(row.c1_ms) : "") << ',' << (ok ? cell(row.c2_ms) : "") << ','
            << (ok ? cell(row.total_ms) : "") << ',' << (metrics ? cell(row.metrics.neighborhood_preservation) : "")
            << ',' << (metrics ? cell(row.metrics.stress) : "") << ','
            << (metrics ? std::to_string(row.metrics.crossings) : "") << ','
            << (metrics ? cell(row.metrics.shape_jaccard) : "") << ',' << cell(row.time_improvement) << ','
            << cell(row.np_improvement) << ',' << cell(row.stress_improvement) << ','
            << cell(row.crossing_improvement) << ',' << cell(row.shape_improvement) << ',' << quote(row.error)
            << '\n';
    }
}

void write_runs_csv(const BenchResult& result, std::ostream& out) {
    out << "graph,algorithm,seed,n,m,layout_edges,knn_edges,sparsify_ms,c0_ms,c1_ms,c2_ms,total_ms,np,stress,"
           "crossings,shape\n";
    for (const auto& run : result.runs) {
        out << quote(run.graph_name) << ',' << to_string(run.algorithm) << ',' << run.seed << ',' << run.n << ','
            << run.m << ',' << run.layout_edges << ',' << run.knn_edges << ',' << cell(run.sparsify_ms) << ','
            << cell(run.c0_ms) << ',' << cell(run.c1_ms) << ',' << cell(run.c2_ms) << ',' << cell(run.total_ms);
        if (run.metrics) {
            out << ',' << cell(run.metrics->neighborhood_preservation) << ',' << cell(run.metrics->stress) << ','
                << run.metrics->crossings << ',' << cell(run.metrics->shape_jaccard);
        } else {
            out << ",,,,";
        }
        out << '\n';
    }
}

void write_scaling_csv(const BenchResult& result, std::ostream& out) {
    std::vector<const BenchRow*> rows;
    for (const auto& row : result.rows) {
        if (row.error.empty()) {
            rows.push_back(&row);
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const BenchRow* a, const BenchRow* b) {
        return a->algorithm != b->algorithm ? a->algorithm < b->algorithm : a->n < b->n;
    });
    out << "algorithm,graph,n,m,log_n,total_ms,log_total_ms,c0_ms,c1_ms,c2_ms\n";
    for (const BenchRow* row : rows) {
        out << to_string(row->algorithm) << ',' << quote(row->graph_name) << ',' << row->n << ',' << row->m << ','
            << cell(std::log(static_cast<double>(row->n))) << ',' << cell(row->total_ms) << ','
            << cell(row->total_ms > 0 ? std::optional<double>(std::log(row->total_ms)) : std::nullopt) << ','
            << cell(row->c0_ms) << ',' << cell(row->c1_ms) << ',' << cell(row->c2_ms) << '\n';
    }
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("slope needs at least two matching points");
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

}  // namespace gumap
