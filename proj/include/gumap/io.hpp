#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gumap/graph.hpp"

namespace gumap::io {

struct ReadOptions {
    /// Reduce to the largest connected component after parsing.
    bool largest_component = true;
};

/// Whitespace-separated edge list. Lines whose first non-blank character is
/// '#' or '%' are comments; blank lines are skipped; tokens after the second
/// are ignored.
Graph read_edge_list(const std::filesystem::path& path, const ReadOptions& options = {});
Graph parse_edge_list(std::istream& in, const ReadOptions& options = {});

/// Matrix Market coordinate format (pattern/real/integer, symmetric or general).
/// Off-diagonal entries become edges.
Graph read_matrix_market(const std::filesystem::path& path, const ReadOptions& options = {});
Graph parse_matrix_market(std::istream& in, const ReadOptions& options = {});

/// Dispatches on extension: `.mtx` is Matrix Market, anything else an edge list.
Graph read_graph(const std::filesystem::path& path, const ReadOptions& options = {});

void write_edge_list(const Graph& g, const std::filesystem::path& path);

/// Header `id,x,y`, then one `label,x,y` row per vertex with round-trip precision.
void write_layout_csv(const Graph& g, const Layout& layout, const std::filesystem::path& path);
void write_layout_csv(const std::vector<std::string>& labels, const Layout& layout, const std::filesystem::path& path);

struct LabeledLayout {
    std::vector<std::string> labels;
    Layout layout;
};
LabeledLayout read_layout_csv(const std::filesystem::path& path);

/// Reorders a labeled layout to match the vertex order of g.
Layout align_layout(const Graph& g, const LabeledLayout& layout);

struct SvgStyle {
    double vertex_radius = 2.0;
    double edge_opacity = 0.4;
    double margin = 20.0;
};

/// One <line> per edge and one <circle> per vertex, fitted into a 1000x1000
/// viewBox with aspect ratio preserved.
void render_svg(const Graph& g, const Layout& layout, const std::filesystem::path& path, const SvgStyle& style = {});
std::string render_svg_string(const Graph& g, const Layout& layout, const SvgStyle& style = {});

}  // namespace gumap::io
