#include "gumap/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace gumap::io {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

Graph finish(const std::vector<std::pair<std::string, std::string>>& pairs, const ReadOptions& options) {
    Graph g = build_graph(pairs);
    return options.largest_component ? largest_connected_component(g) : g;
}

bool is_comment_or_blank(const std::string& line) {
    auto pos = line.find_first_not_of(" \t\r\f\v");
    return pos == std::string::npos || line[pos] == '#' || line[pos] == '%';
}

// Shortest decimal string that parses back to the same double.
std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) {
        throw std::runtime_error("failed to format coordinate");
    }
    return {buf, ptr};
}

double parse_double(const std::string& token, std::size_t line_no) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw std::runtime_error("line " + std::to_string(line_no) + ": bad number '" + token + "'");
    }
    return v;
}

}  // namespace

Graph parse_edge_list(std::istream& in, const ReadOptions& options) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) {
            continue;
        }
        std::istringstream tokens(line);
        std::string a;
        std::string b;
        if (!(tokens >> a >> b)) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": expected two vertex tokens");
        }
        pairs.emplace_back(std::move(a), std::move(b));
    }
    return finish(pairs, options);
}

Graph read_edge_list(const std::filesystem::path& path, const ReadOptions& options) {
    auto in = open_input(path);
    return parse_edge_list(in, options);
}

Graph parse_matrix_market(std::istream& in, const ReadOptions& options) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("%%MatrixMarket", 0) != 0) {
        throw std::runtime_error("missing %%MatrixMarket header");
    }
    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    std::transform(format.begin(), format.end(), format.begin(), ::tolower);
    std::transform(field.begin(), field.end(), field.begin(), ::tolower);
    if (format != "coordinate") {
        throw std::runtime_error("unsupported Matrix Market format '" + format + "' (need coordinate)");
    }
    if (field == "complex") {
        throw std::runtime_error("complex Matrix Market files are not supported");
    }

    std::size_t line_no = 1;
    std::size_t rows = 0, cols = 0, nnz = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) {
            continue;
        }
        std::istringstream size_line(line);
        if (!(size_line >> rows >> cols >> nnz)) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": bad size line");
        }
        break;
    }
    if (rows != cols) {
        throw std::runtime_error("dimension mismatch: matrix is " + std::to_string(rows) + "x" + std::to_string(cols));
    }

    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(nnz);
    std::size_t seen = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) {
            continue;
        }
        std::istringstream entry(line);
        std::size_t i = 0, j = 0;
        if (!(entry >> i >> j)) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": expected row and column indices");
        }
        if (i < 1 || j < 1 || i > rows || j > cols) {
            throw std::runtime_error("dimension mismatch: entry (" + std::to_string(i) + "," + std::to_string(j) +
                                     ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
        }
        ++seen;
        pairs.emplace_back(std::to_string(i), std::to_string(j));
    }
    if (seen != nnz) {
        throw std::runtime_error("dimension mismatch: header declares " + std::to_string(nnz) + " entries, found " +
                                 std::to_string(seen));
    }
    return finish(pairs, options);
}

Graph read_matrix_market(const std::filesystem::path& path, const ReadOptions& options) {
    auto in = open_input(path);
    return parse_matrix_market(in, options);
}

Graph read_graph(const std::filesystem::path& path, const ReadOptions& options) {
    if (path.extension() == ".mtx") {
        return read_matrix_market(path, options);
    }
    return read_edge_list(path, options);
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
    auto out = open_output(path);
    for (const auto& e : g.edges()) {
        out << g.label(e.u) << ' ' << g.label(e.v) << '\n';
    }
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

void write_layout_csv(const std::vector<std::string>& labels, const Layout& layout,
                      const std::filesystem::path& path) {
    if (labels.size() != layout.size()) {
        throw std::invalid_argument("layout does not match graph");
    }
    auto out = open_output(path);
    out << "id,x,y\n";
    for (std::size_t v = 0; v < layout.size(); ++v) {
        out << labels[v] << ',' << format_double(layout.coords[v].x) << ',' << format_double(layout.coords[v].y)
            << '\n';
    }
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

void write_layout_csv(const Graph& g, const Layout& layout, const std::filesystem::path& path) {
    write_layout_csv(g.labels(), layout, path);
}

LabeledLayout read_layout_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    LabeledLayout result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line_no == 1) {
            if (line != "id,x,y") {
                throw std::runtime_error(path.string() + ": expected header id,x,y");
            }
            continue;
        }
        if (line.empty()) {
            continue;
        }
        auto c2 = line.rfind(',');
        auto c1 = c2 == std::string::npos || c2 == 0 ? std::string::npos : line.rfind(',', c2 - 1);
        if (c1 == std::string::npos) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": expected id,x,y");
        }
        result.labels.push_back(line.substr(0, c1));
        result.layout.coords.push_back({parse_double(line.substr(c1 + 1, c2 - c1 - 1), line_no),
                                        parse_double(line.substr(c2 + 1), line_no)});
    }
    return result;
}

Layout align_layout(const Graph& g, const LabeledLayout& labeled) {
    std::unordered_map<std::string, std::size_t> row;
    for (std::size_t i = 0; i < labeled.labels.size(); ++i) {
        row.emplace(labeled.labels[i], i);
    }
    Layout layout = labeled.layout;
    layout.coords.resize(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        auto it = row.find(g.label(v));
        if (it == row.end()) {
            throw std::runtime_error("layout has no coordinates for vertex " + g.label(v));
        }
        layout.coords[v] = labeled.layout.coords[it->second];
    }
    return layout;
}

std::string render_svg_string(const Graph& g, const Layout& layout, const SvgStyle& style) {
    if (layout.size() != g.num_vertices()) {
        throw std::invalid_argument("layout does not match graph");
    }
    constexpr double kView = 1000.0;
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = min_x;
    double max_x = -min_x;
    double max_y = -min_x;
    for (const auto& p : layout.coords) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw std::invalid_argument("layout contains non-finite coordinates");
        }
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double extent = std::max(max_x - min_x, max_y - min_y);
    const double usable = kView - 2.0 * style.margin;
    const double scale = extent > 0.0 ? usable / extent : 0.0;
    const double cx = 0.5 * (min_x + max_x);
    const double cy = 0.5 * (min_y + max_y);
    // SVG y grows downwards; flip so the drawing keeps its orientation.
    auto map = [&](const Point& p) {
        return Point{kView / 2 + (p.x - cx) * scale, kView / 2 - (p.y - cy) * scale};
    };

    std::ostringstream svg;
    svg.precision(3);
    svg << std::fixed;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n";
    svg << "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
    svg << "<g stroke=\"black\" stroke-opacity=\"" << style.edge_opacity << "\" stroke-width=\"0.5\">\n";
    for (const auto& e : g.edges()) {
        auto a = map(layout.coords[e.u]);
        auto b = map(layout.coords[e.v]);
        svg << "<line x1=\"" << a.x << "\" y1=\"" << a.y << "\" x2=\"" << b.x << "\" y2=\"" << b.y << "\"/>\n";
    }
    svg << "</g>\n<g fill=\"#1f77b4\">\n";
    for (const auto& p : layout.coords) {
        auto q = map(p);
        svg << "<circle cx=\"" << q.x << "\" cy=\"" << q.y << "\" r=\"" << style.vertex_radius << "\"/>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

void render_svg(const Graph& g, const Layout& layout, const std::filesystem::path& path, const SvgStyle& style) {
    auto svg = render_svg_string(g, layout, style);
    auto out = open_output(path);
    out << svg;
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

}  // namespace gumap::io
