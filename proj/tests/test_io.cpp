#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gumap/io.hpp"

using namespace gumap;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "gumap_io_test";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("edge list with comments and blank lines") {
    std::istringstream in("# header\n% also comment\n\n1 2\n2 3 0.5\n  3\t1\n");
    Graph g = io::parse_edge_list(in);
    CHECK(g.num_vertices() == 3);
    CHECK(g.num_edges() == 3);
}

TEST_CASE("edge list error names the line") {
    std::istringstream in("1 2\nlonely\n");
    CHECK_THROWS_WITH(io::parse_edge_list(in), "line 2: expected two vertex tokens");
}

TEST_CASE("largest component is the default") {
    Graph g = io::read_edge_list(fs::path(GUMAP_TEST_DATA) / "two_triangles.txt");
    CHECK(g.num_vertices() == 4);
    CHECK(g.labels() == std::vector<std::string>{"a", "b", "c", "d"});
    Graph all = io::read_edge_list(fs::path(GUMAP_TEST_DATA) / "two_triangles.txt", {.largest_component = false});
    CHECK(all.num_vertices() == 7);
}

TEST_CASE("matrix market petersen") {
    Graph g = io::read_graph(fs::path(GUMAP_TEST_DATA) / "petersen.mtx");
    CHECK(g.num_vertices() == 10);
    CHECK(g.num_edges() == 15);
    for (VertexId v = 0; v < 10; ++v) {
        CHECK(g.degree(v) == 3);
    }
}

TEST_CASE("matrix market dimension errors") {
    std::istringstream rect("%%MatrixMarket matrix coordinate pattern general\n3 4 1\n1 2\n");
    CHECK_THROWS_WITH(io::parse_matrix_market(rect), doctest::Contains("dimension mismatch"));
    std::istringstream out_of_range("%%MatrixMarket matrix coordinate pattern general\n3 3 1\n1 5\n");
    CHECK_THROWS_WITH(io::parse_matrix_market(out_of_range), doctest::Contains("dimension mismatch"));
    std::istringstream short_nnz("%%MatrixMarket matrix coordinate real general\n3 3 3\n1 2 1.0\n");
    CHECK_THROWS_WITH(io::parse_matrix_market(short_nnz), doctest::Contains("dimension mismatch"));
    std::istringstream array("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n");
    CHECK_THROWS(io::parse_matrix_market(array));
}

TEST_CASE("layout csv round-trips bit for bit") {
    Graph g = Graph::from_canonical(3, {{0, 1}, {1, 2}}, {"p", "q", "r"});
    Layout layout;
    layout.coords = {{0.1, -1e-17}, {1.0 / 3.0, 12345.678901234567}, {-0.0, 5e300}};
    auto path = scratch("layout.csv");
    io::write_layout_csv(g, layout, path);
    auto back = io::read_layout_csv(path);
    CHECK(back.labels == g.labels());
    REQUIRE(back.layout.coords.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back.layout.coords[i].x == layout.coords[i].x);
        CHECK(back.layout.coords[i].y == layout.coords[i].y);
    }
    auto aligned = io::align_layout(g, back);
    CHECK(aligned.coords == layout.coords);
}

TEST_CASE("edge list write/read round-trip") {
    Graph g = Graph::from_canonical(4, {{0, 1}, {0, 2}, {2, 3}});
    auto path = scratch("edges.txt");
    io::write_edge_list(g, path);
    Graph h = io::read_edge_list(path);
    CHECK(h.edges() == g.edges());
    CHECK(h.labels() == g.labels());
}

TEST_CASE("svg rendering") {
    Graph g = Graph::from_canonical(3, {{0, 1}, {1, 2}});
    Layout layout;
    layout.coords = {{0, 0}, {1, 0}, {2, 1}};
    auto svg = io::render_svg_string(g, layout);
    CHECK(svg.find("viewBox=\"0 0 1000 1000\"") != std::string::npos);
    std::size_t lines = 0, circles = 0;
    for (std::size_t p = svg.find("<line"); p != std::string::npos; p = svg.find("<line", p + 1)) ++lines;
    for (std::size_t p = svg.find("<circle"); p != std::string::npos; p = svg.find("<circle", p + 1)) ++circles;
    CHECK(lines == 2);
    CHECK(circles == 3);

    layout.coords = {{1, 1}, {1, 1}, {1, 1}};
    CHECK(io::render_svg_string(g, layout).find("cx=\"500.000\"") != std::string::npos);

    layout.coords[1].x = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(io::render_svg_string(g, layout), std::invalid_argument);
}
