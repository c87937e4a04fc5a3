#include <doctest.h>

#include "csurf/block.hpp"
#include "csurf/builders.hpp"

using namespace csurf;

namespace {

// Disk with one long exit arc carrying three isolated n_minus points.
IsolatingBlock three_point_arc_disk() {
    SurfaceComplex g = grid_disk(5);
    // boundary cycle: 0 1 2 3 4 9 14 19 24 23 22 21 20 15 10 5
    std::vector<VertexId> cyc = {0, 1, 2, 3, 4, 9, 14, 19, 24, 23, 22, 21, 20, 15, 10, 5};
    std::set<Edge> exit;
    for (int i = 0; i < 8; ++i) exit.insert(Edge(cyc[i], cyc[i + 1]));
    IsolatingBlock b{g, exit, Subcomplex{{1, 3, 9}, {}}, Subcomplex{{22}, {}}, {}, false, "three-point-arc"};
    return b;
}

} // namespace

TEST_CASE("corpus blocks validate") {
    for (const std::string& name : standard_block_names()) {
        IsolatingBlock b = standard_block(name);
        ValidationReport r = validate(b);
        INFO(name, ": ", r.to_string());
        CHECK(r.ok());
    }
}

TEST_CASE("exit component without n_minus is a violation") {
    IsolatingBlock b = standard_block("annulus_nonregular");
    b.n_minus = {};
    ValidationReport r = validate(b);
    CHECK_FALSE(r.ok());
    bool found = false;
    for (const Violation& v : r.violations)
        if (v.what.find("no component of n_minus") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("marking crossing a corner is a violation") {
    IsolatingBlock b = standard_block("square_saddle");
    // {2,5} is an entrance edge; pushing it into n_minus drags the marking
    // across the corner at 2.
    b.n_minus.vertices.insert(2);
    b.n_minus.vertices.insert(5);
    b.n_minus.edges.insert(Edge(2, 5));
    CHECK_FALSE(validate(b).ok());
}

TEST_CASE("non-closed marking and stray exit edges are violations") {
    IsolatingBlock b = standard_block("square_saddle");
    b.n_minus.edges.insert(Edge(0, 1)); // endpoint 0 not in n_minus.vertices
    CHECK_FALSE(validate(b).ok());

    IsolatingBlock c = standard_block("square_saddle");
    c.exit_edges.insert(Edge(0, 4)); // interior edge
    CHECK_FALSE(validate(c).ok());
}

TEST_CASE("spine violations") {
    IsolatingBlock b = standard_block("annulus_nonregular");
    b.spines[0].path = {0, 4};
    CHECK_FALSE(validate(b).ok()); // starts in n_minus
    b.spines[0].path = {1, 1};
    CHECK_FALSE(validate(b).ok()); // not simple
    b.spines[0].path = {1};
    CHECK_FALSE(validate(b).ok()); // too short
    b.spines[0].path = {1, 2};
    CHECK_FALSE(validate(b).ok()); // boundary edge
}

TEST_CASE("spine endpoints must avoid corners") {
    IsolatingBlock b = standard_block("square_saddle");
    b.spines.push_back(TransitSpine{{0, 4}}); // 0 is a corner
    CHECK_FALSE(validate(b).ok());
}

TEST_CASE("census of the reference blocks") {
    ExitCensus pants = census(standard_block("pants_repeller"));
    CHECK(pants.u == 3);
    CHECK(pants.u_c == 0);
    CHECK(pants.s == 0);
    CHECK(pants.beta1_n == 2);
    CHECK(pants.obstruction == 0);

    ExitCensus nonreg = census(standard_block("annulus_nonregular"));
    CHECK(nonreg.u == 1);
    CHECK(nonreg.u_c == 0);
    CHECK(nonreg.s == 1);
    CHECK(nonreg.s_c == 0);
    CHECK(nonreg.obstruction == 1);

    ExitCensus saddle = census(standard_block("square_saddle"));
    CHECK(saddle.u == 2);
    CHECK(saddle.u_c == 2);
    CHECK(saddle.s == 2);
    CHECK(saddle.s_c == 2);
    CHECK(saddle.beta1_n == 0);
    CHECK(saddle.obstruction == 0);

    ExitCensus three = census(standard_block("three_arc_circle_nonregular"));
    CHECK(three.u == 1);
    CHECK(three.u_c == 0);
    CHECK(three.s == 3);
    CHECK(three.beta1_n == 3);
    CHECK(three.obstruction == 3);
}

TEST_CASE("an exit interval with three marked points contributes two") {
    IsolatingBlock b = three_point_arc_disk();
    REQUIRE(validate(b).ok());
    CHECK(census(b).u == 1);
    CHECK(census(b).u_c == 1);
    CHECK(census(b).obstruction == 2);
    // four gaps, two of them at the corners
    auto analyzed = analyze_marked_components(b, true);
    REQUIRE(analyzed.size() == 1);
    CHECK(analyzed[0].marking_runs.size() == 3);
    CHECK(analyzed[0].gaps.size() == 4);
    int cornerless = 0;
    for (const GapRun& g : analyzed[0].gaps)
        if (!g.touches_corner) ++cornerless;
    CHECK(cornerless == 2);
}

TEST_CASE("reverse is an involution and swaps the census") {
    for (const std::string& name : standard_block_names()) {
        IsolatingBlock b = standard_block(name);
        IsolatingBlock r = reverse(b);
        CHECK(reverse(r) == b);
        ExitCensus cb = census(b);
        ExitCensus cr = census(r);
        CHECK(cb.u == cr.s);
        CHECK(cb.u_c == cr.s_c);
        CHECK(cb.s == cr.u);
        CHECK(cb.beta1_n == cr.beta1_n);
    }
    // attractor becomes repeller
    IsolatingBlock att = standard_block("annulus_attractor");
    IsolatingBlock rep = reverse(att);
    CHECK(rep.exit_edges.size() == 6);
    CHECK(rep.entrance_edges().empty());
}

TEST_CASE("section census kinds") {
    auto pants = section_census(standard_block("pants_repeller"));
    REQUIRE(pants.size() == 3);
    for (const auto& s : pants) {
        CHECK(s.kind == SectionKind::Circle);
        CHECK(s.initial_part == "cylinder");
    }
    auto saddle = section_census(standard_block("square_saddle"));
    REQUIRE(saddle.size() == 2);
    for (const auto& s : saddle) {
        CHECK(s.kind == SectionKind::Point);
        CHECK(s.initial_part == "half-open ray");
    }
    CHECK(section_census(standard_block("annulus_attractor")).empty());
    // the genus-1 block marks a whole circle
    auto torus = section_census(standard_block("genus1_repeller"));
    REQUIRE(torus.size() == 1);
    CHECK(torus[0].kind == SectionKind::Circle);
    // arcs sweep strips
    auto three = section_census(standard_block("three_arc_circle_nonregular"));
    REQUIRE(three.size() == 3);
    int arcs = 0;
    for (const auto& s : three)
        if (s.kind == SectionKind::Arc) {
            ++arcs;
            CHECK(s.initial_part == "strip");
        }
    CHECK(arcs == 3);
}

TEST_CASE("corners") {
    std::set<VertexId> c = corner_vertices(standard_block("square_saddle"));
    CHECK(c == std::set<VertexId>{0, 2, 6, 8});
    CHECK(corner_vertices(standard_block("pants_repeller")).empty());
}

TEST_CASE("block JSON round trip is exact") {
    for (const std::string& name : standard_block_names()) {
        IsolatingBlock b = standard_block(name);
        std::string text = block_to_json_string(b);
        IsolatingBlock back = block_from_json_string(text);
        CHECK(back == b);
        CHECK(block_to_json_string(back) == text);
    }
}

TEST_CASE("block JSON rejects unknown keys and malformed data") {
    IsolatingBlock b = standard_block("square_saddle");
    std::string text = block_to_json_string(b);
    std::string with_extra = text;
    with_extra.insert(with_extra.find_last_of('}'), ",\"favorite_color\": \"green\"");
    CHECK_THROWS_AS(block_from_json_string(with_extra), Error);
    CHECK_THROWS_AS(block_from_json_string("{"), Error);
    CHECK_THROWS_AS(block_from_json_string("{\"vertex_count\": 3}"), Error);
    CHECK_THROWS_AS(block_from_json_string("{\"vertex_count\": 3, \"triangles\": [[0,1]]}"), Error);

    ValidationReport r = validate_block_text("{\"vertex_count\": 3, \"triangles\": [[0,1,1]]}");
    CHECK_FALSE(r.ok());
    ValidationReport r2 = validate_block_text("not json at all");
    CHECK_FALSE(r2.ok());
}

TEST_CASE("label components of the saddle block") {
    auto comps = boundary_label_components(standard_block("square_saddle"));
    REQUIRE(comps.size() == 4);
    int exits = 0;
    for (const auto& c : comps) {
        CHECK_FALSE(c.is_circle);
        CHECK(c.vertices.size() == 3);
        if (c.exit) ++exits;
        // canonical orientation starts at the smaller corner
        CHECK(c.vertices.front() < c.vertices.back());
    }
    CHECK(exits == 2);
}
