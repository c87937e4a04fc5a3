#include <doctest.h>

#include "csurf/builders.hpp"
#include "csurf/regularize.hpp"

using namespace csurf;

namespace {

// Disk block whose exit interval carries two n_minus points and a spine
// between them; cutting there must disconnect the disk.
IsolatingBlock separating_disk_block() {
    SurfaceComplex g = grid_disk(5);
    std::vector<VertexId> cyc = {0, 1, 2, 3, 4, 9, 14, 19, 24, 23, 22, 21, 20, 15, 10, 5};
    std::set<Edge> exit;
    for (int i = 0; i < 8; ++i) exit.insert(Edge(cyc[i], cyc[i + 1]));
    IsolatingBlock b{g,
                     exit,
                     Subcomplex{{1, 3}, {}},
                     Subcomplex{{22}, {}},
                     {TransitSpine{{2, 7, 12, 17, 16, 21}}},
                     false,
                     "separating"};
    return b;
}

} // namespace

TEST_CASE("cut_once opens the nonregular annulus into a disk block") {
    IsolatingBlock b = standard_block("annulus_nonregular");
    IsolatingBlock cut = cut_once(b, b.spines[0]);
    CHECK(validate(cut).ok());
    CHECK(cut.complex.euler_characteristic() == 1);
    CHECK(cut.complex.signature().boundary_circles == 1);
    CHECK(cut.spines.empty());
    ExitCensus c = census(cut);
    CHECK(c.u == 1);
    CHECK(c.u_c == 1);
    CHECK(c.obstruction == 0);
    // the n_minus point survives unmoved
    CHECK(cut.n_minus.vertices == std::set<VertexId>{0});
    // new corners: the two copies of the split vertex
    CHECK(corner_vertices(cut).size() == 2);
}

TEST_CASE("cut_once rejects spines that are not part of the block") {
    IsolatingBlock b = standard_block("annulus_nonregular");
    CHECK_THROWS_AS(cut_once(b, TransitSpine{{2, 5}}), Error);
}

TEST_CASE("a separating cut is reported") {
    IsolatingBlock b = separating_disk_block();
    REQUIRE(validate(b).ok());
    REQUIRE(census(b).obstruction == 1);
    try {
        cut_once(b, b.spines[0]);
        FAIL("expected DisconnectingCut");
    } catch (const Error& e) {
        CHECK(e.code() == errc::disconnecting_cut);
    }
    try {
        regularize(b);
        FAIL("expected DisconnectingCut");
    } catch (const Error& e) {
        CHECK(e.code() == errc::disconnecting_cut);
    }
}

TEST_CASE("missing spines abort regularization") {
    IsolatingBlock b = standard_block("annulus_nonregular");
    b.spines.clear();
    REQUIRE(validate(b).ok());
    try {
        regularize(b);
        FAIL("expected InsufficientTransitData");
    } catch (const Error& e) {
        CHECK(e.code() == errc::insufficient_transit_data);
    }
}

TEST_CASE("already regular blocks come back unchanged") {
    for (const char* name :
         {"pants_repeller", "square_saddle", "annulus_attractor", "annulus_cycle_mixed"}) {
        IsolatingBlock b = standard_block(name);
        RegularizeResult res = regularize(b);
        CHECK(res.trace.steps.empty());
        CHECK(res.block == b);
    }
}

TEST_CASE("the nonregular annulus regularizes in one cut") {
    RegularizeResult res = regularize(standard_block("annulus_nonregular"));
    REQUIRE(res.trace.steps.size() == 1);
    const SurgeryStep& s = res.trace.steps[0];
    CHECK(s.phase == 1);
    CHECK(s.obstruction_before == 1);
    CHECK(s.obstruction_after == 0);
    CHECK(s.chi_before == 0);
    CHECK(s.chi_after == 1);
    TopSignature sig = res.block.complex.signature();
    CHECK(sig.euler == 1);
    CHECK(sig.boundary_circles == 1);
    CHECK(census(res.block).obstruction == 0);
}

TEST_CASE("the three-gap block needs exactly three cuts") {
    IsolatingBlock b = standard_block("three_arc_circle_nonregular");
    REQUIRE(census(b).obstruction == 3);
    RegularizeResult res = regularize(b);
    REQUIRE(res.trace.steps.size() == 3);
    CHECK(res.trace.steps[0].phase == 1);
    CHECK(res.trace.steps[1].phase == 2);
    CHECK(res.trace.steps[2].phase == 2);
    int obstruction = 3;
    int chi = -2;
    for (const SurgeryStep& s : res.trace.steps) {
        CHECK(s.obstruction_before == obstruction);
        CHECK(s.obstruction_after == obstruction - 1);
        CHECK(s.chi_before == chi);
        CHECK(s.chi_after == chi + 1);
        --obstruction;
        ++chi;
    }
    CHECK(res.block.complex.euler_characteristic() == 1);
    CHECK(res.block.spines.empty());
    // marking components survive the surgery
    int runs = 0;
    for (const ComponentMarking& am : analyze_marked_components(res.block, true))
        runs += static_cast<int>(am.marking_runs.size());
    CHECK(runs == 3);
    // regular: every exit interval holds exactly one marking component
    for (const ComponentMarking& am : analyze_marked_components(res.block, true)) {
        CHECK_FALSE(am.component.is_circle);
        CHECK(am.marking_runs.size() == 1);
    }
}

TEST_CASE("an interval-gap cut splits the interval into two") {
    // After the phase-1 cut, the three-gap block has one exit interval with
    // three marking runs; cutting in the gap between two of them must split
    // it into two disjoint exit intervals.
    IsolatingBlock b = standard_block("three_arc_circle_nonregular");
    IsolatingBlock opened = cut_once(b, b.spines[0]);
    ExitCensus before = census(opened);
    CHECK(before.u == 1);
    CHECK(before.u_c == 1);
    // both remaining spines start in interval gaps; either cut splits
    IsolatingBlock split = cut_once(opened, opened.spines[0]);
    ExitCensus after = census(split);
    CHECK(after.u == before.u + 1);
    CHECK(after.u_c == before.u_c + 1);
    CHECK(after.obstruction == before.obstruction - 1);
}

TEST_CASE("obstruction counts the cuts and the Betti drop") {
    for (const char* name : {"annulus_nonregular", "three_arc_circle_nonregular"}) {
        IsolatingBlock b = standard_block(name);
        ExitCensus before = census(b);
        RegularizeResult res = regularize(b);
        ExitCensus after = census(res.block);
        CHECK(static_cast<int>(res.trace.steps.size()) == before.obstruction);
        CHECK(after.obstruction == 0);
        CHECK(before.beta1_n - after.beta1_n == before.obstruction);
    }
}

TEST_CASE("alternative spine sets give the same regular topology") {
    IsolatingBlock a = standard_block("annulus_nonregular"); // spine {1,4}
    IsolatingBlock b = a;
    b.spines = {TransitSpine{{2, 5}}}; // a different transit route
    REQUIRE(validate(b).ok());
    RegularizeResult ra = regularize(a);
    RegularizeResult rb = regularize(b);
    CHECK(ra.block.complex.signature() == rb.block.complex.signature());
    CHECK(census(ra.block) == census(rb.block));

    IsolatingBlock c = standard_block("three_arc_circle_nonregular");
    IsolatingBlock d = c;
    // reroute the first gap's spine along the diagonal into the same hole
    auto id = [](int x, int y) { return y * 9 + x; };
    d.spines[0] = TransitSpine{{id(1, 0), id(2, 1)}};
    REQUIRE(validate(d).ok());
    RegularizeResult rc = regularize(c);
    RegularizeResult rd = regularize(d);
    CHECK(rc.block.complex.signature() == rd.block.complex.signature());
    CHECK(census(rc.block) == census(rd.block));
}

TEST_CASE("regular blocks satisfy the regularity postconditions") {
    for (const std::string& name : standard_block_names()) {
        RegularizeResult res = regularize(standard_block(name));
        for (const ComponentMarking& am : analyze_marked_components(res.block, true)) {
            if (am.component.is_circle) {
                CHECK(am.contained_in_marking);
            } else {
                CHECK(am.marking_runs.size() == 1);
                for (const GapRun& gap : am.gaps) CHECK(gap.touches_corner);
            }
        }
    }
}
