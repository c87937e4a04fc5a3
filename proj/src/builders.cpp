#include "csurf/builders.hpp"

#include <algorithm>
#include <random>

namespace csurf {

namespace {

Subcomplex subcomplex_of_edges(const std::vector<Edge>& edges) {
    Subcomplex s;
    for (const Edge& e : edges) {
        s.edges.insert(e);
        s.vertices.insert(e.a);
        s.vertices.insert(e.b);
    }
    return s;
}

Subcomplex boundary_subcomplex(const SurfaceComplex& c) { return full_boundary(c); }

std::set<Edge> all_boundary_edges(const SurfaceComplex& c) {
    std::set<Edge> out;
    for (const Edge& e : c.edges())
        if (c.is_boundary_edge(e)) out.insert(e);
    return out;
}

std::vector<Edge> circle_edges(const BoundaryCircle& circle) { return circle.edges(); }

} // namespace

SurfaceComplex grid_disk(int n) {
    auto id = [n](int x, int y) { return y * n + x; };
    std::vector<Triangle> tris;
    for (int y = 0; y + 1 < n; ++y) {
        for (int x = 0; x + 1 < n; ++x) {
            tris.push_back({id(x, y), id(x + 1, y), id(x + 1, y + 1)});
            tris.push_back({id(x, y), id(x + 1, y + 1), id(x, y + 1)});
        }
    }
    return SurfaceComplex(n * n, std::move(tris));
}

SurfaceComplex hexagonal_annulus() {
    std::vector<Triangle> tris = {{0, 1, 4}, {0, 4, 3}, {1, 2, 5}, {1, 5, 4}, {2, 0, 3}, {2, 3, 5}};
    return SurfaceComplex(6, std::move(tris));
}

SurfaceComplex moebius_strip_minimal() {
    std::vector<Triangle> tris;
    for (int i = 0; i < 5; ++i) tris.push_back({i, (i + 1) % 5, (i + 2) % 5});
    return SurfaceComplex(5, std::move(tris));
}

SurfaceComplex moebius_band(int length) {
    // Band of quads with one half twist: top vertex i is t(i)=2i, bottom is
    // b(i)=2i+1; column `length` glues back to column 0 swapped.
    auto top = [length](int i) { return i == length ? 1 : 2 * i; };
    auto bottom = [length](int i) { return i == length ? 0 : 2 * i + 1; };
    std::vector<Triangle> tris;
    for (int i = 0; i < length; ++i) {
        tris.push_back({top(i), bottom(i), top(i + 1)});
        tris.push_back({bottom(i), bottom(i + 1), top(i + 1)});
    }
    return SurfaceComplex(2 * length, std::move(tris));
}

SurfaceComplex torus_csaszar() {
    std::vector<Triangle> tris;
    for (int i = 0; i < 7; ++i) tris.push_back({i, (i + 1) % 7, (i + 3) % 7});
    for (int i = 0; i < 7; ++i) tris.push_back({i, (i + 2) % 7, (i + 3) % 7});
    return SurfaceComplex(7, std::move(tris));
}

SurfaceComplex cylinder(int columns, int rings) {
    const int m = columns;
    std::vector<Triangle> tris;
    for (int band = 0; band + 1 < rings; ++band) {
        for (int j = 0; j < m; ++j) {
            int a = band * m + j;
            int b = band * m + (j + 1) % m;
            int c = (band + 1) * m + j;
            int d = (band + 1) * m + (j + 1) % m;
            tris.push_back({a, b, c});
            tris.push_back({b, d, c});
        }
    }
    return SurfaceComplex(m * rings, std::move(tris));
}

SurfaceComplex remove_triangles(const SurfaceComplex& c, const std::vector<int>& tri_indices) {
    std::set<int> drop(tri_indices.begin(), tri_indices.end());
    std::vector<Triangle> tris;
    for (int i = 0; i < c.triangle_count(); ++i)
        if (!drop.count(i)) tris.push_back(c.triangles()[static_cast<std::size_t>(i)]);
    return SurfaceComplex(c.vertex_count(), std::move(tris));
}

namespace {

IsolatingBlock make_pants_repeller() {
    // 5x5 grid disk with two interior triangles removed: a sphere with three
    // boundary circles. Everything exits and n_minus fills the boundary.
    SurfaceComplex disk = grid_disk(5);
    // lower triangle of cell (1,1) and upper triangle of cell (1,2)
    SurfaceComplex pants = remove_triangles(disk, {2 * (4 * 1 + 1), 2 * (4 * 2 + 1) + 1});
    IsolatingBlock b{pants, all_boundary_edges(pants), boundary_subcomplex(pants), {}, {}, false,
                     "pants_repeller"};
    return b;
}

IsolatingBlock make_genus1_repeller() {
    SurfaceComplex torus = torus_csaszar();
    SurfaceComplex holed = remove_triangles(torus, {0}); // triangle {0,1,3}
    IsolatingBlock b{holed, all_boundary_edges(holed), boundary_subcomplex(holed), {}, {}, false,
                     "genus1_repeller"};
    return b;
}

IsolatingBlock make_moebius_repeller() {
    SurfaceComplex m = moebius_strip_minimal();
    IsolatingBlock b{m, all_boundary_edges(m), boundary_subcomplex(m), {}, {}, false, "moebius_repeller"};
    return b;
}

IsolatingBlock make_annulus_attractor() {
    SurfaceComplex a = hexagonal_annulus();
    IsolatingBlock b{a, {}, {}, boundary_subcomplex(a), {}, false, "annulus_attractor"};
    return b;
}

IsolatingBlock make_annulus_cycle_mixed() {
    SurfaceComplex a = hexagonal_annulus();
    std::vector<Edge> outer = {Edge(0, 1), Edge(1, 2), Edge(0, 2)};
    std::vector<Edge> inner = {Edge(3, 4), Edge(4, 5), Edge(3, 5)};
    IsolatingBlock b{a,
                     std::set<Edge>(outer.begin(), outer.end()),
                     subcomplex_of_edges(outer),
                     subcomplex_of_edges(inner),
                     {},
                     false,
                     "annulus_cycle_mixed"};
    return b;
}

IsolatingBlock make_square_saddle() {
    SurfaceComplex g = grid_disk(3);
    std::set<Edge> exit = {Edge(0, 1), Edge(1, 2), Edge(7, 8), Edge(6, 7)};
    IsolatingBlock b{g, exit, Subcomplex{{1, 7}, {}}, Subcomplex{{3, 5}, {}}, {}, false, "square_saddle"};
    return b;
}

IsolatingBlock make_disk_focus_repeller() {
    std::vector<Triangle> tris;
    for (int i = 0; i < 6; ++i) tris.push_back({i, (i + 1) % 6, 6});
    SurfaceComplex disk(7, std::move(tris));
    IsolatingBlock b{disk, all_boundary_edges(disk), boundary_subcomplex(disk), {}, {}, false,
                     "disk_focus_repeller"};
    return b;
}

IsolatingBlock make_annulus_nonregular() {
    SurfaceComplex a = hexagonal_annulus();
    std::vector<Edge> outer = {Edge(0, 1), Edge(1, 2), Edge(0, 2)};
    IsolatingBlock b{a,
                     std::set<Edge>(outer.begin(), outer.end()),
                     Subcomplex{{0}, {}},
                     Subcomplex{{3}, {}},
                     {TransitSpine{{1, 4}}},
                     false,
                     "annulus_nonregular"};
    return b;
}

IsolatingBlock make_saddle_node_disk() {
    SurfaceComplex g = grid_disk(3);
    std::set<Edge> exit = {Edge(0, 1), Edge(1, 2), Edge(2, 5), Edge(5, 8)};
    IsolatingBlock b{g, exit, Subcomplex{{2}, {}}, Subcomplex{{6}, {}}, {}, false, "saddle_node_disk"};
    return b;
}

IsolatingBlock make_three_arc_circle_nonregular() {
    // 9x9 grid disk with three interior holes. The outer circle exits and
    // n_minus covers it except for three gaps (at (1,0), (4,0), (7,0)), so
    // its three components are honest arcs; the holes are the entrance. One
    // spine per gap reaches "its" hole and regularization takes exactly
    // three cuts, each joining the outer circle to a different hole.
    SurfaceComplex disk = grid_disk(9);
    auto id = [](int x, int y) { return y * 9 + x; };
    int hole_a = 2 * (8 * 1 + 1); // lower tri of cell (1,1): {10, 11, 20}
    int hole_b = 2 * (8 * 1 + 4); // lower tri of cell (4,1): {13, 14, 23}
    int hole_c = 2 * (8 * 2 + 6); // lower tri of cell (6,2): {24, 25, 34}
    SurfaceComplex holed = remove_triangles(disk, {hole_a, hole_b, hole_c});

    std::set<Edge> exit;
    Subcomplex n_minus;
    for (const BoundaryCircle& bc : holed.boundary_circles()) {
        if (bc.size() < 10) continue; // hole circles have 3 vertices
        for (const Edge& e : circle_edges(bc)) exit.insert(e);
        for (VertexId v : bc.vertices)
            if (v != id(1, 0) && v != id(4, 0) && v != id(7, 0)) n_minus.vertices.insert(v);
        for (const Edge& e : circle_edges(bc))
            if (n_minus.vertices.count(e.a) && n_minus.vertices.count(e.b)) n_minus.edges.insert(e);
    }
    Subcomplex n_plus;
    n_plus.vertices = {id(2, 2), id(5, 2), id(6, 2)};

    std::vector<TransitSpine> spines = {
        TransitSpine{{id(1, 0), id(1, 1)}},
        TransitSpine{{id(4, 0), id(4, 1)}},
        TransitSpine{{id(7, 0), id(7, 1), id(7, 2)}},
    };
    IsolatingBlock b{holed, std::move(exit), std::move(n_minus), std::move(n_plus), std::move(spines),
                     false, "three_arc_circle_nonregular"};
    return b;
}

const std::vector<std::string> kRecipeNames = {
    "pants_repeller",     "genus1_repeller",       "moebius_repeller",
    "annulus_attractor",  "annulus_cycle_mixed",   "square_saddle",
    "disk_focus_repeller", "annulus_nonregular",   "saddle_node_disk",
    "three_arc_circle_nonregular",
};

} // namespace

const std::vector<std::string>& standard_block_names() { return kRecipeNames; }

IsolatingBlock standard_block(const std::string& name) {
    if (name == "pants_repeller") return make_pants_repeller();
    if (name == "genus1_repeller") return make_genus1_repeller();
    if (name == "moebius_repeller") return make_moebius_repeller();
    if (name == "annulus_attractor") return make_annulus_attractor();
    if (name == "annulus_cycle_mixed") return make_annulus_cycle_mixed();
    if (name == "square_saddle") return make_square_saddle();
    if (name == "disk_focus_repeller") return make_disk_focus_repeller();
    if (name == "annulus_nonregular") return make_annulus_nonregular();
    if (name == "saddle_node_disk") return make_saddle_node_disk();
    if (name == "three_arc_circle_nonregular") return make_three_arc_circle_nonregular();
    throw Error(errc::unknown_recipe, "no recipe named \"" + name + "\"");
}

namespace {

using Rng = std::mt19937_64;

std::uint64_t pick(Rng& rng, std::uint64_t n) { return rng() % n; }

// Marks one closed run (single vertex or short arc) strictly inside an
// interval component given by its ordered vertices.
void mark_inside(Subcomplex& marking, const std::vector<VertexId>& verts, std::size_t at,
                 std::size_t arc_len) {
    for (std::size_t i = 0; i < arc_len && at + i < verts.size() - 1; ++i) {
        marking.vertices.insert(verts[at + i]);
        if (i + 1 < arc_len && at + i + 1 < verts.size() - 1) {
            marking.vertices.insert(verts[at + i + 1]);
            marking.edges.insert(Edge(verts[at + i], verts[at + i + 1]));
        }
    }
}

// Random alternating exit/entrance runs around one boundary circle, with one
// marking run strictly inside every labelled arc. Produces a regular side.
void random_mixed_circle(Rng& rng, const BoundaryCircle& circle, bool first_run_exits,
                         std::set<Edge>& exit, Subcomplex& n_minus, Subcomplex& n_plus) {
    const auto& v = circle.vertices;
    const std::size_t n = v.size();
    const std::size_t pairs = (n >= 16 && pick(rng, 2)) ? 2 : 1;
    const std::size_t runs = 2 * pairs;
    // Run lengths >= 3 edges so every arc has a non-corner interior vertex
    // to carry its marking.
    std::vector<std::size_t> len(runs, 3);
    std::size_t rest = n - 3 * runs;
    for (std::size_t i = 0; i < runs; ++i) {
        std::size_t extra = pick(rng, rest + 1);
        len[i] += extra;
        rest -= extra;
    }
    len[runs - 1] += rest;

    std::size_t pos = 0;
    bool exits = first_run_exits;
    for (std::size_t r = 0; r < runs; ++r) {
        std::vector<VertexId> arc;
        for (std::size_t i = 0; i <= len[r]; ++i) arc.push_back(v[(pos + i) % n]);
        for (std::size_t i = 0; i + 1 < arc.size(); ++i)
            if (exits) exit.insert(Edge(arc[i], arc[i + 1]));
        // one marking run strictly inside
        std::size_t interior = arc.size() - 2;
        std::size_t at = 1 + pick(rng, interior);
        std::size_t arc_len = 1 + pick(rng, 2);
        mark_inside(exits ? n_minus : n_plus, arc, at, arc_len);
        pos = (pos + len[r]) % n;
        exits = !exits;
    }
}

IsolatingBlock random_disk_block(Rng& rng, int budget, const std::string& name) {
    int s = 3 + static_cast<int>(pick(rng, 4));
    while (2 * (s - 1) * (s - 1) > budget && s > 3) --s;
    SurfaceComplex disk = grid_disk(s);
    std::uint64_t kind = pick(rng, 3);
    if (kind == 0) {
        return {disk, all_boundary_edges(disk), boundary_subcomplex(disk), {}, {}, false, name + "-disk-repeller"};
    }
    if (kind == 1) {
        return {disk, {}, {}, boundary_subcomplex(disk), {}, false, name + "-disk-attractor"};
    }
    std::set<Edge> exit;
    Subcomplex n_minus, n_plus;
    random_mixed_circle(rng, disk.boundary_circles()[0], pick(rng, 2) == 0, exit, n_minus, n_plus);
    return {disk, std::move(exit), std::move(n_minus), std::move(n_plus), {}, false, name + "-disk-mixed"};
}

IsolatingBlock random_cylinder_block(Rng& rng, int budget, const std::string& name) {
    std::uint64_t kind = pick(rng, 5);
    int rings = (kind == 4) ? 3 : 2 + static_cast<int>(pick(rng, 2));
    int m = 8 + static_cast<int>(pick(rng, 9));
    while (2 * m * (rings - 1) > budget && m > 4) --m;
    SurfaceComplex cyl = cylinder(m, rings);
    auto circles = cyl.boundary_circles();
    std::vector<Edge> outer = circle_edges(circles[0]);
    std::vector<Edge> inner = circle_edges(circles[1]);

    if (kind == 0)
        return {cyl, all_boundary_edges(cyl), boundary_subcomplex(cyl), {}, {}, false, name + "-tube-repeller"};
    if (kind == 1)
        return {cyl, {}, {}, boundary_subcomplex(cyl), {}, false, name + "-tube-attractor"};
    if (kind == 2)
        return {cyl,
                std::set<Edge>(outer.begin(), outer.end()),
                subcomplex_of_edges(outer),
                subcomplex_of_edges(inner),
                {},
                false,
                name + "-tube-cycle"};
    if (kind == 3) {
        // Mixed labels on the outer circle, entrance inner circle.
        std::set<Edge> exit;
        Subcomplex n_minus, n_plus;
        random_mixed_circle(rng, circles[0], pick(rng, 2) == 0, exit, n_minus, n_plus);
        for (const Edge& e : inner) {
            n_plus.vertices.insert(e.a);
            n_plus.vertices.insert(e.b);
            n_plus.edges.insert(e);
        }
        return {cyl, std::move(exit), std::move(n_minus), std::move(n_plus), {}, false, name + "-tube-mixed"};
    }
    // kind == 4: one gap on the exit circle, spine through the middle ring.
    int g = static_cast<int>(pick(rng, static_cast<std::uint64_t>(m)));
    std::set<Edge> exit(outer.begin(), outer.end());
    Subcomplex n_minus;
    for (int j = 0; j < m; ++j)
        if (j != g) n_minus.vertices.insert(j);
    for (const Edge& e : outer)
        if (n_minus.vertices.count(e.a) && n_minus.vertices.count(e.b)) n_minus.edges.insert(e);
    Subcomplex n_plus;
    n_plus.vertices.insert(2 * m + (g + 1) % m);
    TransitSpine spine{{g, m + g, 2 * m + g}};
    return {cyl,    std::move(exit), std::move(n_minus), std::move(n_plus), {spine},
            false, name + "-tube-nonregular"};
}

IsolatingBlock random_torus_block(Rng& rng, const std::string& name) {
    SurfaceComplex torus = torus_csaszar();
    std::uint64_t kind = pick(rng, 4);
    if (kind == 0) {
        SurfaceComplex holed = remove_triangles(torus, {0});
        return {holed, all_boundary_edges(holed), boundary_subcomplex(holed), {}, {}, false,
                name + "-torus-repeller"};
    }
    // two vertex-disjoint holes: triangles {0,1,3} and {2,4,5}
    SurfaceComplex holed = remove_triangles(torus, {0, 9});
    if (kind == 1)
        return {holed, all_boundary_edges(holed), boundary_subcomplex(holed), {}, {}, false,
                name + "-torus2-repeller"};
    if (kind == 2)
        return {holed, {}, {}, boundary_subcomplex(holed), {}, false, name + "-torus2-attractor"};
    // kind == 3: first hole exits with one gap at vertex 0, second hole
    // enters with the spine target 2 left unmarked.
    std::vector<Edge> hole1 = {Edge(0, 1), Edge(1, 3), Edge(0, 3)};
    std::set<Edge> exit(hole1.begin(), hole1.end());
    Subcomplex n_minus;
    n_minus.vertices = {1, 3};
    n_minus.edges = {Edge(1, 3)};
    Subcomplex n_plus;
    n_plus.vertices = {4, 5};
    n_plus.edges = {Edge(4, 5)};
    return {holed, std::move(exit), std::move(n_minus), std::move(n_plus),
            {TransitSpine{{0, 2}}}, false, name + "-torus2-nonregular"};
}

IsolatingBlock random_moebius_block(Rng& rng, int budget, const std::string& name) {
    int len = 3 + static_cast<int>(pick(rng, 5));
    while (2 * len > budget && len > 3) --len;
    SurfaceComplex band = moebius_band(len);
    if (pick(rng, 2) == 0)
        return {band, all_boundary_edges(band), boundary_subcomplex(band), {}, {}, false,
                name + "-moebius-repeller"};
    return {band, {}, {}, boundary_subcomplex(band), {}, false, name + "-moebius-attractor"};
}

IsolatingBlock random_holed_disk_block(Rng& rng, const std::string& name) {
    // Same layout as three_arc_circle_nonregular with one or two gaps.
    IsolatingBlock b = make_three_arc_circle_nonregular();
    b.name = name + "-holed-disk";
    if (pick(rng, 2) == 0) return b;
    // Close the third gap: put (7,0) back into n_minus and drop its spine.
    // The spineless hole then carries a full n_plus circle so the reverse
    // block stays regularizable.
    auto id = [](int x, int y) { return y * 9 + x; };
    b.name += "-2gaps";
    b.n_minus.vertices.insert(id(7, 0));
    b.n_minus.edges.insert(Edge(id(6, 0), id(7, 0)));
    b.n_minus.edges.insert(Edge(id(7, 0), id(8, 0)));
    b.spines.pop_back();
    for (VertexId v : {id(6, 2), id(7, 2), id(7, 3)}) b.n_plus.vertices.insert(v);
    b.n_plus.edges.insert(Edge(id(6, 2), id(7, 2)));
    b.n_plus.edges.insert(Edge(id(7, 2), id(7, 3)));
    b.n_plus.edges.insert(Edge(id(6, 2), id(7, 3)));
    return b;
}

} // namespace

IsolatingBlock random_block(std::uint64_t seed, int triangle_budget) {
    Rng rng(seed * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull);
    int budget = std::clamp(triangle_budget, 20, 500);
    std::string name = "random-" + std::to_string(seed);

    IsolatingBlock b = [&]() -> IsolatingBlock {
        for (;;) {
            std::uint64_t family = pick(rng, 5);
            switch (family) {
            case 0: return random_disk_block(rng, budget, name);
            case 1: return random_cylinder_block(rng, budget, name);
            case 2: return random_torus_block(rng, name);
            case 3: return random_moebius_block(rng, budget, name);
            case 4:
                if (budget >= 130) return random_holed_disk_block(rng, name);
                break; // too big for the budget, redraw
            }
        }
    }();
    require_valid(b);
    return b;
}

} // namespace csurf
