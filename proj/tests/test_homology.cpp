#include <doctest.h>

#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "csurf/builders.hpp"
#include "csurf/homology.hpp"

using namespace csurf;

namespace {

SurfaceComplex pants() {
    return remove_triangles(grid_disk(5), {2 * (4 * 1 + 1), 2 * (4 * 2 + 1) + 1});
}

SurfaceComplex holed_torus() { return remove_triangles(torus_csaszar(), {0}); }

// Independent Betti oracle: ranks of the boundary matrices of the chain
// complex (homology, not cohomology).
std::array<int, 3> betti_via_boundary_matrices(const SurfaceComplex& c) {
    const auto& edges = c.edges();
    std::map<Edge, std::size_t> epos;
    for (std::size_t i = 0; i < edges.size(); ++i) epos[edges[i]] = i;
    Gf2Matrix d1(static_cast<std::size_t>(c.vertex_count()), edges.size()); // rows vertices, cols edges
    for (std::size_t i = 0; i < edges.size(); ++i) {
        d1.set(static_cast<std::size_t>(edges[i].a), i, true);
        d1.set(static_cast<std::size_t>(edges[i].b), i, true);
    }
    Gf2Matrix d2(edges.size(), static_cast<std::size_t>(c.triangle_count()));
    for (int t = 0; t < c.triangle_count(); ++t) {
        const Triangle& tt = c.triangles()[static_cast<std::size_t>(t)];
        for (Edge e : {Edge(tt[0], tt[1]), Edge(tt[1], tt[2]), Edge(tt[0], tt[2])})
            d2.set(epos.at(e), static_cast<std::size_t>(t), true);
    }
    int r1 = static_cast<int>(d1.rank_serial());
    int r2 = static_cast<int>(d2.rank_serial());
    int b0 = c.vertex_count() - r1;
    int b1 = static_cast<int>(edges.size()) - r1 - r2;
    int b2 = c.triangle_count() - r2;
    return {b0, b1, b2};
}

struct GraphCohomology {
    int b0;
    int b1;
    Gf2Reducer coboundaries; // image of delta^0 inside the edge space
    std::vector<Edge> edges;
};

GraphCohomology graph_cohomology(const Subcomplex& a) {
    GraphCohomology g{0, 0, Gf2Reducer(a.edges.size()), {a.edges.begin(), a.edges.end()}};
    for (VertexId v : a.vertices) {
        BitRow col(words_for_bits(g.edges.size()), 0);
        for (std::size_t e = 0; e < g.edges.size(); ++e)
            if (g.edges[e].a == v || g.edges[e].b == v) row_set(col, e, true);
        g.coboundaries.absorb(std::move(col));
    }
    int components;
    {
        std::map<VertexId, VertexId> parent;
        for (VertexId v : a.vertices) parent[v] = v;
        std::function<VertexId(VertexId)> find = [&](VertexId v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        for (const Edge& e : a.edges) parent[find(e.a)] = find(e.b);
        std::set<VertexId> roots;
        for (VertexId v : a.vertices) roots.insert(find(v));
        components = static_cast<int>(roots.size());
    }
    g.b0 = components;
    g.b1 = static_cast<int>(a.edges.size()) - static_cast<int>(a.vertices.size()) + components;
    return g;
}

// Long-exact-sequence oracle for the dims of H^*(X, A), X connected.
CohomologyIndex dims_via_les(const SurfaceComplex& x, const Subcomplex& a) {
    PairComplex absolute(x, Subcomplex{});
    CohomologyIndex habs = absolute.dims();
    GraphCohomology ha = graph_cohomology(a);

    int rank_rho0 = a.vertices.empty() ? 0 : 1;
    // restriction of the H^1(X) basis to A, modulo the coboundaries of A
    int rank_rho1 = 0;
    {
        Gf2Reducer span(ha.edges.size());
        for (const auto& [pivot, row] : ha.coboundaries.rows()) {
            (void)pivot;
            span.absorb(row);
        }
        std::size_t base = span.rank();
        std::map<Edge, std::size_t> apos;
        for (std::size_t i = 0; i < ha.edges.size(); ++i) apos[ha.edges[i]] = i;
        for (const BitRow& z : absolute.h1_basis()) {
            BitRow restricted(words_for_bits(ha.edges.size()), 0);
            for (std::size_t e = 0; e < absolute.rel_edges().size(); ++e) {
                if (!row_get(z, e)) continue;
                auto it = apos.find(absolute.rel_edges()[e]);
                if (it != apos.end()) row_set(restricted, it->second, true);
            }
            span.absorb(std::move(restricted));
        }
        rank_rho1 = static_cast<int>(span.rank() - base);
    }

    CohomologyIndex out;
    out.dim0 = habs.dim0 - rank_rho0;
    out.dim1 = (habs.dim1 - rank_rho1) + (ha.b0 - rank_rho0);
    out.dim2 = habs.dim2 + (ha.b1 - rank_rho1);
    return out;
}

Subcomplex one_circle(const SurfaceComplex& c, std::size_t which) {
    auto circles = c.boundary_circles();
    Subcomplex sub;
    for (VertexId v : circles[which].vertices) sub.vertices.insert(v);
    for (const Edge& e : circles[which].edges()) sub.edges.insert(e);
    return sub;
}

} // namespace

TEST_CASE("absolute Betti numbers") {
    CHECK(betti_z2(torus_csaszar()) == std::array<int, 3>{1, 2, 1});
    CHECK(betti_z2(hexagonal_annulus()) == std::array<int, 3>{1, 1, 0});
    CHECK(betti_z2(moebius_strip_minimal()) == std::array<int, 3>{1, 1, 0});
    CHECK(betti_z2(pants()) == std::array<int, 3>{1, 2, 0});
    CHECK(betti_z2(holed_torus()) == std::array<int, 3>{1, 2, 0});
    CHECK(betti_z2(SurfaceComplex(3, {{0, 1, 2}})) == std::array<int, 3>{1, 0, 0});
}

TEST_CASE("cochain Betti numbers agree with the boundary matrix oracle") {
    for (const SurfaceComplex& c :
         {torus_csaszar(), hexagonal_annulus(), moebius_strip_minimal(), pants(), holed_torus(),
          grid_disk(4), cylinder(6, 3), moebius_band(5)}) {
        auto a = betti_z2(c);
        auto b = betti_via_boundary_matrices(c);
        CHECK(a == b);
    }
}

TEST_CASE("relative cohomology of the named pairs") {
    CHECK(relative_cohomology(torus_csaszar(), {}) == CohomologyIndex{1, 2, 1});
    CHECK(relative_cohomology(pants(), full_boundary(pants())) == CohomologyIndex{0, 2, 1});
    CHECK(relative_cohomology(hexagonal_annulus(), {}) == CohomologyIndex{1, 1, 0});
    CHECK(relative_cohomology(holed_torus(), full_boundary(holed_torus())) == CohomologyIndex{0, 2, 1});
    CHECK(relative_cohomology(moebius_strip_minimal(), full_boundary(moebius_strip_minimal())) ==
          CohomologyIndex{0, 1, 1});
    SurfaceComplex disk = grid_disk(3);
    CHECK(relative_cohomology(disk, full_boundary(disk)) == CohomologyIndex{0, 0, 1});
    // annulus relative to one of its circles is trivial
    CHECK(relative_cohomology(hexagonal_annulus(), one_circle(hexagonal_annulus(), 0)) ==
          CohomologyIndex{0, 0, 0});
}

TEST_CASE("relative dims agree with long-exact-sequence bookkeeping") {
    std::vector<std::pair<SurfaceComplex, Subcomplex>> pairs;
    pairs.push_back({pants(), full_boundary(pants())});
    pairs.push_back({holed_torus(), full_boundary(holed_torus())});
    pairs.push_back({moebius_strip_minimal(), full_boundary(moebius_strip_minimal())});
    pairs.push_back({hexagonal_annulus(), one_circle(hexagonal_annulus(), 0)});
    pairs.push_back({hexagonal_annulus(), one_circle(hexagonal_annulus(), 1)});
    pairs.push_back({grid_disk(4), full_boundary(grid_disk(4))});
    pairs.push_back({cylinder(6, 3), one_circle(cylinder(6, 3), 0)});
    pairs.push_back({moebius_band(5), full_boundary(moebius_band(5))});
    pairs.push_back({torus_csaszar(), Subcomplex{}});
    for (const auto& [x, a] : pairs) {
        CHECK(relative_cohomology(x, a) == dims_via_les(x, a));
    }
}

TEST_CASE("connected surface with boundary rel full boundary has dim2 = 1") {
    for (const SurfaceComplex& c : {hexagonal_annulus(), moebius_strip_minimal(), pants(),
                                    holed_torus(), grid_disk(4), cylinder(5, 2), moebius_band(4)}) {
        CHECK(relative_cohomology(c, full_boundary(c)).dim2 == 1);
    }
}

TEST_CASE("intersection forms of the three reference pairs") {
    IntersectionForm torus_form = intersection_form(holed_torus(), full_boundary(holed_torus()));
    CHECK(torus_form.basis_size == 2);
    CHECK(torus_form.rank == 2);
    CHECK_FALSE(torus_form.has_self_square);

    IntersectionForm moebius_form =
        intersection_form(moebius_strip_minimal(), full_boundary(moebius_strip_minimal()));
    CHECK(moebius_form.basis_size == 1);
    CHECK(moebius_form.rank == 1);
    CHECK(moebius_form.has_self_square);

    IntersectionForm pants_form = intersection_form(pants(), full_boundary(pants()));
    CHECK(pants_form.basis_size == 2);
    CHECK(pants_form.rank == 0);
    CHECK_FALSE(pants_form.has_self_square);
}

TEST_CASE("cup product: zero cocycle kills the product, non-cocycles are rejected") {
    SurfaceComplex ht = holed_torus();
    PairComplex pair(ht, full_boundary(ht));
    REQUIRE(pair.dims().dim1 == 2);
    BitRow zero(words_for_bits(pair.rel_edges().size()), 0);
    for (const BitRow& alpha : pair.h1_basis()) CHECK(pair.cup_class_zero(alpha, zero));

    BitRow bad(words_for_bits(pair.rel_edges().size()), 0);
    bool found_non_cocycle = false;
    for (std::size_t e = 0; e < pair.rel_edges().size() && !found_non_cocycle; ++e) {
        row_set(bad, e, true);
        if (!pair.is_relative_1cocycle(bad)) found_non_cocycle = true;
        else row_set(bad, e, false);
    }
    REQUIRE(found_non_cocycle);
    CHECK_THROWS_AS(pair.cup_class(bad, pair.h1_basis()[0]), Error);
}

TEST_CASE("cup pairing is bilinear on basis sums") {
    SurfaceComplex ht = holed_torus();
    PairComplex pair(ht, full_boundary(ht));
    const auto& basis = pair.h1_basis();
    REQUIRE(basis.size() == 2);
    BitRow sum = basis[0];
    row_xor(sum, basis[1]);
    for (const BitRow& alpha : basis) {
        BitRow lhs = pair.cup_class(alpha, sum);
        BitRow rhs = pair.cup_class(alpha, basis[0]);
        row_xor(rhs, pair.cup_class(alpha, basis[1]));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("rank and self-square survive a vertex relabelling") {
    std::mt19937_64 rng(2024);
    for (const SurfaceComplex& c : {holed_torus(), moebius_strip_minimal(), pants()}) {
        IntersectionForm base = intersection_form(c, full_boundary(c));
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<VertexId> perm(static_cast<std::size_t>(c.vertex_count()));
            std::iota(perm.begin(), perm.end(), 0);
            for (std::size_t i = perm.size() - 1; i > 0; --i)
                std::swap(perm[i], perm[rng() % (i + 1)]);
            std::vector<Triangle> tris;
            for (Triangle t : c.triangles())
                tris.push_back({perm[static_cast<std::size_t>(t[0])],
                                perm[static_cast<std::size_t>(t[1])],
                                perm[static_cast<std::size_t>(t[2])]});
            SurfaceComplex shuffled(c.vertex_count(), std::move(tris));
            IntersectionForm f = intersection_form(shuffled, full_boundary(shuffled));
            CHECK(f.rank == base.rank);
            CHECK(f.has_self_square == base.has_self_square);
            CHECK(f.basis_size == base.basis_size);
        }
    }
}

TEST_CASE("subcomplex errors") {
    SurfaceComplex annulus = hexagonal_annulus();
    Subcomplex not_closed;
    not_closed.edges.insert(Edge(0, 1));
    CHECK_THROWS_AS(relative_cohomology(annulus, not_closed), Error);
    Subcomplex foreign;
    foreign.vertices = {0, 9};
    CHECK_THROWS_AS(relative_cohomology(annulus, foreign), Error);
}
