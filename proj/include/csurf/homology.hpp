#pragma once

#include <array>
#include <set>
#include <vector>

#include "csurf/gf2.hpp"
#include "csurf/surface_complex.hpp"

namespace csurf {

/// Closed 1-dimensional subcomplex: a set of vertices and edges with every
/// edge endpoint present.
struct Subcomplex {
    std::set<VertexId> vertices;
    std::set<Edge> edges;

    bool empty() const { return vertices.empty() && edges.empty(); }
    bool operator==(const Subcomplex&) const = default;
};

struct CohomologyIndex {
    int dim0 = 0;
    int dim1 = 0;
    int dim2 = 0;
    auto operator<=>(const CohomologyIndex&) const = default;
};

struct IntersectionForm {
    int basis_size = 0;
    Gf2Matrix matrix; // cup-product pairing on the H^1 basis, symmetric
    int rank = 0;
    bool has_self_square = false;
};

/// Cochain complex of the pair (c, sub) over GF(2), with the global vertex
/// order fixing simplex orientation for the cup product.
class PairComplex {
public:
    /// Throws Error(not_a_subcomplex) if sub is not a closed subcomplex of c.
    PairComplex(const SurfaceComplex& c, Subcomplex sub);

    const SurfaceComplex& complex() const { return c_; }
    const Subcomplex& sub() const { return sub_; }

    const std::vector<Edge>& rel_edges() const { return rel_edges_; }
    const std::vector<int>& rel_triangles() const { return rel_tris_; }

    CohomologyIndex dims() const { return dims_; }

    /// Representative relative 1-cocycles, one BitRow over rel_edges() per
    /// H^1 basis class. Deterministic in the fixed simplex order.
    const std::vector<BitRow>& h1_basis() const { return h1_basis_; }
    /// Canonical residue representatives of an H^2 basis over rel_triangles().
    const std::vector<BitRow>& h2_basis() const { return h2_basis_; }

    bool is_relative_1cocycle(const BitRow& alpha) const;

    /// Cup product of two relative 1-cocycles: value on [v0<v1<v2] is
    /// alpha([v0,v1]) * beta([v1,v2]). Returns the canonical residue of the
    /// class modulo coboundaries. Throws Error(not_a_cocycle).
    BitRow cup_class(const BitRow& alpha, const BitRow& beta) const;
    bool cup_class_zero(const BitRow& alpha, const BitRow& beta) const;

    /// Coefficients of a canonical H^2 residue in the h2_basis().
    std::vector<std::uint8_t> h2_coordinates(const BitRow& residue) const;

    IntersectionForm intersection_form() const;

private:
    SurfaceComplex c_;
    Subcomplex sub_;
    std::vector<VertexId> rel_verts_;
    std::vector<Edge> rel_edges_;
    std::vector<int> rel_tris_; // triangle indices; all triangles (sub is 1-dimensional)
    std::vector<int> edge_pos_; // global edge index -> relative position or -1
    Gf2Matrix d0_; // rows = rel edges, cols = rel vertices
    Gf2Matrix d1_; // rows = rel triangles, cols = rel edges
    CohomologyIndex dims_;
    Gf2Reducer coboundary1_; // image of d0 inside C^1
    Gf2Reducer coboundary2_; // image of d1 inside C^2
    std::vector<BitRow> h1_basis_;
    std::vector<BitRow> h2_basis_;
};

CohomologyIndex relative_cohomology(const SurfaceComplex& c, const Subcomplex& sub);
IntersectionForm intersection_form(const SurfaceComplex& c, const Subcomplex& sub);

/// Absolute Z2 Betti numbers (beta0, beta1, beta2).
std::array<int, 3> betti_z2(const SurfaceComplex& c);

/// The full boundary of c as a Subcomplex.
Subcomplex full_boundary(const SurfaceComplex& c);

} // namespace csurf
