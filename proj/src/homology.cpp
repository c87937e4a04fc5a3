#include "csurf/homology.hpp"

#include <algorithm>

namespace csurf {

Subcomplex full_boundary(const SurfaceComplex& c) {
    Subcomplex sub;
    for (const Edge& e : c.edges()) {
        if (c.is_boundary_edge(e)) {
            sub.edges.insert(e);
            sub.vertices.insert(e.a);
            sub.vertices.insert(e.b);
        }
    }
    return sub;
}

PairComplex::PairComplex(const SurfaceComplex& c, Subcomplex sub)
    : c_(c), sub_(std::move(sub)), coboundary1_(0), coboundary2_(0) {
    for (VertexId v : sub_.vertices)
        if (v < 0 || v >= c_.vertex_count())
            throw Error(errc::not_a_subcomplex, "subcomplex vertex " + std::to_string(v) + " out of range");
    for (const Edge& e : sub_.edges) {
        if (!c_.has_edge(e))
            throw Error(errc::not_a_subcomplex, "subcomplex edge not an edge of the complex");
        if (!sub_.vertices.count(e.a) || !sub_.vertices.count(e.b))
            throw Error(errc::not_a_subcomplex, "subcomplex not closed: edge endpoint missing");
    }

    for (VertexId v = 0; v < c_.vertex_count(); ++v)
        if (!sub_.vertices.count(v)) rel_verts_.push_back(v);
    edge_pos_.assign(c_.edges().size(), -1);
    for (std::size_t i = 0; i < c_.edges().size(); ++i) {
        if (!sub_.edges.count(c_.edges()[i])) {
            edge_pos_[i] = static_cast<int>(rel_edges_.size());
            rel_edges_.push_back(c_.edges()[i]);
        }
    }
    for (int t = 0; t < c_.triangle_count(); ++t) rel_tris_.push_back(t);

    std::map<VertexId, int> vert_pos;
    for (std::size_t i = 0; i < rel_verts_.size(); ++i) vert_pos[rel_verts_[i]] = static_cast<int>(i);
    std::map<Edge, int> rel_edge_pos;
    for (std::size_t i = 0; i < rel_edges_.size(); ++i) rel_edge_pos[rel_edges_[i]] = static_cast<int>(i);

    d0_ = Gf2Matrix(rel_edges_.size(), rel_verts_.size());
    for (std::size_t i = 0; i < rel_edges_.size(); ++i) {
        const Edge& e = rel_edges_[i];
        auto it = vert_pos.find(e.a);
        if (it != vert_pos.end()) d0_.set(i, static_cast<std::size_t>(it->second), true);
        it = vert_pos.find(e.b);
        if (it != vert_pos.end()) d0_.set(i, static_cast<std::size_t>(it->second), true);
    }

    d1_ = Gf2Matrix(rel_tris_.size(), rel_edges_.size());
    for (std::size_t i = 0; i < rel_tris_.size(); ++i) {
        const Triangle& t = c_.triangles()[static_cast<std::size_t>(rel_tris_[i])];
        for (Edge e : {Edge(t[0], t[1]), Edge(t[1], t[2]), Edge(t[0], t[2])}) {
            auto it = rel_edge_pos.find(e);
            if (it != rel_edge_pos.end()) d1_.set(i, static_cast<std::size_t>(it->second), true);
        }
    }

    const std::size_t n0 = rel_verts_.size();
    const std::size_t n1 = rel_edges_.size();
    const std::size_t n2 = rel_tris_.size();
    const std::size_t rank_d0 = d0_.rank();
    const std::size_t rank_d1 = d1_.rank();

    // ker d1 has dimension n1 - rank_d1; H^1 = ker d1 / im d0.
    dims_.dim0 = static_cast<int>(n0 - rank_d0);
    dims_.dim1 = static_cast<int>(n1 - rank_d1 - rank_d0);
    dims_.dim2 = static_cast<int>(n2 - rank_d1);

    // Coboundary spaces as reducers for canonical coset representatives.
    coboundary1_ = Gf2Reducer(n1);
    for (std::size_t v = 0; v < n0; ++v) {
        BitRow col(words_for_bits(n1), 0);
        for (std::size_t e = 0; e < n1; ++e)
            if (d0_.get(e, v)) row_set(col, e, true);
        coboundary1_.absorb(std::move(col));
    }
    coboundary2_ = Gf2Reducer(n2);
    for (std::size_t e = 0; e < n1; ++e) {
        BitRow col(words_for_bits(n2), 0);
        for (std::size_t t = 0; t < n2; ++t)
            if (d1_.get(t, e)) row_set(col, t, true);
        coboundary2_.absorb(std::move(col));
    }

    // H^1 basis: nullspace of d1 reduced modulo im d0, keeping independent
    // residues. Residues of cocycles are cocycles, so these are
    // representatives.
    {
        Gf2Reducer h1(n1);
        for (const auto& [pivot, row] : coboundary1_.rows()) {
            (void)pivot;
            h1.absorb(row);
        }
        for (BitRow& z : d1_.nullspace()) {
            BitRow residue = coboundary1_.reduce(std::move(z));
            if (h1.absorb(residue)) h1_basis_.push_back(std::move(residue));
        }
    }
    // H^2 basis: canonical residues of unit triangle cochains.
    {
        Gf2Reducer h2(n2);
        for (const auto& [pivot, row] : coboundary2_.rows()) {
            (void)pivot;
            h2.absorb(row);
        }
        for (std::size_t t = 0; t < n2 && h2_basis_.size() < static_cast<std::size_t>(dims_.dim2); ++t) {
            BitRow unit(words_for_bits(n2), 0);
            row_set(unit, t, true);
            BitRow residue = coboundary2_.reduce(std::move(unit));
            if (h2.absorb(residue)) h2_basis_.push_back(std::move(residue));
        }
    }
}

bool PairComplex::is_relative_1cocycle(const BitRow& alpha) const {
    if (alpha.size() != words_for_bits(rel_edges_.size())) return false;
    return row_zero(d1_.multiply(alpha));
}

BitRow PairComplex::cup_class(const BitRow& alpha, const BitRow& beta) const {
    if (!is_relative_1cocycle(alpha) || !is_relative_1cocycle(beta))
        throw Error(errc::not_a_cocycle, "cup product requires relative 1-cocycles");
    BitRow product(words_for_bits(rel_tris_.size()), 0);
    for (std::size_t i = 0; i < rel_tris_.size(); ++i) {
        Triangle t = c_.triangles()[static_cast<std::size_t>(rel_tris_[i])];
        std::sort(t.begin(), t.end());
        auto value = [&](const BitRow& cochain, Edge e) -> bool {
            auto it = std::lower_bound(rel_edges_.begin(), rel_edges_.end(), e);
            if (it == rel_edges_.end() || !(*it == e)) return false; // edge in sub: cochain vanishes
            return row_get(cochain, static_cast<std::size_t>(it - rel_edges_.begin()));
        };
        bool front = value(alpha, Edge(t[0], t[1]));
        bool back = value(beta, Edge(t[1], t[2]));
        if (front && back) row_set(product, i, true);
    }
    return coboundary2_.reduce(std::move(product));
}

bool PairComplex::cup_class_zero(const BitRow& alpha, const BitRow& beta) const {
    return row_zero(cup_class(alpha, beta));
}

std::vector<std::uint8_t> PairComplex::h2_coordinates(const BitRow& residue) const {
    // Solve residue = sum of basis residues; basis residues are canonical and
    // independent, so elimination over them is exact.
    std::vector<std::uint8_t> coords(h2_basis_.size(), 0);
    BitRow v = residue;
    // Repeatedly match the lowest set bit against a basis vector's lowest bit.
    const std::size_t bits = rel_tris_.size();
    std::vector<std::size_t> lead(h2_basis_.size(), bits);
    for (std::size_t j = 0; j < h2_basis_.size(); ++j)
        for (std::size_t i = 0; i < bits; ++i)
            if (row_get(h2_basis_[j], i)) {
                lead[j] = i;
                break;
            }
    bool progress = true;
    while (progress && !row_zero(v)) {
        progress = false;
        std::size_t low = bits;
        for (std::size_t i = 0; i < bits; ++i)
            if (row_get(v, i)) {
                low = i;
                break;
            }
        for (std::size_t j = 0; j < h2_basis_.size(); ++j) {
            if (lead[j] == low) {
                row_xor(v, h2_basis_[j]);
                coords[j] ^= 1;
                progress = true;
                break;
            }
        }
    }
    if (!row_zero(v))
        throw Error(errc::inconsistent_data, "residue not expressible in H^2 basis");
    return coords;
}

IntersectionForm PairComplex::intersection_form() const {
    IntersectionForm form;
    form.basis_size = dims_.dim1;
    form.matrix = Gf2Matrix(static_cast<std::size_t>(dims_.dim1), static_cast<std::size_t>(dims_.dim1));
    for (int i = 0; i < dims_.dim1; ++i) {
        for (int j = 0; j < dims_.dim1; ++j) {
            bool nonzero = !cup_class_zero(h1_basis_[static_cast<std::size_t>(i)],
                                           h1_basis_[static_cast<std::size_t>(j)]);
            form.matrix.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), nonzero);
        }
    }
    // Cup product is symmetric at the class level over Z2.
    for (int i = 0; i < dims_.dim1; ++i)
        for (int j = 0; j < i; ++j)
            if (form.matrix.get(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) !=
                form.matrix.get(static_cast<std::size_t>(j), static_cast<std::size_t>(i)))
                throw std::logic_error("cup pairing not symmetric at class level");
    form.rank = static_cast<int>(form.matrix.rank());
    // alpha -> alpha cup alpha is linear over Z2, so the diagonal decides.
    form.has_self_square = false;
    for (int i = 0; i < dims_.dim1; ++i)
        if (form.matrix.get(static_cast<std::size_t>(i), static_cast<std::size_t>(i)))
            form.has_self_square = true;
    return form;
}

CohomologyIndex relative_cohomology(const SurfaceComplex& c, const Subcomplex& sub) {
    return PairComplex(c, sub).dims();
}

IntersectionForm intersection_form(const SurfaceComplex& c, const Subcomplex& sub) {
    return PairComplex(c, sub).intersection_form();
}

std::array<int, 3> betti_z2(const SurfaceComplex& c) {
    CohomologyIndex d = relative_cohomology(c, Subcomplex{});
    return {d.dim0, d.dim1, d.dim2};
}

} // namespace csurf
