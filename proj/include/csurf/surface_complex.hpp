#pragma once

#include <array>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "csurf/errors.hpp"

namespace csurf {

using VertexId = int;

/// Unordered vertex pair, stored with the smaller id first.
struct Edge {
    VertexId a = 0;
    VertexId b = 0;
    Edge() = default;
    Edge(VertexId u, VertexId v) : a(u < v ? u : v), b(u < v ? v : u) {}
    auto operator<=>(const Edge&) const = default;
};

using Triangle = std::array<VertexId, 3>;

struct TopSignature {
    int euler = 0;
    bool orientable = true;
    int genus = 0;
    int boundary_circles = 0;
    bool connected = true;
    auto operator<=>(const TopSignature&) const = default;
};

/// Cyclic sequence of boundary vertices; consecutive entries (and last-first)
/// are joined by boundary edges.
struct BoundaryCircle {
    std::vector<VertexId> vertices;

    std::size_t size() const { return vertices.size(); }
    std::vector<Edge> edges() const;
    bool contains_vertex(VertexId v) const;
};

/// Triangulated compact surface, possibly with boundary. Immutable after
/// construction; every surgery returns a new complex.
class SurfaceComplex {
public:
    /// Throws Error(invalid_complex) unless the triangle list describes a
    /// surface with boundary (edge multiplicity <= 2, vertex links single
    /// paths or cycles, no isolated vertices, no duplicate triangles).
    SurfaceComplex(int vertex_count, std::vector<Triangle> triangles);

    /// Non-throwing validity check; returns one message per violation.
    static std::vector<std::string> check(int vertex_count, const std::vector<Triangle>& triangles);

    int vertex_count() const { return vertex_count_; }
    const std::vector<Triangle>& triangles() const { return triangles_; }
    int triangle_count() const { return static_cast<int>(triangles_.size()); }

    const std::vector<Edge>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    bool has_edge(Edge e) const { return edge_index_.count(e) > 0; }
    /// Indices of the triangles containing e (one or two entries).
    const std::vector<int>& triangles_of_edge(Edge e) const;

    bool is_boundary_edge(Edge e) const { return triangles_of_edge(e).size() == 1; }
    bool is_boundary_vertex(VertexId v) const { return boundary_vertex_[static_cast<std::size_t>(v)]; }
    bool is_interior_vertex(VertexId v) const { return !is_boundary_vertex(v); }
    const std::vector<int>& triangles_of_vertex(VertexId v) const {
        return vertex_triangles_[static_cast<std::size_t>(v)];
    }

    int euler_characteristic() const;
    bool connected() const;

    std::vector<BoundaryCircle> boundary_circles() const;

    /// Throws Error(disconnected) when the complex is not connected.
    TopSignature signature() const;

    bool operator==(const SurfaceComplex& other) const {
        return vertex_count_ == other.vertex_count_ && triangles_ == other.triangles_;
    }

private:
    int vertex_count_ = 0;
    std::vector<Triangle> triangles_;
    std::vector<Edge> edges_;
    std::map<Edge, int> edge_index_;
    std::vector<std::vector<int>> edge_triangles_;
    std::vector<std::vector<int>> vertex_triangles_;
    std::vector<bool> boundary_vertex_;
};

/// Result of cutting a surface open along a path: `complex` is the cut
/// surface; path vertex i keeps its id on one side and receives copy
/// `side1_ids[i]` on the other.
struct CutResult {
    SurfaceComplex complex;
    std::vector<VertexId> side1_ids;
    int old_vertex_count = 0;
};

/// Cuts the surface open along a simple path whose endpoints lie on the
/// boundary and whose interior vertices and edges are interior. Every path
/// vertex is duplicated, every path edge becomes two boundary edges, and the
/// Euler characteristic increases by exactly one.
CutResult cut_along_path_traced(const SurfaceComplex& c, const std::vector<VertexId>& path);
SurfaceComplex cut_along_path(const SurfaceComplex& c, const std::vector<VertexId>& path);

/// Caps one boundary circle with a new cone vertex, one triangle per circle
/// edge.
SurfaceComplex cap_boundary_circle(const SurfaceComplex& c, const BoundaryCircle& circle);

/// Splits an edge at a fresh vertex, splitting its incident triangles.
/// The new vertex id is the old vertex_count.
SurfaceComplex subdivide_edge(const SurfaceComplex& c, Edge e);

} // namespace csurf
