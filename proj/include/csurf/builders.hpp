#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csurf/block.hpp"

namespace csurf {

/// Named hand-checked blocks used throughout the test corpus. Every recipe
/// output passes validate(). Throws Error(unknown_recipe) on a bad name.
IsolatingBlock standard_block(const std::string& name);

const std::vector<std::string>& standard_block_names();

/// Deterministic valid random block with at most `triangle_budget` triangles.
/// Spines are synthesized, one per cornerless gap, whenever disjoint interior
/// routes exist; blocks whose routes fail come back spineless but valid.
IsolatingBlock random_block(std::uint64_t seed, int triangle_budget);

// Building material also used directly by tests.
SurfaceComplex grid_disk(int n);                 // n x n vertex grid
SurfaceComplex hexagonal_annulus();              // 6 vertices, 6 triangles
SurfaceComplex moebius_strip_minimal();          // 5 vertices, 5 triangles
SurfaceComplex moebius_band(int length);         // twisted band, 2*length vertices
SurfaceComplex torus_csaszar();                  // 7 vertices, complete graph, 14 triangles
SurfaceComplex cylinder(int columns, int rings); // rings >= 2 vertex rings
SurfaceComplex remove_triangles(const SurfaceComplex& c, const std::vector<int>& tri_indices);

} // namespace csurf
