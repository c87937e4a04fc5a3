#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "csurf/homology.hpp"
#include "csurf/surface_complex.hpp"

namespace csurf {

/// Interior path from a point of the exit set to a point of the entrance set,
/// standing in for a trajectory segment of the flow crossing the block.
struct TransitSpine {
    std::vector<VertexId> path;
    bool operator==(const TransitSpine&) const = default;
};

/// Combinatorial isolating block: a connected surface with nonempty boundary,
/// a partition of the boundary edges into exit and entrance sets, closed
/// markings n_minus / n_plus inside them, and optional transit spines.
struct IsolatingBlock {
    SurfaceComplex complex;
    std::set<Edge> exit_edges;
    Subcomplex n_minus;
    Subcomplex n_plus;
    std::vector<TransitSpine> spines;
    bool asserts_no_fixed_points = false;
    std::string name;

    std::set<Edge> entrance_edges() const;
    bool operator==(const IsolatingBlock&) const = default;
};

struct Violation {
    std::string where;
    std::string what;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

/// Checks every block invariant; never throws.
ValidationReport validate(const IsolatingBlock& b);

/// Throws Error(invalid_block) listing the violations when the block is bad.
void require_valid(const IsolatingBlock& b);

struct ExitCensus {
    int u = 0;           // components of the exit set
    int u_c = 0;         // ... that are intervals
    int s = 0;           // components of the entrance set
    int s_c = 0;         // ... that are intervals
    int beta1_n = 0;     // first Z2 Betti number of the block surface
    int obstruction = 0; // components of (exit set - n_minus) touching no corner
    auto operator<=>(const ExitCensus&) const = default;
};

ExitCensus census(const IsolatingBlock& b);

/// Time reversal: exit and entrance swap, n_minus and n_plus swap, spines run
/// backwards. An involution.
IsolatingBlock reverse(const IsolatingBlock& b);

enum class SectionKind { Point, Arc, Circle };

struct SectionComponent {
    SectionKind kind;
    std::string initial_part; // "half-open ray" | "strip" | "cylinder"
    VertexId representative;
};

/// Kinds of the n_minus components and the pieces of the initial part of the
/// truncated unstable manifold that they sweep out.
std::vector<SectionComponent> section_census(const IsolatingBlock& b);

// ---- boundary structure shared by census / regularize / schematic ----

/// One maximal run of same-labelled boundary edges (or a whole single-label
/// boundary circle).
struct LabelComponent {
    bool exit = false;
    bool is_circle = false;
    // Traversal order. Circles: starts at the smallest vertex id, closed
    // (first vertex not repeated). Intervals: runs corner to corner, starting
    // at the smaller corner id.
    std::vector<VertexId> vertices;
    std::vector<Edge> edges;
    int circle_index = 0; // which boundary circle carries it
};

std::vector<LabelComponent> boundary_label_components(const IsolatingBlock& b);
std::set<VertexId> corner_vertices(const IsolatingBlock& b);

/// One component of (label component) - n_minus (resp. n_plus on entrance
/// components): the open gaps between marking runs.
struct GapRun {
    std::vector<VertexId> vertices; // whole vertices inside the gap (may be empty)
    std::vector<Edge> edges;        // edges meeting the gap
    bool touches_corner = false;
};

/// Marking runs and gaps of one label component, in traversal order.
struct ComponentMarking {
    LabelComponent component;
    std::vector<std::vector<VertexId>> marking_runs; // closed components of the marking
    std::vector<GapRun> gaps;
    bool contained_in_marking = false;
};

/// Exit components analyzed against n_minus (or, when exit=false, entrance
/// components against n_plus).
std::vector<ComponentMarking> analyze_marked_components(const IsolatingBlock& b, bool exit);

// ---- block file format ----

std::string block_to_json_string(const IsolatingBlock& b);
IsolatingBlock block_from_json_string(const std::string& text);
IsolatingBlock load_block(const std::string& path);
void save_block(const IsolatingBlock& b, const std::string& path);

/// Full validation straight from file text, reporting schema problems,
/// complex problems and block problems without throwing.
ValidationReport validate_block_text(const std::string& text);

} // namespace csurf
