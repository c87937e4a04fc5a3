#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csurf/block.hpp"
#include "csurf/regularize.hpp"

namespace csurf {

struct SurfaceSummand {
    bool orientable = true;
    int genus = 0;
    int euler() const { return orientable ? 2 - 2 * genus : 2 - genus; }
    auto operator<=>(const SurfaceSummand&) const = default;
    std::string text() const;
};

/// A connected wedge of circles and closed surfaces; circles == 0 and no
/// surfaces is a point.
struct IndexCluster {
    int circles = 0;
    std::vector<SurfaceSummand> surfaces; // kept sorted

    bool trivial() const { return circles == 0 && surfaces.empty(); }
    int euler_space() const;
    auto operator<=>(const IndexCluster&) const = default;
    std::string text() const;
    void normalize();
};

/// Normal form of a pointed homotopy type: the cluster carrying the base
/// point plus the disjoint clusters away from it (one per attractor-type
/// summand).
struct IndexDescriptor {
    IndexCluster base;
    std::vector<IndexCluster> extras; // kept sorted

    int circles() const;
    std::vector<SurfaceSummand> surfaces() const;
    int extra_components() const { return static_cast<int>(extras.size()); }

    /// Euler characteristic relative to the base point (space minus 1); this
    /// is the value of the fixed point index.
    int chi() const;
    /// Reduced Z2 cohomology of the descriptor's space.
    std::array<int, 3> reduced_cohomology() const;

    auto operator<=>(const IndexDescriptor&) const = default;
    std::string text() const;
    void normalize();
};

IndexDescriptor wedge(const std::vector<IndexDescriptor>& parts);

enum class DynamicsType { Attractor, Repeller, Mixed };
const char* dynamics_name(DynamicsType t);

struct FixedPointFreeReport {
    bool orientable = true;
    bool non_saddle = true;
    std::vector<std::string> admissible;
    std::string text() const;
};

struct ClassificationReport {
    DynamicsType dynamics_type = DynamicsType::Mixed;
    int beta1_k = 0;
    IndexDescriptor index;
    std::string shape;
    int fp_index = 0;
    bool forces_fixed_point = false;
    bool non_saddle = false;
    bool disk_block = false;
    std::string case_label;
    std::optional<FixedPointFreeReport> fixed_point_free;
};

/// Full classification. Auto-regularizes when the obstruction is nonzero
/// (this needs spines); throws InconsistentData on data that no surface flow
/// can produce.
ClassificationReport classify(const IsolatingBlock& b);

/// Dimensions of H^*(N, exit set) over Z2; invariant under regularization,
/// so the block need not be regular.
CohomologyIndex cohomology_index(const IsolatingBlock& b);

/// Cup-product intersection form on the degree-1 part of the same pair.
IntersectionForm block_intersection_form(const IsolatingBlock& b);

/// Reads the index off the cohomology ring alone.
IndexDescriptor ring_classify(const CohomologyIndex& ch, const IntersectionForm& form);

/// (1 - beta1 - u_c, nonzero?) for the block's flow box.
std::pair<int, bool> fp_report(const IsolatingBlock& b);

/// Admissible fixed-point-free invariant sets; requires the block to assert
/// fixed-point freeness. Throws FixedPointForced when the index or the disk
/// rule forces a fixed point.
FixedPointFreeReport classify_fixed_point_free(const IsolatingBlock& b);

/// Consequence of asserting that the invariant set is minimal.
std::string minimal_report(const IsolatingBlock& b);

struct DualityReport {
    bool ok = true;
    int u_c = 0;
    int s_c = 0;
    std::vector<std::string> checks;
    std::string failure;
};

/// u_c == s_c, and the index matches the reverse block's index per dynamics
/// type.
DualityReport duality_check(const IsolatingBlock& b);

struct ComponentSummary {
    int beta1 = 0;
    int u = 0;
    int u_c = 0;
    DynamicsType dynamics_type = DynamicsType::Mixed;
};

struct ContinuationReport {
    bool ok = true;
    std::string failed_clause; // empty when ok
    std::string detail;
    std::vector<std::string> checks;
};

/// Consistency checks for "comps continues k0": wedge compatibility, the
/// component-count equation for mixed sets, attractor/repeller persistence,
/// the shared-block Betti bound, and non-saddle preservation.
ContinuationReport check_continuation(const ComponentSummary& k0,
                                      const std::vector<ComponentSummary>& comps,
                                      bool shares_block);

std::string report_to_json_string(const ClassificationReport& r);
std::string report_to_text(const ClassificationReport& r, bool color);

} // namespace csurf
