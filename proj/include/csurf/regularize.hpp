#pragma once

#include <vector>

#include "csurf/block.hpp"

namespace csurf {

struct SurgeryStep {
    int phase = 0; // 1: opened an exit circle, 2: split an exit interval
    std::vector<VertexId> spine;
    int obstruction_before = 0;
    int obstruction_after = 0;
    int chi_before = 0;
    int chi_after = 0;
};

struct SurgeryTrace {
    std::vector<SurgeryStep> steps;
};

/// One flow-rectangle cut along a spine of b. The complex is cut open along
/// the (possibly subdivided) spine path; on both boundary copies the edges
/// from the exit endpoint up to the middle path vertex become exit, the rest
/// entrance, so the middle vertex copies are the two new corners. The used
/// spine is consumed; all other spines survive untouched.
IsolatingBlock cut_once(const IsolatingBlock& b, const TransitSpine& spine);

struct RegularizeResult {
    IsolatingBlock block;
    SurgeryTrace trace;
};

/// Cuts until the obstruction vanishes. Phase 1 opens every exit circle not
/// contained in n_minus (ascending smallest vertex id); phase 2 splits exit
/// intervals holding two or more n_minus components at the gap between the
/// first and second components seen from the lower-id corner. Spines are
/// chosen first-listed-first among those starting in the required gap.
RegularizeResult regularize(const IsolatingBlock& b);

} // namespace csurf
