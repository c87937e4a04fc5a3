#include "csurf/regularize.hpp"

#include <algorithm>

namespace csurf {

namespace {

std::size_t spine_index(const IsolatingBlock& b, const TransitSpine& spine) {
    for (std::size_t i = 0; i < b.spines.size(); ++i)
        if (b.spines[i] == spine) return i;
    throw Error(errc::invalid_block, "spine does not belong to the block");
}

} // namespace

IsolatingBlock cut_once(const IsolatingBlock& b, const TransitSpine& spine) {
    require_valid(b);
    std::size_t used = spine_index(b, spine);

    IsolatingBlock work = b;
    std::vector<VertexId> path = spine.path;
    if (path.size() == 2) {
        // Single-edge spine: split the edge so the cut gains a middle vertex
        // for the two new corners.
        Edge e(path[0], path[1]);
        VertexId mid = work.complex.vertex_count();
        work.complex = subdivide_edge(work.complex, e);
        path = {path[0], mid, path[1]};
    }

    CutResult cut = cut_along_path_traced(work.complex, path);
    if (!cut.complex.connected())
        throw Error(errc::disconnecting_cut, "cutting along this spine disconnects the block");

    const std::size_t k = path.size() - 1;
    const std::size_t split = (k + 1) / 2; // middle path vertex; interior since k >= 2

    // Rebuild the exit set. Old boundary edges keep their label; their
    // endpoint ids may have been replaced by side-1 copies, which we undo via
    // the copy table. The two copies of each path edge are boundary now:
    // exit from the exit endpoint up to the split vertex, entrance beyond.
    std::map<VertexId, VertexId> original_of;
    for (std::size_t i = 0; i < path.size(); ++i) original_of[cut.side1_ids[i]] = path[i];
    auto original_vertex = [&](VertexId v) {
        auto it = original_of.find(v);
        return it == original_of.end() ? v : it->second;
    };
    std::map<VertexId, std::size_t> path_pos;
    for (std::size_t i = 0; i < path.size(); ++i) path_pos[path[i]] = i;

    std::set<Edge> new_exit;
    for (const Edge& e : cut.complex.edges()) {
        if (!cut.complex.is_boundary_edge(e)) continue;
        Edge orig(original_vertex(e.a), original_vertex(e.b));
        auto ia = path_pos.find(orig.a);
        auto ib = path_pos.find(orig.b);
        bool is_path_edge = ia != path_pos.end() && ib != path_pos.end() &&
                            (ia->second + 1 == ib->second || ib->second + 1 == ia->second);
        if (is_path_edge) {
            std::size_t lo = std::min(ia->second, ib->second);
            if (lo < split) new_exit.insert(e);
        } else if (work.exit_edges.count(orig)) {
            new_exit.insert(e);
        }
    }

    IsolatingBlock result{std::move(cut.complex), std::move(new_exit), work.n_minus, work.n_plus,
                          {},                     work.asserts_no_fixed_points, work.name};
    for (std::size_t i = 0; i < b.spines.size(); ++i)
        if (i != used) result.spines.push_back(b.spines[i]);

    require_valid(result);
    return result;
}

namespace {

bool gap_contains(const GapRun& gap, VertexId v) {
    return std::find(gap.vertices.begin(), gap.vertices.end(), v) != gap.vertices.end();
}

// First-listed spine whose exit endpoint lies in one of the given gaps.
std::optional<std::size_t> find_spine_in_gaps(const IsolatingBlock& b,
                                              const std::vector<const GapRun*>& gaps) {
    for (std::size_t i = 0; i < b.spines.size(); ++i) {
        VertexId v0 = b.spines[i].path.front();
        for (const GapRun* gap : gaps)
            if (gap_contains(*gap, v0)) return i;
    }
    return std::nullopt;
}

VertexId smallest_vertex(const ComponentMarking& am) {
    return *std::min_element(am.component.vertices.begin(), am.component.vertices.end());
}

} // namespace

RegularizeResult regularize(const IsolatingBlock& b) {
    require_valid(b);
    IsolatingBlock cur = b;
    SurgeryTrace trace;

    auto do_cut = [&](int phase, std::size_t spine_idx) {
        SurgeryStep step;
        step.phase = phase;
        step.spine = cur.spines[spine_idx].path;
        step.obstruction_before = census(cur).obstruction;
        step.chi_before = cur.complex.euler_characteristic();
        cur = cut_once(cur, cur.spines[spine_idx]);
        step.obstruction_after = census(cur).obstruction;
        step.chi_after = cur.complex.euler_characteristic();
        if (step.obstruction_after != step.obstruction_before - 1)
            throw std::logic_error("surgery step did not reduce the obstruction by one");
        if (step.chi_after != step.chi_before + 1)
            throw std::logic_error("surgery step did not raise the Euler characteristic by one");
        trace.steps.push_back(std::move(step));
    };

    // Phase 1: open every exit circle not contained in n_minus, ascending
    // smallest vertex id.
    for (;;) {
        std::vector<ComponentMarking> exits = analyze_marked_components(cur, true);
        std::stable_sort(exits.begin(), exits.end(), [](const ComponentMarking& x, const ComponentMarking& y) {
            return smallest_vertex(x) < smallest_vertex(y);
        });
        const ComponentMarking* target = nullptr;
        for (const ComponentMarking& am : exits) {
            if (am.component.is_circle && !am.contained_in_marking) {
                target = &am;
                break;
            }
        }
        if (!target) break;
        std::vector<const GapRun*> gaps;
        for (const GapRun& g : target->gaps) gaps.push_back(&g);
        auto spine_idx = find_spine_in_gaps(cur, gaps);
        if (!spine_idx)
            throw Error(errc::insufficient_transit_data,
                        "no spine starts on exit circle at vertex " +
                            std::to_string(smallest_vertex(*target)));
        do_cut(1, *spine_idx);
    }

    // Phase 2: split exit intervals holding two or more n_minus components.
    for (;;) {
        std::vector<ComponentMarking> exits = analyze_marked_components(cur, true);
        std::stable_sort(exits.begin(), exits.end(), [](const ComponentMarking& x, const ComponentMarking& y) {
            return smallest_vertex(x) < smallest_vertex(y);
        });
        const ComponentMarking* target = nullptr;
        for (const ComponentMarking& am : exits) {
            if (!am.component.is_circle && am.marking_runs.size() >= 2) {
                target = &am;
                break;
            }
        }
        if (!target) break;
        // The component traversal already starts at the lower-id corner; the
        // required gap is the one between the first and second marking runs,
        // i.e. the first gap that has marking on both sides.
        // Gaps and runs alternate along the interval; locate the gap right
        // after the first marking run.
        std::size_t gap_after_first = target->gaps.size();
        {
            // Rebuild the alternation: walk the interval and note whether a
            // gap precedes any marking (leading gap touches the corner).
            // marking_runs and gaps are each in traversal order; the first
            // gap after the first marking run is gaps[0] when the interval
            // starts with a marking run, else gaps[1].
            bool starts_with_marking =
                !target->marking_runs.empty() &&
                target->marking_runs.front().front() == target->component.vertices.front();
            gap_after_first = starts_with_marking ? 0 : 1;
        }
        if (gap_after_first >= target->gaps.size())
            throw std::logic_error("interval with two marking runs has no gap between them");
        const GapRun& gap = target->gaps[gap_after_first];
        auto spine_idx = find_spine_in_gaps(cur, {&gap});
        if (!spine_idx)
            throw Error(errc::insufficient_transit_data,
                        "no spine starts in the gap between the first two n_minus components of the exit "
                        "interval at vertex " +
                            std::to_string(smallest_vertex(*target)));
        do_cut(2, *spine_idx);
    }

    if (census(cur).obstruction != 0) throw std::logic_error("regularization left a nonzero obstruction");
    return {std::move(cur), std::move(trace)};
}

} // namespace csurf
