// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Runs the full corpus plus one hundred seeded random
// regularizable blocks through both classification routes.

#include <chrono>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include "csurf/builders.hpp"
#include "csurf/conley.hpp"

using namespace csurf;
using clock_type = std::chrono::steady_clock;

namespace {

struct Criterion {
    int number;
    std::string description;
    std::function<void(std::ostream&)> run; // throws on failure
};

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
    if (!cond) throw Failure(what);
}

template <typename A, typename B>
void require_eq(const A& a, const B& b, const std::string& what) {
    if (!(a == b)) {
        std::ostringstream os;
        os << what << " (got " << a << ", expected " << b << ")";
        throw Failure(os.str());
    }
}

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

// Shared pool: the ten corpus blocks plus one hundred seeded random blocks
// that regularize, with their classifications.
struct Pool {
    std::vector<IsolatingBlock> blocks;
    std::vector<ClassificationReport> reports;
    std::vector<ExitCensus> initial_census;
    std::vector<RegularizeResult> regularized;
    int random_count = 0;
};

Pool build_pool() {
    Pool pool;
    for (const std::string& name : standard_block_names()) pool.blocks.push_back(standard_block(name));
    std::uint64_t seed = 0;
    while (pool.random_count < 100 && seed < 2000) {
        ++seed;
        IsolatingBlock b = random_block(seed, 500);
        try {
            regularize(b);
        } catch (const Error&) {
            continue;
        }
        pool.blocks.push_back(std::move(b));
        ++pool.random_count;
    }
    for (const IsolatingBlock& b : pool.blocks) {
        pool.initial_census.push_back(census(b));
        pool.regularized.push_back(regularize(b));
        pool.reports.push_back(classify(b));
    }
    return pool;
}

int chi_exit(const IsolatingBlock& b) {
    std::set<VertexId> vs;
    for (const Edge& e : b.exit_edges) {
        vs.insert(e.a);
        vs.insert(e.b);
    }
    return static_cast<int>(vs.size()) - static_cast<int>(b.exit_edges.size());
}

} // namespace

int main() {
    auto total_start = clock_type::now();
    std::optional<Pool> pool_storage;
    auto pool = [&]() -> Pool& {
        if (!pool_storage) pool_storage = build_pool();
        return *pool_storage;
    };

    std::vector<Criterion> criteria;

    criteria.push_back({1, "worked examples: the two genus-separated repellers", [&](std::ostream& out) {
        auto t0 = clock_type::now();
        IsolatingBlock pants = standard_block("pants_repeller");
        IsolatingBlock torus = standard_block("genus1_repeller");
        require_eq(cohomology_index(pants).dim1, 2, "pants CH^1");
        require(cohomology_index(pants) == CohomologyIndex{0, 2, 1}, "pants cohomology index");
        require(cohomology_index(torus) == CohomologyIndex{0, 2, 1}, "torus cohomology index");
        IntersectionForm pants_form = block_intersection_form(pants);
        IntersectionForm torus_form = block_intersection_form(torus);
        require_eq(pants_form.rank, 0, "pants intersection rank");
        require_eq(torus_form.rank, 2, "torus intersection rank");
        IndexDescriptor pants_ring = ring_classify(cohomology_index(pants), pants_form);
        IndexDescriptor torus_ring = ring_classify(cohomology_index(torus), torus_form);
        require_eq(pants_ring.text(), std::string("S² ∨ S¹ ∨ S¹"), "pants ring index");
        require_eq(torus_ring.text(), std::string("S¹×S¹"), "torus ring index");
        require(classify(pants).index == pants_ring, "pants classify agrees");
        require(classify(torus).index == torus_ring, "torus classify agrees");
        double dt = seconds_since(t0);
        require(dt < 1.0, "criterion exceeded one second");
        out << "ranks 0/2, indices agree, " << dt << " s";
    }});

    criteria.push_back({2, "ring classification equals block classification on 10 corpus + 100 random blocks",
                        [&](std::ostream& out) {
        auto t0 = clock_type::now();
        Pool& p = pool();
        require(p.random_count >= 100, "not enough regularizable random blocks");
        for (std::size_t i = 0; i < p.blocks.size(); ++i) {
            IndexDescriptor ring =
                ring_classify(cohomology_index(p.blocks[i]), block_intersection_form(p.blocks[i]));
            require(ring == p.reports[i].index, "ring/classify mismatch on " + p.blocks[i].name);
        }
        double dt = seconds_since(t0);
        require(dt < 30.0, "criterion exceeded thirty seconds");
        out << p.blocks.size() << " blocks, " << dt << " s";
    }});

    criteria.push_back({3, "Euler chain chi(index) = chi(N) - chi(exit) = 1 - beta1 - u_c = fp index",
                        [&](std::ostream& out) {
        Pool& p = pool();
        for (std::size_t i = 0; i < p.blocks.size(); ++i) {
            const IsolatingBlock& reg = p.regularized[i].block;
            ExitCensus cen = census(reg);
            int fp = p.reports[i].fp_index;
            require_eq(p.reports[i].index.chi(), fp, "descriptor chi on " + p.blocks[i].name);
            require_eq(reg.complex.euler_characteristic() - chi_exit(reg), fp,
                       "pair Euler characteristic on " + p.blocks[i].name);
            require_eq(1 - cen.beta1_n - cen.u_c, fp, "census formula on " + p.blocks[i].name);
        }
        out << p.blocks.size() << " blocks";
    }});

    criteria.push_back({4, "surgery: every cut drops the obstruction by one and raises chi by one",
                        [&](std::ostream& out) {
        Pool& p = pool();
        int cuts = 0;
        for (std::size_t i = 0; i < p.blocks.size(); ++i) {
            const SurgeryTrace& trace = p.regularized[i].trace;
            require_eq(static_cast<int>(trace.steps.size()), p.initial_census[i].obstruction,
                       "cut count on " + p.blocks[i].name);
            for (const SurgeryStep& s : trace.steps) {
                require_eq(s.obstruction_after, s.obstruction_before - 1,
                           "obstruction step on " + p.blocks[i].name);
                require_eq(s.chi_after, s.chi_before + 1, "chi step on " + p.blocks[i].name);
                ++cuts;
            }
            require_eq(census(p.regularized[i].block).obstruction, 0,
                       "final obstruction on " + p.blocks[i].name);
        }
        RegularizeResult three = regularize(standard_block("three_arc_circle_nonregular"));
        require_eq(static_cast<int>(three.trace.steps.size()), 3, "three_arc_circle_nonregular cuts");
        out << cuts << " cuts over " << p.blocks.size() << " blocks";
    }});

    criteria.push_back({5, "cohomology index is invariant under regularization", [&](std::ostream& out) {
        int checked = 0;
        for (const std::string& name : standard_block_names()) {
            IsolatingBlock b = standard_block(name);
            CohomologyIndex before = cohomology_index(b);
            CohomologyIndex after = cohomology_index(regularize(b).block);
            require(before == after, "dimension change across regularization on " + name);
            ++checked;
        }
        require(cohomology_index(standard_block("annulus_nonregular")) == CohomologyIndex{0, 0, 0},
                "annulus_nonregular index");
        require(cohomology_index(regularize(standard_block("annulus_nonregular")).block) ==
                    CohomologyIndex{0, 0, 0},
                "regularized annulus_nonregular index");
        out << checked << " corpus blocks";
    }});

    criteria.push_back({6, "duality: u_c = s_c and the index matches the reverse flow", [&](std::ostream& out) {
        Pool& p = pool();
        for (const IsolatingBlock& b : p.blocks) {
            DualityReport r = duality_check(b);
            require(r.ok, "duality failure on " + b.name + ": " + r.failure);
            require_eq(r.u_c, r.s_c, "u_c != s_c on " + b.name);
        }
        out << p.blocks.size() << " blocks";
    }});

    criteria.push_back({7, "repeller parity and self-squares", [&](std::ostream& out) {
        Pool& p = pool();
        int repellers = 0;
        for (std::size_t i = 0; i < p.blocks.size(); ++i) {
            if (p.reports[i].dynamics_type != DynamicsType::Repeller) continue;
            ++repellers;
            const IsolatingBlock& reg = p.regularized[i].block;
            ExitCensus cen = census(reg);
            TopSignature sig = reg.complex.signature();
            IntersectionForm form = block_intersection_form(p.blocks[i]);
            if (sig.orientable) {
                require((1 + cen.beta1_n - cen.u) % 2 == 0, "odd 1+beta1-u on " + p.blocks[i].name);
                require(!form.has_self_square, "orientable self-square on " + p.blocks[i].name);
            } else {
                require(form.has_self_square, "nonorientable without self-square on " + p.blocks[i].name);
            }
        }
        require_eq(block_intersection_form(standard_block("moebius_repeller")).rank, 1,
                   "moebius intersection rank");
        out << repellers << " repeller blocks";
    }});

    criteria.push_back({8, "fixed point machinery", [&](std::ostream& out) {
        require(fp_report(standard_block("square_saddle")) == std::pair<int, bool>{-1, true},
                "square_saddle fp report");
        require(fp_report(standard_block("annulus_attractor")) == std::pair<int, bool>{0, false},
                "annulus_attractor fp report");
        IsolatingBlock cycle = standard_block("annulus_cycle_mixed");
        cycle.asserts_no_fixed_points = true;
        require(classify_fixed_point_free(cycle).orientable, "annulus cycle admissible set");
        IsolatingBlock moebius = standard_block("moebius_repeller");
        moebius.asserts_no_fixed_points = true;
        require(!classify_fixed_point_free(moebius).orientable, "moebius admissible set");
        IsolatingBlock saddle = standard_block("square_saddle");
        saddle.asserts_no_fixed_points = true;
        bool forced = false;
        try {
            classify_fixed_point_free(saddle);
        } catch (const Error& e) {
            forced = e.code() == errc::fixed_point_forced;
        }
        require(forced, "square_saddle must be rejected with FixedPointForced");
        out << "saddle forced, cycle blocks admitted";
    }});

    criteria.push_back({9, "continuation checks", [&](std::ostream& out) {
        ComponentSummary k0{1, 1, 0, DynamicsType::Mixed};
        std::vector<ComponentSummary> two_points = {{0, 1, 1, DynamicsType::Mixed},
                                                    {0, 1, 1, DynamicsType::Mixed}};
        require(check_continuation(k0, two_points, false).ok, "circle-to-two-saddle-points scenario");
        std::vector<ComponentSummary> mutated = {{0, 1, 1, DynamicsType::Mixed},
                                                 {0, 2, 2, DynamicsType::Mixed}};
        ContinuationReport bad = check_continuation(k0, mutated, false);
        require(!bad.ok && bad.failed_clause == "equation", "mutated scenario must fail the equation");
        ComponentSummary att{1, 0, 0, DynamicsType::Attractor};
        std::vector<ComponentSummary> att_comps = {{1, 0, 0, DynamicsType::Attractor},
                                                   {0, 1, 1, DynamicsType::Mixed}};
        require(check_continuation(att, att_comps, false).ok, "attractor with trivial satellite");
        out << "three scenarios";
    }});

    criteria.push_back({10, "whole acceptance run under sixty seconds", [&](std::ostream& out) {
        double dt = seconds_since(total_start);
        require(dt < 60.0, "acceptance run exceeded sixty seconds");
        out << dt << " s elapsed";
    }});

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::ostringstream detail;
        try {
            c.run(detail);
            std::cout << "[PASS] criterion " << c.number << ": " << c.description;
            if (!detail.str().empty()) std::cout << " — " << detail.str();
            std::cout << "\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "[FAIL] criterion " << c.number << ": " << c.description << " — " << e.what()
                      << "\n";
        }
    }
    std::cout << (failures == 0 ? "acceptance: all criteria passed" : "acceptance: FAILURES") << "\n";
    return failures == 0 ? 0 : 1;
}
