#include "csurf/conley.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace csurf {

using nlohmann::json;

std::string SurfaceSummand::text() const {
    if (orientable) {
        if (genus == 0) return "S²";
        if (genus == 1) return "S¹×S¹";
        return "Σ_" + std::to_string(genus);
    }
    if (genus == 1) return "RP²";
    if (genus == 2) return "K²";
    return "N_" + std::to_string(genus);
}

int IndexCluster::euler_space() const {
    int chi = 1 - circles;
    for (const SurfaceSummand& s : surfaces) chi += s.euler() - 1;
    return chi;
}

void IndexCluster::normalize() { std::sort(surfaces.begin(), surfaces.end()); }

std::string IndexCluster::text() const {
    std::vector<std::string> parts;
    for (const SurfaceSummand& s : surfaces) parts.push_back(s.text());
    for (int i = 0; i < circles; ++i) parts.push_back("S¹");
    if (parts.empty()) return "∗";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += " ∨ " + parts[i];
    return out;
}

int IndexDescriptor::circles() const {
    int n = base.circles;
    for (const IndexCluster& c : extras) n += c.circles;
    return n;
}

std::vector<SurfaceSummand> IndexDescriptor::surfaces() const {
    std::vector<SurfaceSummand> out = base.surfaces;
    for (const IndexCluster& c : extras) out.insert(out.end(), c.surfaces.begin(), c.surfaces.end());
    std::sort(out.begin(), out.end());
    return out;
}

int IndexDescriptor::chi() const {
    int chi = base.euler_space();
    for (const IndexCluster& c : extras) chi += c.euler_space();
    return chi - 1;
}

std::array<int, 3> IndexDescriptor::reduced_cohomology() const {
    int dim0 = static_cast<int>(extras.size());
    int dim1 = 0, dim2 = 0;
    auto add = [&](const IndexCluster& c) {
        dim1 += c.circles;
        for (const SurfaceSummand& s : c.surfaces) {
            dim1 += s.orientable ? 2 * s.genus : s.genus;
            dim2 += 1;
        }
    };
    add(base);
    for (const IndexCluster& c : extras) add(c);
    return {dim0, dim1, dim2};
}

void IndexDescriptor::normalize() {
    base.normalize();
    for (IndexCluster& c : extras) c.normalize();
    std::sort(extras.begin(), extras.end());
}

std::string IndexDescriptor::text() const {
    if (extras.empty()) return base.text();
    std::string out;
    for (const IndexCluster& c : extras) {
        if (!out.empty()) out += " ⊔ ";
        out += c.text();
    }
    return out + " ⊔ " + base.text();
}

IndexDescriptor wedge(const std::vector<IndexDescriptor>& parts) {
    IndexDescriptor out;
    for (const IndexDescriptor& d : parts) {
        out.base.circles += d.base.circles;
        out.base.surfaces.insert(out.base.surfaces.end(), d.base.surfaces.begin(), d.base.surfaces.end());
        out.extras.insert(out.extras.end(), d.extras.begin(), d.extras.end());
    }
    out.normalize();
    return out;
}

const char* dynamics_name(DynamicsType t) {
    switch (t) {
    case DynamicsType::Attractor: return "Attractor";
    case DynamicsType::Repeller: return "Repeller";
    case DynamicsType::Mixed: return "Mixed";
    }
    return "?";
}

std::string FixedPointFreeReport::text() const {
    std::string out = "K is ";
    for (std::size_t i = 0; i < admissible.size(); ++i) {
        if (i) out += " or ";
        out += admissible[i];
    }
    return out;
}

namespace {

IsolatingBlock regular_block(const IsolatingBlock& b) {
    require_valid(b);
    if (census(b).obstruction == 0) return b;
    return regularize(b).block;
}

Subcomplex exit_subcomplex(const IsolatingBlock& b) {
    Subcomplex sub;
    for (const Edge& e : b.exit_edges) {
        sub.edges.insert(e);
        sub.vertices.insert(e.a);
        sub.vertices.insert(e.b);
    }
    return sub;
}

int euler_of_subcomplex(const Subcomplex& s) {
    return static_cast<int>(s.vertices.size()) - static_cast<int>(s.edges.size());
}

std::string shape_text(int beta1) {
    if (beta1 == 0) return "point (trivial shape)";
    if (beta1 == 1) return "circumference";
    return "wedge of " + std::to_string(beta1) + " circumferences";
}

} // namespace

ClassificationReport classify(const IsolatingBlock& b) {
    IsolatingBlock reg = regular_block(b);
    ExitCensus cen = census(reg);
    TopSignature sig = reg.complex.signature();
    const int beta1 = cen.beta1_n;
    const int u = cen.u;
    const int u_c = cen.u_c;

    ClassificationReport report;
    report.beta1_k = beta1;

    const bool no_exit = reg.exit_edges.empty();
    const bool all_exit = reg.entrance_edges().empty();

    if (no_exit) {
        report.dynamics_type = DynamicsType::Attractor;
        report.case_label = "attractor";
        IndexCluster away;
        away.circles = beta1;
        report.index.extras.push_back(away);
    } else if (all_exit) {
        report.dynamics_type = DynamicsType::Repeller;
        SurfaceSummand s;
        s.orientable = sig.orientable;
        if (sig.orientable) {
            if ((1 + beta1 - u) % 2 != 0)
                throw Error(errc::inconsistent_data,
                            "orientable repeller block with odd 1+beta1-u cannot come from a surface flow");
            s.genus = (1 + beta1 - u) / 2;
        } else {
            s.genus = 1 + beta1 - u;
            if (s.genus < 1)
                throw Error(errc::inconsistent_data, "nonorientable repeller block needs genus >= 1");
        }
        if (u < 1) throw Error(errc::inconsistent_data, "repeller block with empty boundary census");
        report.case_label = sig.orientable ? "repeller-orientable" : "repeller-nonorientable";
        report.index.base.circles = u - 1;
        report.index.base.surfaces.push_back(s);
    } else {
        report.dynamics_type = DynamicsType::Mixed;
        report.case_label = "mixed";
        int k = beta1 + u_c - 1;
        if (k < 0)
            throw Error(errc::inconsistent_data, "mixed block with beta1 + u_c < 1 cannot come from a surface flow");
        report.index.base.circles = k;
    }
    report.index.normalize();

    report.shape = shape_text(beta1);
    report.fp_index = 1 - beta1 - u_c;
    report.disk_block = reg.complex.euler_characteristic() == 1;
    report.forces_fixed_point = report.fp_index != 0 || report.disk_block;
    report.non_saddle = (u_c == 0);

    // Euler chain: the descriptor, the pair (N, N^o) and the census formula
    // must give one number.
    int chi_pair = reg.complex.euler_characteristic() - euler_of_subcomplex(exit_subcomplex(reg));
    if (report.index.chi() != report.fp_index || chi_pair != report.fp_index)
        throw std::logic_error("Euler characteristic chain broke in classify");

    if (b.asserts_no_fixed_points) report.fixed_point_free = classify_fixed_point_free(b);
    return report;
}

CohomologyIndex cohomology_index(const IsolatingBlock& b) {
    require_valid(b);
    return relative_cohomology(b.complex, exit_subcomplex(b));
}

IntersectionForm block_intersection_form(const IsolatingBlock& b) {
    require_valid(b);
    return intersection_form(b.complex, exit_subcomplex(b));
}

IndexDescriptor ring_classify(const CohomologyIndex& ch, const IntersectionForm& form) {
    if (ch.dim0 < 0 || ch.dim1 < 0 || ch.dim2 < 0)
        throw Error(errc::inconsistent_data, "negative cohomology dimension");
    if (ch.dim0 > 1 || ch.dim2 > 1)
        throw Error(errc::inconsistent_data, "connected block pairs have dim CH^0, dim CH^2 <= 1");
    if (ch.dim0 == 1 && ch.dim2 == 1)
        throw Error(errc::inconsistent_data, "dim CH^0 = dim CH^2 = 1 is impossible for a block pair");
    if (form.basis_size != ch.dim1)
        throw Error(errc::inconsistent_data, "intersection form basis does not match dim CH^1");
    if (ch.dim2 == 0 && (form.rank != 0 || form.has_self_square))
        throw Error(errc::inconsistent_data, "nonzero intersection form without CH^2");

    IndexDescriptor index;
    if (ch.dim0 == 1) {
        IndexCluster away;
        away.circles = ch.dim1;
        index.extras.push_back(away);
    } else if (ch.dim2 == 1) {
        SurfaceSummand s;
        if (!form.has_self_square) {
            if (form.rank % 2 != 0)
                throw Error(errc::inconsistent_data, "alternating form with odd rank");
            s.orientable = true;
            s.genus = form.rank / 2;
            index.base.circles = ch.dim1 - form.rank;
        } else {
            s.orientable = false;
            s.genus = form.rank;
            index.base.circles = ch.dim1 - form.rank;
        }
        if (index.base.circles < 0)
            throw Error(errc::inconsistent_data, "intersection form rank exceeds dim CH^1");
        if (!s.orientable && s.genus < 1)
            throw Error(errc::inconsistent_data, "self-square with rank 0");
        index.base.surfaces.push_back(s);
    } else {
        index.base.circles = ch.dim1;
    }
    index.normalize();
    return index;
}

std::pair<int, bool> fp_report(const IsolatingBlock& b) {
    ExitCensus cen = census(regular_block(b));
    int fp = 1 - cen.beta1_n - cen.u_c;
    return {fp, fp != 0};
}

FixedPointFreeReport classify_fixed_point_free(const IsolatingBlock& b) {
    require_valid(b);
    if (!b.asserts_no_fixed_points)
        throw Error(errc::inconsistent_data, "block does not assert fixed-point freeness");
    IsolatingBlock reg = regular_block(b);
    ExitCensus cen = census(reg);
    int fp = 1 - cen.beta1_n - cen.u_c;
    if (fp != 0)
        throw Error(errc::fixed_point_forced,
                    "fixed point index " + std::to_string(fp) + " is nonzero, so N contains a fixed point");
    TopSignature sig = reg.complex.signature();
    if (sig.euler == 1)
        throw Error(errc::fixed_point_forced, "disk blocks always contain a fixed point");
    bool annulus = sig.orientable && sig.euler == 0 && sig.boundary_circles == 2 && sig.genus == 0;
    bool moebius = !sig.orientable && sig.euler == 0 && sig.boundary_circles == 1 && sig.genus == 1;
    if (!annulus && !moebius)
        throw Error(errc::inconsistent_data,
                    "fixed-point-free block must be an annulus or a Möbius strip");
    if (cen.u_c != 0)
        throw Error(errc::inconsistent_data, "fixed-point-free block must have u_c = 0");

    FixedPointFreeReport report;
    report.orientable = sig.orientable;
    report.non_saddle = true;
    if (sig.orientable)
        report.admissible = {"a limit cycle", "a closed annulus bounded by two limit cycles"};
    else
        report.admissible = {"a limit cycle", "a Möbius strip bounded by a limit cycle"};
    return report;
}

std::string minimal_report(const IsolatingBlock& b) {
    ExitCensus cen = census(regular_block(b));
    if (cen.beta1_n >= 2)
        throw Error(errc::inconsistent_data,
                    "a minimal isolated invariant continuum has beta1 <= 1, block gives beta1 = " +
                        std::to_string(cen.beta1_n));
    if (cen.beta1_n == 0) return "K is a fixed point";
    return "K is a fixed point or a limit cycle";
}

DualityReport duality_check(const IsolatingBlock& b) {
    DualityReport rep;
    ExitCensus cen = census(b);
    rep.u_c = cen.u_c;
    rep.s_c = cen.s_c;
    if (cen.u_c != cen.s_c) {
        rep.ok = false;
        rep.failure = "u_c != s_c";
        return rep;
    }
    rep.checks.push_back("u_c == s_c == " + std::to_string(cen.u_c));

    ClassificationReport fwd = classify(b);
    ClassificationReport bwd = classify(reverse(b));
    switch (fwd.dynamics_type) {
    case DynamicsType::Mixed:
        if (bwd.dynamics_type != DynamicsType::Mixed || !(fwd.index == bwd.index)) {
            rep.ok = false;
            rep.failure = "mixed block index differs from the reverse block index";
            return rep;
        }
        rep.checks.push_back("index equals reverse index: " + fwd.index.text());
        break;
    case DynamicsType::Attractor:
        if (bwd.dynamics_type != DynamicsType::Repeller || fwd.beta1_k != bwd.beta1_k) {
            rep.ok = false;
            rep.failure = "attractor must reverse to a repeller with equal beta1";
            return rep;
        }
        rep.checks.push_back("attractor reverses to a repeller, beta1 = " + std::to_string(fwd.beta1_k));
        break;
    case DynamicsType::Repeller:
        if (bwd.dynamics_type != DynamicsType::Attractor || fwd.beta1_k != bwd.beta1_k) {
            rep.ok = false;
            rep.failure = "repeller must reverse to an attractor with equal beta1";
            return rep;
        }
        rep.checks.push_back("repeller reverses to an attractor, beta1 = " + std::to_string(fwd.beta1_k));
        break;
    }
    return rep;
}

namespace {

std::string summary_problem(const ComponentSummary& s) {
    if (s.beta1 < 0 || s.u < 0 || s.u_c < 0) return "negative count";
    if (s.u_c > s.u) return "u_c exceeds u";
    switch (s.dynamics_type) {
    case DynamicsType::Attractor:
        if (s.u != 0) return "attractor must have u = 0";
        break;
    case DynamicsType::Repeller:
        if (s.u < 1) return "repeller must have u >= 1";
        if (s.u_c != 0) return "repeller must have u_c = 0";
        break;
    case DynamicsType::Mixed:
        if (s.u < 1) return "mixed set must have u >= 1";
        if (s.beta1 + s.u_c < 1) return "mixed set must have beta1 + u_c >= 1";
        break;
    }
    return "";
}

bool summary_trivial_index(const ComponentSummary& s) {
    return s.dynamics_type == DynamicsType::Mixed && s.beta1 + s.u_c - 1 == 0;
}

} // namespace

ContinuationReport check_continuation(const ComponentSummary& k0,
                                      const std::vector<ComponentSummary>& comps, bool shares_block) {
    ContinuationReport rep;
    auto fail = [&](const std::string& clause, const std::string& detail) {
        rep.ok = false;
        rep.failed_clause = clause;
        rep.detail = detail;
    };

    if (comps.empty()) {
        fail("summary", "continuation needs at least one component");
        return rep;
    }
    if (std::string p = summary_problem(k0); !p.empty()) {
        fail("summary", "K_0: " + p);
        return rep;
    }
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (std::string p = summary_problem(comps[i]); !p.empty()) {
            fail("summary", "component " + std::to_string(i) + ": " + p);
            return rep;
        }
    }
    rep.checks.push_back("summaries internally consistent");

    const int n = static_cast<int>(comps.size());
    int attractors = 0, repellers = 0, sum_beta1 = 0, sum_uc = 0;
    for (const ComponentSummary& s : comps) {
        if (s.dynamics_type == DynamicsType::Attractor) ++attractors;
        if (s.dynamics_type == DynamicsType::Repeller) ++repellers;
        sum_beta1 += s.beta1;
        sum_uc += s.u_c;
    }

    // Clause 1: the wedge of the component indices must be able to equal the
    // index of K_0 structurally.
    switch (k0.dynamics_type) {
    case DynamicsType::Mixed:
        if (attractors != 0 || repellers != 0) {
            fail("wedge", "NotAContinuation: the index of K_0 is a wedge of circles, but a component "
                          "contributes a closed surface or a disjoint piece");
            return rep;
        }
        break;
    case DynamicsType::Attractor:
        if (attractors != 1 || repellers != 0) {
            fail("wedge", "NotAContinuation: exactly one component must be an attractor and none a repeller");
            return rep;
        }
        break;
    case DynamicsType::Repeller:
        if (repellers != 1 || attractors != 0) {
            fail("wedge", "NotAContinuation: exactly one component must be a repeller and none an attractor");
            return rep;
        }
        break;
    }
    rep.checks.push_back("wedge of component indices is structurally compatible");

    // Clause 2: component-count equation for mixed K_0.
    if (k0.dynamics_type == DynamicsType::Mixed) {
        int lhs = (k0.beta1 - sum_beta1) + (k0.u_c - sum_uc);
        int rhs = 1 - n;
        if (lhs != rhs) {
            std::ostringstream os;
            os << "(beta1(K_0) - sum beta1) + (u_c - sum u_c) = " << lhs << " but 1 - n = " << rhs;
            fail("equation", os.str());
            return rep;
        }
        rep.checks.push_back("component-count equation holds");
    }

    // Clause 3: attractor/repeller persistence with the shape of K_0.
    if (k0.dynamics_type != DynamicsType::Mixed) {
        for (std::size_t i = 0; i < comps.size(); ++i) {
            const ComponentSummary& s = comps[i];
            if (s.dynamics_type == k0.dynamics_type) {
                if (s.beta1 != k0.beta1) {
                    fail("persistence", "the persisting component must keep beta1 = " +
                                            std::to_string(k0.beta1));
                    return rep;
                }
            } else if (!summary_trivial_index(s)) {
                fail("persistence", "component " + std::to_string(i) + " must have trivial index");
                return rep;
            }
        }
        rep.checks.push_back("one component persists with the shape of K_0, the rest have trivial index");
    }

    // Clause 4: shared isolating neighborhood bounds the total beta1.
    if (shares_block) {
        if (sum_beta1 > k0.beta1) {
            fail("betti_bound", "sum of component beta1 exceeds beta1(K_0) under a shared block");
            return rep;
        }
        rep.checks.push_back("shared-block Betti bound holds");
    }

    // Clause 5: a connected continuation of a non-saddle mixed set stays
    // non-saddle exactly when it keeps the shape.
    if (k0.dynamics_type == DynamicsType::Mixed && k0.u_c == 0 && n == 1) {
        bool keeps_shape = comps[0].beta1 == k0.beta1;
        bool non_saddle = comps[0].u_c == 0;
        if (keeps_shape != non_saddle) {
            fail("non_saddle_shape", "a connected continuation is non-saddle iff it keeps the shape");
            return rep;
        }
        rep.checks.push_back("non-saddle/shape equivalence holds for the connected continuation");
    }

    return rep;
}

std::string report_to_json_string(const ClassificationReport& r) {
    json j;
    j["beta1_K"] = r.beta1_k;
    j["case"] = r.case_label;
    j["disk_block"] = r.disk_block;
    j["dynamics_type"] = dynamics_name(r.dynamics_type);
    if (r.fixed_point_free) {
        json f;
        f["orientable"] = r.fixed_point_free->orientable;
        f["non_saddle"] = r.fixed_point_free->non_saddle;
        f["admissible"] = r.fixed_point_free->admissible;
        j["fixed_point_free"] = f;
    }
    j["forces_fixed_point"] = r.forces_fixed_point;
    j["fp_index"] = r.fp_index;
    json idx;
    auto cluster_json = [](const IndexCluster& c) {
        json cj;
        cj["circles"] = c.circles;
        cj["surfaces"] = json::array();
        for (const SurfaceSummand& s : c.surfaces) {
            json sj;
            sj["genus"] = s.genus;
            sj["orientable"] = s.orientable;
            cj["surfaces"].push_back(sj);
        }
        return cj;
    };
    idx["base"] = cluster_json(r.index.base);
    idx["extras"] = json::array();
    for (const IndexCluster& c : r.index.extras) idx["extras"].push_back(cluster_json(c));
    j["index"] = idx;
    j["index_text"] = r.index.text();
    j["non_saddle"] = r.non_saddle;
    j["shape"] = r.shape;
    return j.dump(2) + "\n";
}

std::string report_to_text(const ClassificationReport& r, bool color) {
    const char* bold = color ? "\033[1m" : "";
    const char* dim = color ? "\033[2m" : "";
    const char* off = color ? "\033[0m" : "";
    std::ostringstream os;
    os << bold << "dynamics:      " << off << dynamics_name(r.dynamics_type) << " (" << r.case_label
       << ")\n";
    os << bold << "Conley index:  " << off << r.index.text() << "\n";
    os << bold << "beta1(K):      " << off << r.beta1_k << "\n";
    os << bold << "shape of K:    " << off << r.shape << "\n";
    os << bold << "fp index:      " << off << r.fp_index
       << (r.forces_fixed_point ? "  (forces a fixed point in N)" : "") << "\n";
    os << bold << "non-saddle:    " << off << (r.non_saddle ? "yes" : "no") << "\n";
    if (r.disk_block)
        os << dim << "disk block: K has trivial shape and contains a fixed point" << off << "\n";
    if (r.fixed_point_free) os << bold << "admissible K:  " << off << r.fixed_point_free->text() << "\n";
    return os.str();
}

} // namespace csurf
