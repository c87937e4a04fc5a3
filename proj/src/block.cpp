#include "csurf/block.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace csurf {

using nlohmann::json;

namespace {

std::string edge_str(Edge e) {
    std::ostringstream os;
    os << "{" << e.a << "," << e.b << "}";
    return os.str();
}

} // namespace

std::set<Edge> IsolatingBlock::entrance_edges() const {
    std::set<Edge> out;
    for (const Edge& e : complex.edges())
        if (complex.is_boundary_edge(e) && !exit_edges.count(e)) out.insert(e);
    return out;
}

std::string ValidationReport::to_string() const {
    if (ok()) return "valid";
    std::string s;
    for (const Violation& v : violations) {
        if (!s.empty()) s += "; ";
        s += v.where + ": " + v.what;
    }
    return s;
}

std::set<VertexId> corner_vertices(const IsolatingBlock& b) {
    std::map<VertexId, std::vector<Edge>> boundary_at;
    for (const Edge& e : b.complex.edges()) {
        if (b.complex.is_boundary_edge(e)) {
            boundary_at[e.a].push_back(e);
            boundary_at[e.b].push_back(e);
        }
    }
    std::set<VertexId> corners;
    for (const auto& [v, es] : boundary_at) {
        if (es.size() != 2) continue;
        bool e0 = b.exit_edges.count(es[0]) > 0;
        bool e1 = b.exit_edges.count(es[1]) > 0;
        if (e0 != e1) corners.insert(v);
    }
    return corners;
}

std::vector<LabelComponent> boundary_label_components(const IsolatingBlock& b) {
    std::vector<LabelComponent> out;
    std::vector<BoundaryCircle> circles = b.complex.boundary_circles();
    for (std::size_t ci = 0; ci < circles.size(); ++ci) {
        const auto& verts = circles[ci].vertices;
        const std::size_t n = verts.size();
        std::vector<bool> exit_label(n);
        for (std::size_t i = 0; i < n; ++i)
            exit_label[i] = b.exit_edges.count(Edge(verts[i], verts[(i + 1) % n])) > 0;

        bool uniform = std::all_of(exit_label.begin(), exit_label.end(),
                                   [&](bool x) { return x == exit_label[0]; });
        if (uniform) {
            LabelComponent comp;
            comp.exit = exit_label[0];
            comp.is_circle = true;
            comp.vertices = verts;
            comp.circle_index = static_cast<int>(ci);
            for (std::size_t i = 0; i < n; ++i) comp.edges.emplace_back(verts[i], verts[(i + 1) % n]);
            out.push_back(std::move(comp));
            continue;
        }
        // Label changes exist: split into corner-to-corner runs. Edge i joins
        // verts[i] and verts[i+1]; a corner sits at vertex i when edge i-1 and
        // edge i differ.
        std::size_t start = 0;
        while (exit_label[(start + n - 1) % n] == exit_label[start]) ++start; // verts[start] is a corner
        std::size_t i = start;
        do {
            LabelComponent comp;
            comp.exit = exit_label[i];
            comp.is_circle = false;
            comp.circle_index = static_cast<int>(ci);
            comp.vertices.push_back(verts[i]);
            std::size_t j = i;
            while (exit_label[j] == exit_label[i]) {
                comp.edges.emplace_back(verts[j], verts[(j + 1) % n]);
                comp.vertices.push_back(verts[(j + 1) % n]);
                j = (j + 1) % n;
            }
            // Canonical orientation: start at the smaller corner id.
            if (comp.vertices.back() < comp.vertices.front()) {
                std::reverse(comp.vertices.begin(), comp.vertices.end());
                std::reverse(comp.edges.begin(), comp.edges.end());
            }
            out.push_back(std::move(comp));
            i = j;
        } while (i != start);
    }
    return out;
}

namespace {

struct MarkLookup {
    const Subcomplex* marking;
    bool has_vertex(VertexId v) const { return marking->vertices.count(v) > 0; }
    bool has_edge(Edge e) const { return marking->edges.count(e) > 0; }
};

// Alternating element sequence of a label component: vertex, edge, vertex, ...
struct Element {
    bool is_vertex;
    VertexId v;
    Edge e;
    bool marked;
};

ComponentMarking analyze_component(const IsolatingBlock& b, const LabelComponent& comp,
                                   const Subcomplex& marking) {
    MarkLookup look{&marking};
    ComponentMarking am;
    am.component = comp;

    std::vector<Element> seq;
    const std::size_t nv = comp.vertices.size();
    if (comp.is_circle) {
        for (std::size_t i = 0; i < nv; ++i) {
            seq.push_back({true, comp.vertices[i], Edge{}, look.has_vertex(comp.vertices[i])});
            Edge e(comp.vertices[i], comp.vertices[(i + 1) % nv]);
            seq.push_back({false, 0, e, look.has_edge(e)});
        }
    } else {
        for (std::size_t i = 0; i < nv; ++i) {
            seq.push_back({true, comp.vertices[i], Edge{}, look.has_vertex(comp.vertices[i])});
            if (i + 1 < nv) {
                Edge e(comp.vertices[i], comp.vertices[i + 1]);
                seq.push_back({false, 0, e, look.has_edge(e)});
            }
        }
    }

    bool any_marked = std::any_of(seq.begin(), seq.end(), [](const Element& e) { return e.marked; });
    bool all_marked = std::all_of(seq.begin(), seq.end(), [](const Element& e) { return e.marked; });
    am.contained_in_marking = all_marked;

    std::set<VertexId> corners = corner_vertices(b);
    auto flush_run = [&](std::vector<Element>& run, bool marked) {
        if (run.empty()) return;
        if (marked) {
            std::vector<VertexId> verts;
            for (const Element& el : run)
                if (el.is_vertex) verts.push_back(el.v);
            am.marking_runs.push_back(std::move(verts));
        } else {
            GapRun gap;
            for (const Element& el : run) {
                if (el.is_vertex) {
                    gap.vertices.push_back(el.v);
                    if (corners.count(el.v)) gap.touches_corner = true;
                } else {
                    gap.edges.push_back(el.e);
                }
            }
            am.gaps.push_back(std::move(gap));
        }
        run.clear();
    };

    if (comp.is_circle && any_marked && !all_marked) {
        // Rotate so the cyclic sequence starts right after a marked/unmarked change.
        std::size_t start = 0;
        while (!(seq[start].marked && !seq[(start + 1) % seq.size()].marked)) ++start;
        start = (start + 1) % seq.size();
        std::vector<Element> run;
        bool cur = seq[start].marked;
        for (std::size_t k = 0; k < seq.size(); ++k) {
            const Element& el = seq[(start + k) % seq.size()];
            if (el.marked != cur) {
                flush_run(run, cur);
                cur = el.marked;
            }
            run.push_back(el);
        }
        flush_run(run, cur);
    } else if (all_marked) {
        std::vector<VertexId> verts;
        for (const Element& el : seq)
            if (el.is_vertex) verts.push_back(el.v);
        am.marking_runs.push_back(std::move(verts));
    } else if (!any_marked) {
        std::vector<Element> run = seq;
        flush_run(run, false);
    } else {
        // Interval with mixed marking: straight linear scan.
        std::vector<Element> run;
        bool cur = seq[0].marked;
        for (const Element& el : seq) {
            if (el.marked != cur) {
                flush_run(run, cur);
                cur = el.marked;
            }
            run.push_back(el);
        }
        flush_run(run, cur);
    }
    return am;
}

} // namespace

std::vector<ComponentMarking> analyze_marked_components(const IsolatingBlock& b, bool exit) {
    const Subcomplex& marking = exit ? b.n_minus : b.n_plus;
    std::vector<ComponentMarking> out;
    for (const LabelComponent& comp : boundary_label_components(b)) {
        if (comp.exit != exit) continue;
        out.push_back(analyze_component(b, comp, marking));
    }
    return out;
}

ValidationReport validate(const IsolatingBlock& b) {
    ValidationReport report;
    auto bad = [&](const std::string& where, const std::string& what) {
        report.violations.push_back({where, what});
    };

    if (!b.complex.connected()) bad("complex", "block surface must be connected");

    std::set<Edge> boundary;
    for (const Edge& e : b.complex.edges())
        if (b.complex.is_boundary_edge(e)) boundary.insert(e);
    if (boundary.empty()) bad("complex", "block surface must have nonempty boundary");

    for (const Edge& e : b.exit_edges)
        if (!boundary.count(e)) bad("exit_edges", "edge " + edge_str(e) + " is not a boundary edge");

    if (!report.ok()) return report; // label structure below assumes the above

    auto check_marking = [&](const Subcomplex& marking, const std::set<Edge>& side_edges,
                             const std::string& name) {
        std::set<VertexId> side_vertices;
        for (const Edge& e : side_edges) {
            side_vertices.insert(e.a);
            side_vertices.insert(e.b);
        }
        for (const Edge& e : marking.edges) {
            if (!side_edges.count(e)) bad(name, "edge " + edge_str(e) + " is not on its boundary side");
            if (!marking.vertices.count(e.a) || !marking.vertices.count(e.b))
                bad(name, "not closed: endpoint of edge " + edge_str(e) + " missing");
        }
        for (VertexId v : marking.vertices) {
            if (v < 0 || v >= b.complex.vertex_count())
                bad(name, "vertex " + std::to_string(v) + " out of range");
            else if (!side_vertices.count(v))
                bad(name, "vertex " + std::to_string(v) + " is not on its boundary side");
        }
    };
    check_marking(b.n_minus, b.exit_edges, "n_minus");
    check_marking(b.n_plus, b.entrance_edges(), "n_plus");

    if (!report.ok()) return report;

    // Each exit component must contain a component of n_minus; dually for the
    // entrance side.
    for (const ComponentMarking& am : analyze_marked_components(b, true)) {
        if (am.marking_runs.empty())
            bad("exit set", "component starting at vertex " +
                                std::to_string(am.component.vertices.front()) +
                                " contains no component of n_minus");
    }
    for (const ComponentMarking& am : analyze_marked_components(b, false)) {
        if (am.marking_runs.empty())
            bad("entrance set", "component starting at vertex " +
                                    std::to_string(am.component.vertices.front()) +
                                    " contains no component of n_plus");
    }

    // Spines.
    std::set<VertexId> corners = corner_vertices(b);
    std::set<VertexId> exit_vertices, entrance_vertices;
    for (const Edge& e : b.exit_edges) {
        exit_vertices.insert(e.a);
        exit_vertices.insert(e.b);
    }
    for (const Edge& e : b.entrance_edges()) {
        entrance_vertices.insert(e.a);
        entrance_vertices.insert(e.b);
    }
    std::set<VertexId> used_by_spines;
    for (std::size_t si = 0; si < b.spines.size(); ++si) {
        const auto& path = b.spines[si].path;
        const std::string where = "spine " + std::to_string(si);
        if (path.size() < 2) {
            bad(where, "path needs at least one edge");
            continue;
        }
        bool range_ok = true;
        for (VertexId v : path)
            if (v < 0 || v >= b.complex.vertex_count()) {
                bad(where, "vertex " + std::to_string(v) + " out of range");
                range_ok = false;
            }
        if (!range_ok) continue;
        std::set<VertexId> distinct(path.begin(), path.end());
        if (distinct.size() != path.size()) bad(where, "path is not simple");
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            Edge e(path[i], path[i + 1]);
            if (!b.complex.has_edge(e))
                bad(where, "edge " + edge_str(e) + " does not exist");
            else if (b.complex.is_boundary_edge(e))
                bad(where, "edge " + edge_str(e) + " lies on the boundary");
        }
        for (std::size_t i = 1; i + 1 < path.size(); ++i)
            if (b.complex.is_boundary_vertex(path[i]))
                bad(where, "interior vertex " + std::to_string(path[i]) + " lies on the boundary");
        VertexId v0 = path.front(), vk = path.back();
        if (!exit_vertices.count(v0) || b.n_minus.vertices.count(v0) || corners.count(v0))
            bad(where, "start must lie in the exit set, outside n_minus, not at a corner");
        if (!entrance_vertices.count(vk) || b.n_plus.vertices.count(vk) || corners.count(vk))
            bad(where, "end must lie in the entrance set, outside n_plus, not at a corner");
        for (VertexId v : path) {
            if (used_by_spines.count(v)) bad(where, "vertex " + std::to_string(v) + " shared with another spine");
            used_by_spines.insert(v);
        }
    }
    return report;
}

void require_valid(const IsolatingBlock& b) {
    ValidationReport r = validate(b);
    if (!r.ok()) throw Error(errc::invalid_block, r.to_string());
}

ExitCensus census(const IsolatingBlock& b) {
    require_valid(b);
    ExitCensus c;
    for (const LabelComponent& comp : boundary_label_components(b)) {
        if (comp.exit) {
            ++c.u;
            if (!comp.is_circle) ++c.u_c;
        } else {
            ++c.s;
            if (!comp.is_circle) ++c.s_c;
        }
    }
    c.beta1_n = 1 - b.complex.euler_characteristic();
    for (const ComponentMarking& am : analyze_marked_components(b, true))
        for (const GapRun& gap : am.gaps)
            if (!gap.touches_corner) ++c.obstruction;
    return c;
}

IsolatingBlock reverse(const IsolatingBlock& b) {
    IsolatingBlock r = b;
    r.exit_edges = b.entrance_edges();
    std::swap(r.n_minus, r.n_plus);
    for (TransitSpine& s : r.spines) std::reverse(s.path.begin(), s.path.end());
    return r;
}

std::vector<SectionComponent> section_census(const IsolatingBlock& b) {
    require_valid(b);
    std::vector<SectionComponent> out;
    for (const ComponentMarking& am : analyze_marked_components(b, true)) {
        if (am.contained_in_marking && am.component.is_circle) {
            out.push_back({SectionKind::Circle, "cylinder", am.component.vertices.front()});
            continue;
        }
        for (const auto& run : am.marking_runs) {
            if (run.size() == 1)
                out.push_back({SectionKind::Point, "half-open ray", run.front()});
            else
                out.push_back({SectionKind::Arc, "strip", run.front()});
        }
    }
    return out;
}

// ---- JSON ----

namespace {

json edge_to_json(Edge e) { return json::array({e.a, e.b}); }

Edge edge_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw Error(errc::bad_file, "edge must be a pair of integers");
    return Edge(j[0].get<int>(), j[1].get<int>());
}

json subcomplex_to_json(const Subcomplex& s) {
    json j;
    j["vertices"] = json::array();
    for (VertexId v : s.vertices) j["vertices"].push_back(v);
    j["edges"] = json::array();
    for (const Edge& e : s.edges) j["edges"].push_back(edge_to_json(e));
    return j;
}

Subcomplex subcomplex_from_json(const json& j, const std::string& name) {
    if (!j.is_object()) throw Error(errc::bad_file, name + " must be an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "vertices" && key != "edges")
            throw Error(errc::bad_file, "unknown key \"" + key + "\" in " + name);
    }
    Subcomplex s;
    if (j.contains("vertices")) {
        if (!j["vertices"].is_array()) throw Error(errc::bad_file, name + ".vertices must be an array");
        for (const auto& v : j["vertices"]) {
            if (!v.is_number_integer()) throw Error(errc::bad_file, name + ".vertices entries must be integers");
            s.vertices.insert(v.get<int>());
        }
    }
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) throw Error(errc::bad_file, name + ".edges must be an array");
        for (const auto& e : j["edges"]) s.edges.insert(edge_from_json(e));
    }
    return s;
}

json block_to_json(const IsolatingBlock& b) {
    json j;
    j["vertex_count"] = b.complex.vertex_count();
    j["triangles"] = json::array();
    for (const Triangle& t : b.complex.triangles()) j["triangles"].push_back(json::array({t[0], t[1], t[2]}));
    j["exit_edges"] = json::array();
    for (const Edge& e : b.exit_edges) j["exit_edges"].push_back(edge_to_json(e));
    j["n_minus"] = subcomplex_to_json(b.n_minus);
    j["n_plus"] = subcomplex_to_json(b.n_plus);
    j["spines"] = json::array();
    for (const TransitSpine& s : b.spines) {
        json sp;
        sp["path"] = json::array();
        for (VertexId v : s.path) sp["path"].push_back(v);
        j["spines"].push_back(sp);
    }
    j["asserts_no_fixed_points"] = b.asserts_no_fixed_points;
    j["name"] = b.name;
    return j;
}

IsolatingBlock block_from_json(const json& j) {
    if (!j.is_object()) throw Error(errc::bad_file, "block file must be a JSON object");
    static const std::set<std::string> allowed = {
        "vertex_count", "triangles", "exit_edges", "n_minus",
        "n_plus",       "spines",    "asserts_no_fixed_points", "name"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!allowed.count(key)) throw Error(errc::bad_file, "unknown key \"" + key + "\"");
    }
    if (!j.contains("vertex_count") || !j["vertex_count"].is_number_integer())
        throw Error(errc::bad_file, "vertex_count must be an integer");
    if (!j.contains("triangles") || !j["triangles"].is_array())
        throw Error(errc::bad_file, "triangles must be an array");

    int vertex_count = j["vertex_count"].get<int>();
    std::vector<Triangle> tris;
    for (const auto& t : j["triangles"]) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer() ||
            !t[2].is_number_integer())
            throw Error(errc::bad_file, "each triangle must be a triple of integers");
        tris.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
    }

    IsolatingBlock b{SurfaceComplex(vertex_count, std::move(tris)), {}, {}, {}, {}, false, ""};
    if (j.contains("exit_edges")) {
        if (!j["exit_edges"].is_array()) throw Error(errc::bad_file, "exit_edges must be an array");
        for (const auto& e : j["exit_edges"]) b.exit_edges.insert(edge_from_json(e));
    }
    if (j.contains("n_minus")) b.n_minus = subcomplex_from_json(j["n_minus"], "n_minus");
    if (j.contains("n_plus")) b.n_plus = subcomplex_from_json(j["n_plus"], "n_plus");
    if (j.contains("spines")) {
        if (!j["spines"].is_array()) throw Error(errc::bad_file, "spines must be an array");
        for (const auto& sp : j["spines"]) {
            if (!sp.is_object() || !sp.contains("path") || !sp["path"].is_array())
                throw Error(errc::bad_file, "each spine must be an object with a path array");
            for (const auto& [key, value] : sp.items()) {
                (void)value;
                if (key != "path") throw Error(errc::bad_file, "unknown key \"" + key + "\" in spine");
            }
            TransitSpine s;
            for (const auto& v : sp["path"]) {
                if (!v.is_number_integer()) throw Error(errc::bad_file, "spine path entries must be integers");
                s.path.push_back(v.get<int>());
            }
            b.spines.push_back(std::move(s));
        }
    }
    if (j.contains("asserts_no_fixed_points")) {
        if (!j["asserts_no_fixed_points"].is_boolean())
            throw Error(errc::bad_file, "asserts_no_fixed_points must be a boolean");
        b.asserts_no_fixed_points = j["asserts_no_fixed_points"].get<bool>();
    }
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw Error(errc::bad_file, "name must be a string");
        b.name = j["name"].get<std::string>();
    }
    return b;
}

} // namespace

std::string block_to_json_string(const IsolatingBlock& b) {
    return block_to_json(b).dump(2) + "\n";
}

IsolatingBlock block_from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(errc::bad_file, std::string("JSON parse error: ") + e.what());
    }
    return block_from_json(j);
}

IsolatingBlock load_block(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::bad_file, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return block_from_json_string(ss.str());
}

void save_block(const IsolatingBlock& b, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(errc::bad_file, "cannot write " + path);
    out << block_to_json_string(b);
}

ValidationReport validate_block_text(const std::string& text) {
    ValidationReport report;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        report.violations.push_back({"file", std::string("JSON parse error: ") + e.what()});
        return report;
    }
    // Schema problems and complex problems become violations.
    try {
        IsolatingBlock b = block_from_json(j);
        return validate(b);
    } catch (const Error& e) {
        report.violations.push_back({"file", e.what()});
        return report;
    }
}

} // namespace csurf
