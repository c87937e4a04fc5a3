// conley-surf: command line front end for the isolating block toolkit.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "csurf/batch.hpp"
#include "csurf/builders.hpp"
#include "csurf/conley.hpp"
#include "csurf/regularize.hpp"

using nlohmann::json;
using namespace csurf;

namespace {

bool want_color() {
    const char* env = std::getenv("CONLEY_SURF_COLOR");
    return env && std::string(env) == "1";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::bad_file, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int fail_domain(const Error& e) {
    json j;
    j["error"] = e.code_name();
    j["message"] = e.what();
    std::cerr << j.dump() << "\n";
    return 1;
}

int fail_internal(const std::exception& e) {
    json j;
    j["error"] = "Internal";
    j["message"] = e.what();
    std::cerr << j.dump() << "\n";
    return 1;
}

json census_json(const ExitCensus& c) {
    json j;
    j["u"] = c.u;
    j["u_c"] = c.u_c;
    j["s"] = c.s;
    j["s_c"] = c.s_c;
    j["beta1_N"] = c.beta1_n;
    j["obstruction"] = c.obstruction;
    return j;
}

int cmd_validate(const std::string& file, bool as_json) {
    ValidationReport report = validate_block_text(read_file(file));
    if (as_json) {
        json j;
        j["valid"] = report.ok();
        j["violations"] = json::array();
        for (const Violation& v : report.violations) {
            json vj;
            vj["where"] = v.where;
            vj["what"] = v.what;
            j["violations"].push_back(vj);
        }
        std::cout << j.dump(2) << "\n";
    } else if (report.ok()) {
        std::cout << "valid\n";
    } else {
        for (const Violation& v : report.violations) std::cout << v.where << ": " << v.what << "\n";
    }
    return report.ok() ? 0 : 1;
}

int cmd_census(const std::string& file, bool as_json) {
    IsolatingBlock b = load_block(file);
    ExitCensus c = census(b);
    if (as_json) {
        json j = census_json(c);
        j["sections"] = json::array();
        for (const SectionComponent& s : section_census(b)) {
            json sj;
            sj["kind"] = s.kind == SectionKind::Point ? "point" : s.kind == SectionKind::Arc ? "arc" : "circle";
            sj["initial_part"] = s.initial_part;
            sj["at_vertex"] = s.representative;
            j["sections"].push_back(sj);
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "u = " << c.u << "   u_c = " << c.u_c << "\n";
    std::cout << "s = " << c.s << "   s_c = " << c.s_c << "\n";
    std::cout << "beta1(N) = " << c.beta1_n << "\n";
    std::cout << "obstruction = " << c.obstruction << (c.obstruction == 0 ? "  (regular)" : "") << "\n";
    for (const SectionComponent& s : section_census(b))
        std::cout << "n_minus component at vertex " << s.representative << ": sweeps a " << s.initial_part
                  << "\n";
    return 0;
}

int cmd_regularize(const std::string& file, const std::string& out, const std::string& trace_path) {
    IsolatingBlock b = load_block(file);
    RegularizeResult res = regularize(b);
    save_block(res.block, out);
    if (!trace_path.empty()) {
        json steps = json::array();
        for (const SurgeryStep& s : res.trace.steps) {
            json sj;
            sj["phase"] = s.phase;
            sj["spine"] = s.spine;
            sj["obstruction_before"] = s.obstruction_before;
            sj["obstruction_after"] = s.obstruction_after;
            sj["chi_before"] = s.chi_before;
            sj["chi_after"] = s.chi_after;
            steps.push_back(sj);
        }
        std::ofstream t(trace_path);
        if (!t) throw Error(errc::bad_file, "cannot write " + trace_path);
        t << steps.dump(2) << "\n";
    }
    std::cout << "regularized in " << res.trace.steps.size() << " cut"
              << (res.trace.steps.size() == 1 ? "" : "s") << " -> " << out << "\n";
    return 0;
}

int cmd_classify(const std::vector<std::string>& files, bool as_json, int jobs) {
    std::vector<IsolatingBlock> blocks;
    for (const std::string& f : files) blocks.push_back(load_block(f));
    if (blocks.size() == 1) {
        ClassificationReport r = classify(blocks[0]);
        if (as_json)
            std::cout << report_to_json_string(r);
        else
            std::cout << report_to_text(r, want_color());
        return 0;
    }
    std::vector<BatchItem> items = classify_batch(blocks, jobs);
    bool any_failed = false;
    if (as_json) {
        json arr = json::array();
        for (std::size_t i = 0; i < items.size(); ++i) {
            json j;
            j["file"] = files[i];
            if (items[i].ok)
                j["report"] = json::parse(items[i].report_json);
            else {
                j["error"] = items[i].error_code;
                j["message"] = items[i].error;
                any_failed = true;
            }
            arr.push_back(j);
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < items.size(); ++i) {
            std::cout << "== " << files[i] << "\n";
            if (items[i].ok)
                std::cout << items[i].report_text;
            else {
                std::cout << "error: " << items[i].error << "\n";
                any_failed = true;
            }
        }
    }
    return any_failed ? 1 : 0;
}

int cmd_ring(const std::string& file, bool as_json) {
    IsolatingBlock b = load_block(file);
    CohomologyIndex ch = cohomology_index(b);
    IntersectionForm form = block_intersection_form(b);
    IndexDescriptor index = ring_classify(ch, form);
    if (as_json) {
        json j;
        j["cohomology_index"] = {{"dim0", ch.dim0}, {"dim1", ch.dim1}, {"dim2", ch.dim2}};
        json rows = json::array();
        for (std::size_t r = 0; r < form.matrix.rows(); ++r) {
            std::string row;
            for (std::size_t c = 0; c < form.matrix.cols(); ++c) row += form.matrix.get(r, c) ? '1' : '0';
            rows.push_back(row);
        }
        j["intersection_form"] = {{"matrix", rows}, {"rank", form.rank}, {"has_self_square", form.has_self_square}};
        j["index_text"] = index.text();
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "CH^0 = " << ch.dim0 << ", CH^1 = " << ch.dim1 << ", CH^2 = " << ch.dim2 << "\n";
    std::cout << "intersection form on CH^1:\n";
    if (form.matrix.rows() == 0) std::cout << "  (empty)\n";
    for (std::size_t r = 0; r < form.matrix.rows(); ++r) {
        std::cout << "  ";
        for (std::size_t c = 0; c < form.matrix.cols(); ++c) std::cout << (form.matrix.get(r, c) ? '1' : '0');
        std::cout << "\n";
    }
    std::cout << "rank = " << form.rank << ", self square: " << (form.has_self_square ? "yes" : "no") << "\n";
    std::cout << "ring classification: " << index.text() << "\n";
    return 0;
}

int cmd_reverse(const std::string& file, const std::string& out) {
    IsolatingBlock b = load_block(file);
    require_valid(b);
    save_block(reverse(b), out);
    std::cout << "reversed block -> " << out << "\n";
    return 0;
}

ComponentSummary summary_from_json(const json& j, const std::string& what) {
    if (!j.is_object()) throw Error(errc::bad_file, what + " must be an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "beta1" && key != "u" && key != "u_c" && key != "dynamics_type")
            throw Error(errc::bad_file, "unknown key \"" + key + "\" in " + what);
    }
    ComponentSummary s;
    if (!j.contains("beta1") || !j.contains("u_c") || !j.contains("dynamics_type"))
        throw Error(errc::bad_file, what + " needs beta1, u_c and dynamics_type");
    s.beta1 = j["beta1"].get<int>();
    s.u_c = j["u_c"].get<int>();
    std::string t = j["dynamics_type"].get<std::string>();
    if (t == "Attractor")
        s.dynamics_type = DynamicsType::Attractor;
    else if (t == "Repeller")
        s.dynamics_type = DynamicsType::Repeller;
    else if (t == "Mixed")
        s.dynamics_type = DynamicsType::Mixed;
    else
        throw Error(errc::bad_file, "dynamics_type must be Attractor, Repeller or Mixed");
    if (j.contains("u"))
        s.u = j["u"].get<int>();
    else
        s.u = s.dynamics_type == DynamicsType::Attractor ? 0 : std::max(1, s.u_c);
    return s;
}

int cmd_continuation(const std::string& k0_file, const std::string& comps_file, bool shares_block,
                     bool as_json) {
    ComponentSummary k0 = summary_from_json(json::parse(read_file(k0_file)), "K0 summary");
    json jc = json::parse(read_file(comps_file));
    if (!jc.is_array()) throw Error(errc::bad_file, "components file must hold a JSON array");
    std::vector<ComponentSummary> comps;
    for (std::size_t i = 0; i < jc.size(); ++i)
        comps.push_back(summary_from_json(jc[i], "component " + std::to_string(i)));

    ContinuationReport rep = check_continuation(k0, comps, shares_block);
    if (as_json) {
        json j;
        j["ok"] = rep.ok;
        j["failed_clause"] = rep.failed_clause;
        j["detail"] = rep.detail;
        j["checks"] = rep.checks;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const std::string& c : rep.checks) std::cout << "ok: " << c << "\n";
        if (!rep.ok) std::cout << "FAILED [" << rep.failed_clause << "] " << rep.detail << "\n";
        else std::cout << "continuation data is consistent\n";
    }
    return rep.ok ? 0 : 1;
}

int cmd_generate(const std::string& name, const std::string& out, bool no_fixed_points,
                 std::uint64_t seed, int budget) {
    IsolatingBlock b = name == "random" ? random_block(seed, budget) : standard_block(name);
    b.asserts_no_fixed_points = no_fixed_points;
    save_block(b, out);
    std::cout << b.name << " -> " << out << "\n";
    return 0;
}

int cmd_schematic(const std::string& file, const std::string& out) {
    IsolatingBlock b = load_block(file);
    require_valid(b);
    std::set<VertexId> corners = corner_vertices(b);
    std::ofstream dot(out);
    if (!dot) throw Error(errc::bad_file, "cannot write " + out);
    dot << "graph block {\n";
    dot << "  label=\"" << (b.name.empty() ? file : b.name) << "\";\n";
    dot << "  node [shape=circle, fontsize=10];\n";
    auto circles = b.complex.boundary_circles();
    for (std::size_t ci = 0; ci < circles.size(); ++ci) {
        dot << "  subgraph cluster_" << ci << " {\n";
        dot << "    label=\"boundary circle " << ci << "\";\n";
        for (VertexId v : circles[ci].vertices) {
            dot << "    v" << v << " [label=\"" << v << "\"";
            if (corners.count(v)) dot << ", shape=diamond";
            if (b.n_minus.vertices.count(v)) dot << ", style=filled, fillcolor=\"#f4a0a0\"";
            else if (b.n_plus.vertices.count(v)) dot << ", style=filled, fillcolor=\"#a0b8f4\"";
            dot << "];\n";
        }
        for (const Edge& e : circles[ci].edges()) {
            bool exit = b.exit_edges.count(e) > 0;
            bool marked = exit ? b.n_minus.edges.count(e) > 0 : b.n_plus.edges.count(e) > 0;
            dot << "    v" << e.a << " -- v" << e.b << " [color=" << (exit ? "red" : "blue");
            if (!exit) dot << ", style=dashed";
            if (marked) dot << ", penwidth=3";
            dot << "];\n";
        }
        dot << "  }\n";
    }
    for (std::size_t si = 0; si < b.spines.size(); ++si) {
        const auto& p = b.spines[si].path;
        dot << "  v" << p.front() << " -- v" << p.back() << " [style=dotted, label=\"spine " << si
            << "\", constraint=false];\n";
    }
    dot << "}\n";
    std::cout << "schematic -> " << out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"conley-surf: Conley index toolkit for isolating blocks on surfaces"};
    app.require_subcommand(1);

    std::string file, out, trace_path, k0_file, comps_file, name;
    std::vector<std::string> files;
    bool as_json = false, shares_block = false, no_fixed_points = false;
    int jobs = 0, budget = 100;
    std::uint64_t seed = 1;

    auto* validate_cmd = app.add_subcommand("validate", "check a block file against every invariant");
    validate_cmd->add_option("file", file)->required();
    validate_cmd->add_flag("--json", as_json);

    auto* census_cmd = app.add_subcommand("census", "exit/entrance statistics and the obstruction");
    census_cmd->add_option("file", file)->required();
    census_cmd->add_flag("--json", as_json);

    auto* reg_cmd = app.add_subcommand("regularize", "cut flow rectangles until the block is regular");
    reg_cmd->add_option("file", file)->required();
    reg_cmd->add_option("-o,--out", out)->required();
    reg_cmd->add_option("--trace", trace_path);

    auto* classify_cmd = app.add_subcommand("classify", "dynamics type, Conley index and consequences");
    classify_cmd->add_option("files", files)->required();
    classify_cmd->add_flag("--json", as_json);
    classify_cmd->add_option("--jobs", jobs, "parallel classification of several files");

    auto* ring_cmd = app.add_subcommand("ring", "cohomology index, intersection form and ring classification");
    ring_cmd->add_option("file", file)->required();
    ring_cmd->add_flag("--json", as_json);

    auto* reverse_cmd = app.add_subcommand("reverse", "time-reversed block");
    reverse_cmd->add_option("file", file)->required();
    reverse_cmd->add_option("-o,--out", out)->required();

    auto* cont_cmd = app.add_subcommand("continuation", "check component summaries against a continuation");
    cont_cmd->add_option("k0", k0_file)->required();
    cont_cmd->add_option("comps", comps_file)->required();
    cont_cmd->add_flag("--shares-block", shares_block);
    cont_cmd->add_flag("--json", as_json);

    std::string recipe_help = "recipe name (";
    for (const std::string& r : standard_block_names()) recipe_help += r + ", ";
    recipe_help += "or random)";
    auto* gen_cmd = app.add_subcommand("generate", "emit a named or random block file");
    gen_cmd->add_option("name", name, recipe_help)->required();
    gen_cmd->add_option("-o,--out", out)->required();
    gen_cmd->add_flag("--assert-no-fixed-points", no_fixed_points);
    gen_cmd->add_option("--seed", seed);
    gen_cmd->add_option("--budget", budget);

    auto* schem_cmd = app.add_subcommand("schematic", "Graphviz DOT picture of the boundary structure");
    schem_cmd->add_option("file", file)->required();
    schem_cmd->add_option("-o,--out", out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (validate_cmd->parsed()) return cmd_validate(file, as_json);
        if (census_cmd->parsed()) return cmd_census(file, as_json);
        if (reg_cmd->parsed()) return cmd_regularize(file, out, trace_path);
        if (classify_cmd->parsed()) return cmd_classify(files, as_json, jobs);
        if (ring_cmd->parsed()) return cmd_ring(file, as_json);
        if (reverse_cmd->parsed()) return cmd_reverse(file, out);
        if (cont_cmd->parsed()) return cmd_continuation(k0_file, comps_file, shares_block, as_json);
        if (gen_cmd->parsed()) return cmd_generate(name, out, no_fixed_points, seed, budget);
        if (schem_cmd->parsed()) return cmd_schematic(file, out);
    } catch (const Error& e) {
        return fail_domain(e);
    } catch (const std::exception& e) {
        return fail_internal(e);
    }
    return 2;
}
