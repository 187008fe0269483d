// tdim: validate, inspect and compute spline dimensions on T-meshes.
//
// Exit codes: 0 success, 1 invalid input (mesh, history or file contents),
// 2 usage error.
#include "tmesh/tmesh.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace tmesh;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

std::pair<int, int> parse_pair(const std::string& text, const char* flag)
{
    auto comma = text.find(',');
    try {
        if (comma == std::string::npos) throw std::invalid_argument("");
        std::size_t a = 0, b = 0;
        int first = std::stoi(text.substr(0, comma), &a);
        int second = std::stoi(text.substr(comma + 1), &b);
        if (a != comma || b != text.size() - comma - 1 || first < 0 || second < 0) throw std::invalid_argument("");
        return {first, second};
    } catch (const std::invalid_argument&) {
        throw UsageError(std::string(flag) + " expects two nonnegative integers 'a,b', got '" + text + "'");
    } catch (const std::out_of_range&) {
        throw UsageError(std::string(flag) + " value out of range");
    }
}

/// Degree and smoothness flags shared by several subcommands.
struct SplineFlags {
    int m = 2;
    int n = 2;
    std::string smooth;
    std::string smooth_file;

    void attach(CLI::App* app)
    {
        app->add_option("-m", m, "degree in s")->check(CLI::NonNegativeNumber);
        app->add_option("-n", n, "degree in t")->check(CLI::NonNegativeNumber);
        app->add_option("--smooth", smooth, "constant smoothness r,r'");
        app->add_option("--smooth-file", smooth_file, "file of smooth/default-smooth lines");
    }

    Degree degree() const { return {m, n}; }

    /// Flags win over the mesh file; (1,1) when nothing is given.
    SmoothnessDistribution distribution(const MeshDocument* doc) const
    {
        if (!smooth.empty()) {
            auto [r, rp] = parse_pair(smooth, "--smooth");
            return SmoothnessDistribution(r, rp);
        }
        if (!smooth_file.empty()) return parse_tmesh("tmesh 1\n" + read_file(smooth_file)).distribution();
        if (doc && doc->has_smoothness()) return doc->distribution();
        return SmoothnessDistribution(1, 1);
    }
};

struct Loaded {
    MeshDocument doc;
    TMesh mesh;
};

Loaded load_mesh(const std::string& path)
{
    auto doc = parse_tmesh(read_file(path));
    auto mesh = build_mesh(doc.cells);
    return {std::move(doc), std::move(mesh)};
}

std::optional<HierarchicalMesh> load_history(const std::string& path, const SmoothnessDistribution& dist,
                                             const Degree& deg, const TMesh& mesh)
{
    if (path.empty()) return std::nullopt;
    auto hm = run_script(parse_tsub(read_file(path)), &dist, &deg);
    if (hm.mesh.rectangles() != mesh.rectangles())
        throw Error(ErrorKind::HistoryMismatch, "history " + path + " does not reproduce the mesh");
    return hm;
}

std::string history_path(const std::string& flag, const MeshDocument& doc, const std::string& mesh_path)
{
    if (!flag.empty()) return flag;
    if (!doc.history) return {};
    // Relative to the mesh file.
    auto slash = mesh_path.find_last_of('/');
    if (doc.history->front() == '/' || slash == std::string::npos) return *doc.history;
    return mesh_path.substr(0, slash + 1) + *doc.history;
}

int run(int argc, char** argv)
{
    CLI::App app{"Spline dimensions on planar T-meshes"};
    app.require_subcommand(1);

    std::string path, history_flag, output, dump_path, ordering_name = "auto", weighted;
    bool json = false, exact = false, bounds = false, no_mis = false;
    SplineFlags spline;

    auto* validate = app.add_subcommand("validate", "check that a tmesh file describes a valid T-mesh");
    validate->add_option("file", path)->required();

    auto* stats_cmd = app.add_subcommand("stats", "face counts and counting identities");
    stats_cmd->add_option("file", path)->required();
    stats_cmd->add_flag("--json", json);

    auto* mis = app.add_subcommand("mis", "maximal interior segments, weights and blocking");
    mis->add_option("file", path)->required();
    mis->add_option("--history", history_flag, "tsub file that produced the mesh");
    mis->add_flag("--json", json);
    spline.attach(mis);

    auto* dim = app.add_subcommand("dim", "dimension bounds and exact dimension");
    dim->add_option("file", path)->required();
    dim->add_option("--history", history_flag, "tsub file that produced the mesh");
    dim->add_flag("--exact", exact, "compute the exact dimension by linear algebra");
    dim->add_flag("--bounds", bounds, "report the certified interval (default)");
    dim->add_option("--ordering", ordering_name, "auto or search")->check(CLI::IsMember({"auto", "search"}));
    dim->add_option("--dump-matrix", dump_path, "write the constraint matrix as triplets");
    dim->add_flag("--json", json);
    spline.attach(dim);

    auto* subdivide = app.add_subcommand("subdivide", "run a tsub file and print the resulting mesh");
    subdivide->add_option("file", path)->required();
    subdivide->add_option("--weighted", weighted, "apply the (k,k')-weighted rule to every split");
    subdivide->add_option("-o,--output", output, "tmesh output path");
    subdivide->add_option("--tsub-out", history_flag, "write the executed script");
    subdivide->add_flag("--json", json);
    spline.attach(subdivide);

    auto* svg = app.add_subcommand("svg", "render a mesh as SVG");
    svg->add_option("file", path)->required();
    svg->add_option("-o,--output", output, "output path");
    svg->add_flag("--no-mis", no_mis, "do not highlight maximal interior segments");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    (void)bounds;

    if (validate->parsed()) {
        auto [doc, mesh] = load_mesh(path);
        auto c = stats(mesh);
        std::cout << "valid: " << c.f2 << " cells, " << c.f1 << " edges, " << c.f0 << " vertices\n";
        return 0;
    }

    if (stats_cmd->parsed()) {
        auto [doc, mesh] = load_mesh(path);
        auto c = stats(mesh);
        auto ids = check_counting_identities(mesh);
        if (json) {
            Json out = stats_json(c);
            out["identities"] = identities_json(ids);
            std::cout << out.dump() << "\n";
        } else {
            std::cout << "f2 " << c.f2 << "\nf1 " << c.f1 << " (interior " << c.f1_interior << ": h " << c.f1_horizontal
                      << ", v " << c.f1_vertical << ")\nf0 " << c.f0 << " (interior " << c.f0_interior << ": crossing "
                      << c.f0_crossing << ", T " << c.f0_t << "; boundary " << c.f0_boundary << ", corners "
                      << c.corners << ")\n";
            for (const auto& check : ids.checks) {
                std::cout << check.name << ": "
                          << (!check.applicable ? "not applicable" : check.holds ? "holds" : "FAILS") << "\n";
            }
        }
        return 0;
    }

    if (mis->parsed()) {
        auto [doc, mesh] = load_mesh(path);
        auto dist = spline.distribution(&doc);
        auto deg = spline.degree();
        auto hm = load_history(history_path(history_flag, doc, path), dist, deg, mesh);
        auto analysis = maximal_segments(mesh);
        auto ordering = default_ordering(analysis, hm ? &hm->history : nullptr);
        auto report = mis_json(mesh, analysis, dist, deg, ordering);
        if (json) {
            std::cout << report.dump() << "\n";
            return 0;
        }
        std::cout << "ordering " << ordering.source << (ordering.cyclic ? " (blocking has a cycle)" : "") << "\n";
        for (const auto& entry : report["mis"]) {
            std::cout << "mis " << entry["id"].get<int>() << " " << entry["direction"].get<std::string>() << " at "
                      << entry["coordinate"].get<std::string>() << " span [" << entry["span"][0].get<std::string>()
                      << ", " << entry["span"][1].get<std::string>() << "] rank " << entry["rank"].get<int>()
                      << " lambda " << entry["lambda"].get<int>() << " omega " << entry["omega"].get<int>()
                      << " gamma " << entry["gamma"].dump() << " blocks " << entry["blocks"].dump() << "\n";
        }
        return 0;
    }

    if (dim->parsed()) {
        auto [doc, mesh] = load_mesh(path);
        auto dist = spline.distribution(&doc);
        auto deg = spline.degree();
        auto hm = load_history(history_path(history_flag, doc, path), dist, deg, mesh);
        auto policy = ordering_name == "search" ? OrderingPolicy::Search : OrderingPolicy::Auto;
        auto report = dimension_bounds(mesh, dist, deg, policy, hm ? &hm->history : nullptr);
        if (!dump_path.empty()) {
            std::ostringstream ss;
            build_spline_system(mesh, dist, deg).write_triplets(ss);
            write_output(dump_path, ss.str());
        }
        if (exact) attach_exact(report, spline_dimension_exact(mesh, dist, deg));
        if (json) {
            std::cout << dimension_json(report).dump() << "\n";
            return 0;
        }
        std::cout << "combinatorial " << report.combinatorial << "\n";
        std::cout << "h in [" << report.h_lower << ", " << report.h_upper << "]\n";
        std::cout << "dim in [" << report.dim_lower << ", " << report.dim_upper << "]\n";
        std::cout << "certificate " << to_string(report.certificate.kind) << "\n";
        if (report.exact_dim) std::cout << "dim " << *report.exact_dim << "\nh " << *report.exact_h << "\n";
        return 0;
    }

    if (subdivide->parsed()) {
        auto script = parse_tsub(read_file(path));
        auto deg = spline.degree();
        auto dist = spline.distribution(nullptr);
        if (!weighted.empty()) {
            auto kk = parse_pair(weighted, "--weighted");
            for (auto& c : script.commands) c.weighted = kk;
        }
        auto hm = run_script(script, &dist, &deg);
        write_output(output, print_tmesh(document_of(hm.mesh)));
        if (!history_flag.empty()) write_output(history_flag, print_tsub(script_of(hm.history)));
        if (json) {
            auto analysis = maximal_segments(hm.mesh);
            Json summary = stats_json(stats(hm.mesh));
            summary["events"] = hm.history.events.size();
            summary["mis"] = analysis.mis.size();
            summary["weighted"] = is_weighted(hm.mesh, analysis, dist, deg, appearance_ordering(hm.history, analysis),
                                              deg.m + 1, deg.n + 1);
            (output.empty() ? std::cerr : std::cout) << summary.dump() << "\n";
        }
        return 0;
    }

    if (svg->parsed()) {
        auto [doc, mesh] = load_mesh(path);
        std::optional<SegmentAnalysis> analysis;
        if (!no_mis) analysis = maximal_segments(mesh);
        write_output(output, render_svg(mesh, analysis ? &*analysis : nullptr));
        return 0;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const tmesh::Error& e) {
        std::cout << "invalid: " << e.what() << "\n";
        return 1;
    } catch (const tmesh::BadRational& e) {
        std::cout << "invalid: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
