#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "domino/experiment.hpp"
#include "domino/io.hpp"
#include "domino/render.hpp"

using namespace domino;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "domino 1.0.0";

struct CommonOpts {
    std::string out = "out";
    uint64_t seed = 1;
};

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

/// Domain factory shared by all subcommands. Specs look like aztec:8,
/// modified_aztec:8[:defect], annulus:6:2, bitten_annulus:16:8:1, block:4:6,
/// or file:path.json.
DomainPtr make_domain(const std::string& spec) {
    std::stringstream ss(spec);
    std::string kind;
    std::getline(ss, kind, ':');
    std::vector<std::string> args;
    std::string a;
    while (std::getline(ss, a, ':')) args.push_back(a);
    auto num = [&](size_t i) { return std::stoi(args.at(i)); };
    if (kind == "aztec") return generate_aztec(num(0));
    if (kind == "modified_aztec")
        return args.size() > 1 ? generate_modified_aztec(num(0), num(1))
                               : generate_modified_aztec(num(0));
    if (kind == "annulus") return generate_square_annulus(num(0), num(1));
    if (kind == "bitten_annulus") return generate_bitten_annulus(num(0), num(1), num(2));
    if (kind == "block") return generate_block(num(0), num(1));
    if (kind == "file") return domain_from_json(json::parse(read_text_file(args.at(0))));
    fail(Errc::BadInput, "unknown domain kind: " + kind);
}

void write_manifest(const CommonOpts& common, const std::string& command, const json& params) {
    json m;
    m["version"] = kVersion;
    m["command"] = command;
    m["seed"] = common.seed;
    m["params"] = params;
    write_text_file(common.out + "/manifest.json", m.dump(2) + "\n");
}

void ensure_out(const CommonOpts& common) { fs::create_directories(common.out); }

int run_domain(const CommonOpts& common, const std::string& spec) {
    ensure_out(common);
    auto dom = make_domain(spec);
    write_text_file(common.out + "/domain.json", domain_to_json(*dom).dump(2) + "\n");
    json facts;
    facts["squares"] = dom->num_squares();
    facts["vertices"] = dom->num_vertices();
    facts["edges"] = dom->num_edges();
    facts["genus"] = dom->genus();
    facts["monodromy"] = dom->monodromy_vector();
    facts["tileable"] = is_tileable(*dom);
    write_text_file(common.out + "/facts.json", facts.dump(2) + "\n");
    write_manifest(common, "domain", {{"domain", spec}});
    std::cout << facts.dump(2) << "\n";
    return 0;
}

int run_enumerate(const CommonOpts& common, const std::string& spec, int cap) {
    ensure_out(common);
    auto dom = make_domain(spec);
    auto c = census(dom, cap);
    write_text_file(common.out + "/census.csv", census_csv(*dom, c));
    write_manifest(common, "enumerate", {{"domain", spec}, {"cap", cap}});
    std::cout << "tilings: " << c.total << ", height-change classes: " << c.by_height_change.size()
              << "\n";
    return 0;
}

int run_sample(const CommonOpts& common, const std::string& spec, int64_t samples, int64_t burnin,
               int64_t thin, const std::string& fix_R, double scale, bool snapshot) {
    ensure_out(common);
    auto dom = make_domain(spec);
    SampleParams p;
    p.n_samples = samples;
    p.burn_in = burnin;
    p.thinning = thin;
    p.seed = common.seed;
    p.scale = scale;
    if (!fix_R.empty()) p.fixed_R = parse_int_list(fix_R);
    std::optional<Tiling> last;
    auto field = sample_uniform(dom, p, [&](const MarkovState& st) { last = st.tiling(); });
    write_text_file(common.out + "/field.csv", field_csv(field));
    write_text_file(common.out + "/r_histogram.csv", r_histogram_csv(field));
    if (snapshot && last) {
        write_text_file(common.out + "/tiling.json", tiling_to_json(*dom, *last).dump() + "\n");
        write_text_file(common.out + "/tiling.svg", render_tiling_svg(*dom, *last));
    }
    write_manifest(common, "sample",
                   {{"domain", spec},
                    {"samples", samples},
                    {"burnin", burnin},
                    {"thin", thin},
                    {"fix_R", fix_R},
                    {"scale", scale},
                    {"snapshot", snapshot}});
    std::cout << "samples: " << field.n_samples << ", classes seen: " << field.r_histogram.size()
              << "\n";
    return 0;
}

int run_tension(const CommonOpts& common, int grid) {
    ensure_out(common);
    write_text_file(common.out + "/tension.csv", tension_csv(grid));
    write_manifest(common, "tension", {{"grid", grid}});
    std::cout << "sigma table written (" << grid << "x" << grid << " grid)\n";
    return 0;
}

struct SolveSetup {
    Mesh mesh;
    BoundaryData b;
    std::vector<double> monodromy;
};

SolveSetup setup_solve(const std::string& shape, double ell, const std::string& boundary) {
    int g = int(std::lround(1.0 / ell));
    SolveSetup s;
    if (shape == "square") s.mesh = build_mesh(square_spec(g), ell);
    else if (shape == "diamond") s.mesh = build_mesh(diamond_spec(g), ell);
    else if (shape == "square_annulus") s.mesh = build_mesh(square_annulus_spec(g), ell);
    else if (shape == "square_annulus_alt") s.mesh = build_mesh(square_annulus_spec_alt(g), ell);
    else if (shape == "diamond_annulus") s.mesh = build_mesh(diamond_annulus_spec(g), ell);
    else fail(Errc::BadInput, "unknown shape: " + shape);
    s.monodromy.assign(size_t(s.mesh.num_components - 1), 0.0);
    if (boundary == "flat") {
        s.b = flat_boundary(s.mesh);
    } else {
        // boundary = lattice:<domain spec>:<N>
        require(boundary.rfind("lattice:", 0) == 0, Errc::BadInput,
                "boundary must be 'flat' or 'lattice:<domain>:<N>'");
        std::string rest = boundary.substr(8);
        size_t pos = rest.rfind(':');
        require(pos != std::string::npos, Errc::BadInput, "expected lattice:<domain>:<N>");
        double latN = std::stod(rest.substr(pos + 1));
        auto lat = make_domain(rest.substr(0, pos));
        s.b = boundary_from_lattice(s.mesh, *lat, latN);
        s.monodromy = continuum_monodromy(*lat, latN);
    }
    return s;
}

int run_solve(const CommonOpts& common, const std::string& shape, double ell,
              const std::string& boundary, const std::string& fix_r) {
    ensure_out(common);
    auto setup = setup_solve(shape, ell, boundary);
    SolveOptions opts;
    if (!fix_r.empty()) {
        std::vector<double> r;
        std::stringstream ss(fix_r);
        std::string item;
        while (std::getline(ss, item, ',')) r.push_back(std::stod(item));
        opts.fixed_r = r;
    }
    auto rep = maximize(setup.mesh, setup.b, setup.monodromy, opts);
    write_text_file(common.out + "/solution.csv", solution_csv(setup.mesh, rep.h_star.values));
    write_text_file(common.out + "/frozen.csv", frozen_csv(setup.mesh, rep.frozen_mask));
    write_text_file(common.out + "/solution.svg", render_solution_svg(setup.mesh, rep));
    json report;
    report["objective"] = rep.objective;
    report["r_star"] = rep.r_star;
    report["iterations"] = rep.iterations;
    report["residual"] = rep.residual;
    report["eps_bnd"] = rep.eps_bnd;
    write_text_file(common.out + "/report.json", report.dump(2) + "\n");
    write_manifest(common, "solve",
                   {{"shape", shape}, {"mesh", ell}, {"boundary", boundary}, {"fix_r", fix_r}});
    std::cout << report.dump(2) << "\n";
    return 0;
}

int run_compare(const CommonOpts& common, const std::string& family, const std::string& sizes_str,
                int64_t samples, double ell, int defect_num, int defect_den) {
    ensure_out(common);
    auto sizes = parse_int_list(sizes_str);
    std::ostringstream table;
    table << "N,sup_distance,l2_distance,points,r_gap\n";
    for (int N : sizes) {
        DomainPtr lat;
        std::string shape;
        if (family == "aztec") {
            lat = generate_aztec(N);
            shape = "diamond";
        } else if (family == "modified_aztec") {
            lat = generate_modified_aztec(N, std::max(1, N * defect_num / defect_den));
            shape = "diamond_annulus";
        } else {
            fail(Errc::BadInput, "compare supports the aztec and modified_aztec families");
        }
        int g = int(std::lround(1.0 / ell));
        Mesh mesh = shape == "diamond" ? build_mesh(diamond_spec(g), ell)
                                       : build_mesh(diamond_annulus_spec(g), ell);
        auto b = boundary_from_lattice(mesh, *lat, double(N));
        auto m = continuum_monodromy(*lat, double(N));
        auto rep = maximize(mesh, b, m);

        SampleParams p;
        p.seed = common.seed + uint64_t(N);
        p.n_samples = samples;
        p.scale = double(N);
        auto field = sample_uniform(lat, p);
        auto cmp = compare_to_empirical(
            mesh, rep, field,
            [N](Vec2i v) {
                return std::array<double, 2>{double(v.x) / N, double(v.y) / N};
            },
            0.1);
        table << N << "," << format_double(cmp.sup_distance) << ","
              << format_double(cmp.l2_distance) << "," << cmp.points_compared << ","
              << format_double(cmp.r_gap.empty() ? 0.0 : cmp.r_gap[0]) << "\n";
    }
    write_text_file(common.out + "/compare.csv", table.str());
    write_manifest(common, "compare",
                   {{"family", family},
                    {"sizes", sizes_str},
                    {"samples", samples},
                    {"mesh", ell},
                    {"defect_num", defect_num},
                    {"defect_den", defect_den}});
    std::cout << table.str();
    return 0;
}

int run_render(const CommonOpts& common, const std::string& spec, const std::string& tiling_file) {
    ensure_out(common);
    auto dom = make_domain(spec);
    std::string svg;
    if (tiling_file.empty()) {
        svg = render_empty_svg();
    } else {
        auto t = tiling_from_json(*dom, json::parse(read_text_file(tiling_file)));
        svg = render_tiling_svg(*dom, t);
    }
    write_text_file(common.out + "/render.svg", svg);
    write_manifest(common, "render", {{"domain", spec}, {"tiling", tiling_file}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Domino tilings of multiply-connected lattice domains"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonOpts common;
    app.add_option("--out", common.out, "output directory")->capture_default_str();
    app.add_option("--seed", common.seed, "random seed")->capture_default_str();

    std::string domain_spec = "aztec:4";
    std::string boundary = "flat";
    std::string fix_R, fix_r, tiling_file;
    std::string shape = "diamond";
    std::string family = "modified_aztec", sizes = "8,16,24";
    int cap = kEnumerateCap, grid = 64;
    int64_t samples = 1000, burnin = -1, thin = -1;
    double ell = 0.0625, scale = 0;
    int defect_num = 1, defect_den = 8;
    bool snapshot = false;
    std::string manifest_file;

    auto* cd = app.add_subcommand("domain", "generate a lattice domain and its facts");
    cd->add_option("--domain", domain_spec, "domain spec, e.g. modified_aztec:8");
    auto* ce = app.add_subcommand("enumerate", "exact tiling census");
    ce->add_option("--domain", domain_spec, "domain spec");
    ce->add_option("--cap", cap, "enumeration cap");
    auto* cs = app.add_subcommand("sample", "MCMC sampling of uniform tilings");
    cs->add_option("--domain", domain_spec, "domain spec");
    cs->add_option("--samples", samples, "recorded samples");
    cs->add_option("--burnin", burnin, "burn-in proposals (-1: default)");
    cs->add_option("--thin", thin, "proposals between samples (-1: default)");
    cs->add_option("--fix-R", fix_R, "fix the height change, e.g. 4 or 4,0");
    cs->add_option("--scale", scale, "normalization N (0: bounding box)");
    cs->add_flag("--snapshot", snapshot, "write the last tiling as JSON and SVG");
    auto* ct = app.add_subcommand("tension", "surface tension table over the slope polygon");
    ct->add_option("--grid", grid, "grid resolution per axis");
    auto* cv = app.add_subcommand("solve", "variational limit-shape solve");
    cv->add_option("--shape", shape,
                   "square|diamond|square_annulus|square_annulus_alt|diamond_annulus");
    cv->add_option("--mesh", ell, "mesh pitch (1/integer)");
    cv->add_option("--boundary", boundary, "flat or lattice:<domain>:<N>");
    cv->add_option("--fix-r", fix_r, "pin the height change constants");
    auto* cc = app.add_subcommand("compare", "law-of-large-numbers comparison pipeline");
    cc->add_option("--family", family, "aztec or modified_aztec");
    cc->add_option("--sizes", sizes, "comma-separated lattice sizes");
    cc->add_option("--samples", samples, "samples per size");
    cc->add_option("--mesh", ell, "mesh pitch");
    cc->add_option("--defect-num", defect_num, "defect size numerator (fraction of N)");
    cc->add_option("--defect-den", defect_den, "defect size denominator");
    auto* cr = app.add_subcommand("render", "render a tiling (or an empty canvas)");
    cr->add_option("--domain", domain_spec, "domain spec");
    cr->add_option("--tiling", tiling_file, "tiling JSON file");
    auto* cm = app.add_subcommand("rerun", "re-execute a manifest");
    cm->add_option("--manifest", manifest_file, "manifest.json path")->required();

    for (auto* sc : app.get_subcommands({})) sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cm->parsed()) {
            json m = json::parse(read_text_file(manifest_file));
            common.seed = m.at("seed").get<uint64_t>();
            const json& p = m.at("params");
            std::string command = m.at("command").get<std::string>();
            if (command == "domain") return run_domain(common, p.at("domain"));
            if (command == "enumerate") return run_enumerate(common, p.at("domain"), p.at("cap"));
            if (command == "sample")
                return run_sample(common, p.at("domain"), p.at("samples"), p.at("burnin"),
                                  p.at("thin"), p.at("fix_R"), p.at("scale"), p.at("snapshot"));
            if (command == "tension") return run_tension(common, p.at("grid"));
            if (command == "solve")
                return run_solve(common, p.at("shape"), p.at("mesh"), p.at("boundary"),
                                 p.at("fix_r"));
            if (command == "compare")
                return run_compare(common, p.at("family"), p.at("sizes"), p.at("samples"),
                                   p.at("mesh"), p.at("defect_num"), p.at("defect_den"));
            if (command == "render") return run_render(common, p.at("domain"), p.at("tiling"));
            fail(Errc::BadInput, "manifest has unknown command " + command);
        }
        if (cd->parsed()) return run_domain(common, domain_spec);
        if (ce->parsed()) return run_enumerate(common, domain_spec, cap);
        if (cs->parsed())
            return run_sample(common, domain_spec, samples, burnin, thin, fix_R, scale, snapshot);
        if (ct->parsed()) return run_tension(common, grid);
        if (cv->parsed()) return run_solve(common, shape, ell, boundary, fix_r);
        if (cc->parsed())
            return run_compare(common, family, sizes, samples, ell, defect_num, defect_den);
        if (cr->parsed()) return run_render(common, domain_spec, tiling_file);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 10 + int(e.code);  // one exit code per error category
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
