#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "polyvem/errors.hpp"
#include "polyvem/mesh_io.hpp"
#include "polyvem/study.hpp"

namespace {

using namespace polyvem;

struct CliOptions {
    std::string mesh = "square";
    int n = 4;
    int seeds = 25;
    int iters = 100;
    std::uint64_t rng = 0;
    std::string path;
    int pmin = -1;
    int pmax = -1;
    std::string basis = "monomial";
    std::string stab = "s1";
    int imax = 8;
    std::string solution = "sinsin";
    bool fit = false;
    std::string out;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--mesh", opt.mesh, "mesh family: square|hex|voronoi|file")
        ->check(CLI::IsMember({"square", "hex", "voronoi", "file"}));
    cmd->add_option("--n", opt.n, "resolution of the square/hex generators");
    cmd->add_option("--seeds", opt.seeds, "Voronoi seed count");
    cmd->add_option("--iters", opt.iters, "Lloyd iteration count");
    cmd->add_option("--rng", opt.rng, "Voronoi rng seed");
    cmd->add_option("--path", opt.path, "mesh file path (with --mesh file)");
    cmd->add_option("--pmin", opt.pmin, "lowest degree of accuracy");
    cmd->add_option("--pmax", opt.pmax, "highest degree of accuracy");
    cmd->add_option("--basis", opt.basis, "moment basis: monomial|ortho-gs|ortho-diag")
        ->check(CLI::IsMember({"monomial", "ortho-gs", "ortho-diag"}));
    cmd->add_option("--stab", opt.stab, "stabilization: s1|s2|s3|s4")
        ->check(CLI::IsMember({"s1", "s2", "s3", "s4"}));
    cmd->add_option("--imax", opt.imax, "sweep bound of the degenerate-element studies");
    cmd->add_option("--solution", opt.solution, "exact solution: sinsin|linear")
        ->check(CLI::IsMember({"sinsin", "linear"}));
    cmd->add_flag("--fit", opt.fit, "append a power-law fit of the condition numbers");
    cmd->add_option("--out", opt.out, "output CSV path (stdout when omitted)");
}

MeshSpec to_mesh_spec(const CliOptions& opt) {
    MeshSpec spec;
    if (opt.mesh == "square") spec.kind = MeshSpec::Kind::Square;
    else if (opt.mesh == "hex") spec.kind = MeshSpec::Kind::Hexagonal;
    else if (opt.mesh == "voronoi") spec.kind = MeshSpec::Kind::Voronoi;
    else {
        spec.kind = MeshSpec::Kind::File;
        if (opt.path.empty()) throw Error("--mesh file needs --path");
    }
    spec.n = opt.n;
    spec.seeds = opt.seeds;
    spec.iterations = opt.iters;
    spec.rng_seed = opt.rng;
    spec.path = opt.path;
    return spec;
}

StudyConfig to_config(StudyKind kind, const CliOptions& opt) {
    StudyConfig config;
    config.kind = kind;
    config.mesh = to_mesh_spec(opt);

    const bool local = kind == StudyKind::Collapse || kind == StudyKind::Hanging;
    config.p_min = opt.pmin >= 0 ? opt.pmin : (local ? 6 : 1);
    config.p_max = opt.pmax >= 0 ? opt.pmax : (local ? config.p_min : 10);
    if (local && opt.pmax < 0) config.p_max = config.p_min;
    if (config.p_min < 1 || config.p_max > 15 || config.p_min > config.p_max)
        throw Error("degree range must satisfy 1 <= pmin <= pmax <= 15");

    config.i_max = opt.imax;
    if (config.i_max < 1) throw Error("--imax must be >= 1");

    if (opt.basis == "monomial") config.basis = MomentBasisKind::Monomial;
    else if (opt.basis == "ortho-gs") config.basis = MomentBasisKind::OrthoGS;
    else config.basis = MomentBasisKind::OrthoDiag;

    if (opt.stab == "s1") config.stab = StabilizationKind::S1;
    else if (opt.stab == "s2") config.stab = StabilizationKind::S2;
    else if (opt.stab == "s3") config.stab = StabilizationKind::S3;
    else config.stab = StabilizationKind::S4;

    config.solution = opt.solution == "linear" ? SolutionKind::Linear : SolutionKind::SinSin;
    config.fit = opt.fit;
    return config;
}

void emit(const StudyReport& report, const std::string& out_path) {
    if (out_path.empty()) {
        write_csv(report, std::cout);
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw Error("cannot open output file: " + out_path);
    write_csv(report, out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"polyvem: virtual element conditioning and convergence studies on polygonal meshes"};
    app.require_subcommand(1);

    std::map<std::string, StudyKind> kinds{
        {"p-study", StudyKind::PStudy},     {"convergence", StudyKind::Convergence},
        {"patch-test", StudyKind::PatchTest}, {"collapse", StudyKind::Collapse},
        {"hanging", StudyKind::Hanging},
    };
    std::map<std::string, CliOptions> options;
    for (auto& [name, kind] : kinds) {
        CLI::App* cmd = app.add_subcommand(name);
        add_common_flags(cmd, options[name]);
    }

    CliOptions mesh_opt;
    CLI::App* mesh_cmd = app.add_subcommand("mesh", "generate (or read) a mesh, validate it, write it");
    add_common_flags(mesh_cmd, mesh_opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (mesh_cmd->parsed()) {
            const Mesh mesh = make_mesh(to_mesh_spec(mesh_opt));
            const ShapeReport shape = validate_mesh(mesh);
            double min_d2 = 1.0;
            for (const CellShape& c : shape.cells) min_d2 = std::min(min_d2, c.d2_ratio);
            std::cerr << "mesh: " << mesh.num_vertices() << " vertices, " << mesh.num_cells()
                      << " cells, area " << shape.cell_area_sum << ", min edge/diameter " << min_d2 << "\n";
            if (mesh_opt.out.empty()) write_mesh(mesh, std::cout);
            else write_mesh_file(mesh, mesh_opt.out);
            return 0;
        }
        for (auto& [name, kind] : kinds) {
            CLI::App* cmd = app.get_subcommand(name);
            if (cmd->parsed()) {
                const StudyReport report = run_study(to_config(kind, options[name]));
                emit(report, options[name].out);
                return 0;
            }
        }
    } catch (const polyvem::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
