#include "polyvem/study.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "polyvem/errors.hpp"
#include "polyvem/mesh_io.hpp"
#include "polyvem/spectral.hpp"

namespace polyvem {

Mesh make_mesh(const MeshSpec& spec) {
    switch (spec.kind) {
        case MeshSpec::Kind::Square: return square_mesh(spec.n);
        case MeshSpec::Kind::Hexagonal: return hexagonal_mesh(spec.n);
        case MeshSpec::Kind::Voronoi: return voronoi_lloyd_mesh(spec.seeds, spec.iterations, spec.rng_seed);
        case MeshSpec::Kind::File: return read_mesh_file(spec.path);
    }
    throw Error("unknown mesh spec");
}

ScalarField exact_solution(SolutionKind kind) {
    using std::numbers::pi;
    if (kind == SolutionKind::SinSin)
        return [](const Point2& p) { return std::sin(pi * p.x) * std::sin(pi * p.y); };
    return [](const Point2& p) { return 1.0 - p.x - p.y; };
}

ScalarField exact_load(SolutionKind kind) {
    using std::numbers::pi;
    if (kind == SolutionKind::SinSin)
        return [](const Point2& p) { return 2.0 * pi * pi * std::sin(pi * p.x) * std::sin(pi * p.y); };
    return [](const Point2&) { return 0.0; };
}

VectorField exact_gradient(SolutionKind kind) {
    using std::numbers::pi;
    if (kind == SolutionKind::SinSin)
        return [](const Point2& p) -> Point2 {
            return {pi * std::cos(pi * p.x) * std::sin(pi * p.y),
                    pi * std::sin(pi * p.x) * std::cos(pi * p.y)};
        };
    return [](const Point2&) -> Point2 { return {-1.0, -1.0}; };
}

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& rows) {
    if (rows.size() < 2) throw Error("power-law fit needs at least 2 rows");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [p, v] : rows) {
        if (!(p > 0.0) || !(v > 0.0)) throw Error("power-law fit needs strictly positive data");
        const double x = std::log(p);
        const double y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(rows.size());
    const double denom = n * sxx - sx * sx;
    PowerLawFit fit;
    fit.points = static_cast<int>(rows.size());
    fit.b = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
    fit.a = std::exp((sy - fit.b * sx) / n);
    double ss = 0.0;
    for (const auto& [p, v] : rows) {
        const double r = std::log(v) - (std::log(fit.a) + fit.b * std::log(p));
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

namespace {

void attach_fit(StudyReport& report) {
    if (!report.config.fit) return;
    std::vector<std::pair<double, double>> pts;
    for (const StudyRow& row : report.rows)
        if (row.cond && *row.cond > 0.0 && std::isfinite(*row.cond)) pts.push_back({row.var, *row.cond});
    if (pts.size() < 3) return;  // refused: too few points for a meaningful fit
    report.fit = fit_power_law(pts);
}

void append_flag(StudyRow& row, const std::string& flag) {
    if (!row.flags.empty()) row.flags += ';';
    row.flags += flag;
}

StudyReport run_global_study(const StudyConfig& config, SolutionKind solution) {
    StudyReport report{config, {}, {}};
    const Mesh mesh = make_mesh(config.mesh);
    const ScalarField f = exact_load(solution);
    const ScalarField g = exact_solution(solution);  // Dirichlet trace
    const VectorField grad = exact_gradient(solution);
    const MeshTopology topo = build_topology(mesh);

    for (int p = config.p_min; p <= config.p_max; ++p) {
        StudyRow row;
        row.var = p;
        try {
            const DofMap dofs = build_dof_map(mesh, topo, p);
            const LinearSystem sys = assemble(mesh, dofs, config.basis, config.stab, f, g);
            const SpectralSummary spec = condition_number(sys.matrix, 0);
            row.cond = spec.condition;
            if (spec.kernel_warning) append_flag(row, "kernel-warn");
            const SolveResult sol = solve(sys);
            row.residual = sol.residual;
            row.error = h1_error(mesh, dofs, config.basis, sol.dofs, grad);
        } catch (const Error& e) {
            append_flag(row, "solver-fail");
        }
        report.rows.push_back(std::move(row));
    }
    attach_fit(report);
    return report;
}

StudyReport run_local_study(const StudyConfig& config, bool collapse) {
    if (config.p_min != config.p_max)
        throw Error("local element studies use a single degree: set --pmin == --pmax");
    const int p = config.p_min;

    StudyReport report{config, {}, {}};
    for (int i = 1; i <= config.i_max; ++i) {
        StudyRow row;
        row.var = i;
        try {
            const Polygon poly = collapse ? collapsing_hexagon(i) : hanging_square(i);
            const LocalOperators ops = build_local_operators(poly, p, config.basis, config.stab);
            const SpectralSummary spec = condition_number(ops.stiffness, 1);
            row.cond = spec.condition;
            if (spec.kernel_warning) append_flag(row, "kernel-warn");
        } catch (const Error& e) {
            append_flag(row, "solver-fail");
        }
        report.rows.push_back(std::move(row));
    }
    attach_fit(report);
    return report;
}

} // namespace

StudyReport run_p_study(const StudyConfig& config) { return run_global_study(config, SolutionKind::SinSin); }

StudyReport run_convergence(const StudyConfig& config) { return run_global_study(config, config.solution); }

StudyReport run_collapse_study(const StudyConfig& config) { return run_local_study(config, true); }

StudyReport run_hanging_study(const StudyConfig& config) { return run_local_study(config, false); }

StudyReport run_study(const StudyConfig& config) {
    switch (config.kind) {
        case StudyKind::PStudy: return run_p_study(config);
        case StudyKind::Convergence: return run_convergence(config);
        case StudyKind::PatchTest: {
            StudyConfig patched = config;
            patched.solution = SolutionKind::Linear;
            return run_convergence(patched);
        }
        case StudyKind::Collapse: return run_collapse_study(config);
        case StudyKind::Hanging: return run_hanging_study(config);
    }
    throw Error("unknown study kind");
}

namespace {

std::string format_value(const std::optional<double>& v) {
    if (!v) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *v);
    return buf;
}

} // namespace

void write_csv(const StudyReport& report, std::ostream& out) {
    out << "var,cond,error,residual,flags\n";
    for (const StudyRow& row : report.rows) {
        char var_buf[40];
        std::snprintf(var_buf, sizeof var_buf, "%.17g", row.var);
        out << var_buf << ',' << format_value(row.cond) << ',' << format_value(row.error) << ','
            << format_value(row.residual) << ',' << row.flags << '\n';
    }
    if (report.fit) {
        char fit_buf[120];
        std::snprintf(fit_buf, sizeof fit_buf, "# fit a=%.17g b=%.17g rms=%.17g points=%d\n",
                      report.fit->a, report.fit->b, report.fit->residual, report.fit->points);
        out << fit_buf;
    }
}

std::vector<StudyRow> read_csv_rows(std::istream& in) {
    std::vector<StudyRow> rows;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) {
            if (line != "var,cond,error,residual,flags") throw ParseError("bad CSV header", line_no);
            continue;
        }
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ss(line);
        while (std::getline(ss, field, ',')) fields.push_back(field);
        while (fields.size() < 5) fields.push_back("");
        if (fields.size() != 5) throw ParseError("expected 5 CSV fields", line_no);

        StudyRow row;
        row.var = std::stod(fields[0]);
        auto parse_opt = [&](const std::string& s) -> std::optional<double> {
            if (s.empty()) return std::nullopt;
            return std::stod(s);
        };
        row.cond = parse_opt(fields[1]);
        row.error = parse_opt(fields[2]);
        row.residual = parse_opt(fields[3]);
        row.flags = fields[4];
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace polyvem
