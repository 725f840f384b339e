#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polyvem/assembly.hpp"

namespace polyvem {

enum class StudyKind { PStudy, Convergence, PatchTest, Collapse, Hanging };
enum class SolutionKind { SinSin, Linear };

struct MeshSpec {
    enum class Kind { Square, Hexagonal, Voronoi, File };
    Kind kind = Kind::Square;
    int n = 4;
    int seeds = 25;
    int iterations = 100;
    std::uint64_t rng_seed = 0;
    std::string path;
};

Mesh make_mesh(const MeshSpec& spec);

struct StudyConfig {
    StudyKind kind = StudyKind::PStudy;
    MeshSpec mesh;
    int p_min = 1;
    int p_max = 10;
    int i_max = 8;  // sweep bound for the degenerate-element studies
    MomentBasisKind basis = MomentBasisKind::Monomial;
    StabilizationKind stab = StabilizationKind::S1;
    SolutionKind solution = SolutionKind::SinSin;
    bool fit = false;
};

struct StudyRow {
    double var = 0.0;  // p for the global studies, i for the local ones
    std::optional<double> cond;
    std::optional<double> error;
    std::optional<double> residual;
    std::string flags;  // "solver-fail" / "kernel-warn" markers, ';'-joined
};

struct PowerLawFit {
    double a = 0.0;
    double b = 0.0;
    double residual = 0.0;  // rms misfit of log(value)
    int points = 0;
};

struct StudyReport {
    StudyConfig config;
    std::vector<StudyRow> rows;
    std::optional<PowerLawFit> fit;
};

/// Least-squares fit of log(value) = log(a) + b*log(p). Needs >= 2 rows and
/// strictly positive values; the report layer additionally refuses to attach
/// fits built from fewer than 3 rows.
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& rows);

StudyReport run_p_study(const StudyConfig& config);
StudyReport run_convergence(const StudyConfig& config);
StudyReport run_collapse_study(const StudyConfig& config);
StudyReport run_hanging_study(const StudyConfig& config);
StudyReport run_study(const StudyConfig& config);

/// Manufactured solutions of the convergence studies.
ScalarField exact_solution(SolutionKind kind);
ScalarField exact_load(SolutionKind kind);
VectorField exact_gradient(SolutionKind kind);

/// CSV schema: header `var,cond,error,residual,flags`, 17 significant
/// digits, empty fields for values a study does not produce.
void write_csv(const StudyReport& report, std::ostream& out);
std::vector<StudyRow> read_csv_rows(std::istream& in);

} // namespace polyvem
