#pragma once

#include "bohm/geometry.hpp"
#include "bohm/spectral.hpp"

#include <complex>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace bohm {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class SurfaceSelection { Torus, Flat, Both };
enum class EnergySource { Solver, Table };
enum class ReferenceTable { None, Table2, Table3 };

struct TermSpec {
    Parity parity = Parity::Even;
    int n = 0;
    int m = 0;
    std::complex<double> weight{1.0, 0.0};

    bool operator==(const TermSpec&) const = default;
};

/// One named run. Config files are line-oriented `key = value` pairs with
/// `[section]` headers; `[term]` may repeat, one per superposition term.
///
///   name = table2
///   surface = both            # torus | flat | both
///   energies = solver         # solver | table
///   reference = table2        # none | table2 | table3
///   basis_size = 32
///   [shape]      R, a
///   [run]        theta0 (comma list), phi0, t_end, sample_dt, rel_tol,
///                abs_tol, checkpoints (comma list), tracking_dt
///   [states]     alpha_limit_check, convergence_sizes (comma list)
///   [output]     dir
///   [term]       parity (+/-), n, m, weight
///
/// Numeric values accept expressions such as `sqrt(2/3)`, `i*sqrt(1/3)` or
/// `1.424*pi`. Every field has a default except the terms, which only the
/// trajectory, phasespace and lyapunov commands require.
struct ExperimentSpec {
    std::string name = "run";
    SurfaceSelection surface = SurfaceSelection::Both;
    EnergySource energies = EnergySource::Solver;
    ReferenceTable reference = ReferenceTable::None;
    int basis_size = 32;

    double R = 1.0;
    double a = 0.5;

    std::vector<double> theta0 = {0.0};
    double phi0 = 0.0;
    double t_end = 10.0;
    double sample_dt = 0.01;
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    std::vector<double> checkpoints = {9.0, 10.0};
    double tracking_dt = 0.01;

    bool alpha_limit_check = true;
    std::vector<int> convergence_sizes = {8, 16, 32};

    std::string output_dir = "out";

    std::vector<TermSpec> terms;

    bool operator==(const ExperimentSpec&) const = default;

    TorusShape shape() const { return TorusShape(R, a); }
    std::vector<SurfaceKind> surfaces() const;
};

ExperimentSpec parse_experiment(std::string_view text, std::string_view origin = "<config>");
ExperimentSpec load_experiment(const std::filesystem::path& path);

/// Canonical text form: fixed key order, shortest round-trip numbers.
std::string serialize(const ExperimentSpec& spec);

/// Directory searched by --preset: $BOHM_PRESET_DIR if set, else the
/// presets/ directory of the source tree.
std::filesystem::path preset_directory();
std::filesystem::path preset_path(std::string_view name);

std::string_view to_string(SurfaceSelection s);
std::string_view to_string(EnergySource e);
std::string_view to_string(ReferenceTable r);

} // namespace bohm
