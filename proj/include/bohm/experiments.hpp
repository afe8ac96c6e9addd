#pragma once

#include "bohm/config.hpp"
#include "bohm/wavefield.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace bohm {

enum class Command { States, Trajectory, PhaseSpace, Lyapunov };

std::string_view to_string(Command c);
Command parse_command(std::string_view text);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 1;
inline constexpr int numerical = 2;
inline constexpr int partial = 3;
} // namespace exit_code

struct CommandOutcome {
    int exit_code = exit_code::ok;
    std::filesystem::path manifest;
    std::vector<std::filesystem::path> outputs;
    std::string message;
};

/// Hash of the canonical config text with the output directory blanked, so
/// the same run written to two places hashes the same.
std::string config_hash(const ExperimentSpec& spec);

/// Superposition of the spec's terms on one surface. Weights that are not
/// unit-norm are rescaled and a note is appended to `notes`.
Superposition build_superposition(const ExperimentSpec& spec, SurfaceKind kind,
                                  std::vector<std::string>* notes = nullptr);

/// Run one command, writing data files, plot scripts and finally the
/// manifest into spec.output_dir. Errors in the numerics are reported through
/// the exit code and the manifest rather than thrown; only failures to write
/// files escape as exceptions.
CommandOutcome run_command(Command command, const ExperimentSpec& spec, unsigned jobs, std::ostream& log);

} // namespace bohm
