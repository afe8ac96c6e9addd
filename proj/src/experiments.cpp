#include "bohm/experiments.hpp"

#include "bohm/monodromy.hpp"
#include "bohm/ode.hpp"
#include "bohm/output.hpp"
#include "bohm/parallel.hpp"
#include "bohm/reference_tables.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

namespace bohm {

namespace {

constexpr double kTable1BetaTol = 2e-3;
constexpr double kTable1RatioTol = 1e-2;
constexpr double kLimitAlpha = 1e-6;
constexpr double kAgreementFraction = 0.05;

struct Context {
    Command command;
    const ExperimentSpec& spec;
    std::filesystem::path dir;
    std::string prefix;
    unsigned jobs;
    std::ostream& log;
    RunManifest manifest;
    std::vector<std::filesystem::path> outputs;
    int exit_code = exit_code::ok;

    std::filesystem::path file(const std::string& suffix) {
        auto path = dir / (prefix + "_" + suffix);
        outputs.push_back(path);
        manifest.outputs.push_back(path.filename().string());
        return path;
    }

    void note(std::string text) {
        log << "note: " << text << "\n";
        manifest.notes.push_back(std::move(text));
    }
};

std::string sanitize(std::string_view name) {
    std::string out;
    for (char c : name) out += std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' ? c : '_';
    return out.empty() ? std::string("run") : out;
}

std::ofstream open_text(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

std::string fixed(double x, int digits) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(digits);
    s << x;
    return s.str();
}

std::string basis_function(const StationaryState& s, std::size_t index) {
    return (s.parity == Parity::Even ? "cos" : "sin") + std::to_string(s.harmonic(index));
}

// ---------------------------------------------------------------- states

void cmd_states(Context& ctx) {
    const ExperimentSpec& spec = ctx.spec;
    const TorusShape shape = spec.shape();
    const bool reference_shape = shape == TorusShape::reference();

    const std::vector<StationaryState> torus = solve_reference_states(shape, spec.basis_size);
    std::vector<StationaryState> flat;
    for (const auto& s : torus) flat.push_back(flat_state(s.n, s.m, s.parity, shape));

    {
        CsvWriter csv(ctx.file("states.csv"), {"surface", "label", "parity", "n", "m", "beta", "energy",
                                               "paper_beta", "abs_dev_beta"});
        auto row = [&](const StationaryState& s) {
            csv.cell(to_string(s.kind)).cell(s.label()).cell(std::string(1, parity_symbol(s.parity)));
            csv.cell(s.n).cell(s.m).cell(s.beta).cell(s.energy);
            const ReferenceState* ref = find_reference_state(s.parity, s.n, s.m);
            if (s.kind == SurfaceKind::Torus && reference_shape && ref != nullptr)
                csv.cell(ref->beta).cell(std::abs(s.beta - ref->beta));
            else
                csv.cell("").cell("");
            csv.end_row();
        };
        for (const auto& s : torus) row(s);
        for (const auto& s : flat) row(s);
    }

    {
        CsvWriter csv(ctx.file("coefficients.csv"), {"surface", "label", "index", "function", "coefficient"});
        for (const auto& group : {std::cref(torus), std::cref(flat)})
            for (const auto& s : group.get())
                for (std::size_t i = 0; i < s.coeffs.size(); ++i)
                    csv.cell(to_string(s.kind)).cell(s.label()).cell(static_cast<long>(i))
                        .cell(basis_function(s, i)).cell(s.coeffs[i]).end_row();
    }

    {
        auto out = open_text(ctx.file("table1_report.txt"));
        if (!reference_shape) {
            out << "shape R=" << format_double(shape.R()) << " a=" << format_double(shape.a())
                << " differs from the tabulated R=1 a=0.5; no comparison made\n";
        } else {
            const Table1Report report = verify_against_table1(torus);
            out << "state       beta_solved   beta_table   |dev|      max|ratio dev|  unlisted<listed/10\n";
            for (const auto& e : report.entries) {
                out << e.label << std::string(12 - std::min<std::size_t>(11, e.label.size()), ' ')
                    << fixed(e.beta, 6) << "    " << fixed(e.beta_reference, 4) << "     "
                    << fixed(e.beta_deviation, 6) << "   " << fixed(e.max_ratio_deviation, 6) << "        "
                    << (e.unlisted_small ? "yes" : "no") << "\n";
            }
            out << "\nratios c_k/c_lead (solved vs table)\n";
            for (const auto& e : report.entries) {
                out << e.label << " lead k=" << e.lead_harmonic << ":";
                for (std::size_t i = 0; i < e.harmonics.size(); ++i)
                    out << "  k=" << e.harmonics[i] << " " << fixed(e.ratios[i], 5) << " vs "
                        << fixed(e.ratios_reference[i], 5);
                out << "\n";
            }
            out << "\nmax |beta dev| = " << format_double(report.max_beta_deviation) << " (tolerance "
                << format_double(kTable1BetaTol) << ") "
                << (report.max_beta_deviation <= kTable1BetaTol ? "within" : "EXCEEDED") << "\n";
            out << "max |ratio dev| = " << format_double(report.max_ratio_deviation) << " (tolerance "
                << format_double(kTable1RatioTol) << ") "
                << (report.max_ratio_deviation <= kTable1RatioTol ? "within" : "EXCEEDED") << "\n";
            for (const auto& e : report.entries)
                if (e.beta_deviation > kTable1BetaTol || e.max_ratio_deviation > kTable1RatioTol)
                    ctx.note("table row " + e.label + " disagrees with the solved state (beta dev " +
                             format_double(e.beta_deviation) + ", ratio dev " +
                             format_double(e.max_ratio_deviation) + ")");
        }
    }

    if (!spec.convergence_sizes.empty()) {
        std::vector<int> sizes = spec.convergence_sizes;
        std::sort(sizes.begin(), sizes.end());
        sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
        std::vector<std::vector<StationaryState>> solved;
        for (int n : sizes) solved.push_back(solve_reference_states(shape, n));
        CsvWriter csv(ctx.file("convergence.csv"), {"label", "basis_size", "beta", "abs_drift_vs_largest"});
        for (std::size_t j = 0; j < torus.size(); ++j)
            for (std::size_t k = 0; k < sizes.size(); ++k)
                csv.cell(solved[k][j].label()).cell(sizes[k]).cell(solved[k][j].beta)
                    .cell(std::abs(solved[k][j].beta - solved.back()[j].beta)).end_row();
    }

    if (spec.alpha_limit_check) {
        const TorusShape thin(shape.a() / kLimitAlpha, shape.a());
        const auto limit = solve_reference_states(thin, spec.basis_size);
        CsvWriter csv(ctx.file("alpha_limit.csv"), {"label", "alpha", "beta", "n_squared", "abs_dev"});
        for (const auto& s : limit) {
            const double n2 = static_cast<double>(s.n) * s.n;
            csv.cell(s.label()).cell(thin.alpha()).cell(s.beta).cell(n2).cell(std::abs(s.beta - n2)).end_row();
        }
    }
}

// ---------------------------------------------------------- trajectories

struct RunOutput {
    std::optional<TrajectoryRecord> record;
    std::string error;
};

void write_trajectory_script(Context& ctx, const std::vector<std::pair<SurfaceKind, std::string>>& runs,
                             const std::vector<std::string>& phase_files) {
    auto out = open_text(ctx.file(std::string(to_string(ctx.command)) + ".gp"));
    const TorusShape shape = ctx.spec.shape();
    out << "# gnuplot script; run from the directory holding the CSV files\n";
    out << "set datafile separator ','\n";
    out << "set terminal pngcairo size 900,700\n";
    out << "R = " << format_double(shape.R()) << "\n";
    out << "a = " << format_double(shape.a()) << "\n";
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const auto& [kind, file] = runs[k];
        const std::string stem = file.substr(0, file.size() - 4);
        if (ctx.command == Command::Trajectory) {
            out << "\nset output '" << stem << ".png'\n";
            out << "set title '" << stem << "' noenhanced\n";
            if (kind == SurfaceKind::Torus) {
                out << "set view equal xyz\nunset key\n";
                out << "splot '" << file << "' every ::1 using ((R+a*cos($2))*cos($3)):((R+a*cos($2))*sin($3)):"
                    << "(a*sin($2)) with lines lw 0.5\n";
            } else {
                out << "set xlabel 'phi mod 2pi'\nset ylabel 'theta mod 2pi'\nunset key\n";
                out << "plot '" << file << "' every ::1 using 5:4 with dots\n";
            }
        } else {
            const std::string& phase = phase_files[k];
            const std::string pstem = phase.substr(0, phase.size() - 4);
            out << "\nset output '" << pstem << ".png'\n";
            out << "set title '" << pstem << "' noenhanced\n";
            out << "set xlabel 'theta mod 2pi'\nset ylabel 'dtheta/dt'\nunset key\n";
            out << "plot '" << phase << "' every ::1 using 2:3 with dots\n";
        }
    }
}

void cmd_trajectory(Context& ctx) {
    const ExperimentSpec& spec = ctx.spec;
    if (spec.theta0.empty()) throw ConfigError("no theta0 points");

    struct Job {
        SurfaceKind kind;
        std::size_t index;
        TrajectoryConfig cfg;
    };
    std::vector<Job> jobs;
    for (SurfaceKind kind : spec.surfaces()) {
        std::vector<std::string> notes;
        const Superposition sp = build_superposition(spec, kind, &notes);
        for (auto& n : notes) ctx.note(std::move(n));
        for (std::size_t i = 0; i < spec.theta0.size(); ++i) {
            TrajectoryConfig cfg{sp, spec.theta0[i], spec.phi0, spec.t_end, spec.rel_tol, spec.abs_tol, spec.sample_dt};
            cfg.validate();
            jobs.push_back({kind, i, std::move(cfg)});
        }
    }

    const auto results = parallel_map<RunOutput>(jobs.size(), ctx.jobs, [&](std::size_t j) {
        RunOutput out;
        try {
            out.record = integrate_trajectory(jobs[j].cfg);
        } catch (const ode::StepSizeUnderflow& e) {
            out.error = e.what();
        }
        return out;
    });

    std::vector<std::pair<SurfaceKind, std::string>> runs;
    std::vector<std::string> phase_files;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const Job& job = jobs[j];
        const std::string tag = std::string(to_string(job.kind)) + "_" + std::to_string(job.index);
        if (!results[j].record) {
            ctx.note(tag + ": integration failed: " + results[j].error);
            ctx.exit_code = exit_code::numerical;
            continue;
        }
        const TrajectoryRecord& rec = *results[j].record;
        const auto traj_path = ctx.file(tag + "_trajectory.csv");
        {
            CsvWriter csv(traj_path, {"t", "theta", "phi", "theta_mod", "phi_mod", "theta_dot", "phi_dot"});
            for (const auto& s : rec.samples)
                csv.cell(s.t).cell(s.theta).cell(s.phi).cell(wrap_angle(s.theta)).cell(wrap_angle(s.phi))
                    .cell(s.theta_dot).cell(s.phi_dot).end_row();
        }
        const auto phase_path = ctx.file(tag + "_phase.csv");
        {
            CsvWriter csv(phase_path, {"t", "theta_mod", "theta_dot"});
            const auto series = phase_space_series(rec);
            for (std::size_t k = 0; k < series.size(); ++k)
                csv.cell(rec.samples[k].t).cell(series[k].theta_mod).cell(series[k].theta_dot).end_row();
        }
        runs.emplace_back(job.kind, traj_path.filename().string());
        phase_files.push_back(phase_path.filename().string());
        if (rec.status == RunStatus::NodeStopped) {
            ctx.note(tag + " (theta0=" + format_double(job.cfg.theta0) + ") stopped near a node at t=" +
                     format_double(rec.stop_time) + ": " + rec.stop_reason);
            if (ctx.exit_code == exit_code::ok) ctx.exit_code = exit_code::partial;
        }
    }
    write_trajectory_script(ctx, runs, phase_files);
}

// --------------------------------------------------------------- lyapunov

const ReferenceLyapunovTable* reference_for(const ExperimentSpec& spec) {
    switch (spec.reference) {
    case ReferenceTable::Table2: return &reference_table2();
    case ReferenceTable::Table3: return &reference_table3();
    case ReferenceTable::None: return nullptr;
    }
    return nullptr;
}

bool grid_matches_reference(const std::vector<double>& grid) {
    const auto ref = reference_theta0_grid();
    if (grid.size() != ref.size()) return false;
    for (std::size_t k = 0; k < ref.size(); ++k)
        if (std::abs(grid[k] - ref[k]) > 1e-9) return false;
    return true;
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

void cmd_lyapunov(Context& ctx) {
    const ExperimentSpec& spec = ctx.spec;
    if (spec.theta0.empty()) throw ConfigError("no theta0 points");
    if (spec.checkpoints.size() < 2) throw ConfigError("lyapunov needs at least two checkpoints");
    SweepOptions options;
    options.t1 = spec.checkpoints.front();
    options.t2 = spec.checkpoints.back();
    if (!(options.t1 > 0.0) || !(options.t2 > options.t1)) throw ConfigError("checkpoints need 0 < t1 < t2");
    options.rel_tol = spec.rel_tol;
    options.abs_tol = spec.abs_tol;
    options.tracking_dt = spec.tracking_dt;
    options.phi0 = spec.phi0;
    options.jobs = ctx.jobs;

    const ReferenceLyapunovTable* table = reference_for(spec);
    const bool compare = table != nullptr && grid_matches_reference(spec.theta0) && options.t1 == 9.0 &&
                         options.t2 == 10.0;
    if (table != nullptr && !compare)
        ctx.note("reference " + std::string(to_string(spec.reference)) +
                 " needs the 12-point k*pi/6 grid and checkpoints 9, 10; paper columns left empty");

    std::map<SurfaceKind, std::vector<TableRow>> all_rows;
    std::ostringstream summary;
    summary << "lyapunov sweep '" << spec.name << "' window [" << format_double(options.t1) << ", "
            << format_double(options.t2) << "]\n";
    if (compare) summary << "reference: " << table->source << "\n";

    std::vector<std::pair<SurfaceKind, std::string>> csv_files;
    for (SurfaceKind kind : spec.surfaces()) {
        std::vector<std::string> notes;
        const Superposition sp = build_superposition(spec, kind, &notes);
        for (auto& n : notes) ctx.note(std::move(n));
        const std::vector<TableRow> rows = table_sweep(sp, spec.theta0, options);
        all_rows[kind] = rows;
        const ReferenceLyapunovHalf* half =
            compare ? (kind == SurfaceKind::Torus ? &table->torus : &table->flat) : nullptr;

        const auto path = ctx.file(std::string(to_string(kind)) + "_lyapunov.csv");
        csv_files.emplace_back(kind, path.filename().string());
        CsvWriter csv(path, {"theta0", "lambda9", "lambda10", "lambda_window", "paper_lambda9", "paper_lambda10",
                             "paper_lambda", "abs_dev_lambda9", "abs_dev_lambda10", "abs_dev_lambda", "status",
                             "crossed", "paper_row_consistent", "note"});

        double max_dev[3] = {0.0, 0.0, 0.0};
        int within[3] = {0, 0, 0};
        int ok_rows = 0;
        std::vector<std::string> flagged;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const TableRow& r = rows[k];
            csv.cell(r.theta0);
            if (r.ok)
                csv.cell(r.lambda_t1).cell(r.lambda_t2).cell(r.lambda);
            else
                csv.cell("").cell("").cell("");
            if (half != nullptr) {
                const double paper[3] = {half->lambda9[k], half->lambda10[k], half->lambda[k]};
                const double ours[3] = {r.lambda_t1, r.lambda_t2, r.lambda};
                csv.cell(paper[0]).cell(paper[1]).cell(paper[2]);
                for (int c = 0; c < 3; ++c) {
                    if (!r.ok) {
                        csv.cell("");
                        continue;
                    }
                    const double dev = std::abs(ours[c] - paper[c]);
                    max_dev[c] = std::max(max_dev[c], dev);
                    if (dev <= kAgreementFraction * std::abs(paper[c])) ++within[c];
                    csv.cell(dev);
                }
            } else {
                for (int c = 0; c < 6; ++c) csv.cell("");
            }
            if (r.ok) ++ok_rows;
            csv.cell(r.ok ? to_string(r.status) : "failed");
            csv.cell(r.crossed ? "yes" : "no");
            if (half != nullptr) {
                const IdentityCheck check = check_window_identity(*half, k);
                csv.cell(check.consistent ? "yes" : "no");
                if (!check.consistent)
                    flagged.push_back("theta0=" + fixed(r.theta0 / std::numbers::pi, 4) + "pi printed " +
                                      format_double(check.printed) + " vs implied " + fixed(check.implied, 4));
            } else {
                csv.cell("");
            }
            csv.cell(r.note).end_row();
            if (!r.ok) ctx.note(std::string(to_string(kind)) + " theta0=" + format_double(r.theta0) + ": " + r.note);
        }

        summary << "\n[" << to_string(kind) << "] rows " << ok_rows << "/" << rows.size() << " completed\n";
        std::vector<double> l9, l10, lw;
        for (const auto& r : rows)
            if (r.ok) {
                l9.push_back(r.lambda_t1);
                l10.push_back(r.lambda_t2);
                lw.push_back(r.lambda);
            }
        summary << "mean lambda9 " << format_double(mean(l9)) << ", mean lambda10 " << format_double(mean(l10))
                << ", mean window " << format_double(mean(lw)) << "\n";
        if (half != nullptr) {
            const char* names[3] = {"lambda9", "lambda10", "lambda"};
            for (int c = 0; c < 3; ++c)
                summary << "max |dev| " << names[c] << " " << format_double(max_dev[c]) << ", within 5%: "
                        << within[c] << "/" << rows.size() << "\n";
            summary << "printed rows failing the window identity: " << flagged.size() << "\n";
            for (const auto& f : flagged) summary << "  " << f << "\n";
        }
    }

    if (all_rows.count(SurfaceKind::Torus) != 0 && all_rows.count(SurfaceKind::FlatStrip) != 0) {
        auto means = [](const std::vector<TableRow>& rows) {
            std::vector<double> l9, l10;
            for (const auto& r : rows)
                if (r.ok) {
                    l9.push_back(r.lambda_t1);
                    l10.push_back(r.lambda_t2);
                }
            return std::pair{mean(l9), mean(l10)};
        };
        const auto [t9, t10] = means(all_rows[SurfaceKind::Torus]);
        const auto [f9, f10] = means(all_rows[SurfaceKind::FlatStrip]);
        summary << "\ntorus/flat mean lambda9 " << format_double(t9) << " / " << format_double(f9)
                << ", lambda10 " << format_double(t10) << " / " << format_double(f10) << "\n";
        const auto& flat = all_rows[SurfaceKind::FlatStrip];
        if (grid_matches_reference(spec.theta0)) {
            double worst = 0.0;
            for (std::size_t k = 1; k < flat.size(); ++k) {
                const std::size_t mirror = flat.size() - k;
                if (!flat[k].ok || !flat[mirror].ok) continue;
                const double scale = std::max(std::abs(flat[k].lambda), std::abs(flat[mirror].lambda));
                if (scale > 0.0) worst = std::max(worst, std::abs(flat[k].lambda - flat[mirror].lambda) / scale);
            }
            summary << "flat asymmetry max |lambda(theta0) - lambda(2pi - theta0)|/max = " << format_double(worst)
                    << "\n";
        }
    }

    {
        auto out = open_text(ctx.file("lyapunov_summary.txt"));
        out << summary.str();
    }
    {
        auto out = open_text(ctx.file("lyapunov.gp"));
        out << "# gnuplot script; run from the directory holding the CSV files\n";
        out << "set datafile separator ','\nset terminal pngcairo size 900,600\n";
        out << "set xlabel 'theta0 / pi'\nset ylabel 'lambda'\n";
        for (const auto& [kind, file] : csv_files) {
            out << "\nset output '" << file.substr(0, file.size() - 4) << ".png'\n";
            out << "plot '" << file << "' every ::1 using ($1/pi):3 with linespoints title 'lambda10'";
            if (compare) out << ", '' every ::1 using ($1/pi):6 with points title 'reference lambda10'";
            out << "\n";
        }
    }
}

} // namespace

std::string_view to_string(Command c) {
    switch (c) {
    case Command::States: return "states";
    case Command::Trajectory: return "trajectory";
    case Command::PhaseSpace: return "phasespace";
    case Command::Lyapunov: return "lyapunov";
    }
    return "states";
}

Command parse_command(std::string_view text) {
    for (Command c : {Command::States, Command::Trajectory, Command::PhaseSpace, Command::Lyapunov})
        if (to_string(c) == text) return c;
    throw ConfigError("unknown command '" + std::string(text) + "'");
}

std::string config_hash(const ExperimentSpec& spec) {
    ExperimentSpec copy = spec;
    copy.output_dir.clear();
    return hex16(fnv1a64(serialize(copy)));
}

Superposition build_superposition(const ExperimentSpec& spec, SurfaceKind kind, std::vector<std::string>* notes) {
    if (spec.terms.empty()) throw ConfigError("the superposition needs at least one [term]");
    const TorusShape shape = spec.shape();
    std::vector<Term> terms;
    for (const auto& t : spec.terms) {
        StationaryState s;
        if (kind == SurfaceKind::Torus) {
            s = torus_state(shape, t.parity, t.n, t.m, spec.basis_size);
            if (spec.energies == EnergySource::Table) {
                const ReferenceState* ref = find_reference_state(t.parity, t.n, t.m);
                if (ref == nullptr || !(shape == TorusShape::reference()))
                    throw ConfigError("energies = table needs tabulated states on R=1, a=0.5; " + s.label() +
                                      " is not available");
                s = with_beta(std::move(s), ref->beta, shape);
            }
        } else {
            s = flat_state(t.n, t.m, t.parity, shape);
        }
        terms.push_back({std::move(s), t.weight});
    }
    double norm2 = 0.0;
    for (const auto& t : terms) norm2 += std::norm(t.weight);
    if (std::abs(norm2 - 1.0) > 1e-12) {
        if (notes != nullptr)
            notes->push_back(std::string(to_string(kind)) + ": weights had sum |c|^2 = " + format_double(norm2) +
                             "; rescaled to unit norm");
        return Superposition::normalized(std::move(terms), kind, shape);
    }
    return Superposition(std::move(terms), kind, shape);
}

CommandOutcome run_command(Command command, const ExperimentSpec& spec, unsigned jobs, std::ostream& log) {
    const auto start = std::chrono::steady_clock::now();
    const std::string hash = config_hash(spec);
    Context ctx{command, spec, spec.output_dir.empty() ? std::filesystem::path(".") : std::filesystem::path(spec.output_dir),
                sanitize(spec.name) + "_" + hash.substr(0, 8), std::max(1u, jobs), log, {}, {}, exit_code::ok};
    ctx.manifest.command = std::string(to_string(command));
    ctx.manifest.name = spec.name;
    ctx.manifest.config_hash = hash;
    ctx.manifest.code_version = BOHM_VERSION;
    std::filesystem::create_directories(ctx.dir);

    CommandOutcome outcome;
    try {
        switch (command) {
        case Command::States: cmd_states(ctx); break;
        case Command::Trajectory:
        case Command::PhaseSpace: cmd_trajectory(ctx); break;
        case Command::Lyapunov: cmd_lyapunov(ctx); break;
        }
    } catch (const ConfigError& e) {
        ctx.exit_code = exit_code::config;
        outcome.message = e.what();
    } catch (const std::invalid_argument& e) {
        ctx.exit_code = exit_code::config;
        outcome.message = e.what();
    } catch (const std::ios_base::failure&) {
        throw;
    } catch (const std::exception& e) {
        ctx.exit_code = exit_code::numerical;
        outcome.message = e.what();
    }
    if (!outcome.message.empty()) ctx.manifest.notes.push_back("error: " + outcome.message);

    switch (ctx.exit_code) {
    case exit_code::ok: ctx.manifest.status = "completed"; break;
    case exit_code::partial: ctx.manifest.status = "partial"; break;
    default: ctx.manifest.status = "failed"; break;
    }
    ctx.manifest.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    outcome.manifest = ctx.dir / (ctx.prefix + "_" + std::string(to_string(command)) + "_manifest.json");
    ctx.manifest.write(outcome.manifest);
    outcome.exit_code = ctx.exit_code;
    outcome.outputs = ctx.outputs;
    return outcome;
}

} // namespace bohm
