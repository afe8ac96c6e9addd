#include "bohm/config.hpp"

#include "bohm/expression.hpp"
#include "bohm/output.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace bohm {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = s.find(',', start);
        parts.push_back(trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return parts;
}

class LineParser {
  public:
    LineParser(std::string_view origin, int line) : origin_(origin), line_(line) {}

    [[noreturn]] void fail(const std::string& why) const {
        std::ostringstream msg;
        msg << origin_ << ":" << line_ << ": " << why;
        throw ConfigError(msg.str());
    }

    double real(std::string_view value) const {
        try {
            return evaluate_real(value);
        } catch (const ExpressionError& e) {
            fail(e.what());
        }
    }

    std::complex<double> complex(std::string_view value) const {
        try {
            return evaluate_expression(value);
        } catch (const ExpressionError& e) {
            fail(e.what());
        }
    }

    int integer(std::string_view value) const {
        const double x = real(value);
        if (x != static_cast<double>(static_cast<long>(x)) || std::abs(x) > 1e9)
            fail("expected an integer, got '" + std::string(value) + "'");
        return static_cast<int>(x);
    }

    std::vector<double> reals(std::string_view value) const {
        std::vector<double> out;
        if (trim(value).empty()) return out;
        for (auto part : split_list(value)) {
            if (part.empty()) fail("empty list element");
            out.push_back(real(part));
        }
        return out;
    }

    std::vector<int> integers(std::string_view value) const {
        std::vector<int> out;
        if (trim(value).empty()) return out;
        for (auto part : split_list(value)) out.push_back(integer(part));
        return out;
    }

    bool boolean(std::string_view value) const {
        const std::string v = lower(value);
        if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
        if (v == "false" || v == "no" || v == "off" || v == "0") return false;
        fail("expected true or false, got '" + std::string(value) + "'");
    }

  private:
    std::string_view origin_;
    int line_;
};

std::string format_complex(std::complex<double> z) {
    if (z.imag() == 0.0) return format_double(z.real());
    std::string out = format_double(z.real());
    const std::string im = format_double(z.imag());
    if (im.front() != '-') out += '+';
    return out + im + "i";
}

template <class T, class F>
std::string join(const std::vector<T>& values, F format) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ", ";
        out += format(values[i]);
    }
    return out;
}

} // namespace

std::string_view to_string(SurfaceSelection s) {
    switch (s) {
    case SurfaceSelection::Torus: return "torus";
    case SurfaceSelection::Flat: return "flat";
    case SurfaceSelection::Both: return "both";
    }
    return "both";
}

std::string_view to_string(EnergySource e) { return e == EnergySource::Table ? "table" : "solver"; }

std::string_view to_string(ReferenceTable r) {
    switch (r) {
    case ReferenceTable::None: return "none";
    case ReferenceTable::Table2: return "table2";
    case ReferenceTable::Table3: return "table3";
    }
    return "none";
}

std::vector<SurfaceKind> ExperimentSpec::surfaces() const {
    switch (surface) {
    case SurfaceSelection::Torus: return {SurfaceKind::Torus};
    case SurfaceSelection::Flat: return {SurfaceKind::FlatStrip};
    case SurfaceSelection::Both: return {SurfaceKind::Torus, SurfaceKind::FlatStrip};
    }
    return {};
}

ExperimentSpec parse_experiment(std::string_view text, std::string_view origin) {
    ExperimentSpec spec;
    std::string section;
    TermSpec* term = nullptr;
    std::vector<bool> term_has_weight;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const LineParser p(origin, line_no);

        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') p.fail("unterminated section header");
            section = lower(trim(line.substr(1, line.size() - 2)));
            if (section == "term") {
                spec.terms.emplace_back();
                term_has_weight.push_back(false);
                term = &spec.terms.back();
            } else if (section != "shape" && section != "run" && section != "states" && section != "output") {
                p.fail("unknown section [" + section + "]");
            }
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) p.fail("expected 'key = value'");
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) p.fail("missing key");

        if (section.empty()) {
            if (key == "name") {
                if (value.empty()) p.fail("name must not be empty");
                spec.name = std::string(value);
            } else if (key == "surface") {
                const std::string v = lower(value);
                if (v == "torus" || v == "t2")
                    spec.surface = SurfaceSelection::Torus;
                else if (v == "flat" || v == "f2")
                    spec.surface = SurfaceSelection::Flat;
                else if (v == "both")
                    spec.surface = SurfaceSelection::Both;
                else
                    p.fail("surface must be torus, flat or both");
            } else if (key == "energies") {
                const std::string v = lower(value);
                if (v == "solver")
                    spec.energies = EnergySource::Solver;
                else if (v == "table")
                    spec.energies = EnergySource::Table;
                else
                    p.fail("energies must be solver or table");
            } else if (key == "reference") {
                const std::string v = lower(value);
                if (v == "none")
                    spec.reference = ReferenceTable::None;
                else if (v == "table2")
                    spec.reference = ReferenceTable::Table2;
                else if (v == "table3")
                    spec.reference = ReferenceTable::Table3;
                else
                    p.fail("reference must be none, table2 or table3");
            } else if (key == "basis_size") {
                spec.basis_size = p.integer(value);
            } else {
                p.fail("unknown key '" + key + "'");
            }
        } else if (section == "shape") {
            if (key == "r")
                spec.R = p.real(value);
            else if (key == "a")
                spec.a = p.real(value);
            else
                p.fail("unknown key '" + key + "' in [shape]");
        } else if (section == "run") {
            if (key == "theta0")
                spec.theta0 = p.reals(value);
            else if (key == "phi0")
                spec.phi0 = p.real(value);
            else if (key == "t_end")
                spec.t_end = p.real(value);
            else if (key == "sample_dt")
                spec.sample_dt = p.real(value);
            else if (key == "rel_tol")
                spec.rel_tol = p.real(value);
            else if (key == "abs_tol")
                spec.abs_tol = p.real(value);
            else if (key == "checkpoints")
                spec.checkpoints = p.reals(value);
            else if (key == "tracking_dt")
                spec.tracking_dt = p.real(value);
            else
                p.fail("unknown key '" + key + "' in [run]");
        } else if (section == "states") {
            if (key == "alpha_limit_check")
                spec.alpha_limit_check = p.boolean(value);
            else if (key == "convergence_sizes")
                spec.convergence_sizes = p.integers(value);
            else
                p.fail("unknown key '" + key + "' in [states]");
        } else if (section == "output") {
            if (key == "dir")
                spec.output_dir = std::string(value);
            else
                p.fail("unknown key '" + key + "' in [output]");
        } else if (section == "term") {
            if (key == "parity") {
                try {
                    term->parity = parse_parity(value);
                } catch (const std::exception& e) {
                    p.fail(e.what());
                }
            } else if (key == "n") {
                term->n = p.integer(value);
                if (term->n < 0) p.fail("n must be non-negative");
            } else if (key == "m") {
                term->m = p.integer(value);
            } else if (key == "weight") {
                term->weight = p.complex(value);
                term_has_weight.back() = true;
            } else {
                p.fail("unknown key '" + key + "' in [term]");
            }
        }
    }

    const LineParser whole(origin, line_no);
    for (std::size_t i = 0; i < spec.terms.size(); ++i) {
        if (!term_has_weight[i]) whole.fail("term " + std::to_string(i + 1) + " has no weight");
        if (spec.terms[i].parity == Parity::Odd && spec.terms[i].n == 0)
            whole.fail("term " + std::to_string(i + 1) + ": odd states start at n = 1");
    }
    if (spec.basis_size < 8) whole.fail("basis_size must be at least 8");
    if (!(spec.R > 0.0) || !(spec.a > 0.0) || !(spec.a < spec.R)) whole.fail("shape needs 0 < a < R");
    if (!(spec.t_end > 0.0)) whole.fail("t_end must be positive");
    if (!(spec.sample_dt > 0.0)) whole.fail("sample_dt must be positive");
    if (!(spec.rel_tol > 0.0 && spec.rel_tol < 1.0) || !(spec.abs_tol > 0.0 && spec.abs_tol < 1.0))
        whole.fail("tolerances must lie in (0, 1)");
    if (!(spec.tracking_dt > 0.0)) whole.fail("tracking_dt must be positive");
    if (!std::is_sorted(spec.checkpoints.begin(), spec.checkpoints.end()))
        whole.fail("checkpoints must be ascending");
    for (int n : spec.convergence_sizes)
        if (n < 8) whole.fail("convergence sizes must be at least 8");
    return spec;
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment(buffer.str(), path.string());
}

std::string serialize(const ExperimentSpec& spec) {
    std::ostringstream out;
    out << "name = " << spec.name << "\n";
    out << "surface = " << to_string(spec.surface) << "\n";
    out << "energies = " << to_string(spec.energies) << "\n";
    out << "reference = " << to_string(spec.reference) << "\n";
    out << "basis_size = " << spec.basis_size << "\n";
    out << "\n[shape]\n";
    out << "R = " << format_double(spec.R) << "\n";
    out << "a = " << format_double(spec.a) << "\n";
    out << "\n[run]\n";
    out << "theta0 = " << join(spec.theta0, format_double) << "\n";
    out << "phi0 = " << format_double(spec.phi0) << "\n";
    out << "t_end = " << format_double(spec.t_end) << "\n";
    out << "sample_dt = " << format_double(spec.sample_dt) << "\n";
    out << "rel_tol = " << format_double(spec.rel_tol) << "\n";
    out << "abs_tol = " << format_double(spec.abs_tol) << "\n";
    out << "checkpoints = " << join(spec.checkpoints, format_double) << "\n";
    out << "tracking_dt = " << format_double(spec.tracking_dt) << "\n";
    out << "\n[states]\n";
    out << "alpha_limit_check = " << (spec.alpha_limit_check ? "true" : "false") << "\n";
    out << "convergence_sizes = " << join(spec.convergence_sizes, [](int n) { return std::to_string(n); }) << "\n";
    out << "\n[output]\n";
    out << "dir = " << spec.output_dir << "\n";
    for (const auto& t : spec.terms) {
        out << "\n[term]\n";
        out << "parity = " << parity_symbol(t.parity) << "\n";
        out << "n = " << t.n << "\n";
        out << "m = " << t.m << "\n";
        out << "weight = " << format_complex(t.weight) << "\n";
    }
    return out.str();
}

std::filesystem::path preset_directory() {
    if (const char* env = std::getenv("BOHM_PRESET_DIR"); env != nullptr && *env != '\0') return env;
    return BOHM_PRESET_DIR;
}

std::filesystem::path preset_path(std::string_view name) {
    if (name.empty() || name.find('/') != std::string_view::npos || name.find('\\') != std::string_view::npos)
        throw ConfigError("invalid preset name '" + std::string(name) + "'");
    const auto path = preset_directory() / (std::string(name) + ".cfg");
    if (!std::filesystem::exists(path))
        throw ConfigError("unknown preset '" + std::string(name) + "' (looked in " + preset_directory().string() + ")");
    return path;
}

} // namespace bohm
