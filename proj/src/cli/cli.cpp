#include "molion/cli.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "molion/boundstates.hpp"
#include "molion/condensate.hpp"
#include "molion/errors.hpp"
#include "molion/kinetics.hpp"
#include "molion/rates.hpp"
#include "molion/units.hpp"
#include "molion/verification.hpp"

namespace molion::cli {

std::string format_number(double value) {
    if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.8e", value);
    const double rounded = std::strtod(buf.data(), nullptr);
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), rounded,
                                   std::chars_format::scientific);
    return std::string(buf.data(), res.ptr);
}

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Long flag names, which double as config-file keys.
const std::vector<std::string> value_keys{
    "species", "density", "temp",  "av",     "mass-mode", "xi-min",       "xi-max", "points",
    "slice",   "tmax",    "rabi",  "tau",    "format",    "out",          "depth",  "n0",
    "atoms",   "record-every"};

/// Flag values over config values over defaults.
class Settings {
public:
    void set_flag(const std::string& key, std::string value) { flags_[key] = std::move(value); }

    void load_config(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw UsageError("cannot read config file '" + path + "'");
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw UsageError(std::string("config parse error: ") + e.what());
        }
        if (!doc.is_object()) throw UsageError("config file must hold a JSON object");
        for (const auto& [key, value] : doc.items()) {
            const bool known = std::find(value_keys.begin(), value_keys.end(), key) != value_keys.end();
            if (key == "no-feedback") {
                if (!value.is_boolean()) throw UsageError("config: no-feedback must be a boolean");
                config_no_feedback_ = value.get<bool>();
                continue;
            }
            if (!known) throw UsageError("config: unknown key '" + key + "'");
            if (value.is_string()) {
                config_[key] = value.get<std::string>();
            } else if (value.is_number()) {
                std::array<char, 64> buf{};
                const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value.get<double>());
                config_[key] = std::string(buf.data(), res.ptr);
            } else {
                throw UsageError("config: '" + key + "' must be a string or number");
            }
        }
    }

    std::optional<std::string> get(const std::string& key) const {
        if (auto it = flags_.find(key); it != flags_.end()) return it->second;
        if (auto it = config_.find(key); it != config_.end()) return it->second;
        return std::nullopt;
    }

    std::string text(const std::string& key, const std::string& fallback) const {
        return get(key).value_or(fallback);
    }

    double number(const std::string& key, double fallback) const {
        const auto v = get(key);
        return v ? parse_number(key, *v) : fallback;
    }

    std::optional<double> maybe_number(const std::string& key) const {
        const auto v = get(key);
        if (!v) return std::nullopt;
        return parse_number(key, *v);
    }

    long integer(const std::string& key, long fallback) const {
        const double v = number(key, static_cast<double>(fallback));
        if (v != std::floor(v)) throw UsageError("--" + key + " must be an integer");
        return static_cast<long>(v);
    }

    bool feedback(bool flag_no_feedback) const {
        return !(flag_no_feedback || config_no_feedback_);
    }

    static double parse_number(const std::string& key, const std::string& text) {
        char* end = nullptr;
        const double v = std::strtod(text.c_str(), &end);
        if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v))
            throw UsageError("--" + key + ": '" + text + "' is not a number");
        return v;
    }

private:
    std::map<std::string, std::string> flags_;
    std::map<std::string, std::string> config_;
    bool config_no_feedback_ = false;
};

enum class Format { csv, json };

// A flat record with a fixed field order.
using Record = std::vector<std::pair<std::string, std::string>>;

std::string json_object(const Record& record) {
    std::string s = "{";
    for (std::size_t i = 0; i < record.size(); ++i) {
        if (i) s += ",";
        s += "\"" + record[i].first + "\":" + record[i].second;
    }
    return s + "}";
}

void write_records(std::ostream& out, Format format, const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows, bool single) {
    if (format == Format::csv) {
        for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
        out << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
            out << "\n";
        }
        return;
    }
    auto object = [&](const std::vector<std::string>& row) {
        Record r;
        for (std::size_t i = 0; i < header.size(); ++i) r.emplace_back(header[i], row[i]);
        return json_object(r);
    };
    if (single) {
        out << object(rows.front()) << "\n";
        return;
    }
    out << "[";
    for (std::size_t i = 0; i < rows.size(); ++i) out << (i ? ",\n" : "\n") << object(rows[i]);
    out << "\n]\n";
}

double per_second(double rate) { return from_internal(rate, Unit::per_second); }
double nanokelvin(double energy) { return from_internal(energy, Unit::energy_nanokelvin); }
std::string num(double v) { return format_number(v); }

/// Inputs common to every subcommand, converted to atomic units.
struct Inputs {
    Species species;
    double mu;
    double density;
    double kT;
    double size;
    Format format;
};

IonMassMode parse_mass_mode(const std::string& text) {
    if (text == "infinite") return InfiniteIonMass{};
    if (text == "equal") return EqualIonMass{};
    const double amu = Settings::parse_number("mass-mode", text);
    if (!(amu > 0)) throw UsageError("--mass-mode: explicit ion mass must be positive");
    return ExplicitIonMass{to_internal(amu, Unit::amu)};
}

Inputs resolve(const Settings& s, Format default_format) {
    Species species = [&] {
        try {
            return load_species(s.text("species", "Na"));
        } catch (const ValidationError& e) {
            throw UsageError(std::string("species: ") + e.what());
        }
    }();
    const double mu = reduced_mass(species, parse_mass_mode(s.text("mass-mode", "infinite")));
    const double density = to_internal(s.number("density", 1e14), Unit::per_cm3);
    const double kT = to_internal(s.number("temp", 0.0), Unit::nanokelvin);
    const double size = s.number("av", species.a_ion);
    if (!(size > 0)) throw UsageError("--av must be positive");

    Format format = default_format;
    if (const auto f = s.get("format")) {
        if (*f == "csv") format = Format::csv;
        else if (*f == "json") format = Format::json;
        else throw UsageError("--format must be csv or json");
    }
    return {std::move(species), mu, density, kT, size, format};
}

BoundLevel level_of_size(double size, double mu) { return {0, size, binding_energy(size, mu)}; }

Condensate make_condensate(const Inputs& in, std::ostream& err) {
    Condensate c(in.species, in.density, in.kT);
    if (!c.dilute())
        err << "warning: gas parameter n a^3 = " << c.gas_parameter()
            << " is outside the dilute regime\n";
    return c;
}

int cmd_rates(const Settings& s, std::ostream& out, std::ostream& err) {
    const Inputs in = resolve(s, Format::json);
    const Condensate c = make_condensate(in, err);
    const RateBreakdown rb = capture_rate(c, in.size, in.mu);
    const double w_down = downward_rate(c, level_of_size(in.size, in.mu), in.mu);
    write_records(out, in.format,
                  {"mu_c_over_kB_nK", "sound_speed_mm_per_s", "xi", "q0_per_a0", "form_factor_q0",
                   "occupation_q0", "w_cap_per_s", "w_down_per_s", "heating_limit_per_s"},
                  {{num(nanokelvin(chemical_potential(c))),
                    num(from_internal(sound_speed(c), Unit::millimeter_per_second)), num(rb.xi),
                    num(rb.q0), num(rb.form_factor_q0), num(rb.occupation_q0),
                    num(per_second(rb.w_cap)), num(per_second(w_down)),
                    num(per_second(heating_limit(c)))}},
                  true);
    return exit_ok;
}

int cmd_sweep(const Settings& s, std::ostream& out) {
    const Inputs in = resolve(s, Format::csv);
    const std::string slice_name = s.text("slice", "density");
    SweepSlice slice;
    if (slice_name == "density") slice = SweepSlice::density;
    else if (slice_name == "size") slice = SweepSlice::size;
    else throw UsageError("--slice must be density or size");

    const long points = s.integer("points", 61);
    const double lo = s.number("xi-min", 1e-3), hi = s.number("xi-max", 1e3);
    if (points < 2 || !(lo > 0) || !(hi > lo))
        throw UsageError("sweep grid needs --points >= 2 and 0 < --xi-min < --xi-max");

    const Condensate templ(in.species, in.density, in.kT);
    const SweepResult sweep =
        sweep_xi(templ, in.size, in.mu, log_grid(lo, hi, static_cast<int>(points)), slice);
    std::vector<std::vector<std::string>> rows;
    for (const CurvePoint& p : sweep.curve) rows.push_back({num(p.xi), num(per_second(p.w_cap))});
    rows.push_back({num(sweep.argmax.xi), num(per_second(sweep.argmax.w_cap))});
    write_records(out, in.format, {"xi", "w_cap_per_s"}, rows, false);
    return exit_ok;
}

int cmd_ladder(const Settings& s, std::ostream& out) {
    const Inputs in = resolve(s, Format::csv);
    const long depth = s.integer("depth", 5);
    if (depth < 1) throw UsageError("--depth must be at least 1");
    std::vector<std::vector<std::string>> rows;
    BoundLevel level = level_of_size(in.size, in.mu);
    double above = 0.0;
    for (long i = 0; i < depth; ++i) {
        const double ratio = i == 0 ? 0.0 : capture_ratio(above, in.species, in.mu);
        rows.push_back({std::to_string(level.index_below_top), num(level.size),
                        num(nanokelvin(level.epsilon)), num(ratio)});
        above = level.size;
        level = next_level_down(level, in.species, in.mu);
    }
    write_records(out, in.format,
                  {"index", "a_v_a0", "epsilon_over_kB_nK", "capture_ratio_to_level_above"}, rows,
                  false);
    return exit_ok;
}

EvolveOptions evolve_options(const Settings& s) {
    EvolveOptions opts;
    opts.t_max = to_internal(s.number("tmax", 1.0), Unit::second);
    opts.initial_occupation = s.number("n0", 0.0);
    opts.record_every = s.integer("record-every", 1);
    if (!(opts.t_max > 0)) throw UsageError("--tmax must be positive");
    if (opts.record_every < 1) throw UsageError("--record-every must be at least 1");
    if (!(opts.initial_occupation >= 0)) throw UsageError("--n0 must be non-negative");
    return opts;
}

void write_series(std::ostream& out, Format format, const std::vector<KineticState>& series) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(series.size());
    for (const KineticState& k : series) {
        rows.push_back({num(from_internal(k.t, Unit::second)), num(k.occupation),
                        num(nanokelvin(k.epsilon_eff)), num(k.xi_eff), num(per_second(k.w_cap)),
                        num(per_second(k.w_up)), num(per_second(k.w_down))});
    }
    write_records(out, format, {"t_s", "N", "epsilon_eff_over_kB_nK", "xi_eff", "w_cap", "w_up", "w_down"},
                  rows, false);
}

int cmd_evolve(const Settings& s, bool no_feedback, std::ostream& out, std::ostream& err) {
    const Inputs in = resolve(s, Format::csv);
    EvolveOptions opts = evolve_options(s);
    opts.feedback = s.feedback(no_feedback);
    const Condensate c = make_condensate(in, err);
    try {
        write_series(out, in.format, evolve(c, level_of_size(in.size, in.mu), in.mu, opts).series);
    } catch (const TruncationError& e) {
        write_series(out, in.format, e.partial());
        throw;
    }
    return exit_ok;
}

int cmd_equilibrium(const Settings& s, std::ostream& out, std::ostream& err) {
    const Inputs in = resolve(s, Format::json);
    const Condensate c = make_condensate(in, err);
    if (!(c.kT() > 0)) throw RegimeError("equilibrium requires --temp > 0");
    const BoundLevel level = level_of_size(in.size, in.mu);
    const EquilibriumResult eq = equilibrium_population(c, level, in.mu);
    if (eq.thermally_unbound)
        throw RegimeError("level is thermally unbound: kT exceeds its binding energy");
    const EvolveResult run = evolve(c, level, in.mu, evolve_options(s));
    write_records(out, in.format, {"n_max", "xi_final", "t_equilibration_estimate"},
                  {{num(eq.occupation), num(chemical_potential(c) / c.kT()),
                    num(from_internal(equilibration_time(run.series), Unit::second))}},
                  true);
    return exit_ok;
}

int cmd_stimulated(const Settings& s, std::ostream& out, std::ostream& err) {
    const Inputs in = resolve(s, Format::json);
    const auto rabi = s.maybe_number("rabi");
    const auto tau = s.maybe_number("tau");
    if (!rabi || !tau) throw UsageError("stimulated needs --rabi and --tau");
    const Condensate c = make_condensate(in, err);
    const LaserDrive drive(to_internal(*rabi, Unit::per_second), to_internal(*tau, Unit::second));
    const double n_v = stimulated_number(drive, c, in.size, s.number("atoms", 1e6));
    const double w_st = stimulated_rate(drive, c, in.size);
    const double limit = heating_limit(c);
    write_records(out, in.format, {"n_v_tau", "w_st", "heating_limit", "heating_ok"},
                  {{num(n_v), num(per_second(w_st)), num(per_second(limit)),
                    w_st < limit ? "true" : "false"}},
                  true);
    return exit_ok;
}

int cmd_verify(const Settings& s, std::ostream& out) {
    const Inputs in = resolve(s, Format::csv);
    const double kT = in.kT > 0 ? in.kT : to_internal(100.0, Unit::nanokelvin);
    const auto checks = run_oracle_checks(in.species, in.mu, kT);
    bool all = true;
    std::vector<std::vector<std::string>> rows;
    for (const CheckResult& r : checks) {
        all = all && r.passed();
        rows.push_back({"\"" + r.name + "\"", num(r.max_deviation), num(r.tolerance),
                        r.passed() ? "\"pass\"" : "\"fail\""});
    }
    if (in.format == Format::csv) {
        for (auto& row : rows) {
            row[0] = row[0].substr(1, row[0].size() - 2);
            row[3] = row[3].substr(1, row[3].size() - 2);
        }
    }
    write_records(out, in.format, {"check", "max_rel_deviation", "tolerance", "status"}, rows, false);
    return all ? exit_ok : exit_physics;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Formation of mesoscopic molecular ions in a homogeneous BEC", "molion"};
    app.require_subcommand(1);

    std::map<std::string, std::string> raw;
    std::vector<CLI::Option*> options;
    const std::map<std::string, std::string> help{
        {"species", "Na or a species JSON file"},
        {"density", "condensate density, cm^-3"},
        {"temp", "temperature, nK"},
        {"av", "top-level size, bohr (default: ion scattering length)"},
        {"mass-mode", "infinite | equal | ion mass in amu"},
        {"xi-min", "sweep: smallest xi"},
        {"xi-max", "sweep: largest xi"},
        {"points", "sweep: grid points"},
        {"slice", "sweep: density | size"},
        {"tmax", "evolve/equilibrium: integration time, s"},
        {"rabi", "stimulated: two-photon Rabi frequency, s^-1"},
        {"tau", "stimulated: pulse length, s"},
        {"format", "csv | json"},
        {"out", "write output to this file"},
        {"depth", "ladder: number of levels"},
        {"n0", "evolve: initial occupation"},
        {"atoms", "stimulated: total condensate atoms"},
        {"record-every", "evolve: keep every n-th step"},
    };
    for (const std::string& key : value_keys)
        options.push_back(app.add_option("--" + key, raw[key], help.at(key)));
    std::string config_path;
    app.add_option("--config", config_path, "JSON file keyed by long flag names");
    bool no_feedback = false;
    app.add_flag("--no-feedback", no_feedback, "evolve: freeze rates at their initial values");

    const std::array<std::pair<const char*, const char*>, 7> commands{{
        {"rates", "capture-rate breakdown at one operating point"},
        {"sweep", "capture rate along a log grid of xi, plus its maximum"},
        {"ladder", "LeRoy-Bernstein level ladder below the top level"},
        {"evolve", "time series of the uppermost-level population"},
        {"equilibrium", "thermal-equilibrium population"},
        {"stimulated", "laser-stimulated transfer and the heating threshold"},
        {"verify", "closed forms against the brute-force oracles"},
    }};
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, help] : commands) subs[name] = app.add_subcommand(name, help)->fallthrough();

    std::vector<std::string> argv_storage{"molion"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    try {
        Settings settings;
        if (!config_path.empty()) settings.load_config(config_path);
        for (std::size_t i = 0; i < value_keys.size(); ++i)
            if (options[i]->count() > 0) settings.set_flag(value_keys[i], raw[value_keys[i]]);

        if (const auto path = settings.get("out")) {
            file.open(*path);
            if (!file) throw UsageError("cannot open output file '" + *path + "'");
            sink = &file;
        }

        std::ostringstream buffer;
        int code = exit_ok;
        try {
            if (subs["rates"]->parsed()) code = cmd_rates(settings, buffer, err);
            else if (subs["sweep"]->parsed()) code = cmd_sweep(settings, buffer);
            else if (subs["ladder"]->parsed()) code = cmd_ladder(settings, buffer);
            else if (subs["evolve"]->parsed()) code = cmd_evolve(settings, no_feedback, buffer, err);
            else if (subs["equilibrium"]->parsed()) code = cmd_equilibrium(settings, buffer, err);
            else if (subs["stimulated"]->parsed()) code = cmd_stimulated(settings, buffer, err);
            else code = cmd_verify(settings, buffer);
        } catch (...) {
            *sink << buffer.str();
            throw;
        }
        *sink << buffer.str();
        if (code != exit_ok) err << "error: one or more checks failed\n";
        return code;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const DimensionMismatch& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_physics;
    }
}

}  // namespace molion::cli
