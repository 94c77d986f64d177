#pragma once

// Batch scenarios: a JSON config (optionally a preset plus overrides) that
// resolves to a SystemParams, a mode, a quantity and grids, and is executed
// by run(). Config units: frequencies and rates in Hz, phases in units of π.

#include <algorithm>
#include <array>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "errors.hpp"
#include "io.hpp"
#include "model.hpp"
#include "optimize.hpp"
#include "response.hpp"
#include "steadystate.hpp"
#include "sweep.hpp"

namespace optoflux::cli {

using nlohmann::json;

enum class Mode { spectrum, fluxmap, tune, steadystate };

inline std::string_view to_string(Mode m) {
    switch (m) {
    case Mode::spectrum: return "spectrum";
    case Mode::fluxmap: return "fluxmap";
    case Mode::tune: return "tune";
    case Mode::steadystate: return "steadystate";
    }
    return "unknown";
}

inline std::optional<Mode> parse_mode(std::string_view s) {
    if (s == "spectrum") return Mode::spectrum;
    if (s == "fluxmap") return Mode::fluxmap;
    if (s == "tune") return Mode::tune;
    if (s == "steadystate") return Mode::steadystate;
    return std::nullopt;
}

enum class Format { csv, json };

// Parameter keys accepted under "params". Rates and frequencies in Hz, phases
// in π units, G_*_rad_s already angular.
inline const std::set<std::string, std::less<>>& param_keys() {
    static const std::set<std::string, std::less<>> keys = {
        "J",        "V",        "G_L",      "G_R",      "G_L_rad_s", "G_R_rad_s", "omega_mL", "omega_mR",
        "kappa_eL", "kappa_eR", "kappa_iL", "kappa_iR", "gamma_eL",  "gamma_eR",  "gamma_iL", "gamma_iR",
        "delta_L",  "delta_R",  "omega_cL", "omega_cR", "phi_L",     "phi_R",     "flux",     "g_L",
        "g_R",      "eps_L",    "eps_R"};
    return keys;
}

struct ParamSpec {
    std::optional<std::string> preset;
    std::map<std::string, double> values;

    friend bool operator==(const ParamSpec&, const ParamSpec&) = default;
};

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    std::size_t points = 0;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct TuneSpec {
    double flux_lo = 0.0;  // π units
    double flux_hi = 0.0;
    std::optional<std::string> aux;  // V | G_L | G_R | J
    double aux_lo = 0.0;             // Hz
    double aux_hi = 0.0;
    std::size_t coarse_points = 21;
    int rounds = 4;
    int golden_iterations = 40;
    std::optional<double> seed_frequency;  // Hz; seeds (φ, V) from the interference condition

    friend bool operator==(const TuneSpec&, const TuneSpec&) = default;
};

struct SteadySpec {
    std::optional<double> target_G_L;  // Hz
    std::optional<double> target_G_R;

    friend bool operator==(const SteadySpec&, const SteadySpec&) = default;
};

struct OutputSpec {
    std::string path;  // empty: stdout
    Format format = Format::csv;

    friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct Scenario {
    ParamSpec params;
    Mode mode = Mode::spectrum;
    Quantity quantity = Quantity::phonon;
    GridSpec frequency{5.6e9, 6.1e9, 2001};
    GridSpec flux{-2.0, 2.0, 401};
    TuneSpec tune;
    SteadySpec steadystate;
    OutputSpec output;
    unsigned threads = 0;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

// ---------------------------------------------------------------- parsing

namespace detail {

inline void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where, "'" + where + "' must be an object");
    for (const auto& [k, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw ConfigError(where.empty() ? k : where + "." + k, "unknown key '" + (where.empty() ? k : where + "." + k) + "'");
    }
}

inline double get_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError(key, "'" + key + "' must be a number");
    return v.get<double>();
}

inline std::size_t get_count(const json& v, const std::string& key) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ConfigError(key, "'" + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

inline std::string get_string(const json& v, const std::string& key) {
    if (!v.is_string()) throw ConfigError(key, "'" + key + "' must be a string");
    return v.get<std::string>();
}

inline GridSpec parse_grid(const json& j, const std::string& where, GridSpec g) {
    reject_unknown(j, {"start", "stop", "points"}, where);
    if (j.contains("start")) g.start = get_number(j["start"], where + ".start");
    if (j.contains("stop")) g.stop = get_number(j["stop"], where + ".stop");
    if (j.contains("points")) g.points = get_count(j["points"], where + ".points");
    return g;
}

inline json grid_json(const GridSpec& g) { return {{"start", g.start}, {"stop", g.stop}, {"points", g.points}}; }

} // namespace detail

inline Scenario scenario_from_json(const json& j) {
    detail::reject_unknown(j, {"params", "mode", "quantity", "frequency", "flux", "tune", "steadystate", "output", "threads"},
                           "");
    Scenario s;
    if (j.contains("params")) {
        const json& p = j["params"];
        if (!p.is_object()) throw ConfigError("params", "'params' must be an object");
        for (const auto& [k, v] : p.items()) {
            if (k == "preset") {
                s.params.preset = detail::get_string(v, "params.preset");
                if (*s.params.preset != "table1")
                    throw ConfigError("params.preset", "unknown preset '" + *s.params.preset + "' (known: table1)");
            } else if (param_keys().contains(k)) {
                s.params.values[k] = detail::get_number(v, "params." + k);
            } else {
                throw ConfigError("params." + k, "unknown key 'params." + k + "'");
            }
        }
    }
    if (j.contains("mode")) {
        const auto m = parse_mode(detail::get_string(j["mode"], "mode"));
        if (!m) throw ConfigError("mode", "'mode' must be one of spectrum, fluxmap, tune, steadystate");
        s.mode = *m;
    }
    if (j.contains("quantity")) {
        const auto q = parse_quantity(detail::get_string(j["quantity"], "quantity"));
        if (!q) throw ConfigError("quantity", "'quantity' must be one of phonon, photon_to_phonon, phonon_to_photon");
        s.quantity = *q;
    }
    if (j.contains("frequency")) s.frequency = detail::parse_grid(j["frequency"], "frequency", s.frequency);
    if (j.contains("flux")) s.flux = detail::parse_grid(j["flux"], "flux", s.flux);
    if (j.contains("tune")) {
        const json& t = j["tune"];
        detail::reject_unknown(t,
                               {"flux_lo", "flux_hi", "aux", "aux_lo", "aux_hi", "coarse_points", "rounds",
                                "golden_iterations", "seed_frequency"},
                               "tune");
        if (t.contains("flux_lo")) s.tune.flux_lo = detail::get_number(t["flux_lo"], "tune.flux_lo");
        if (t.contains("flux_hi")) s.tune.flux_hi = detail::get_number(t["flux_hi"], "tune.flux_hi");
        if (t.contains("aux") && !t["aux"].is_null()) {
            s.tune.aux = detail::get_string(t["aux"], "tune.aux");
            if (!parse_aux(*s.tune.aux)) throw ConfigError("tune.aux", "'tune.aux' must be one of V, G_L, G_R, J");
        }
        if (t.contains("aux_lo")) s.tune.aux_lo = detail::get_number(t["aux_lo"], "tune.aux_lo");
        if (t.contains("aux_hi")) s.tune.aux_hi = detail::get_number(t["aux_hi"], "tune.aux_hi");
        if (t.contains("coarse_points")) s.tune.coarse_points = detail::get_count(t["coarse_points"], "tune.coarse_points");
        if (t.contains("rounds")) s.tune.rounds = static_cast<int>(detail::get_count(t["rounds"], "tune.rounds"));
        if (t.contains("golden_iterations"))
            s.tune.golden_iterations = static_cast<int>(detail::get_count(t["golden_iterations"], "tune.golden_iterations"));
        if (t.contains("seed_frequency") && !t["seed_frequency"].is_null())
            s.tune.seed_frequency = detail::get_number(t["seed_frequency"], "tune.seed_frequency");
    }
    if (j.contains("steadystate")) {
        const json& t = j["steadystate"];
        detail::reject_unknown(t, {"target_G_L", "target_G_R"}, "steadystate");
        if (t.contains("target_G_L") && !t["target_G_L"].is_null())
            s.steadystate.target_G_L = detail::get_number(t["target_G_L"], "steadystate.target_G_L");
        if (t.contains("target_G_R") && !t["target_G_R"].is_null())
            s.steadystate.target_G_R = detail::get_number(t["target_G_R"], "steadystate.target_G_R");
    }
    if (j.contains("output")) {
        const json& o = j["output"];
        detail::reject_unknown(o, {"path", "format"}, "output");
        if (o.contains("path")) s.output.path = detail::get_string(o["path"], "output.path");
        if (o.contains("format")) {
            const std::string f = detail::get_string(o["format"], "output.format");
            if (f == "csv") s.output.format = Format::csv;
            else if (f == "json") s.output.format = Format::json;
            else throw ConfigError("output.format", "'output.format' must be csv or json");
        }
    }
    if (j.contains("threads")) s.threads = static_cast<unsigned>(detail::get_count(j["threads"], "threads"));
    return s;
}

inline json scenario_to_json(const Scenario& s) {
    json params = json::object();
    if (s.params.preset) params["preset"] = *s.params.preset;
    for (const auto& [k, v] : s.params.values) params[k] = v;

    json tune = {{"flux_lo", s.tune.flux_lo},
                 {"flux_hi", s.tune.flux_hi},
                 {"aux", s.tune.aux ? json(*s.tune.aux) : json(nullptr)},
                 {"aux_lo", s.tune.aux_lo},
                 {"aux_hi", s.tune.aux_hi},
                 {"coarse_points", s.tune.coarse_points},
                 {"rounds", s.tune.rounds},
                 {"golden_iterations", s.tune.golden_iterations},
                 {"seed_frequency", s.tune.seed_frequency ? json(*s.tune.seed_frequency) : json(nullptr)}};
    json steady = {{"target_G_L", s.steadystate.target_G_L ? json(*s.steadystate.target_G_L) : json(nullptr)},
                   {"target_G_R", s.steadystate.target_G_R ? json(*s.steadystate.target_G_R) : json(nullptr)}};
    return {{"params", params},
            {"mode", std::string(to_string(s.mode))},
            {"quantity", std::string(optoflux::to_string(s.quantity))},
            {"frequency", detail::grid_json(s.frequency)},
            {"flux", detail::grid_json(s.flux)},
            {"tune", tune},
            {"steadystate", steady},
            {"output", {{"path", s.output.path}, {"format", s.output.format == Format::csv ? "csv" : "json"}}},
            {"threads", s.threads}};
}

// "a.b=c" applied to a JSON document. A bare key that is not a top-level
// scenario key is taken as a parameter ("V=1e6" means params.V). The value is
// parsed as JSON when possible, otherwise kept as a string.
inline void apply_override(json& doc, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0)
        throw ConfigError(std::string(assignment), "override '" + std::string(assignment) + "' is not key=value");
    std::string key(assignment.substr(0, eq));
    const std::string raw(assignment.substr(eq + 1));

    static const std::array<std::string_view, 9> top = {"params", "mode", "quantity", "frequency", "flux",
                                                        "tune",   "steadystate", "output", "threads"};
    if (key.find('.') == std::string::npos && std::find(top.begin(), top.end(), key) == top.end())
        key = "params." + key;

    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;
    // A scalar "flux" means the synthetic flux parameter, not the flux grid.
    if (key == "flux" && !value.is_object()) key = "params.flux";

    json* node = &doc;
    std::size_t pos = 0;
    while (true) {
        const auto dot = key.find('.', pos);
        const std::string part = key.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        if (part.empty()) throw ConfigError(key, "override key '" + key + "' has an empty segment");
        if (!node->is_object()) *node = json::object();
        if (dot == std::string::npos) {
            (*node)[part] = value;
            break;
        }
        node = &(*node)[part];
        pos = dot + 1;
    }
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    json doc = json::parse(in, nullptr, false, true);
    if (doc.is_discarded()) throw ConfigError("config", "config '" + path + "' is not valid JSON");
    return doc;
}

// ---------------------------------------------------------------- resolution

inline SystemParams resolve_params(const ParamSpec& spec) {
    std::map<std::string, double> v = spec.values;
    auto has = [&](const char* k) { return v.contains(k); };

    if (!has("V")) throw ConfigError("V", "missing required parameter 'V' (mechanical hop, Hz)");
    if (has("flux") && has("phi_L"))
        throw ConfigError("flux", "'flux' and 'phi_L' are mutually exclusive");
    if (has("G_L") && has("G_L_rad_s")) throw ConfigError("G_L_rad_s", "'G_L' and 'G_L_rad_s' are mutually exclusive");
    if (has("G_R") && has("G_R_rad_s")) throw ConfigError("G_R_rad_s", "'G_R' and 'G_R_rad_s' are mutually exclusive");

    SystemParams p;
    if (spec.preset) {
        p = from_table1(0.0);
    } else {
        for (const char* k : {"J", "omega_mL", "omega_mR", "kappa_eL", "kappa_eR", "kappa_iL", "kappa_iR", "gamma_eL",
                              "gamma_eR", "gamma_iL", "gamma_iR"})
            if (!has(k)) throw ConfigError(k, std::string("missing required parameter '") + k + "'");
        if (!has("G_L") && !has("G_L_rad_s")) throw ConfigError("G_L", "missing required parameter 'G_L'");
        if (!has("G_R") && !has("G_R_rad_s")) throw ConfigError("G_R", "missing required parameter 'G_R'");
    }

    auto set_hz = [&](const char* k, double& field) {
        if (has(k)) field = from_hz(v.at(k));
    };
    set_hz("J", p.optical_hop);
    set_hz("V", p.mechanical_hop);
    set_hz("G_L", p.left.enhanced_coupling);
    set_hz("G_R", p.right.enhanced_coupling);
    if (has("G_L_rad_s")) p.left.enhanced_coupling = v.at("G_L_rad_s");
    if (has("G_R_rad_s")) p.right.enhanced_coupling = v.at("G_R_rad_s");
    set_hz("omega_mL", p.left.mechanical.frequency);
    set_hz("omega_mR", p.right.mechanical.frequency);
    set_hz("kappa_eL", p.left.optical.external_decay);
    set_hz("kappa_eR", p.right.optical.external_decay);
    set_hz("kappa_iL", p.left.optical.internal_decay);
    set_hz("kappa_iR", p.right.optical.internal_decay);
    set_hz("gamma_eL", p.left.mechanical.external_decay);
    set_hz("gamma_eR", p.right.mechanical.external_decay);
    set_hz("gamma_iL", p.left.mechanical.internal_decay);
    set_hz("gamma_iR", p.right.mechanical.internal_decay);
    set_hz("omega_cL", p.left.optical.cavity_frequency);
    set_hz("omega_cR", p.right.optical.cavity_frequency);
    set_hz("g_L", p.left.optical.vacuum_coupling);
    set_hz("g_R", p.right.optical.vacuum_coupling);
    if (has("eps_L")) p.left.optical.drive_amplitude = v.at("eps_L");
    if (has("eps_R")) p.right.optical.drive_amplitude = v.at("eps_R");

    // Red-detuned unless overridden.
    p.left.detuning = has("delta_L") ? from_hz(v.at("delta_L")) : -p.left.mechanical.frequency;
    p.right.detuning = has("delta_R") ? from_hz(v.at("delta_R")) : -p.right.mechanical.frequency;

    if (has("phi_R")) p.right.optical.drive_phase = v.at("phi_R") * std::numbers::pi;
    if (has("phi_L")) p.left.optical.drive_phase = v.at("phi_L") * std::numbers::pi;
    if (has("flux")) p = with_flux(p, v.at("flux") * std::numbers::pi);

    try {
        p.validate();
    } catch (const InvalidParams& e) {
        throw ConfigError("params", std::string("invalid parameters: ") + e.what());
    }
    return p;
}

inline FrequencyGrid resolve_frequency_grid(const GridSpec& g) {
    FrequencyGrid out{from_hz(g.start), from_hz(g.stop), g.points};
    try {
        out.validate("frequency");
    } catch (const InvalidParams& e) {
        throw ConfigError("frequency", e.what());
    }
    return out;
}

inline FluxGrid resolve_flux_grid(const GridSpec& g) {
    FluxGrid out{g.start * std::numbers::pi, g.stop * std::numbers::pi, g.points};
    try {
        out.validate("flux");
    } catch (const InvalidParams& e) {
        throw ConfigError("flux", e.what());
    }
    return out;
}

inline SearchSpace resolve_search_space(const Scenario& s, const SystemParams& p) {
    SearchSpace space;
    space.flux_lo = s.tune.flux_lo * std::numbers::pi;
    space.flux_hi = s.tune.flux_hi * std::numbers::pi;
    if (s.tune.aux) space.aux = AuxRange{*parse_aux(*s.tune.aux), from_hz(s.tune.aux_lo), from_hz(s.tune.aux_hi)};
    space.grid = resolve_frequency_grid(s.frequency);
    space.coarse_points = s.tune.coarse_points;
    space.rounds = s.tune.rounds;
    space.golden_iterations = s.tune.golden_iterations;
    space.threads = s.threads;
    if (s.tune.seed_frequency) {
        if (space.aux && space.aux->which != AuxParam::V)
            throw ConfigError("tune.seed_frequency", "interference seeding needs tune.aux = V (or no aux)");
        const InterferenceSolution seed = interference_condition(p, from_hz(*s.tune.seed_frequency));
        space.seed_flux = seed.flux;
        space.seed_aux = seed.mechanical_hop;
    }
    try {
        space.validate();
    } catch (const InvalidParams& e) {
        throw ConfigError("tune", e.what());
    }
    return space;
}

// ---------------------------------------------------------------- execution

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int io = 1;
inline constexpr int config = 2;
inline constexpr int degenerate = 3;
} // namespace exit_code

// Renders the scenario's output document. Throws ConfigError / NumericalDegeneracy.
inline std::string render(const Scenario& s) {
    const SystemParams p = resolve_params(s.params);
    std::ostringstream out;
    const bool as_json = s.output.format == Format::json;

    switch (s.mode) {
    case Mode::spectrum: {
        const auto pts = spectrum(p, s.quantity, resolve_frequency_grid(s.frequency), s.threads);
        if (as_json) out << io::spectrum_json(s.quantity, pts).dump(2) << '\n';
        else io::write_spectrum_csv(out, pts);
        break;
    }
    case Mode::fluxmap: {
        const FluxMap map =
            flux_map(p, s.quantity, resolve_flux_grid(s.flux), resolve_frequency_grid(s.frequency), s.threads);
        if (as_json) out << io::fluxmap_json(map).dump(2) << '\n';
        else io::write_fluxmap_csv(out, map);
        break;
    }
    case Mode::tune: {
        const SearchSpace space = resolve_search_space(s, p);
        const TuneResult r = tune(p, s.quantity, space);
        if (as_json) out << io::tune_json(s.quantity, r, space.aux ? std::optional(space.aux->which) : std::nullopt).dump(2) << '\n';
        else io::write_tune_csv(out, r);
        break;
    }
    case Mode::steadystate: {
        io::SteadyReport rep;
        if (s.steadystate.target_G_L || s.steadystate.target_G_R) {
            if (!s.params.values.contains("g_L")) throw ConfigError("g_L", "steadystate mode needs 'g_L'");
            if (!s.params.values.contains("g_R")) throw ConfigError("g_R", "steadystate mode needs 'g_R'");
            const TargetCouplings target{from_hz(s.steadystate.target_G_L.value_or(0.0)),
                                         from_hz(s.steadystate.target_G_R.value_or(0.0))};
            rep.drives = drives_for_target_G(p, target);
        } else {
            rep.drives = {p.left.optical.drive_amplitude, p.right.optical.drive_amplitude};
        }
        rep.state = steady_amplitudes(
            p, Drives{rep.drives.eps_L, rep.drives.eps_R, p.left.optical.drive_phase, p.right.optical.drive_phase});
        if (as_json) out << io::steady_json(rep).dump(2) << '\n';
        else io::write_steady_csv(out, rep);
        break;
    }
    }
    return out.str();
}

// Runs a scenario, writing to s.output.path (stdout when empty). Diagnostics go to err.
inline int run(const Scenario& s, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::string text;
    try {
        text = render(s);
    } catch (const ConfigError& e) {
        err << "config error [" << e.key() << "]: " << e.what() << '\n';
        return exit_code::config;
    } catch (const InvalidParams& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::config;
    } catch (const NumericalDegeneracy& e) {
        err << "numerical degeneracy: " << e.what() << '\n';
        return exit_code::degenerate;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return exit_code::io;
    }

    if (s.output.path.empty()) {
        out << text;
        return exit_code::ok;
    }
    std::ofstream file(s.output.path, std::ios::binary);
    if (!file || !(file << text)) {
        err << "io error: cannot write '" << s.output.path << "'\n";
        return exit_code::io;
    }
    return exit_code::ok;
}

} // namespace optoflux::cli
