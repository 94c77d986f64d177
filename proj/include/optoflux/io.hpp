#pragma once

// CSV / JSON serialization of sweep and tuning results. Frequencies are
// written in Hz, flux in units of π, isolation in dB with 12 significant
// digits; +inf (perfect isolation) is written as "inf".

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "model.hpp"
#include "optimize.hpp"
#include "response.hpp"
#include "steadystate.hpp"
#include "sweep.hpp"

namespace optoflux::io {

inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline nlohmann::json json_number(double v) {
    if (std::isfinite(v)) return v;
    return format_number(v);
}

// Axis label of the probe frequency for a quantity.
inline std::string axis_name(Quantity q) {
    return q == Quantity::phonon_to_photon ? "omega_minus_omega_d" : "omega";
}

inline void write_spectrum_csv(std::ostream& os, const std::vector<IsolationPoint>& pts) {
    os << "frequency_hz,isolation_db\n";
    for (const auto& pt : pts) os << format_number(to_hz(pt.omega)) << ',' << format_number(pt.value_db) << '\n';
}

inline nlohmann::json spectrum_json(Quantity q, const std::vector<IsolationPoint>& pts) {
    nlohmann::json freq = nlohmann::json::array();
    nlohmann::json vals = nlohmann::json::array();
    for (const auto& pt : pts) {
        freq.push_back(to_hz(pt.omega));
        vals.push_back(json_number(pt.value_db));
    }
    return {{"quantity", std::string(to_string(q))}, {"axis", axis_name(q)}, {"frequency_hz", freq},
            {"isolation_db", vals}};
}

// Header row: "frequency_hz", then flux values in π units. One row per frequency.
inline void write_fluxmap_csv(std::ostream& os, const FluxMap& map) {
    os << "frequency_hz";
    for (double f : map.flux_axis) os << ',' << format_number(f / std::numbers::pi);
    os << '\n';
    for (std::size_t c = 0; c < map.cols(); ++c) {
        os << format_number(to_hz(map.freq_axis.at(c)));
        for (std::size_t r = 0; r < map.rows(); ++r) os << ',' << format_number(map.at(r, c));
        os << '\n';
    }
}

inline nlohmann::json fluxmap_json(const FluxMap& map) {
    nlohmann::json flux = nlohmann::json::array();
    for (double f : map.flux_axis) flux.push_back(f / std::numbers::pi);
    nlohmann::json freq = nlohmann::json::array();
    for (double w : map.freq_axis.values()) freq.push_back(to_hz(w));
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < map.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < map.cols(); ++c) row.push_back(json_number(map.at(r, c)));
        rows.push_back(std::move(row));
    }
    return {{"quantity", std::string(to_string(map.quantity))},
            {"axis", axis_name(map.quantity)},
            {"flux_pi", flux},
            {"frequency_hz", freq},
            {"isolation_db", rows}};
}

// aux values are rates, written in Hz.
inline void write_tune_csv(std::ostream& os, const TuneResult& r) {
    os << "iterate,flux_pi,aux_hz,objective_db\n";
    for (const auto& t : r.trace)
        os << t.iterate << ',' << format_number(t.flux / std::numbers::pi) << ','
           << format_number(r.best_aux ? to_hz(t.aux) : 0.0) << ',' << format_number(t.objective_db) << '\n';
}

inline nlohmann::json tune_json(Quantity q, const TuneResult& r, std::optional<AuxParam> aux) {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& t : r.trace)
        trace.push_back({{"iterate", t.iterate},
                         {"flux_pi", t.flux / std::numbers::pi},
                         {"aux_hz", r.best_aux ? to_hz(t.aux) : 0.0},
                         {"objective_db", json_number(t.objective_db)}});
    nlohmann::json out = {{"quantity", std::string(to_string(q))},
                          {"best_flux_pi", r.best_flux / std::numbers::pi},
                          {"peak_db", json_number(r.peak_db)},
                          {"peak_frequency_hz", to_hz(r.peak_frequency)},
                          {"trace", trace}};
    if (aux && r.best_aux) {
        out["aux"] = std::string(to_string(*aux));
        out["best_aux_hz"] = to_hz(*r.best_aux);
    }
    return out;
}

struct SteadyReport {
    DriveAmplitudes drives;
    SteadyState state;
};

inline void write_steady_csv(std::ostream& os, const SteadyReport& s) {
    os << "key,value\n";
    os << "eps_L," << format_number(s.drives.eps_L) << '\n';
    os << "eps_R," << format_number(s.drives.eps_R) << '\n';
    os << "alpha_L_re," << format_number(s.state.alpha_L.real()) << '\n';
    os << "alpha_L_im," << format_number(s.state.alpha_L.imag()) << '\n';
    os << "alpha_R_re," << format_number(s.state.alpha_R.real()) << '\n';
    os << "alpha_R_im," << format_number(s.state.alpha_R.imag()) << '\n';
    os << "G_L_hz," << format_number(to_hz(s.state.G_L)) << '\n';
    os << "G_R_hz," << format_number(to_hz(s.state.G_R)) << '\n';
}

inline nlohmann::json steady_json(const SteadyReport& s) {
    return {{"eps_L", s.drives.eps_L},
            {"eps_R", s.drives.eps_R},
            {"alpha_L", {s.state.alpha_L.real(), s.state.alpha_L.imag()}},
            {"alpha_R", {s.state.alpha_R.real(), s.state.alpha_R.imag()}},
            {"G_L_hz", to_hz(s.state.G_L)},
            {"G_R_hz", to_hz(s.state.G_R)}};
}

} // namespace optoflux::io
