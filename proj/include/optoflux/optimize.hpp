#pragma once

// Flux / coupling tuning for peak isolation.
//
// interference_condition() gives the closed-form null of the backward phonon
// path, |V - Γ_A e^{iφ}| = 0. tune() is a deterministic coarse scan followed
// by golden-section coordinate refinement of max-over-grid isolation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "response.hpp"
#include "sweep.hpp"

namespace optoflux {

struct InterferenceSolution {
    double flux = 0.0;            // φ* = -arg Γ_A
    double mechanical_hop = 0.0;  // V* = |Γ_A|
    cplx gamma_A;
    // Γ_A real: forward and backward nulls coincide and isolation stays 0 dB.
    bool degenerate = false;
};

inline InterferenceSolution interference_condition(const SystemParams& p, double omega) {
    const cplx g = optically_mediated_coupling(p, omega);
    const double mag = std::abs(g);
    if (!(mag > 0.0)) throw ZeroCoupling("interference_condition: Gamma_A = 0 (J, G_L or G_R is zero)");
    InterferenceSolution s;
    s.gamma_A = g;
    s.flux = -std::arg(g);
    s.mechanical_hop = mag;
    s.degenerate = std::abs(g.imag()) <= 1e-12 * mag;
    return s;
}

enum class AuxParam { V, G_L, G_R, J };

inline std::string_view to_string(AuxParam a) {
    switch (a) {
    case AuxParam::V: return "V";
    case AuxParam::G_L: return "G_L";
    case AuxParam::G_R: return "G_R";
    case AuxParam::J: return "J";
    }
    return "unknown";
}

inline std::optional<AuxParam> parse_aux(std::string_view s) {
    if (s == "V") return AuxParam::V;
    if (s == "G_L") return AuxParam::G_L;
    if (s == "G_R") return AuxParam::G_R;
    if (s == "J") return AuxParam::J;
    return std::nullopt;
}

inline double aux_value(const SystemParams& p, AuxParam a) {
    switch (a) {
    case AuxParam::V: return p.mechanical_hop;
    case AuxParam::G_L: return p.left.enhanced_coupling;
    case AuxParam::G_R: return p.right.enhanced_coupling;
    case AuxParam::J: return p.optical_hop;
    }
    return 0.0;
}

inline SystemParams with_aux(SystemParams p, AuxParam a, double value) {
    switch (a) {
    case AuxParam::V: p.mechanical_hop = value; break;
    case AuxParam::G_L: p.left.enhanced_coupling = value; break;
    case AuxParam::G_R: p.right.enhanced_coupling = value; break;
    case AuxParam::J: p.optical_hop = value; break;
    }
    return p;
}

struct AuxRange {
    AuxParam which = AuxParam::V;
    double lo = 0.0;
    double hi = 0.0;
};

struct SearchSpace {
    double flux_lo = 0.0;
    double flux_hi = 0.0;
    std::optional<AuxRange> aux;
    FrequencyGrid grid = default_frequency_grid();
    std::size_t coarse_points = 21;
    int rounds = 4;
    int golden_iterations = 40;
    // Extra starting candidate, e.g. from interference_condition. aux ignored without an aux range.
    std::optional<double> seed_flux;
    std::optional<double> seed_aux;
    unsigned threads = 0;

    void validate() const {
        if (!(flux_lo <= flux_hi)) throw InvalidParams("search space: flux_lo must be <= flux_hi");
        if (aux && !(aux->lo <= aux->hi && aux->lo >= 0.0))
            throw InvalidParams("search space: aux range must satisfy 0 <= lo <= hi");
        grid.validate("search grid");
        if (coarse_points < 2) throw InvalidParams("search space: coarse_points must be >= 2");
        if (rounds < 0 || golden_iterations < 0) throw InvalidParams("search space: negative iteration budget");
    }
};

struct TraceEntry {
    int iterate = 0;
    double flux = 0.0;
    double aux = 0.0;
    double objective_db = 0.0;
};

struct TuneResult {
    double best_flux = 0.0;
    std::optional<double> best_aux;
    double peak_db = 0.0;
    double peak_frequency = 0.0;
    std::vector<TraceEntry> trace;
};

namespace detail {

struct Candidate {
    double flux;
    double aux;
    double objective;
};

inline double sanitize(double v) { return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v; }

} // namespace detail

// Peak (max over grid) isolation of q for p, with NaN points ignored.
inline IsolationPoint peak_isolation(const SystemParams& p, Quantity q, const FrequencyGrid& grid) {
    const auto pts = spectrum(p, q, grid, 1);
    const std::size_t i = argmax_db(pts);
    if (i == static_cast<std::size_t>(-1)) return {grid.start, -std::numeric_limits<double>::infinity()};
    return pts[i];
}

inline TuneResult tune(const SystemParams& base, Quantity q, const SearchSpace& space) {
    space.validate();
    const bool has_aux = space.aux.has_value();
    const double aux_lo = has_aux ? space.aux->lo : 0.0;
    const double aux_hi = has_aux ? space.aux->hi : 0.0;

    auto configure = [&](double flux, double aux) {
        SystemParams p = with_flux(base, flux);
        if (has_aux) p = with_aux(p, space.aux->which, aux);
        return p;
    };
    auto objective = [&](double flux, double aux) {
        return detail::sanitize(peak_isolation(configure(flux, aux), q, space.grid).value_db);
    };

    // Coarse scan.
    const std::size_t nf = space.flux_hi > space.flux_lo ? space.coarse_points : 1;
    const std::size_t na = has_aux && aux_hi > aux_lo ? space.coarse_points : 1;
    const UniformGrid fgrid{space.flux_lo, space.flux_hi, nf};
    const UniformGrid agrid{aux_lo, aux_hi, na};
    std::vector<detail::Candidate> scan(nf * na);
    parallel_for(scan.size(), space.threads, [&](std::size_t k) {
        const double f = nf > 1 ? fgrid.at(k / na) : space.flux_lo;
        const double a = na > 1 ? agrid.at(k % na) : aux_lo;
        scan[k] = {f, a, objective(f, a)};
    });

    detail::Candidate cur = scan.front();
    for (const auto& c : scan)
        if (c.objective > cur.objective) cur = c;

    if (space.seed_flux) {
        const double f = std::clamp(*space.seed_flux, space.flux_lo, space.flux_hi);
        const double a = has_aux ? std::clamp(space.seed_aux.value_or(cur.aux), aux_lo, aux_hi) : aux_lo;
        const double v = objective(f, a);
        if (v > cur.objective) cur = {f, a, v};
    }

    TuneResult result;
    int iterate = 0;
    result.trace.push_back({iterate++, cur.flux, cur.aux, cur.objective});

    // Golden-section coordinate refinement over a bracket that halves each round.
    constexpr double inv_phi = 0.6180339887498948482;
    double step_f = nf > 1 ? (space.flux_hi - space.flux_lo) / static_cast<double>(nf - 1) : 0.0;
    double step_a = na > 1 ? (aux_hi - aux_lo) / static_cast<double>(na - 1) : 0.0;

    auto refine = [&](bool along_flux) {
        const double x0 = along_flux ? cur.flux : cur.aux;
        const double step = along_flux ? step_f : step_a;
        const double lo_bound = along_flux ? space.flux_lo : aux_lo;
        const double hi_bound = along_flux ? space.flux_hi : aux_hi;
        double a = std::max(lo_bound, x0 - step);
        double b = std::min(hi_bound, x0 + step);
        if (!(b > a)) return;

        auto eval = [&](double x) { return along_flux ? objective(x, cur.aux) : objective(cur.flux, x); };
        detail::Candidate best = cur;
        auto note = [&](double x, double v) {
            if (v > best.objective) best = along_flux ? detail::Candidate{x, cur.aux, v} : detail::Candidate{cur.flux, x, v};
        };

        double x1 = b - inv_phi * (b - a);
        double x2 = a + inv_phi * (b - a);
        double f1 = eval(x1);
        double f2 = eval(x2);
        note(x1, f1);
        note(x2, f2);
        for (int it = 0; it < space.golden_iterations; ++it) {
            if (f1 >= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - inv_phi * (b - a);
                f1 = eval(x1);
                note(x1, f1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + inv_phi * (b - a);
                f2 = eval(x2);
                note(x2, f2);
            }
        }
        if (best.objective > cur.objective) {
            cur = best;
            result.trace.push_back({iterate++, cur.flux, cur.aux, cur.objective});
        }
    };

    for (int round = 0; round < space.rounds; ++round) {
        if (std::isinf(cur.objective) && cur.objective > 0.0) break;
        refine(true);
        if (has_aux) refine(false);
        step_f *= 0.5;
        step_a *= 0.5;
    }

    const IsolationPoint peak = peak_isolation(configure(cur.flux, cur.aux), q, space.grid);
    result.best_flux = cur.flux;
    if (has_aux) result.best_aux = cur.aux;
    result.peak_db = peak.value_db;
    result.peak_frequency = peak.omega;
    return result;
}

} // namespace optoflux
