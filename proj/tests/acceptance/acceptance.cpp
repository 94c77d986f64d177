// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "optoflux/optoflux.hpp"
#include "support/oracle.hpp"

using namespace optoflux;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(const char* id, const char* title, const std::function<Outcome()>& check) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %s %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
    if (!o.pass) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_rel_entry_error(const Mat4& got, const Mat4& ref) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 16; ++i) {
        const double d = std::abs(ref.data[i]);
        worst = std::max(worst, std::abs(got.data[i] - ref.data[i]) / (d > 0.0 ? d : 1.0));
    }
    return worst;
}

// reference set with V from the interference condition at 5.85 GHz.
SystemParams table1_interference() {
    const SystemParams base = from_table1(0.0);
    return with_mechanical_hop(base, interference_condition(base, from_hz(5.85e9)).mechanical_hop);
}

struct ConversionTune {
    double flux;
    double V;
    double peak_db;
    double peak_hz;
};

ConversionTune tune_conversion(Quantity q, double flux_center_pi) {
    SearchSpace space;
    space.flux_lo = (flux_center_pi - 0.02) * pi;
    space.flux_hi = (flux_center_pi + 0.02) * pi;
    space.aux = AuxRange{AuxParam::V, from_hz(1e6), from_hz(100e6)};
    space.grid = {from_hz(5.7e9), from_hz(6.1e9), 401};
    const TuneResult r = tune(from_table1(0.0), q, space);
    return {r.best_flux, *r.best_aux, r.peak_db, to_hz(r.peak_frequency)};
}

} // namespace

int main() {
    report("AC1", "oracle equivalence", [] {
        const auto t0 = std::chrono::steady_clock::now();
        testing::ParamSampler sampler(0xacce'0001);
        double worst_db = 0.0, worst_rel = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const auto s = sampler.next();
            const auto oracle = testing::oracle_isolation(s.params, s.omega);
            worst_db = std::max({worst_db,
                                 std::abs(phonon_isolation(s.params, s.omega).value_db - oracle.phonon),
                                 std::abs(photon_to_phonon_isolation(s.params, s.omega).value_db - oracle.photon_to_phonon),
                                 std::abs(phonon_to_photon_isolation(s.params, s.omega).value_db - oracle.phonon_to_photon)});
            worst_rel = std::max(worst_rel, max_rel_entry_error(assemble_inverse(effective_blocks(s.params, s.omega)),
                                                                invert_dense(build_matrix(s.params, s.omega))));
        }
        const double secs = seconds_since(t0);
        const bool ok = worst_db <= 1e-6 && worst_rel <= 1e-9 && secs < 10.0;
        return Outcome{ok, fmt("1000 samples, max |dB diff| = %.3g", worst_db) + fmt(", max rel entry err = %.3g", worst_rel) +
                               " (limits 1e-6 dB, 1e-9, <10 s)"};
    });

    report("AC2", "integer-flux reciprocity", [] {
        const SystemParams p = table1_interference();
        double worst = 0.0;
        for (int n : {-2, -1, 0, 1, 2})
            for (const auto& pt : spectrum(with_flux(p, n * pi), Quantity::phonon, default_frequency_grid(), 0))
                worst = std::isnan(pt.value_db) ? INFINITY : std::max(worst, std::abs(pt.value_db));
        return Outcome{worst <= 1e-9, fmt("max |I| = %.3g dB over 5 x 2001 points (limit 1e-9)", worst)};
    });

    report("AC3", "lossless reciprocity", [] {
        SystemParams p = table1_interference();
        p.left.optical.external_decay = p.left.optical.internal_decay = 0.0;
        p.right.optical.external_decay = p.right.optical.internal_decay = 0.0;
        p.right.detuning = p.left.detuning;
        const FluxMap map = flux_map(p, Quantity::phonon, {-2 * pi, 2 * pi, 41}, default_frequency_grid());
        double worst = 0.0;
        for (double v : map.values) worst = std::isnan(v) ? INFINITY : std::max(worst, std::abs(v));
        return Outcome{worst <= 1e-9, fmt("max |I| = %.3g dB over 41 x 2001 points (limit 1e-9)", worst)};
    });

    report("AC4", "flux antisymmetry", [] {
        const FluxMap map = flux_map(table1_interference(), Quantity::phonon, default_flux_grid(), default_frequency_grid());
        double worst = 0.0;
        for (std::size_t r = 0; r < map.rows(); ++r)
            for (std::size_t c = 0; c < map.cols(); ++c)
                worst = std::max(worst, std::abs(map.at(r, c) + map.at(map.rows() - 1 - r, c)));
        return Outcome{worst <= 1e-9, fmt("max |I(phi) + I(-phi)| = %.3g dB over 401 x 2001 map (limit 1e-9)", worst)};
    });

    report("AC5", "conversion duality", [] {
        testing::ParamSampler sampler(0xacce'0005);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const auto s = sampler.next();
            const SystemParams neg = with_flux(s.params, -s.params.synthetic_flux());
            worst = std::max(worst, std::abs(photon_to_phonon_isolation(s.params, s.omega).value_db +
                                             phonon_to_photon_isolation(neg, s.omega).value_db));
        }
        return Outcome{worst <= 1e-9, fmt("max |I_p->m(phi) + I_m->p(-phi)| = %.3g dB, 1000 samples (limit 1e-9)", worst)};
    });

    report("AC6", "phonon isolation peak", [] {
        const auto t0 = std::chrono::steady_clock::now();
        const SystemParams base = from_table1(0.0);
        const InterferenceSolution seed = interference_condition(base, from_hz(5.85e9));
        const SystemParams p = with_mechanical_hop(with_flux(base, seed.flux), seed.mechanical_hop);
        const FrequencyGrid grid{from_hz(5.7e9), from_hz(6.0e9), 2000};
        const IsolationPoint peak = peak_isolation(p, Quantity::phonon, grid);

        // Golden peak, independently evaluated at 40 digits: 64.94367356236833 dB at 5.850075037519 GHz.
        constexpr double golden_db = 64.94367356236833;
        const bool golden_ok = std::abs(peak.value_db - golden_db) <= 1e-6;

        SearchSpace space;
        space.flux_lo = seed.flux - 0.05 * pi;
        space.flux_hi = seed.flux + 0.05 * pi;
        space.aux = AuxRange{AuxParam::V, 0.8 * seed.mechanical_hop, 1.2 * seed.mechanical_hop};
        space.grid = grid;
        space.coarse_points = 5;
        space.rounds = 2;
        space.golden_iterations = 25;
        space.seed_flux = seed.flux;
        space.seed_aux = seed.mechanical_hop;
        const TuneResult tuned = tune(base, Quantity::phonon, space);
        const double secs = seconds_since(t0);

        const bool ok = peak.value_db > 50.0 && golden_ok && tuned.peak_db >= peak.value_db && secs < 5.0;
        return Outcome{ok, fmt("seed peak %.6f dB", peak.value_db) + fmt(" at %.6f GHz", to_hz(peak.omega) / 1e9) +
                               fmt(", tuned peak %.2f dB", tuned.peak_db) + " (limit > 50 dB, golden 64.943674 +/- 1e-6, < 5 s)"};
    });

    const ConversionTune fig3 = tune_conversion(Quantity::photon_to_phonon, 1.42);

    report("AC7", "photon->phonon peak", [&] {
        const SystemParams p = with_mechanical_hop(with_flux(from_table1(0.0), fig3.flux), fig3.V);
        const SystemParams neg = with_flux(p, -fig3.flux);
        const double flipped = photon_to_phonon_isolation(neg, from_hz(fig3.peak_hz)).value_db;
        const bool ok = fig3.peak_db > 30.0 && fig3.peak_hz >= 5.7e9 && fig3.peak_hz <= 6.1e9 && flipped < 0.0;
        return Outcome{ok, fmt("phi = %.4f pi", fig3.flux / pi) + fmt(", V/2pi = %.4f MHz", fig3.V / two_pi / 1e6) +
                               fmt(", peak %.2f dB", fig3.peak_db) + fmt(" at %.4f GHz", fig3.peak_hz / 1e9) +
                               fmt(", at -phi %.2f dB", flipped) + " (limits > 30 dB in 5.7-6.1 GHz, negative at -phi)"};
    });

    report("AC8", "phonon->photon peak", [] {
        const ConversionTune fig4 = tune_conversion(Quantity::phonon_to_photon, 1.4);
        const SystemParams p = with_mechanical_hop(with_flux(from_table1(0.0), fig4.flux), fig4.V);
        const auto reversed = spectrum(with_flux(p, -fig4.flux), Quantity::phonon_to_photon,
                                       {from_hz(5.7e9), from_hz(6.1e9), 401}, 0);
        double min_db = INFINITY, min_hz = 0.0;
        for (const auto& pt : reversed)
            if (pt.value_db < min_db) {
                min_db = pt.value_db;
                min_hz = to_hz(pt.omega);
            }
        const bool ok = fig4.peak_db > 0.0 && std::abs(fig4.peak_hz - 6.0e9) <= 0.2e9 && min_db < 0.0;
        return Outcome{ok, fmt("phi = %.4f pi", fig4.flux / pi) + fmt(", V/2pi = %.4f MHz", fig4.V / two_pi / 1e6) +
                               fmt(", peak %.2f dB", fig4.peak_db) + fmt(" at %.4f GHz", fig4.peak_hz / 1e9) +
                               fmt("; -phi minimum %.2f dB", min_db) + fmt(" at %.4f GHz", min_hz / 1e9) +
                               " (limits: positive peak within 6 +/- 0.2 GHz, negative under -phi)"};
    });

    report("AC9", "steady-state round trip", [] {
        std::mt19937_64 rng(0xacce'0009);
        std::uniform_real_distribution<double> G(from_hz(5e6), from_hz(80e6));
        std::uniform_real_distribution<double> phase(0.0, two_pi);
        std::uniform_real_distribution<double> g(from_hz(0.3e3), from_hz(3e3));
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            SystemParams p = from_table1(from_hz(1e6));
            p.left.optical.vacuum_coupling = g(rng);
            p.right.optical.vacuum_coupling = g(rng);
            p.left.optical.drive_phase = phase(rng);
            p.right.optical.drive_phase = phase(rng);
            const TargetCouplings t{G(rng), G(rng)};
            const DriveAmplitudes d = drives_for_target_G(p, t);
            const SteadyState s = steady_amplitudes(
                p, Drives{d.eps_L, d.eps_R, p.left.optical.drive_phase, p.right.optical.drive_phase});
            worst = std::max({worst, std::abs(s.G_L - t.G_L) / t.G_L, std::abs(s.G_R - t.G_R) / t.G_R});
        }
        return Outcome{worst <= 1e-9, fmt("max relative G error = %.3g over 100 targets (limit 1e-9)", worst)};
    });

    report("AC10", "conversion nonreciprocity at zero flux", [&] {
        const SystemParams p = with_mechanical_hop(from_table1(0.0), fig3.V);
        double best = 0.0, best_hz = 0.0;
        for (const auto& pt : spectrum(p, Quantity::photon_to_phonon, default_frequency_grid(), 0))
            if (std::abs(pt.value_db) > best) {
                best = std::abs(pt.value_db);
                best_hz = to_hz(pt.omega);
            }
        return Outcome{best > 0.1, fmt("max |I_photon->phonon| = %.3f dB", best) + fmt(" at %.4f GHz", best_hz / 1e9) +
                                       " with phi = 0 (limit > 0.1 dB)"};
    });

    std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
