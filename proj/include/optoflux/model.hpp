#pragma once

// Parameter model of two coupled optomechanical cavities (a_L, a_R optical;
// b_L, b_R mechanical). All rates and frequencies are angular (rad/s); Hz
// values are converted once via from_hz().

#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "matrix.hpp"

namespace optoflux {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

constexpr double from_hz(double hz) noexcept { return two_pi * hz; }
constexpr double to_hz(double angular) noexcept { return angular / two_pi; }

// Maps a phase into (-pi, pi]. Display only; stored phases are never normalized.
inline double normalize_phase(double phi) {
    double r = std::remainder(phi, two_pi);
    if (r <= -std::numbers::pi) r += two_pi;
    return r;
}

struct OpticalMode {
    double cavity_frequency = 0.0;  // ω_c; only needed to place ω_d on an absolute axis
    double external_decay = 0.0;    // κ_e
    double internal_decay = 0.0;    // κ_i
    double drive_phase = 0.0;       // φ_j, radians
    double drive_amplitude = 0.0;   // ε_j, sqrt(photon flux)
    double vacuum_coupling = 0.0;   // g_j

    double total_decay() const noexcept { return external_decay + internal_decay; }
};

struct MechanicalMode {
    double frequency = 0.0;       // ω_m
    double external_decay = 0.0;  // γ_e
    double internal_decay = 0.0;  // γ_i

    double total_decay() const noexcept { return external_decay + internal_decay; }
};

struct Site {
    OpticalMode optical;
    MechanicalMode mechanical;
    double enhanced_coupling = 0.0;  // G_j >= 0
    double detuning = 0.0;           // Δ_j = ω_d - ω_c
};

struct SystemParams {
    Site left;
    Site right;
    double optical_hop = 0.0;     // J
    double mechanical_hop = 0.0;  // V

    // φ = φ_L - φ_R
    double synthetic_flux() const noexcept {
        return left.optical.drive_phase - right.optical.drive_phase;
    }

    // Builds the red-sideband operating point Δ_j = -ω_mj.
    static SystemParams red_detuned(Site left, Site right, double optical_hop, double mechanical_hop) {
        left.detuning = -left.mechanical.frequency;
        right.detuning = -right.mechanical.frequency;
        SystemParams p{left, right, optical_hop, mechanical_hop};
        p.validate();
        return p;
    }

    void validate() const {
        auto check_site = [](const Site& s, const char* side) {
            const std::string tag(side);
            auto require = [&](bool ok, const char* what) {
                if (!ok) throw InvalidParams(tag + ": " + what);
            };
            require(std::isfinite(s.optical.external_decay) && s.optical.external_decay >= 0.0, "kappa_e must be >= 0");
            require(std::isfinite(s.optical.internal_decay) && s.optical.internal_decay >= 0.0, "kappa_i must be >= 0");
            require(std::isfinite(s.mechanical.external_decay) && s.mechanical.external_decay >= 0.0, "gamma_e must be >= 0");
            require(std::isfinite(s.mechanical.internal_decay) && s.mechanical.internal_decay >= 0.0, "gamma_i must be >= 0");
            require(std::isfinite(s.mechanical.frequency) && s.mechanical.frequency > 0.0, "omega_m must be > 0");
            require(std::isfinite(s.enhanced_coupling) && s.enhanced_coupling >= 0.0, "G must be >= 0");
            require(std::isfinite(s.detuning), "detuning must be finite");
            require(std::isfinite(s.optical.drive_phase), "drive phase must be finite");
        };
        check_site(left, "left");
        check_site(right, "right");
        if (!(std::isfinite(optical_hop) && optical_hop >= 0.0)) throw InvalidParams("J must be >= 0");
        if (!(std::isfinite(mechanical_hop) && mechanical_hop >= 0.0)) throw InvalidParams("V must be >= 0");
    }
};

// Copy of p with φ_L moved so that φ_L - φ_R == flux.
inline SystemParams with_flux(SystemParams p, double flux) {
    p.left.optical.drive_phase = p.right.optical.drive_phase + flux;
    return p;
}

inline SystemParams with_mechanical_hop(SystemParams p, double v) {
    p.mechanical_hop = v;
    return p;
}

namespace table1 {
// Hz, as quoted in /2π form.
inline constexpr double J = 110e6;
inline constexpr double G_L = 33e6;
inline constexpr double G_R = 31e6;
inline constexpr double omega_mL = 5.7884e9;
inline constexpr double omega_mR = 5.7791e9;
inline constexpr double kappa_eL = 0.74e9;
inline constexpr double kappa_eR = 0.44e9;
inline constexpr double gamma_eL = 4.3e6;
inline constexpr double gamma_eR = 5.7e6;
inline constexpr double kappa_iL = 0.29e9;
inline constexpr double kappa_iR = 0.31e9;
inline constexpr double gamma_iL = 1.0e6;
inline constexpr double gamma_iR = 1.2e6;
} // namespace table1

// Reference operating point, red detuned, zero drive phases. V (angular) has no
// published value and must be supplied.
inline SystemParams from_table1(double mechanical_hop) {
    Site left;
    left.optical.external_decay = from_hz(table1::kappa_eL);
    left.optical.internal_decay = from_hz(table1::kappa_iL);
    left.mechanical = {from_hz(table1::omega_mL), from_hz(table1::gamma_eL), from_hz(table1::gamma_iL)};
    left.enhanced_coupling = from_hz(table1::G_L);

    Site right;
    right.optical.external_decay = from_hz(table1::kappa_eR);
    right.optical.internal_decay = from_hz(table1::kappa_iR);
    right.mechanical = {from_hz(table1::omega_mR), from_hz(table1::gamma_eR), from_hz(table1::gamma_iR)};
    right.enhanced_coupling = from_hz(table1::G_R);

    return SystemParams::red_detuned(left, right, from_hz(table1::J), mechanical_hop);
}

// Inverse susceptibilities χ⁻¹ at probe frequency ω.
struct Susceptibilities {
    cplx chi_aL_inv;
    cplx chi_aR_inv;
    cplx chi_bL_inv;
    cplx chi_bR_inv;
};

inline cplx optical_inverse_susceptibility(const Site& s, double omega) {
    return {0.5 * s.optical.total_decay(), -(omega + s.detuning)};
}

inline cplx mechanical_inverse_susceptibility(const Site& s, double omega) {
    return {0.5 * s.mechanical.total_decay(), -(omega - s.mechanical.frequency)};
}

inline Susceptibilities susceptibilities(const SystemParams& p, double omega) {
    return {optical_inverse_susceptibility(p.left, omega), optical_inverse_susceptibility(p.right, omega),
            mechanical_inverse_susceptibility(p.left, omega), mechanical_inverse_susceptibility(p.right, omega)};
}

} // namespace optoflux
