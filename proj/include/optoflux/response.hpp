#pragma once

// Closed-form isolation of phonon transport and photon<->phonon conversion,
// plus the port-referenced transmission matrix.
//
// Isolation is forward (L -> R) over backward (R -> L) power in dB:
//   phonon:           |V - Γ_A e^{-iφ}|² / |V - Γ_A e^{iφ}|²
//   photon->phonon:   |χ_aR⁻¹|²G_L²|V + Γ_- e^{-iφ}|² / |χ_aL⁻¹|²G_R²|V + Γ_+ e^{iφ}|²
//   phonon->photon:   |χ_aL⁻¹|²G_R²|V + Γ_+ e^{-iφ}|² / |χ_aR⁻¹|²G_L²|V + Γ_- e^{iφ}|²
// with Γ_A = J G_L G_R / Δ_A, Γ_- = (J/χ_aR⁻¹)(G_R/G_L)χ_bL⁻¹, Γ_+ = (J/χ_aL⁻¹)(G_L/G_R)χ_bR⁻¹.

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "errors.hpp"
#include "linsys.hpp"
#include "matrix.hpp"
#include "model.hpp"

namespace optoflux {

enum class Quantity { phonon, photon_to_phonon, phonon_to_photon };

inline std::string_view to_string(Quantity q) {
    switch (q) {
    case Quantity::phonon: return "phonon";
    case Quantity::photon_to_phonon: return "photon_to_phonon";
    case Quantity::phonon_to_photon: return "phonon_to_photon";
    }
    return "unknown";
}

inline std::optional<Quantity> parse_quantity(std::string_view s) {
    if (s == "phonon") return Quantity::phonon;
    if (s == "photon_to_phonon") return Quantity::photon_to_phonon;
    if (s == "phonon_to_photon") return Quantity::phonon_to_photon;
    return std::nullopt;
}

// Magnitude below which a backward amplitude counts as exactly nulled.
inline constexpr double kUnderflowFloor = 1e-300;

inline constexpr double kPerfectIsolation = std::numeric_limits<double>::infinity();

struct IsolationPoint {
    double omega = 0.0;
    double value_db = 0.0;

    bool perfect() const noexcept { return std::isinf(value_db) && value_db > 0.0; }
};

// 10 log10(|fwd|² / |bwd|²) with +inf for a nulled backward path, -inf for a
// nulled forward path and NaN when both vanish.
inline double isolation_db(double forward_mag, double backward_mag) {
    const bool fwd_zero = !(forward_mag >= kUnderflowFloor);
    const bool bwd_zero = !(backward_mag >= kUnderflowFloor);
    if (fwd_zero && bwd_zero) return std::numeric_limits<double>::quiet_NaN();
    if (bwd_zero) return kPerfectIsolation;
    if (fwd_zero) return -kPerfectIsolation;
    const double r = forward_mag / backward_mag;
    return 10.0 * std::log10(r * r);
}

struct GammaMediated {
    cplx gamma_A;
    cplx gamma_plus;
    cplx gamma_minus;
};

// Γ_A = J G_L G_R / Δ_A
inline cplx optically_mediated_coupling(const SystemParams& p, const Susceptibilities& chi) {
    const double J = p.optical_hop;
    const cplx dA = optical_determinant(chi, J);
    detail::require_nondegenerate(dA, std::abs(chi.chi_aL_inv) * std::abs(chi.chi_aR_inv) + J * J, "Delta_A");
    return J * p.left.enhanced_coupling * p.right.enhanced_coupling / dA;
}

inline cplx optically_mediated_coupling(const SystemParams& p, double omega) {
    return optically_mediated_coupling(p, susceptibilities(p, omega));
}

inline GammaMediated gamma_terms(const SystemParams& p, double omega) {
    const Susceptibilities chi = susceptibilities(p, omega);
    GammaMediated g;
    g.gamma_A = optically_mediated_coupling(p, chi);

    const double J = p.optical_hop;
    const double GL = p.left.enhanced_coupling;
    const double GR = p.right.enhanced_coupling;
    if (J == 0.0) return g;
    if (chi.chi_aL_inv == cplx{} || chi.chi_aR_inv == cplx{})
        throw DegenerateBlock("gamma_terms: optical inverse susceptibility vanishes");
    if (GL == 0.0 || GR == 0.0)
        throw DegenerateBlock("gamma_terms: conversion couplings need G_L > 0 and G_R > 0");
    g.gamma_minus = (J / chi.chi_aR_inv) * (GR / GL) * chi.chi_bL_inv;
    g.gamma_plus = (J / chi.chi_aL_inv) * (GL / GR) * chi.chi_bR_inv;
    return g;
}

inline IsolationPoint phonon_isolation(const SystemParams& p, double omega) {
    const cplx gA = optically_mediated_coupling(p, omega);
    const cplx e = std::polar(1.0, p.synthetic_flux());
    const double V = p.mechanical_hop;
    return {omega, isolation_db(std::abs(V - gA * std::conj(e)), std::abs(V - gA * e))};
}

namespace detail {

// |χ_a⁻¹| G_src |V + Γ e^{±iφ}| with the G ratio inside Γ multiplied out, so
// that G_src = 0 stays finite:  |χ_src⁻¹ G_src V + J G_dst χ_b⁻¹ e^{±iφ}|.
inline double conversion_amplitude(cplx chi_a_src, double G_src, double V, double J, double G_dst, cplx chi_b,
                                   cplx phase) {
    return std::abs(chi_a_src * G_src * V + J * G_dst * chi_b * phase);
}

} // namespace detail

inline IsolationPoint photon_to_phonon_isolation(const SystemParams& p, double omega) {
    const Susceptibilities chi = susceptibilities(p, omega);
    const cplx e = std::polar(1.0, p.synthetic_flux());
    const double J = p.optical_hop;
    const double V = p.mechanical_hop;
    const double GL = p.left.enhanced_coupling;
    const double GR = p.right.enhanced_coupling;
    const double fwd = detail::conversion_amplitude(chi.chi_aR_inv, GL, V, J, GR, chi.chi_bL_inv, std::conj(e));
    const double bwd = detail::conversion_amplitude(chi.chi_aL_inv, GR, V, J, GL, chi.chi_bR_inv, e);
    return {omega, isolation_db(fwd, bwd)};
}

inline IsolationPoint phonon_to_photon_isolation(const SystemParams& p, double omega) {
    const Susceptibilities chi = susceptibilities(p, omega);
    const cplx e = std::polar(1.0, p.synthetic_flux());
    const double J = p.optical_hop;
    const double V = p.mechanical_hop;
    const double GL = p.left.enhanced_coupling;
    const double GR = p.right.enhanced_coupling;
    const double fwd = detail::conversion_amplitude(chi.chi_aL_inv, GR, V, J, GL, chi.chi_bR_inv, std::conj(e));
    const double bwd = detail::conversion_amplitude(chi.chi_aR_inv, GL, V, J, GR, chi.chi_bL_inv, e);
    return {omega, isolation_db(fwd, bwd)};
}

inline IsolationPoint isolation(const SystemParams& p, Quantity q, double omega) {
    switch (q) {
    case Quantity::phonon: return phonon_isolation(p, omega);
    case Quantity::photon_to_phonon: return photon_to_phonon_isolation(p, omega);
    case Quantity::phonon_to_photon: return phonon_to_photon_isolation(p, omega);
    }
    return {omega, std::numeric_limits<double>::quiet_NaN()};
}

// Ω = diag(√κ_eL, √κ_eR, √γ_eL, √γ_eR)
inline Mat4 input_coupling(const SystemParams& p) {
    return Mat4::diagonal({std::sqrt(p.left.optical.external_decay), std::sqrt(p.right.optical.external_decay),
                           std::sqrt(p.left.mechanical.external_decay), std::sqrt(p.right.mechanical.external_decay)});
}

// Mode amplitudes per unit coherent input at each port: M⁻¹ Ω.
inline Mat4 transmission_matrix(const SystemParams& p, double omega) {
    return invert_dense(build_matrix(p, omega)) * input_coupling(p);
}

} // namespace optoflux
