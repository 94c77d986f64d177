#pragma once

// Classical steady state of the driven cavities, Δ' ≈ Δ, and the enhanced
// couplings G_j = g_j |α_j| it produces.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "errors.hpp"
#include "linsys.hpp"
#include "matrix.hpp"
#include "model.hpp"

namespace optoflux {

struct Drives {
    double eps_L = 0.0;
    double eps_R = 0.0;
    double phi_L = 0.0;
    double phi_R = 0.0;
};

struct SteadyState {
    cplx alpha_L;
    cplx alpha_R;
    double G_L = 0.0;
    double G_R = 0.0;
};

struct DriveAmplitudes {
    double eps_L = 0.0;
    double eps_R = 0.0;
};

struct TargetCouplings {
    double G_L = 0.0;
    double G_R = 0.0;
};

inline Drives drives_of(const SystemParams& p) {
    return {p.left.optical.drive_amplitude, p.right.optical.drive_amplitude, p.left.optical.drive_phase,
            p.right.optical.drive_phase};
}

namespace detail {

// α = K (ε_L, ε_R)ᵀ; K depends on the drive phases only.
inline Mat2 drive_response(const SystemParams& p, double phi_L, double phi_R) {
    const cplx lL{0.5 * p.left.optical.total_decay(), -p.left.detuning};
    const cplx lR{0.5 * p.right.optical.total_decay(), -p.right.detuning};
    const double J = p.optical_hop;
    const cplx den = lL * lR + J * J;
    require_nondegenerate(den, std::abs(lL) * std::abs(lR) + J * J, "steady-state denominator");

    const double skL = std::sqrt(p.left.optical.external_decay);
    const double skR = std::sqrt(p.right.optical.external_decay);
    const cplx cross = -I * J * std::polar(1.0, phi_L + phi_R);

    Mat2 k;
    k(0, 0) = lR * skL * std::polar(1.0, 2.0 * phi_L) / den;
    k(0, 1) = cross * skR / den;
    k(1, 0) = cross * skL / den;
    k(1, 1) = lL * skR * std::polar(1.0, 2.0 * phi_R) / den;
    return k;
}

} // namespace detail

inline SteadyState steady_amplitudes(const SystemParams& p, const Drives& d) {
    const Mat2 k = detail::drive_response(p, d.phi_L, d.phi_R);
    SteadyState s;
    s.alpha_L = k(0, 0) * d.eps_L + k(0, 1) * d.eps_R;
    s.alpha_R = k(1, 0) * d.eps_L + k(1, 1) * d.eps_R;
    s.G_L = p.left.optical.vacuum_coupling * std::abs(s.alpha_L);
    s.G_R = p.right.optical.vacuum_coupling * std::abs(s.alpha_R);
    return s;
}

inline SteadyState steady_amplitudes(const SystemParams& p) { return steady_amplitudes(p, drives_of(p)); }

// Real, non-negative drives (at the phases stored in p) reproducing the target
// couplings. |α| is homogeneous of degree one in (ε_L, ε_R), so the drive
// direction θ is fixed by the magnitude ratio and the norm by scaling. Of all
// admissible directions the one needing the least drive norm is returned.
inline DriveAmplitudes drives_for_target_G(const SystemParams& p, const TargetCouplings& target) {
    if (!(target.G_L >= 0.0 && target.G_R >= 0.0))
        throw InvalidParams("drives_for_target_G: target couplings must be >= 0");
    if (target.G_L == 0.0 && target.G_R == 0.0) return {};

    const double gL = p.left.optical.vacuum_coupling;
    const double gR = p.right.optical.vacuum_coupling;
    if ((target.G_L > 0.0 && !(gL > 0.0)) || (target.G_R > 0.0 && !(gR > 0.0)))
        throw NoSolution("drives_for_target_G: vacuum coupling g must be > 0 for a nonzero target");

    const double want_L = target.G_L > 0.0 ? target.G_L / gL : 0.0;
    const double want_R = target.G_R > 0.0 ? target.G_R / gR : 0.0;
    const Mat2 k = detail::drive_response(p, p.left.optical.drive_phase, p.right.optical.drive_phase);

    // One target zero: the drive direction must null that cavity exactly.
    if (want_L == 0.0 || want_R == 0.0) {
        const std::size_t row = want_L == 0.0 ? 0 : 1;
        const cplx kc = k(row, 0);
        const cplx ks = k(row, 1);
        double c = 0.0, s = 0.0;
        if (ks == cplx{}) {
            s = 1.0;
        } else if (kc == cplx{}) {
            c = 1.0;
        } else {
            const cplx z = -kc / ks;  // tan θ
            if (std::abs(z.imag()) > 1e-12 * std::abs(z) || z.real() < 0.0)
                throw NoSolution("drives_for_target_G: cannot null one cavity with non-negative drives");
            const double n = std::hypot(1.0, z.real());
            c = 1.0 / n;
            s = z.real() / n;
        }
        const std::size_t other = 1 - row;
        const double mag = std::abs(k(other, 0) * c + k(other, 1) * s);
        if (!(mag > 0.0)) throw NoSolution("drives_for_target_G: driven direction leaves both cavities empty");
        const double norm = (other == 0 ? want_L : want_R) / mag;
        return {norm * c, norm * s};
    }

    auto magnitudes = [&](double theta) {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        return std::array<double, 2>{std::abs(k(0, 0) * c + k(0, 1) * s), std::abs(k(1, 0) * c + k(1, 1) * s)};
    };
    // Zero exactly when |α_L| : |α_R| matches the target ratio.
    auto mismatch = [&](double theta) {
        const auto m = magnitudes(theta);
        return want_R * m[0] - want_L * m[1];
    };

    constexpr int kScan = 4096;
    const double span = 0.5 * std::numbers::pi;
    double best_norm = std::numeric_limits<double>::infinity();
    double best_theta = 0.0;

    auto consider = [&](double theta) {
        const auto m = magnitudes(theta);
        const bool use_left = want_L >= want_R;
        const double mag = use_left ? m[0] : m[1];
        if (!(mag > 0.0)) return;
        const double norm = (use_left ? want_L : want_R) / mag;
        if (norm < best_norm) {
            best_norm = norm;
            best_theta = theta;
        }
    };

    double t0 = 0.0;
    double h0 = mismatch(t0);
    if (h0 == 0.0) consider(t0);
    for (int i = 1; i <= kScan; ++i) {
        const double t1 = (i == kScan) ? span : span * i / kScan;
        const double h1 = mismatch(t1);
        if (h1 == 0.0) {
            consider(t1);
        } else if (h0 != 0.0 && std::signbit(h0) != std::signbit(h1)) {
            double lo = t0, hi = t1, hlo = h0;
            for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                const double hm = mismatch(mid);
                if (hm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (std::signbit(hm) == std::signbit(hlo)) {
                    lo = mid;
                    hlo = hm;
                } else {
                    hi = mid;
                }
            }
            consider(0.5 * (lo + hi));
        }
        t0 = t1;
        h0 = h1;
    }

    if (!std::isfinite(best_norm))
        throw NoSolution("drives_for_target_G: no non-negative drive pair reaches the requested G ratio");
    return {best_norm * std::cos(best_theta), best_norm * std::sin(best_theta)};
}

} // namespace optoflux
