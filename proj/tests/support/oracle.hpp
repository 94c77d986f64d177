#pragma once

// Test-only oracles: isolation read off the dense 4x4 inverse, and a
// randomized parameter generator around the Reference operating point.

#include <cmath>
#include <random>

#include "optoflux/linsys.hpp"
#include "optoflux/model.hpp"
#include "optoflux/response.hpp"

namespace optoflux::testing {

inline double db_ratio(cplx fwd, cplx bwd) { return 20.0 * std::log10(std::abs(fwd) / std::abs(bwd)); }

struct OracleIsolation {
    double phonon;
    double photon_to_phonon;
    double phonon_to_photon;
};

// Forward = L -> R: element (row R, col L) of the relevant block of M⁻¹.
inline OracleIsolation oracle_isolation(const SystemParams& p, double omega) {
    const Mat4 inv = invert_dense(build_matrix(p, omega));
    return {db_ratio(inv(bR, bL), inv(bL, bR)), db_ratio(inv(bR, aL), inv(bL, aR)),
            db_ratio(inv(aR, bL), inv(aL, bR))};
}

struct RandomSample {
    SystemParams params;
    double omega;
};

// Rates log-uniform over ±2 decades of reference set (V around 2π·1 MHz), ω_m within
// ±1 %, phases uniform in [0, 2π), probe within ±1 GHz of ω_mL.
class ParamSampler {
public:
    explicit ParamSampler(std::uint64_t seed) : rng_(seed) {}

    RandomSample next() {
        Site l, r;
        l.optical.external_decay = rate(table1::kappa_eL);
        l.optical.internal_decay = rate(table1::kappa_iL);
        r.optical.external_decay = rate(table1::kappa_eR);
        r.optical.internal_decay = rate(table1::kappa_iR);
        l.mechanical = {from_hz(table1::omega_mL * uniform(0.99, 1.01)), rate(table1::gamma_eL), rate(table1::gamma_iL)};
        r.mechanical = {from_hz(table1::omega_mR * uniform(0.99, 1.01)), rate(table1::gamma_eR), rate(table1::gamma_iR)};
        l.enhanced_coupling = rate(table1::G_L);
        r.enhanced_coupling = rate(table1::G_R);
        l.optical.drive_phase = uniform(0.0, two_pi);
        r.optical.drive_phase = uniform(0.0, two_pi);
        SystemParams p = SystemParams::red_detuned(l, r, rate(table1::J), rate(1e6));
        const double omega = from_hz(table1::omega_mL + uniform(-1e9, 1e9));
        return {p, omega};
    }

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

private:
    double rate(double base_hz) { return from_hz(base_hz * std::pow(10.0, uniform(-2.0, 2.0))); }

    std::mt19937_64 rng_;
};

} // namespace optoflux::testing
