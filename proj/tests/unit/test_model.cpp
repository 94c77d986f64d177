#include <catch_amalgamated.hpp>

#include <numbers>

#include "optoflux/model.hpp"

using namespace optoflux;
using Catch::Matchers::WithinRel;
using Catch::Matchers::WithinAbs;

TEST_CASE("table1 preset carries the quoted rates", "[model]") {
    const SystemParams p = from_table1(from_hz(1e6));
    CHECK_THAT(p.left.optical.total_decay(), WithinRel(two_pi * (0.74e9 + 0.29e9), 1e-15));
    CHECK_THAT(p.right.mechanical.total_decay(), WithinRel(two_pi * (5.7e6 + 1.2e6), 1e-15));
    CHECK(p.left.detuning == -two_pi * 5.7884e9);
    CHECK(p.right.detuning == -p.right.mechanical.frequency);
    CHECK_THAT(p.optical_hop, WithinRel(two_pi * 110e6, 1e-15));
    CHECK_THAT(p.left.enhanced_coupling, WithinRel(two_pi * 33e6, 1e-15));
    CHECK_THAT(p.right.enhanced_coupling, WithinRel(two_pi * 31e6, 1e-15));
    CHECK(p.mechanical_hop == from_hz(1e6));
    CHECK(p.synthetic_flux() == 0.0);
}

TEST_CASE("red_detuned pins detuning to minus the mechanical frequency", "[model]") {
    Site l, r;
    l.mechanical.frequency = 3.0;
    r.mechanical.frequency = 7.5;
    l.detuning = 100.0;
    const SystemParams p = SystemParams::red_detuned(l, r, 1.0, 0.5);
    CHECK(p.left.detuning == -3.0);
    CHECK(p.right.detuning == -7.5);
}

TEST_CASE("susceptibilities on resonance are purely real", "[model]") {
    const SystemParams p = from_table1(0.0);
    const double w = p.left.mechanical.frequency;
    const Susceptibilities chi = susceptibilities(p, w);
    CHECK(chi.chi_aL_inv == cplx{0.5 * two_pi * 1.03e9, 0.0});
    CHECK(chi.chi_bL_inv == cplx{0.5 * two_pi * 5.3e6, 0.0});
}

TEST_CASE("susceptibilities match independently evaluated reference values at 5.9 GHz", "[model]") {
    // Frozen from a 40-digit evaluation of χ⁻¹ = -i(ω + Δ) + κ/2, -i(ω - ω_m) + γ/2.
    const Susceptibilities chi = susceptibilities(from_table1(0.0), from_hz(5.9e9));
    const double tol = 1e-12;
    CHECK_THAT(chi.chi_aL_inv.real(), WithinRel(3235840433.197487, tol));
    CHECK_THAT(chi.chi_aL_inv.imag(), WithinRel(-701203480.28124185, 1e-9));
    CHECK_THAT(chi.chi_aR_inv.real(), WithinRel(2356194490.1923449, tol));
    CHECK_THAT(chi.chi_aR_inv.imag(), WithinRel(-759637103.63801201, 1e-9));
    CHECK_THAT(chi.chi_bL_inv.real(), WithinRel(16650441.064025904, tol));
    CHECK_THAT(chi.chi_bL_inv.imag(), WithinRel(-701203480.28124185, 1e-9));
    CHECK_THAT(chi.chi_bR_inv.real(), WithinRel(21676989.309769573, tol));
    CHECK_THAT(chi.chi_bR_inv.imag(), WithinRel(-759637103.63801201, 1e-9));
}

TEST_CASE("decay enters only the real part and |chi_a| >= kappa/2", "[model][property]") {
    const SystemParams p = from_table1(0.0);
    for (int k = -50; k <= 50; ++k) {
        const double w = p.left.mechanical.frequency + from_hz(2e7 * k);
        const Susceptibilities chi = susceptibilities(p, w);
        CHECK(chi.chi_aL_inv.real() == 0.5 * p.left.optical.total_decay());
        CHECK(chi.chi_bR_inv.real() == 0.5 * p.right.mechanical.total_decay());
        CHECK(chi.chi_aR_inv.imag() == -(w + p.right.detuning));
        CHECK(chi.chi_bL_inv.imag() == -(w - p.left.mechanical.frequency));
        CHECK(std::abs(chi.chi_aL_inv) >= 0.5 * p.left.optical.total_decay());
        CHECK(std::abs(chi.chi_aR_inv) >= 0.5 * p.right.optical.total_decay());
        if (k != 0) CHECK(std::abs(chi.chi_aL_inv) > 0.5 * p.left.optical.total_decay());
    }
}

TEST_CASE("susceptibilities are deterministic", "[model]") {
    const SystemParams p = from_table1(1.0);
    const auto a = susceptibilities(p, 3.7e10);
    const auto b = susceptibilities(p, 3.7e10);
    CHECK(a.chi_aL_inv == b.chi_aL_inv);
    CHECK(a.chi_bR_inv == b.chi_bR_inv);
}

TEST_CASE("validation rejects negative rates", "[model]") {
    SystemParams p = from_table1(0.0);
    p.left.optical.internal_decay = -1.0;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
}

TEST_CASE("validation rejects negative V and non-positive mechanical frequency", "[model]") {
    CHECK_THROWS_AS(from_table1(-1.0), InvalidParams);
    SystemParams p = from_table1(0.0);
    p.right.mechanical.frequency = 0.0;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
}

TEST_CASE("with_flux sets the phase difference and normalize_phase maps into (-pi, pi]", "[model]") {
    const SystemParams p = with_flux(from_table1(0.0), 1.42 * std::numbers::pi);
    CHECK_THAT(p.synthetic_flux(), WithinAbs(1.42 * std::numbers::pi, 1e-15));
    CHECK_THAT(normalize_phase(1.42 * std::numbers::pi), WithinAbs(-0.58 * std::numbers::pi, 1e-12));
    CHECK(normalize_phase(-std::numbers::pi) == std::numbers::pi);
    CHECK(normalize_phase(std::numbers::pi) == std::numbers::pi);
}
