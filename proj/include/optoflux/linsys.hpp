#pragma once

// Frequency-domain coupling matrix M(ω) O(ω) = Ω N_in and its inverse, by
// dense elimination and by the Schur-complement closed forms.
//
// Mode order is fixed: (a_L, a_R, b_L, b_R). Indices into Mat4 follow it.

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "errors.hpp"
#include "matrix.hpp"
#include "model.hpp"

namespace optoflux {

enum Mode : std::size_t { aL = 0, aR = 1, bL = 2, bR = 3 };

inline constexpr double kDegenerateRelTol = 1e-14;

struct CouplingMatrix {
    Mat4 entries;

    // M = [[A, C], [D, B]]
    Mat2 block(std::size_t row0, std::size_t col0) const {
        Mat2 out;
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) out(r, c) = entries(row0 + r, col0 + c);
        return out;
    }
    Mat2 A() const { return block(0, 0); }
    Mat2 C() const { return block(0, 2); }
    Mat2 D() const { return block(2, 0); }
    Mat2 B() const { return block(2, 2); }
};

inline CouplingMatrix build_matrix(const SystemParams& p, double omega) {
    const Susceptibilities chi = susceptibilities(p, omega);
    const double phi_L = p.left.optical.drive_phase;
    const double phi_R = p.right.optical.drive_phase;
    const double G_L = p.left.enhanced_coupling;
    const double G_R = p.right.enhanced_coupling;

    CouplingMatrix m;
    Mat4& e = m.entries;
    e(aL, aL) = chi.chi_aL_inv;
    e(aR, aR) = chi.chi_aR_inv;
    e(bL, bL) = chi.chi_bL_inv;
    e(bR, bR) = chi.chi_bR_inv;
    e(aL, aR) = e(aR, aL) = I * p.optical_hop;
    e(bL, bR) = e(bR, bL) = I * p.mechanical_hop;
    e(aL, bL) = I * G_L * std::polar(1.0, -phi_L);
    e(aR, bR) = I * G_R * std::polar(1.0, -phi_R);
    e(bL, aL) = I * G_L * std::polar(1.0, phi_L);
    e(bR, aR) = I * G_R * std::polar(1.0, phi_R);
    return m;
}

// Gauss-Jordan elimination with partial pivoting. Numerical oracle for M⁻¹.
template <std::size_t N>
SquareMatrix<N> invert_dense(const SquareMatrix<N>& m) {
    const double scale = m.max_abs();
    SquareMatrix<N> work = m;
    SquareMatrix<N> inv = SquareMatrix<N>::identity();

    for (std::size_t col = 0; col < N; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < N; ++r)
            if (std::abs(work(r, col)) > std::abs(work(pivot, col))) pivot = r;

        if (!(std::abs(work(pivot, col)) >= kDegenerateRelTol * scale) || scale == 0.0)
            throw SingularMatrix("invert_dense: pivot below 1e-14 * max|M| in column " + std::to_string(col));

        if (pivot != col)
            for (std::size_t c = 0; c < N; ++c) {
                std::swap(work(col, c), work(pivot, c));
                std::swap(inv(col, c), inv(pivot, c));
            }

        const cplx inv_pivot = 1.0 / work(col, col);
        for (std::size_t c = 0; c < N; ++c) {
            work(col, c) *= inv_pivot;
            inv(col, c) *= inv_pivot;
        }
        for (std::size_t r = 0; r < N; ++r) {
            if (r == col) continue;
            const cplx f = work(r, col);
            if (f == cplx{}) continue;
            for (std::size_t c = 0; c < N; ++c) {
                work(r, c) -= f * work(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

inline Mat4 invert_dense(const CouplingMatrix& m) { return invert_dense(m.entries); }

struct EffectiveBlocks {
    Mat2 A_eff_inv;              // [A - C B⁻¹ D]⁻¹
    Mat2 B_eff_inv;              // [B - D A⁻¹ C]⁻¹
    Mat2 conv_photon_to_phonon;  // -B_eff⁻¹ D A⁻¹, rows (b_L, b_R), cols (a_L, a_R)
    Mat2 conv_phonon_to_photon;  // -A_eff⁻¹ C B⁻¹, rows (a_L, a_R), cols (b_L, b_R)
    cplx delta_A;
    cplx delta_B;
    cplx delta_A_eff;
    cplx delta_B_eff;
};

namespace detail {

inline void require_nondegenerate(cplx det, double scale, const char* name) {
    if (!(std::abs(det) >= kDegenerateRelTol * scale) || scale == 0.0)
        throw DegenerateBlock(std::string(name) + " vanishes (undamped resonance)");
}

} // namespace detail

// Δ_A = χ_aR⁻¹ χ_aL⁻¹ + J²
inline cplx optical_determinant(const Susceptibilities& chi, double J) {
    return chi.chi_aR_inv * chi.chi_aL_inv + J * J;
}

// Δ_B = χ_bR⁻¹ χ_bL⁻¹ + V²
inline cplx mechanical_determinant(const Susceptibilities& chi, double V) {
    return chi.chi_bR_inv * chi.chi_bL_inv + V * V;
}

// All four blocks of M⁻¹ from the closed-form Schur-complement expressions.
inline EffectiveBlocks effective_blocks(const SystemParams& p, double omega) {
    const Susceptibilities chi = susceptibilities(p, omega);
    const cplx& xaL = chi.chi_aL_inv;
    const cplx& xaR = chi.chi_aR_inv;
    const cplx& xbL = chi.chi_bL_inv;
    const cplx& xbR = chi.chi_bR_inv;
    const double J = p.optical_hop;
    const double V = p.mechanical_hop;
    const double GL = p.left.enhanced_coupling;
    const double GR = p.right.enhanced_coupling;
    const cplx e_pos = std::polar(1.0, p.synthetic_flux());
    const cplx e_neg = std::conj(e_pos);

    EffectiveBlocks out;
    out.delta_A = optical_determinant(chi, J);
    out.delta_B = mechanical_determinant(chi, V);
    detail::require_nondegenerate(out.delta_A, std::abs(xaL) * std::abs(xaR) + J * J, "Delta_A");
    detail::require_nondegenerate(out.delta_B, std::abs(xbL) * std::abs(xbR) + V * V, "Delta_B");

    const cplx& dA = out.delta_A;
    const cplx& dB = out.delta_B;
    const double GG = GL * GR;

    // Optical block dressed by the mechanics.
    const cplx a11 = xaL + GL * GL * xbR / dB;
    const cplx a22 = xaR + GR * GR * xbL / dB;
    const cplx a_hop21 = J - V * GG * e_pos / dB;
    const cplx a_hop12 = J - V * GG * e_neg / dB;
    out.delta_A_eff = a11 * a22 + a_hop21 * a_hop12;
    detail::require_nondegenerate(out.delta_A_eff,
                                  std::abs(a11) * std::abs(a22) + std::abs(a_hop21) * std::abs(a_hop12), "Delta_Aeff");

    out.A_eff_inv(0, 0) = a22 / out.delta_A_eff;
    out.A_eff_inv(0, 1) = -I * a_hop12 / out.delta_A_eff;
    out.A_eff_inv(1, 0) = -I * a_hop21 / out.delta_A_eff;
    out.A_eff_inv(1, 1) = a11 / out.delta_A_eff;

    // Mechanical block dressed by the optics.
    const cplx b11 = xbL + GL * GL * xaR / dA;
    const cplx b22 = xbR + GR * GR * xaL / dA;
    const cplx b_hop12 = V - J * GG * e_pos / dA;
    const cplx b_hop21 = V - J * GG * e_neg / dA;
    out.delta_B_eff = b11 * b22 + b_hop12 * b_hop21;
    detail::require_nondegenerate(out.delta_B_eff,
                                  std::abs(b11) * std::abs(b22) + std::abs(b_hop12) * std::abs(b_hop21), "Delta_Beff");

    out.B_eff_inv(0, 0) = b22 / out.delta_B_eff;
    out.B_eff_inv(0, 1) = -I * b_hop12 / out.delta_B_eff;
    out.B_eff_inv(1, 0) = -I * b_hop21 / out.delta_B_eff;
    out.B_eff_inv(1, 1) = b11 / out.delta_B_eff;

    Mat2 A_inv;
    A_inv(0, 0) = xaR / dA;
    A_inv(0, 1) = -I * J / dA;
    A_inv(1, 0) = -I * J / dA;
    A_inv(1, 1) = xaL / dA;

    Mat2 B_inv;
    B_inv(0, 0) = xbR / dB;
    B_inv(0, 1) = -I * V / dB;
    B_inv(1, 0) = -I * V / dB;
    B_inv(1, 1) = xbL / dB;

    const double phi_L = p.left.optical.drive_phase;
    const double phi_R = p.right.optical.drive_phase;
    const Mat2 C = Mat2::diagonal({I * GL * std::polar(1.0, -phi_L), I * GR * std::polar(1.0, -phi_R)});
    const Mat2 D = Mat2::diagonal({I * GL * std::polar(1.0, phi_L), I * GR * std::polar(1.0, phi_R)});

    out.conv_photon_to_phonon = -(out.B_eff_inv * D * A_inv);
    out.conv_phonon_to_photon = -(out.A_eff_inv * C * B_inv);
    return out;
}

// Block layout of M⁻¹: [[A_eff⁻¹, -A_eff⁻¹CB⁻¹], [-B_eff⁻¹DA⁻¹, B_eff⁻¹]].
inline Mat4 assemble_inverse(const EffectiveBlocks& eb) {
    Mat4 out;
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) {
            out(r, c) = eb.A_eff_inv(r, c);
            out(r, c + 2) = eb.conv_phonon_to_photon(r, c);
            out(r + 2, c) = eb.conv_photon_to_phonon(r, c);
            out(r + 2, c + 2) = eb.B_eff_inv(r, c);
        }
    return out;
}

} // namespace optoflux
