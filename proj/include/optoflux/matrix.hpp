#pragma once

// Small fixed-size complex matrices. Row-major storage, value semantics.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace optoflux {

using cplx = std::complex<double>;

inline constexpr cplx I{0.0, 1.0};

template <std::size_t N>
struct SquareMatrix {
    std::array<cplx, N * N> data{};

    static constexpr std::size_t size = N;

    constexpr cplx& operator()(std::size_t r, std::size_t c) { return data[r * N + c]; }
    constexpr const cplx& operator()(std::size_t r, std::size_t c) const { return data[r * N + c]; }

    static SquareMatrix identity() {
        SquareMatrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    static SquareMatrix diagonal(const std::array<cplx, N>& d) {
        SquareMatrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
        return m;
    }

    double max_abs() const {
        double best = 0.0;
        for (const auto& z : data) best = std::max(best, std::abs(z));
        return best;
    }

    friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
        SquareMatrix out;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t k = 0; k < N; ++k) {
                const cplx ark = a(r, k);
                for (std::size_t c = 0; c < N; ++c) out(r, c) += ark * b(k, c);
            }
        return out;
    }

    friend SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) {
        SquareMatrix out;
        for (std::size_t i = 0; i < N * N; ++i) out.data[i] = a.data[i] - b.data[i];
        return out;
    }

    friend SquareMatrix operator-(const SquareMatrix& a) {
        SquareMatrix out;
        for (std::size_t i = 0; i < N * N; ++i) out.data[i] = -a.data[i];
        return out;
    }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;
};

using Mat2 = SquareMatrix<2>;
using Mat4 = SquareMatrix<4>;

inline cplx determinant(const Mat2& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

// Adjugate over a caller-supplied determinant.
inline Mat2 inverse_with_det(const Mat2& m, cplx det) {
    Mat2 out;
    out(0, 0) = m(1, 1) / det;
    out(0, 1) = -m(0, 1) / det;
    out(1, 0) = -m(1, 0) / det;
    out(1, 1) = m(0, 0) / det;
    return out;
}

template <std::size_t N>
double max_abs_diff(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
    return (a - b).max_abs();
}

} // namespace optoflux
