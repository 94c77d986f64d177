#pragma once

// Frequency spectra and (flux x frequency) maps of the isolation quantities.
// Every point is independent; work is split over threads into pre-assigned
// output slots, so results do not depend on the thread count.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "response.hpp"

namespace optoflux {

struct UniformGrid {
    double start = 0.0;
    double stop = 0.0;
    std::size_t points = 0;

    void validate(const char* what = "grid") const {
        if (!(start < stop)) throw InvalidParams(std::string(what) + ": start must be < stop");
        if (points < 2) throw InvalidParams(std::string(what) + ": points must be >= 2");
    }

    // Endpoints are exact, and grids symmetric about zero are exactly antisymmetric.
    double at(std::size_t i) const {
        const double n = static_cast<double>(points - 1);
        return (static_cast<double>(points - 1 - i) * start + static_cast<double>(i) * stop) / n;
    }

    std::vector<double> values() const {
        std::vector<double> out(points);
        for (std::size_t i = 0; i < points; ++i) out[i] = at(i);
        return out;
    }

    friend bool operator==(const UniformGrid&, const UniformGrid&) = default;
};

using FrequencyGrid = UniformGrid;  // angular frequency
using FluxGrid = UniformGrid;       // radians

inline FrequencyGrid default_frequency_grid() { return {from_hz(5.6e9), from_hz(6.1e9), 2001}; }
inline FluxGrid default_flux_grid() { return {-2.0 * std::numbers::pi, 2.0 * std::numbers::pi, 401}; }

// Runs fn(i) for i in [0, n). threads == 0 picks hardware concurrency.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(threads, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = n * w / workers;
        const std::size_t hi = n * (w + 1) / workers;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

// Isolation at one point; numerical degeneracies become NaN instead of throwing.
inline IsolationPoint isolation_or_sentinel(const SystemParams& p, Quantity q, double omega) {
    try {
        return isolation(p, q, omega);
    } catch (const NumericalDegeneracy&) {
        return {omega, std::numeric_limits<double>::quiet_NaN()};
    }
}

inline std::vector<IsolationPoint> spectrum(const SystemParams& p, Quantity q, const FrequencyGrid& grid,
                                            unsigned threads = 1) {
    grid.validate("frequency grid");
    std::vector<IsolationPoint> out(grid.points);
    parallel_for(grid.points, threads, [&](std::size_t i) { out[i] = isolation_or_sentinel(p, q, grid.at(i)); });
    return out;
}

struct FluxMap {
    std::vector<double> flux_axis;
    FrequencyGrid freq_axis;
    std::vector<double> values;  // row-major, row = flux, column = frequency
    Quantity quantity = Quantity::phonon;

    std::size_t rows() const noexcept { return flux_axis.size(); }
    std::size_t cols() const noexcept { return freq_axis.points; }
    double at(std::size_t row, std::size_t col) const { return values[row * cols() + col]; }
};

inline FluxMap flux_map(const SystemParams& p, Quantity q, const FluxGrid& flux_grid, const FrequencyGrid& freq_grid,
                        unsigned threads = 0) {
    flux_grid.validate("flux grid");
    freq_grid.validate("frequency grid");
    FluxMap map;
    map.flux_axis = flux_grid.values();
    map.freq_axis = freq_grid;
    map.quantity = q;
    map.values.assign(map.rows() * map.cols(), 0.0);
    parallel_for(map.rows(), threads, [&](std::size_t r) {
        const SystemParams pr = with_flux(p, map.flux_axis[r]);
        for (std::size_t c = 0; c < map.cols(); ++c)
            map.values[r * map.cols() + c] = isolation_or_sentinel(pr, q, freq_grid.at(c)).value_db;
    });
    return map;
}

// Largest finite-or-+inf value; NaN points are skipped. Returns index npos when all NaN.
inline std::size_t argmax_db(const std::vector<IsolationPoint>& pts) {
    std::size_t best = static_cast<std::size_t>(-1);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (std::isnan(pts[i].value_db)) continue;
        if (best == static_cast<std::size_t>(-1) || pts[i].value_db > pts[best].value_db) best = i;
    }
    return best;
}

} // namespace optoflux
