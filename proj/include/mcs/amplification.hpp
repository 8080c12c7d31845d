#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>

#include "mcs/grid_field.hpp"
#include "mcs/solver.hpp"
#include "mcs/spectrum.hpp"
#include "mcs/stability.hpp"

namespace mcs {

/// cos and sin parts of the Fourier mode e^{i(phi1 i + phi2 j)} as real fields.
struct ModePair {
    GridField cos_part;
    GridField sin_part;

    static ModePair of(const GridSpec& grid, const FourierMode& mode) {
        ModePair m{GridField(grid), GridField(grid)};
        const double phi1 = mode.phi1(grid);
        const double phi2 = mode.phi2(grid);
        for (std::size_t j = 0; j < grid.m2; ++j) {
            for (std::size_t i = 0; i < grid.m1; ++i) {
                const double psi = phi1 * static_cast<double>(i) + phi2 * static_cast<double>(j);
                m.cos_part(i, j) = std::cos(psi);
                m.sin_part(i, j) = std::sin(psi);
            }
        }
        return m;
    }

    [[nodiscard]] Complex at(std::size_t i, std::size_t j) const {
        return {cos_part(i, j), sin_part(i, j)};
    }
};

/// One-step amplification of a Fourier mode measured on the grid.
struct MeasuredAmplification {
    Complex factor;       ///< mean over grid points of U_1(i,j) / U_0(i,j)
    double spread = 0.0;  ///< max over points of |U_1(i,j) - factor * U_0(i,j)|
};

/// Runs one step of `scheme` on the cos and sin parts of `mode` and recombines
/// them into the complex amplification factor. Linearity makes the real pair
/// equivalent to stepping the complex mode.
inline MeasuredAmplification measure_amplification(Scheme scheme, const SplitOperators& ops,
                                                   const FourierMode& mode) {
    mode.validate(ops.grid());
    const ModePair in = ModePair::of(ops.grid(), mode);
    const ModePair out{step(scheme, ops, in.cos_part), step(scheme, ops, in.sin_part)};
    const GridSpec& g = ops.grid();

    Complex sum{};
    for (std::size_t j = 0; j < g.m2; ++j) {
        for (std::size_t i = 0; i < g.m1; ++i) sum += out.at(i, j) / in.at(i, j);
    }
    MeasuredAmplification m{sum / static_cast<double>(g.size()), 0.0};
    for (std::size_t j = 0; j < g.m2; ++j) {
        for (std::size_t i = 0; i < g.m1; ++i) {
            m.spread = std::max(m.spread, std::abs(out.at(i, j) - m.factor * in.at(i, j)));
        }
    }
    return m;
}

/// Amplification predicted from the Fourier symbols: S_theta for MCS and
/// 1 + (z0+z)/p for Douglas.
inline Complex predicted_amplification(Scheme scheme, const SplitOperators& ops,
                                       const FourierMode& mode) {
    const SpectralPoint pt =
        fourier_symbols(ops.coefficients(), ops.grid(), ops.params(), mode);
    const double theta = ops.params().theta;
    return scheme == Scheme::mcs ? stability::eval_stability_function(theta, pt)
                                 : stability::eval_douglas_function(theta, pt);
}

}  // namespace mcs
