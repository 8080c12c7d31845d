#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "mcs/grid_field.hpp"
#include "mcs/solver.hpp"
#include "mcs/spectrum.hpp"

namespace mcs {

/// A Fourier mode with a complex amplitude; contributes Re(A e^{i(phi1 i + phi2 j)}).
struct ModeComponent {
    FourierMode mode;
    Complex amplitude;
};

/// Constant-coefficient periodic problem whose initial field is a finite sum of
/// Fourier modes, so the semi-discrete solution is known exactly: every mode
/// evolves as exp(t * lambda) with lambda the symbol of A0 + A1 + A2.
struct ManufacturedProblem {
    PdeCoefficients coeffs;
    GridSpec grid;
    std::vector<ModeComponent> modes;
    double final_time = 0.1;

    /// sin(2 pi x) sin(2 pi y) plus a (2, 1) cross mode on an m x m unit-square grid.
    static ManufacturedProblem standard(const PdeCoefficients& coeffs, std::size_t m) {
        ManufacturedProblem p;
        p.coeffs = coeffs;
        p.grid = {m, m, 1.0 / static_cast<double>(m), 1.0 / static_cast<double>(m), 0.0};
        // sin a sin b = (cos(a - b) - cos(a + b)) / 2
        p.modes = {{{1, m - 1}, {0.5, 0.0}}, {{1, 1}, {-0.5, 0.0}}, {{2, 1}, {0.3, 0.2}}};
        return p;
    }

    [[nodiscard]] GridField field_at(double t) const {
        GridField u(grid);
        const SchemeParams unit{1.0, 1.0};
        for (const ModeComponent& mc : modes) {
            const SpectralPoint sym = fourier_symbols(coeffs, grid, unit, mc.mode);
            const Complex lambda = sym.z0 + sym.z1 + sym.z2;
            const Complex amp = mc.amplitude * std::exp(lambda * t);
            const double phi1 = mc.mode.phi1(grid);
            const double phi2 = mc.mode.phi2(grid);
            for (std::size_t j = 0; j < grid.m2; ++j) {
                for (std::size_t i = 0; i < grid.m1; ++i) {
                    const double psi =
                        phi1 * static_cast<double>(i) + phi2 * static_cast<double>(j);
                    u(i, j) += (amp * std::polar(1.0, psi)).real();
                }
            }
        }
        return u;
    }
};

struct ConvergenceRow {
    double dt = 0.0;
    std::size_t steps = 0;
    double max_error = 0.0;
    /// log2(previous error / this error); NaN on the first row.
    double observed_order = std::numeric_limits<double>::quiet_NaN();
};

/// Integrates `problem` to its final time with base_steps * 2^l steps,
/// l = 0..levels-1, and measures the max-norm error against the exact
/// semi-discrete solution, which isolates the temporal error.
inline std::vector<ConvergenceRow> run_convergence_study(Scheme scheme, double theta,
                                                         const ManufacturedProblem& problem,
                                                         std::size_t base_steps,
                                                         std::size_t levels) {
    const GridField exact = problem.field_at(problem.final_time);
    const GridField initial = problem.field_at(0.0);

    std::vector<ConvergenceRow> rows;
    std::size_t steps = base_steps;
    for (std::size_t level = 0; level < levels; ++level, steps *= 2) {
        const double dt = problem.final_time / static_cast<double>(steps);
        const SplitOperators ops(problem.coeffs, problem.grid, SchemeParams{theta, dt});
        GridField u = initial;
        for (std::size_t n = 0; n < steps; ++n) u = step(scheme, ops, u);

        ConvergenceRow row{dt, steps, (u - exact).max_norm()};
        if (!rows.empty() && row.max_error > 0.0) {
            row.observed_order = std::log2(rows.back().max_error / row.max_error);
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace mcs
