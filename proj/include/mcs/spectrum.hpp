#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>

#include "mcs/stability.hpp"
#include "mcs/types.hpp"

namespace mcs {

/// Convection vector c and diffusion matrix D of
/// u_t = d11 u_xx + (d12+d21) u_xy + d22 u_yy + c1 u_x + c2 u_y.
struct PdeCoefficients {
    double c1 = 0.0;
    double c2 = 0.0;
    double d11 = 0.0;
    double d12 = 0.0;
    double d21 = 0.0;
    double d22 = 0.0;

    [[nodiscard]] double mixed() const { return d12 + d21; }

    /// Positive semi-definiteness of the symmetric part of D, with a
    /// tolerance relative to the size of the entries.
    [[nodiscard]] bool is_positive_semidefinite() const {
        const double scale = std::max({1.0, std::abs(d11), std::abs(d22), std::abs(mixed())});
        const double eps = 1e-12 * scale;
        const double det = 4.0 * d11 * d22 - mixed() * mixed();
        return d11 >= -eps && d22 >= -eps && det >= -eps * scale;
    }

    void validate() const {
        for (double v : {c1, c2, d11, d12, d21, d22}) {
            if (!std::isfinite(v)) {
                throw DomainError("PDE coefficients must be finite");
            }
        }
        if (!is_positive_semidefinite()) {
            throw DomainError("diffusion matrix is not positive semi-definite");
        }
    }
};

/// Periodic Cartesian grid with m1 x m2 points and the mixed-stencil weight beta.
struct GridSpec {
    std::size_t m1 = 3;
    std::size_t m2 = 3;
    double dx = 1.0;
    double dy = 1.0;
    double beta = 0.0;

    [[nodiscard]] std::size_t size() const { return m1 * m2; }

    void validate() const {
        if (m1 < 3 || m2 < 3) {
            throw DomainError("grid needs at least 3 points per direction");
        }
        if (!(dx > 0.0) || !(dy > 0.0) || !std::isfinite(dx) || !std::isfinite(dy)) {
            throw DomainError("mesh widths must be positive");
        }
        if (!(beta >= -1.0 && beta <= 1.0)) {
            throw DomainError("beta must lie in [-1, 1]");
        }
    }
};

/// Mesh ratios a1 = dt/dx^2, a2 = dt/dy^2, b = dt/(dx dy), q1 = dt/dx, q2 = dt/dy.
struct MeshRatios {
    double a1;
    double a2;
    double b;
    double q1;
    double q2;

    static MeshRatios from(const GridSpec& grid, double dt) {
        return {dt / (grid.dx * grid.dx), dt / (grid.dy * grid.dy), dt / (grid.dx * grid.dy),
                dt / grid.dx, dt / grid.dy};
    }
};

/// Discrete Fourier mode with angles phi_j = 2 pi k_j / m_j.
struct FourierMode {
    std::size_t k1 = 0;
    std::size_t k2 = 0;

    [[nodiscard]] double phi1(const GridSpec& grid) const {
        return 2.0 * std::numbers::pi * static_cast<double>(k1) / static_cast<double>(grid.m1);
    }
    [[nodiscard]] double phi2(const GridSpec& grid) const {
        return 2.0 * std::numbers::pi * static_cast<double>(k2) / static_cast<double>(grid.m2);
    }

    void validate(const GridSpec& grid) const {
        if (k1 >= grid.m1 || k2 >= grid.m2) {
            throw DomainError("Fourier mode index out of range");
        }
    }

    friend bool operator==(const FourierMode&, const FourierMode&) = default;
};

/// Scaled eigenvalues z_j = dt * lambda_j of the split finite-difference
/// operators A0, A1, A2 on the given Fourier mode. z0 is real by construction.
inline SpectralPoint fourier_symbols(const PdeCoefficients& coeffs, const GridSpec& grid,
                                     const SchemeParams& params, const FourierMode& mode) {
    const MeshRatios r = MeshRatios::from(grid, params.dt);
    const double phi1 = mode.phi1(grid);
    const double phi2 = mode.phi2(grid);
    const double s1 = std::sin(phi1);
    const double s2 = std::sin(phi2);
    const double one_minus_c1 = 1.0 - std::cos(phi1);
    const double one_minus_c2 = 1.0 - std::cos(phi2);

    SpectralPoint pt;
    pt.z0 = {coeffs.mixed() * r.b * (-s1 * s2 + grid.beta * one_minus_c1 * one_minus_c2), 0.0};
    pt.z1 = {-2.0 * coeffs.d11 * r.a1 * one_minus_c1, coeffs.c1 * r.q1 * s1};
    pt.z2 = {-2.0 * coeffs.d22 * r.a2 * one_minus_c2, coeffs.c2 * r.q2 * s2};
    return pt;
}

/// Outcome of scanning the cone condition over every Fourier mode of a grid.
struct ConeReport {
    /// min over all modes of 2 sqrt(Re z1 Re z2) - |z0|
    double worst_margin = std::numeric_limits<double>::infinity();
    FourierMode worst_mode{};
    /// same minimum restricted to modes other than (0, 0)
    double worst_nontrivial_margin = std::numeric_limits<double>::infinity();
    FourierMode worst_nontrivial_mode{};
    /// largest Re z_j seen (must stay <= 0)
    double max_real_part = -std::numeric_limits<double>::infinity();
};

/// Evaluates the cone margin for all m1*m2 modes. Ties resolve to the
/// lexicographically smallest (k1, k2) because modes are visited in that order
/// and only strict improvements replace the incumbent.
inline ConeReport verify_cone_all_modes(const PdeCoefficients& coeffs, const GridSpec& grid,
                                        const SchemeParams& params) {
    grid.validate();
    ConeReport report;
    for (std::size_t k1 = 0; k1 < grid.m1; ++k1) {
        for (std::size_t k2 = 0; k2 < grid.m2; ++k2) {
            const FourierMode mode{k1, k2};
            const SpectralPoint pt = fourier_symbols(coeffs, grid, params, mode);
            const double margin = stability::cone_margin(pt);
            report.max_real_part =
                std::max({report.max_real_part, pt.z1.real(), pt.z2.real()});
            if (margin < report.worst_margin) {
                report.worst_margin = margin;
                report.worst_mode = mode;
            }
            if ((k1 != 0 || k2 != 0) && margin < report.worst_nontrivial_margin) {
                report.worst_nontrivial_margin = margin;
                report.worst_nontrivial_mode = mode;
            }
        }
    }
    return report;
}

}  // namespace mcs
