#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "mcs/cyclic_tridiagonal.hpp"
#include "mcs/grid_field.hpp"
#include "mcs/spectrum.hpp"
#include "mcs/types.hpp"

namespace mcs {

/// Which part of the split operator F = A0 + A1 + A2.
enum class Part : int {
    mixed = 0,  ///< A0, the u_xy stencil
    x = 1,      ///< A1, u_xx and u_x
    y = 2,      ///< A2, u_yy and u_y
};

/// Three-point line stencil w_minus * u[k-1] + w_center * u[k] + w_plus * u[k+1].
struct LineStencil {
    double minus = 0.0;
    double center = 0.0;
    double plus = 0.0;

    /// d u'' + c u' with central differences of width h.
    static LineStencil convection_diffusion(double d, double c, double h) {
        const double diff = d / (h * h);
        const double conv = c / (2.0 * h);
        return {diff - conv, -2.0 * diff, diff + conv};
    }
};

/// 9-point mixed-derivative stencil (d12+d21) u_xy, weights indexed by offsets
/// (di, dj) in {-1, 0, 1}^2.
struct MixedStencil {
    double w[3][3] = {};

    [[nodiscard]] double at(int di, int dj) const { return w[di + 1][dj + 1]; }

    static MixedStencil from(double mixed_coefficient, const GridSpec& grid) {
        const double g = mixed_coefficient / (4.0 * grid.dx * grid.dy);
        const double beta = grid.beta;
        MixedStencil s;
        s.w[2][2] = g * (1.0 + beta);
        s.w[0][0] = g * (1.0 + beta);
        s.w[0][2] = -g * (1.0 - beta);
        s.w[2][0] = -g * (1.0 - beta);
        s.w[1][1] = 4.0 * beta * g;
        s.w[2][1] = s.w[0][1] = s.w[1][2] = s.w[1][0] = -2.0 * beta * g;
        return s;
    }
};

/// The finite-difference split operators A0, A1, A2 on a periodic grid plus
/// the factorised line systems (I - theta dt A1) and (I - theta dt A2).
class SplitOperators {
public:
    SplitOperators(const PdeCoefficients& coeffs, const GridSpec& grid,
                   const SchemeParams& params)
        : coeffs_((coeffs.validate(), coeffs)),
          grid_((grid.validate(), grid)),
          params_((params.validate(), params)),
          mixed_(MixedStencil::from(coeffs.mixed(), grid)),
          line_x_(LineStencil::convection_diffusion(coeffs.d11, coeffs.c1, grid.dx)),
          line_y_(LineStencil::convection_diffusion(coeffs.d22, coeffs.c2, grid.dy)),
          solver_x_(make_line_solver(line_x_, grid.m1, params.theta * params.dt)),
          solver_y_(make_line_solver(line_y_, grid.m2, params.theta * params.dt)) {}

    [[nodiscard]] const PdeCoefficients& coefficients() const { return coeffs_; }
    [[nodiscard]] const GridSpec& grid() const { return grid_; }
    [[nodiscard]] const SchemeParams& params() const { return params_; }
    [[nodiscard]] const MixedStencil& mixed_stencil() const { return mixed_; }
    [[nodiscard]] const LineStencil& line_stencil(Part part) const {
        return part == Part::x ? line_x_ : line_y_;
    }

    /// Factorised (I - theta dt A_part) for part x or y.
    [[nodiscard]] const CyclicTridiagonal& line_solver(Part part) const {
        if (part == Part::mixed) throw std::invalid_argument("A0 has no implicit line solver");
        return part == Part::x ? solver_x_ : solver_y_;
    }

    static CyclicTridiagonal make_line_solver(const LineStencil& s, std::size_t n,
                                              double theta_dt) {
        return CyclicTridiagonal(n, -theta_dt * s.minus, 1.0 - theta_dt * s.center,
                                 -theta_dt * s.plus);
    }

private:
    PdeCoefficients coeffs_;
    GridSpec grid_;
    SchemeParams params_;
    MixedStencil mixed_;
    LineStencil line_x_;
    LineStencil line_y_;
    CyclicTridiagonal solver_x_;
    CyclicTridiagonal solver_y_;
};

namespace detail {

inline void require_shape(const SplitOperators& ops, const GridField& field) {
    if (!field.matches(ops.grid())) {
        throw std::invalid_argument("grid field does not match the operator grid");
    }
}

inline std::size_t wrap_prev(std::size_t k, std::size_t n) { return k == 0 ? n - 1 : k - 1; }
inline std::size_t wrap_next(std::size_t k, std::size_t n) { return k + 1 == n ? 0 : k + 1; }

}  // namespace detail

/// out = A_part * field with periodic wrap-around.
inline void apply_split_operator(const SplitOperators& ops, Part part, const GridField& field,
                                 GridField& out) {
    detail::require_shape(ops, field);
    const std::size_t m1 = field.m1();
    const std::size_t m2 = field.m2();
    if (!out.same_shape(field)) out = GridField(m1, m2);

    for (std::size_t j = 0; j < m2; ++j) {
        const std::size_t jm = detail::wrap_prev(j, m2);
        const std::size_t jp = detail::wrap_next(j, m2);
        for (std::size_t i = 0; i < m1; ++i) {
            const std::size_t im = detail::wrap_prev(i, m1);
            const std::size_t ip = detail::wrap_next(i, m1);
            double v = 0.0;
            switch (part) {
                case Part::x: {
                    const LineStencil& s = ops.line_stencil(Part::x);
                    v = s.minus * field(im, j) + s.center * field(i, j) + s.plus * field(ip, j);
                    break;
                }
                case Part::y: {
                    const LineStencil& s = ops.line_stencil(Part::y);
                    v = s.minus * field(i, jm) + s.center * field(i, j) + s.plus * field(i, jp);
                    break;
                }
                case Part::mixed: {
                    const MixedStencil& s = ops.mixed_stencil();
                    v = s.at(1, 1) * field(ip, jp) + s.at(-1, -1) * field(im, jm) +
                        s.at(-1, 1) * field(im, jp) + s.at(1, -1) * field(ip, jm) +
                        s.at(0, 0) * field(i, j) + s.at(1, 0) * field(ip, j) +
                        s.at(-1, 0) * field(im, j) + s.at(0, 1) * field(i, jp) +
                        s.at(0, -1) * field(i, jm);
                    break;
                }
            }
            out(i, j) = v;
        }
    }
}

inline GridField apply_split_operator(const SplitOperators& ops, Part part,
                                      const GridField& field) {
    GridField out(field.m1(), field.m2());
    apply_split_operator(ops, part, field, out);
    return out;
}

/// Full operator F = A0 + A1 + A2 applied as one merged 9-point stencil.
inline GridField apply_full_operator(const SplitOperators& ops, const GridField& field) {
    detail::require_shape(ops, field);
    double w[3][3];
    const MixedStencil& mixed = ops.mixed_stencil();
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) w[a][b] = mixed.w[a][b];
    }
    const LineStencil& sx = ops.line_stencil(Part::x);
    const LineStencil& sy = ops.line_stencil(Part::y);
    w[0][1] += sx.minus;
    w[2][1] += sx.plus;
    w[1][0] += sy.minus;
    w[1][2] += sy.plus;
    w[1][1] += sx.center + sy.center;

    const std::size_t m1 = field.m1();
    const std::size_t m2 = field.m2();
    GridField out(m1, m2);
    for (std::size_t j = 0; j < m2; ++j) {
        const std::size_t js[3] = {detail::wrap_prev(j, m2), j, detail::wrap_next(j, m2)};
        for (std::size_t i = 0; i < m1; ++i) {
            const std::size_t is[3] = {detail::wrap_prev(i, m1), i, detail::wrap_next(i, m1)};
            double v = 0.0;
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b) v += w[a][b] * field(is[a], js[b]);
            }
            out(i, j) = v;
        }
    }
    return out;
}

namespace detail {

inline void solve_lines(const CyclicTridiagonal& solver, Part part, GridField& field) {
    const std::size_t m1 = field.m1();
    const std::size_t m2 = field.m2();
    std::span<double> values = field.values();
    if (part == Part::x) {
        for (std::size_t j = 0; j < m2; ++j) solver.solve(values.subspan(j * m1, m1));
        return;
    }
    std::vector<double> line(m2);
    for (std::size_t i = 0; i < m1; ++i) {
        for (std::size_t j = 0; j < m2; ++j) line[j] = values[i + m1 * j];
        solver.solve(line);
        for (std::size_t j = 0; j < m2; ++j) values[i + m1 * j] = line[j];
    }
}

}  // namespace detail

/// Solves (I - theta_dt * A_part) x = rhs, one periodic tridiagonal system per
/// grid line. Uses the precomputed factorisation when theta_dt matches the
/// operator's theta * dt.
inline GridField solve_directional(const SplitOperators& ops, Part part, double theta_dt,
                                   const GridField& rhs) {
    detail::require_shape(ops, rhs);
    if (part == Part::mixed) {
        throw std::invalid_argument("solve_directional applies to the x and y parts only");
    }
    GridField x = rhs;
    if (theta_dt == 0.0) return x;
    if (theta_dt == ops.params().theta * ops.params().dt) {
        detail::solve_lines(ops.line_solver(part), part, x);
    } else {
        const std::size_t n = part == Part::x ? ops.grid().m1 : ops.grid().m2;
        const CyclicTridiagonal solver =
            SplitOperators::make_line_solver(ops.line_stencil(part), n, theta_dt);
        detail::solve_lines(solver, part, x);
    }
    return x;
}

namespace detail {

struct PredictorStages {
    GridField y0;
    GridField y2;
    GridField a1_prev;  // A1 U_{n-1}
    GridField a2_prev;  // A2 U_{n-1}
};

// Y0 = U + dt F(U); Y_j = Y_{j-1} + theta dt A_j (Y_j - U), j = 1, 2.
inline PredictorStages predictor(const SplitOperators& ops, const GridField& u_prev) {
    const double dt = ops.params().dt;
    const double theta_dt = ops.params().theta * dt;

    PredictorStages st;
    st.a1_prev = apply_split_operator(ops, Part::x, u_prev);
    st.a2_prev = apply_split_operator(ops, Part::y, u_prev);
    const GridField a0_prev = apply_split_operator(ops, Part::mixed, u_prev);

    st.y0 = u_prev;
    st.y0.axpy(dt, a0_prev).axpy(dt, st.a1_prev).axpy(dt, st.a2_prev);

    GridField rhs = st.y0;
    rhs.axpy(-theta_dt, st.a1_prev);
    const GridField y1 = solve_directional(ops, Part::x, theta_dt, rhs);

    rhs = y1;
    rhs.axpy(-theta_dt, st.a2_prev);
    st.y2 = solve_directional(ops, Part::y, theta_dt, rhs);
    return st;
}

}  // namespace detail

/// One Douglas step: the predictor Y0 and the implicit corrections Y1, Y2.
inline GridField step_douglas(const SplitOperators& ops, const GridField& u_prev) {
    detail::require_shape(ops, u_prev);
    return detail::predictor(ops, u_prev).y2;
}

/// One Modified Craig-Sneyd step. The operators are time independent, so each
/// F_j(t_n, Y) - F_j(t_{n-1}, U) is evaluated as A_j (Y - U).
inline GridField step_mcs(const SplitOperators& ops, const GridField& u_prev) {
    detail::require_shape(ops, u_prev);
    const double theta = ops.params().theta;
    const double dt = ops.params().dt;
    const double theta_dt = theta * dt;

    detail::PredictorStages st = detail::predictor(ops, u_prev);

    const GridField delta = st.y2 - u_prev;
    const GridField a0_delta = apply_split_operator(ops, Part::mixed, delta);
    const GridField a1_delta = apply_split_operator(ops, Part::x, delta);
    const GridField a2_delta = apply_split_operator(ops, Part::y, delta);

    // Y^_0 = Y0 + theta dt A0 (Y2 - U)
    GridField y_tilde = std::move(st.y0);
    y_tilde.axpy(theta_dt, a0_delta);
    // Y~_0 = Y^_0 + (1/2 - theta) dt F(Y2 - U)
    const double half_weight = (0.5 - theta) * dt;
    y_tilde.axpy(half_weight, a0_delta).axpy(half_weight, a1_delta).axpy(half_weight, a2_delta);

    GridField rhs = std::move(y_tilde);
    rhs.axpy(-theta_dt, st.a1_prev);
    GridField stage = solve_directional(ops, Part::x, theta_dt, rhs);

    stage.axpy(-theta_dt, st.a2_prev);
    return solve_directional(ops, Part::y, theta_dt, stage);
}

/// Supported time-stepping schemes.
enum class Scheme { mcs, douglas };

inline GridField step(Scheme scheme, const SplitOperators& ops, const GridField& u_prev) {
    return scheme == Scheme::mcs ? step_mcs(ops, u_prev) : step_douglas(ops, u_prev);
}

}  // namespace mcs
