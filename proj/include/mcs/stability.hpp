#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "mcs/types.hpp"

/// Closed-form quantities of the MCS stability analysis: the stability
/// function S_theta(z0, z1, z2), the cone condition on scaled eigenvalues and
/// the auxiliary functions used to bound |S_theta|.
namespace mcs::stability {

/// |p| below this (relative to max(1, |z1||z2| theta^2)) counts as a pole.
inline constexpr double kPoleTolerance = 1e-14;

/// Slack used when asserting |S| <= 1 numerically.
inline constexpr double kStabilitySlack = 1e-12;

namespace detail {

inline Complex checked_p(double theta, const SpectralPoint& pt) {
    const Complex p = pt.p(theta);
    const double scale = std::max(1.0, std::abs(pt.z1) * std::abs(pt.z2) * theta * theta);
    if (!(std::abs(p) >= kPoleTolerance * scale)) {
        throw PoleError("stability function evaluated at a pole: |p| = " +
                        std::to_string(std::abs(p)));
    }
    return p;
}

}  // namespace detail

/// S_theta - 1 = (z0+z)/p + theta z0 (z0+z)/p^2 + (1/2-theta)(z0+z)^2/p^2,
/// kept separate so that |S|^2 - 1 = 2 Re(S-1) + |S-1|^2 can be formed
/// without cancellation near the origin.
inline Complex stability_increment(double theta, const SpectralPoint& pt) {
    const Complex p = detail::checked_p(theta, pt);
    const Complex s = pt.z0 + pt.z();
    const Complex p2 = p * p;
    return s / p + theta * pt.z0 * s / p2 + (0.5 - theta) * s * s / p2;
}

/// S_theta(z0, z1, z2), the factor by which one MCS step multiplies the
/// solution of U' = (lambda0 + lambda1 + lambda2) U with z_j = dt lambda_j.
/// Throws PoleError when p vanishes.
inline Complex eval_stability_function(double theta, const SpectralPoint& pt) {
    return 1.0 + stability_increment(theta, pt);
}

/// The same function written as (z0^2/2 + w z0 + q) / p^2.
inline Complex eval_stability_function_alt(double theta, const SpectralPoint& pt) {
    const Complex p = detail::checked_p(theta, pt);
    const Complex z0 = pt.z0;
    return (0.5 * z0 * z0 + pt.w(theta) * z0 + pt.q(theta)) / (p * p);
}

/// Amplification factor of the Douglas scheme, 1 + (z0+z)/p (the first two
/// terms of S_theta).
inline Complex eval_douglas_function(double theta, const SpectralPoint& pt) {
    const Complex p = detail::checked_p(theta, pt);
    return 1.0 + (pt.z0 + pt.z()) / p;
}

/// Re z1 <= 0, Re z2 <= 0 and |z0| <= 2 sqrt(Re z1 Re z2), each right-hand
/// side widened by `slack`.
inline bool cone_condition(const SpectralPoint& pt, double slack = 0.0) {
    const double r1 = pt.z1.real();
    const double r2 = pt.z2.real();
    if (r1 > slack || r2 > slack) {
        return false;
    }
    const double bound = 2.0 * std::sqrt(std::max(0.0, r1 * r2));
    return std::abs(pt.z0) <= bound + slack;
}

/// 2 sqrt(Re z1 Re z2) - |z0|; nonnegative inside the cone.
inline double cone_margin(const SpectralPoint& pt) {
    return 2.0 * std::sqrt(std::max(0.0, pt.z1.real() * pt.z2.real())) - std::abs(pt.z0);
}

/// |p/(2 theta)| - |p/(2 theta) + z| - 2 sqrt(Re z1 Re z2), which is
/// nonnegative whenever Re z1, Re z2 <= 0.
///
/// The difference of moduli is formed as (|A|^2 - |A+z|^2) / (|A| + |A+z|)
/// with the numerator simplified symbolically to
/// -Re z / theta - theta Re(conj(z1 z2) z), so no large terms cancel.
inline double lemma2_gap(double theta, Complex z1, Complex z2) {
    if (!(theta > 0.0)) {
        throw DomainError("lemma2_gap requires theta > 0");
    }
    if (z1.real() > 0.0 || z2.real() > 0.0) {
        throw DomainError("lemma2_gap requires Re z1 <= 0 and Re z2 <= 0");
    }
    const Complex z = z1 + z2;
    const Complex a = (1.0 - theta * z1) * (1.0 - theta * z2) / (2.0 * theta);
    const double numerator = -z.real() / theta - theta * (std::conj(z1 * z2) * z).real();
    const double denominator = std::abs(a) + std::abs(a + z);
    const double modulus_gap = denominator > 0.0 ? numerator / denominator : 0.0;
    return modulus_gap - 2.0 * std::sqrt(z1.real() * z2.real());
}

/// f1(phi, r) = |2 theta + (1-theta)(r e^{i phi} - 1)|
inline double thm5_f1(double theta, double r, double phi) {
    const Complex e = std::polar(r, phi) - 1.0;
    return std::abs(2.0 * theta + (1.0 - theta) * e);
}

/// f2(phi, r) = |8 theta^2 + 4 theta (r e^{i phi} - 1) + (1 - 2 theta)(r e^{i phi} - 1)^2|
inline double thm5_f2(double theta, double r, double phi) {
    const Complex e = std::polar(r, phi) - 1.0;
    return std::abs(8.0 * theta * theta + 4.0 * theta * e + (1.0 - 2.0 * theta) * e * e);
}

/// Upper bound on |S_theta| parametrised by 1 + 2 theta z/p = r e^{i phi}:
/// ((1-r)^2 + 2(1-r) f1 + f2) / (8 theta^2).
inline double thm5_bound(double theta, double r, double phi) {
    if (!(theta > 0.0)) {
        throw DomainError("thm5_bound requires theta > 0");
    }
    if (!(r >= 0.0 && r <= 1.0)) {
        throw DomainError("thm5_bound requires 0 <= r <= 1");
    }
    const double s = 1.0 - r;
    return (s * s + 2.0 * s * thm5_f1(theta, r, phi) + thm5_f2(theta, r, phi)) /
           (8.0 * theta * theta);
}

/// ab + bc + 4ac, nonnegative whenever |a+b+c| = 1 and the quadratic
/// a zeta^2 + b zeta + c maps the unit circle into the unit disc.
inline double lemma1_margin(double a, double b, double c) {
    return a * b + b * c + 4.0 * a * c;
}

/// f(phi) = |a e^{2 i phi} + b e^{i phi} + c|^2
inline double lemma1_f(double a, double b, double c, double phi) {
    const Complex v = a * std::polar(1.0, 2.0 * phi) + b * std::polar(1.0, phi) + c;
    return std::norm(v);
}

}  // namespace mcs::stability
