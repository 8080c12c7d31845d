#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "mcs/counter_rng.hpp"
#include "mcs/parallel.hpp"
#include "mcs/stability.hpp"
#include "mcs/types.hpp"

/// Numerical experiments around the MCS stability function: the Monte-Carlo
/// estimate of max |S_theta| under the cone condition with real z0, and grid or
/// expansion based checks of the theta thresholds 1/4, 1/3, 2/5, 5/12 and of
/// the bound for 1/2 <= theta <= 1.
namespace mcs::analysis {

/// Largest |S| found in a search, where it was found, and for random scans the
/// sample index (the smallest index wins ties).
struct Extremum {
    double value = -std::numeric_limits<double>::infinity();
    SpectralPoint witness{};
    std::uint64_t index = std::numeric_limits<std::uint64_t>::max();

    void offer(double v, const SpectralPoint& pt, std::uint64_t idx) {
        if (v > value || (v == value && idx < index)) {
            value = v;
            witness = pt;
            index = idx;
        }
    }
    void merge(const Extremum& other) { offer(other.value, other.witness, other.index); }
};

// ---------------------------------------------------------------------------
// Random sampling
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr std::size_t kDefaultFigure1Samples = 2'000'000;
inline constexpr std::size_t kSampleBlock = 1 << 15;

/// z_j = -10^{1-5 r1j} +/- i 10^{1-5 r2j} (j = 1, 2) and
/// z0 = (2 r10 - 1) * 2 sqrt(Re z1 Re z2); draws 5 uniforms and 2 sign bits.
/// Real z0, and the cone condition holds by construction.
inline SpectralPoint figure1_sample(const CounterRng& rng) {
    auto component = [&](std::uint64_t base) {
        const double re = -std::pow(10.0, 1.0 - 5.0 * rng.uniform(base));
        const double im = rng.sign(base + 2) * std::pow(10.0, 1.0 - 5.0 * rng.uniform(base + 1));
        return Complex{re, im};
    };
    SpectralPoint pt;
    pt.z1 = component(0);
    pt.z2 = component(3);
    const double bound = 2.0 * std::sqrt(pt.z1.real() * pt.z2.real());
    pt.z0 = {(2.0 * rng.uniform(6) - 1.0) * bound, 0.0};
    return pt;
}

/// figure1_sample with z0 rotated by a uniform random phase, giving complex z0
/// inside the cone.
inline SpectralPoint complex_cone_sample(const CounterRng& rng) {
    SpectralPoint pt = figure1_sample(rng);
    pt.z0 *= std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform(7));
    return pt;
}

/// theta_k = min + k * step for k = 0 .. round((max - min) / step).
inline std::vector<double> theta_grid(double min, double max, double step) {
    if (!(step > 0.0) || !(max >= min)) {
        throw DomainError("theta grid needs step > 0 and max >= min");
    }
    const auto count = static_cast<std::size_t>(std::llround((max - min) / step)) + 1;
    std::vector<double> grid(count);
    for (std::size_t k = 0; k < count; ++k) grid[k] = min + static_cast<double>(k) * step;
    return grid;
}

/// theta = 1/4 + k/400, k = 0..100.
inline std::vector<double> default_figure1_grid() { return theta_grid(0.25, 0.5, 0.0025); }

/// Result of figure1_scan; the lists are indexed by theta.
struct ScanReport {
    std::vector<double> theta_grid;
    std::vector<double> max_abs_s;
    std::vector<SpectralPoint> witness;
    std::vector<std::uint64_t> witness_sample;
    std::size_t samples_per_theta = 0;
    std::uint64_t seed = 0;
};

/// For each theta, the maximum of |S_theta| over `samples` random triplets
/// drawn by figure1_sample. Sample s of theta index k uses the stream
/// (seed, k, s), so the report does not depend on `threads`.
inline ScanReport figure1_scan(std::uint64_t seed, std::size_t samples,
                               const std::vector<double>& thetas,
                               std::size_t threads = default_thread_count()) {
    if (samples == 0) throw DomainError("figure1_scan needs at least one sample");
    for (double t : thetas) {
        if (!(t > 0.0)) throw DomainError("figure1_scan needs positive theta values");
    }
    const std::size_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
    std::vector<Extremum> partial(thetas.size() * blocks);

    parallel_for(partial.size(), threads, [&](std::size_t task) {
        const std::size_t k = task / blocks;
        const std::size_t block = task % blocks;
        const double theta = thetas[k];
        const std::size_t first = block * kSampleBlock;
        const std::size_t last = std::min(samples, first + kSampleBlock);
        Extremum best;
        for (std::size_t s = first; s < last; ++s) {
            const SpectralPoint pt = figure1_sample(CounterRng::stream(seed, k, s));
            best.offer(std::abs(stability::eval_stability_function(theta, pt)), pt, s);
        }
        partial[task] = best;
    });

    ScanReport report;
    report.theta_grid = thetas;
    report.samples_per_theta = samples;
    report.seed = seed;
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        Extremum best;
        for (std::size_t b = 0; b < blocks; ++b) best.merge(partial[k * blocks + b]);
        report.max_abs_s.push_back(best.value);
        report.witness.push_back(best.witness);
        report.witness_sample.push_back(best.index);
    }
    return report;
}

/// Max |S_theta| over random complex-z0 cone triplets (complex_cone_sample).
inline Extremum random_cone_scan(double theta, std::size_t samples, std::uint64_t seed,
                                 std::size_t threads = default_thread_count()) {
    const std::size_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
    std::vector<Extremum> partial(blocks);
    parallel_for(blocks, threads, [&](std::size_t block) {
        const std::size_t first = block * kSampleBlock;
        const std::size_t last = std::min(samples, first + kSampleBlock);
        Extremum best;
        for (std::size_t s = first; s < last; ++s) {
            const SpectralPoint pt = complex_cone_sample(CounterRng::stream(seed, 0, s));
            best.offer(std::abs(stability::eval_stability_function(theta, pt)), pt, s);
        }
        partial[block] = best;
    });
    Extremum best;
    for (const Extremum& e : partial) best.merge(e);
    return best;
}

/// Smallest lemma2_gap over random theta in (0, 1] and z1, z2 drawn as in
/// figure1_sample. The witness stores (0, z1, z2); its theta is returned
/// separately.
struct Lemma2Scan {
    double min_gap = std::numeric_limits<double>::infinity();
    double theta = 0.0;
    SpectralPoint witness{};
};

inline Lemma2Scan lemma2_random_scan(std::size_t samples, std::uint64_t seed,
                                     std::size_t threads = default_thread_count()) {
    const std::size_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
    std::vector<Lemma2Scan> partial(blocks);
    parallel_for(blocks, threads, [&](std::size_t block) {
        const std::size_t first = block * kSampleBlock;
        const std::size_t last = std::min(samples, first + kSampleBlock);
        Lemma2Scan worst;
        for (std::size_t s = first; s < last; ++s) {
            const CounterRng rng = CounterRng::stream(seed, 1, s);
            SpectralPoint pt = figure1_sample(rng);
            pt.z0 = 0.0;
            const double theta = 1.0 - rng.uniform(8);  // (0, 1]
            const double gap = stability::lemma2_gap(theta, pt.z1, pt.z2);
            if (gap < worst.min_gap) worst = {gap, theta, pt};
        }
        partial[block] = worst;
    });
    Lemma2Scan worst;
    for (const Lemma2Scan& w : partial) {
        if (w.min_gap < worst.min_gap) worst = w;
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Boundary grids: purely imaginary (z0 = 0) and real cone triplets
// ---------------------------------------------------------------------------

/// 10^{lo + k/per_decade} for k = 0 .. (hi - lo) * per_decade.
inline std::vector<double> log_spaced(int lo_exponent, int hi_exponent, int per_decade) {
    const int count = (hi_exponent - lo_exponent) * per_decade + 1;
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        v[static_cast<std::size_t>(k)] =
            std::pow(10.0, lo_exponent + static_cast<double>(k) / per_decade);
    }
    return v;
}

/// -v reversed, 0, v: a symmetric axis through the origin.
inline std::vector<double> signed_axis(const std::vector<double>& magnitudes) {
    std::vector<double> axis;
    axis.reserve(2 * magnitudes.size() + 1);
    for (auto it = magnitudes.rbegin(); it != magnitudes.rend(); ++it) axis.push_back(-*it);
    axis.push_back(0.0);
    axis.insert(axis.end(), magnitudes.begin(), magnitudes.end());
    return axis;
}

inline constexpr int kBoundaryPointsPerDecade = 200;

/// theta^2 - |theta^2 - 2 theta + 1/2|; nonnegative exactly when
/// |S_theta(0, z1, z2)| <= 1 on the closed left half-planes.
inline double thm1_criterion_margin(double theta) {
    return theta * theta - std::abs(theta * theta - 2.0 * theta + 0.5);
}

struct Thm1Result {
    double theta = 0.0;
    double criterion_margin = 0.0;
    Extremum grid_max;
};

/// max |S_theta(0, i b1, i b2)| over b1, b2 in +-[1e-3, 1e3] (log spaced, 200
/// per decade) and 0. The imaginary axes are the boundary of the region
/// Re z1, Re z2 <= 0, where the maximum is attained.
inline std::vector<Thm1Result> thm1_threshold_scan(const std::vector<double>& thetas,
                                                   std::size_t threads = default_thread_count()) {
    const std::vector<double> axis = signed_axis(log_spaced(-3, 3, kBoundaryPointsPerDecade));
    std::vector<Thm1Result> results;
    for (double theta : thetas) {
        std::vector<Extremum> rows(axis.size());
        parallel_for(axis.size(), threads, [&](std::size_t r) {
            Extremum best;
            for (std::size_t c = 0; c < axis.size(); ++c) {
                const SpectralPoint pt{0.0, {0.0, axis[r]}, {0.0, axis[c]}};
                best.offer(std::abs(stability::eval_stability_function(theta, pt)), pt,
                           r * axis.size() + c);
            }
            rows[r] = best;
        });
        Thm1Result res{theta, thm1_criterion_margin(theta), {}};
        for (const Extremum& e : rows) res.grid_max.merge(e);
        results.push_back(res);
    }
    return results;
}

inline constexpr int kThm2ConeFractions = 41;

/// max |S_theta| over real cone triplets: z1, z2 in {0} U -[1e-3, 1e3] (log
/// spaced, 200 per decade) and z0 = t * 2 sqrt(z1 z2) for 41 values of t
/// evenly spaced in [-1, 1] (t = +-1 are the sharp cone edges).
inline Extremum thm2_real_cone_scan(double theta, std::size_t threads = default_thread_count()) {
    std::vector<double> axis{0.0};
    for (double v : log_spaced(-3, 3, kBoundaryPointsPerDecade)) axis.push_back(-v);
    std::vector<double> fractions(kThm2ConeFractions);
    for (int k = 0; k < kThm2ConeFractions; ++k) {
        fractions[static_cast<std::size_t>(k)] =
            -1.0 + 2.0 * static_cast<double>(k) / (kThm2ConeFractions - 1);
    }
    std::vector<Extremum> rows(axis.size());
    parallel_for(axis.size(), threads, [&](std::size_t r) {
        Extremum best;
        for (std::size_t c = 0; c < axis.size(); ++c) {
            const double bound = 2.0 * std::sqrt(axis[r] * axis[c]);
            for (std::size_t f = 0; f < fractions.size(); ++f) {
                const SpectralPoint pt{fractions[f] * bound, axis[r], axis[c]};
                best.offer(std::abs(stability::eval_stability_function(theta, pt)), pt,
                           (r * axis.size() + c) * fractions.size() + f);
            }
        }
        rows[r] = best;
    });
    Extremum best;
    for (const Extremum& e : rows) best.merge(e);
    return best;
}

// ---------------------------------------------------------------------------
// Expansion at the origin along z0 = -2a, z1 = z2 = a(1+i)
// ---------------------------------------------------------------------------

/// 40 theta^2 - 16 theta, the a^3 coefficient of |S|^2 - 1 along the path.
inline double thm3_predicted_coefficient(double theta) {
    return 40.0 * theta * theta - 16.0 * theta;
}

/// |S_theta(-2a, a(1+i), a(1+i))|^2 - 1, formed from S - 1 to avoid cancellation.
inline double thm3_excess(double theta, double a) {
    const Complex eta{1.0, 1.0};
    const SpectralPoint pt{-2.0 * a, a * eta, a * eta};
    const Complex inc = stability::stability_increment(theta, pt);
    return 2.0 * inc.real() + std::norm(inc);
}

/// Fits the a^3 coefficient of |S|^2 - 1 from a = -1e-2, -5e-3, -2.5e-3:
/// g(a) = (|S|^2 - 1) / a^3 = C + D a + E a^2 + ..., and two Richardson
/// levels eliminate D and E.
inline double thm3_cubic_coefficient(double theta) {
    if (!(theta > 0.0)) throw DomainError("thm3_cubic_coefficient needs theta > 0");
    constexpr double h = -1e-2;
    double g[3];
    for (int k = 0; k < 3; ++k) {
        const double a = h / static_cast<double>(1 << k);
        g[k] = thm3_excess(theta, a) / (a * a * a);
    }
    const double r0 = 2.0 * g[1] - g[0];
    const double r1 = 2.0 * g[2] - g[1];
    return (4.0 * r1 - r0) / 3.0;
}

// ---------------------------------------------------------------------------
// Real z1 = z2, complex z0
// ---------------------------------------------------------------------------

/// Lower bound on theta from the second-order condition at x = theta y:
/// (x^3 + 2 p x^2) / (p^3 + p^2 x) with p = 1 + x + x^2/4.
template <typename T>
T thm4_ratio(T x) {
    const T p = 1.0 + x + 0.25 * x * x;
    return (x * x * x + 2.0 * p * x * x) / (p * p * p + p * p * x);
}

struct Maximum {
    double x = 0.0;
    double value = 0.0;
};

/// Maximiser of thm4_ratio on [0, 100]: a 0.01 coarse grid, golden-section
/// refinement on the bracketing cells, then bisection on the sign of the
/// derivative (complex-step differentiation) to pin x* below sqrt(eps).
inline Maximum thm4_maximize() {
    constexpr double lo = 0.0;
    constexpr double hi = 100.0;
    constexpr double step = 0.01;
    const auto cells = static_cast<std::size_t>((hi - lo) / step);
    std::size_t best = 0;
    double best_value = -1.0;
    for (std::size_t k = 0; k <= cells; ++k) {
        const double v = thm4_ratio(lo + step * static_cast<double>(k));
        if (v > best_value) {
            best_value = v;
            best = k;
        }
    }
    double a = lo + step * static_cast<double>(best == 0 ? 0 : best - 1);
    double b = lo + step * static_cast<double>(std::min(best + 1, cells));

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
        if (thm4_ratio(c) > thm4_ratio(d)) {
            b = d;
        } else {
            a = c;
        }
        c = b - inv_phi * (b - a);
        d = a + inv_phi * (b - a);
    }

    auto slope = [](double x) {
        constexpr double h = 1e-30;
        return thm4_ratio(Complex{x, h}).imag() / h;
    };
    double left = std::max(lo, 0.5 * (a + b) - 1e-6);
    double right = std::min(hi, 0.5 * (a + b) + 1e-6);
    if (slope(left) > 0.0 && slope(right) < 0.0) {
        for (int it = 0; it < 200 && right - left > 0.0; ++it) {
            const double mid = 0.5 * (left + right);
            if (mid <= left || mid >= right) break;
            (slope(mid) > 0.0 ? left : right) = mid;
        }
    }
    const double x = 0.5 * (left + right);
    return {x, thm4_ratio(x)};
}

struct Witness {
    SpectralPoint point;
    double abs_s = 0.0;
};

/// Searches z1 = z2 = -x / (2 theta) (so that theta * 2 sqrt(z1 z2) = x) for x
/// in [0.25, 8] and z0 = 2 sqrt(z1 z2) e^{i phi} with phi log spaced in
/// [1e-4, pi], shrunk by a few ulps so the cone condition holds exactly.
/// Returns the largest violation |S| > 1 + 1e-10, if any.
inline std::optional<Witness> thm4_witness_search(double theta) {
    if (!(theta > 0.0)) throw DomainError("thm4_witness_search needs theta > 0");
    constexpr double kMargin = 1e-10;
    constexpr int kXPoints = 311;
    constexpr int kPhiPoints = 97;
    std::optional<Witness> best;
    for (int ix = 0; ix < kXPoints; ++ix) {
        const double x = 0.25 + 7.75 * static_cast<double>(ix) / (kXPoints - 1);
        const double zr = -x / (2.0 * theta);
        const double y = 2.0 * std::sqrt(zr * zr) * (1.0 - 8.0 * std::numeric_limits<double>::epsilon());
        for (int ip = 0; ip < kPhiPoints; ++ip) {
            const double phi =
                1e-4 * std::pow(std::numbers::pi / 1e-4, static_cast<double>(ip) / (kPhiPoints - 1));
            const SpectralPoint pt{std::polar(y, phi), zr, zr};
            if (!stability::cone_condition(pt)) continue;
            const double s = std::abs(stability::eval_stability_function(theta, pt));
            if (s > 1.0 + kMargin && (!best || s > best->abs_s)) best = Witness{pt, s};
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Upper bound used for 1/2 <= theta <= 1
// ---------------------------------------------------------------------------

struct BoundCheck {
    double max_deviation_at_phi0 = 0.0;  ///< max |thm5_bound(theta, r, 0) - 1|
    double max_increase_in_phi = 0.0;    ///< max positive step along the phi grid
    double max_asymmetry = 0.0;          ///< max |bound(phi) - bound(2 pi - phi)|
};

/// Evaluates thm5_bound on r_points values of r in [0, 1] and phi_points values
/// of phi in [0, pi].
inline BoundCheck thm5_bound_check(double theta, int r_points, int phi_points) {
    BoundCheck out;
    for (int ir = 0; ir < r_points; ++ir) {
        const double r = static_cast<double>(ir) / (r_points - 1);
        out.max_deviation_at_phi0 =
            std::max(out.max_deviation_at_phi0, std::abs(stability::thm5_bound(theta, r, 0.0) - 1.0));
        double prev = stability::thm5_bound(theta, r, 0.0);
        for (int ip = 1; ip < phi_points; ++ip) {
            const double phi = std::numbers::pi * static_cast<double>(ip) / (phi_points - 1);
            const double v = stability::thm5_bound(theta, r, phi);
            out.max_increase_in_phi = std::max(out.max_increase_in_phi, v - prev);
            out.max_asymmetry = std::max(
                out.max_asymmetry,
                std::abs(v - stability::thm5_bound(theta, r, 2.0 * std::numbers::pi - phi)));
            prev = v;
        }
    }
    return out;
}

}  // namespace mcs::analysis
