// Acceptance gate: runs every criterion at full scale and prints one PASS/FAIL
// line per criterion. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mcs/mcs.hpp"
#include "oracles.hpp"

namespace {

using namespace mcs;
using namespace mcs::analysis;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << ']';
        }
    }
};

// 1. random scan of max|S|: peak near theta = 1/3, none above 1 from 0.4 on
void figure1(Outcome& o) {
    const std::vector<double> third{1.0 / 3.0};
    const double full = figure1_scan(kDefaultSeed, kDefaultFigure1Samples, third).max_abs_s[0];
    const double desk = figure1_scan(kDefaultSeed, 200'000, third).max_abs_s[0];
    const ScanReport grid = figure1_scan(kDefaultSeed, kDefaultFigure1Samples, default_figure1_grid());

    double worst_above = -1.0;
    double worst_theta = 0.0;
    for (std::size_t k = 0; k < grid.theta_grid.size(); ++k) {
        if (grid.theta_grid[k] >= 0.4 - 1e-12 && grid.max_abs_s[k] > worst_above) {
            worst_above = grid.max_abs_s[k];
            worst_theta = grid.theta_grid[k];
        }
        // soft check: the curve should not rise again past 1/3
        if (k > 0 && grid.theta_grid[k - 1] >= 1.0 / 3.0 &&
            grid.max_abs_s[k] > grid.max_abs_s[k - 1] + 1e-3) {
            std::printf("  warning: max|S| rises from %.6f to %.6f at theta=%.4f\n",
                        grid.max_abs_s[k - 1], grid.max_abs_s[k], grid.theta_grid[k]);
        }
    }
    o.detail << "max|S|(1/3) = " << full << " (2e6), " << desk
             << " (2e5); max over theta>=0.4 = " << worst_above << " at " << worst_theta;
    o.require(full >= 1.005 && full <= 1.04, "full-scale value in [1.005, 1.04]");
    o.require(desk >= 1.0 && desk <= 1.05, "desk-scale value in [1.0, 1.05]");
    o.require(worst_above <= 1.0 + 1e-9, "theta >= 0.4 bounded by 1 + 1e-9");
}

// 2. imaginary-axis threshold 1/4
void threshold_quarter(Outcome& o) {
    const double margin = std::abs(thm1_criterion_margin(0.25));
    const auto scans = thm1_threshold_scan({0.24, 0.25, 0.5, 1.0});
    o.detail << "criterion |.|-theta^2 at 0.25 = " << margin << "; grid max at 0.24 = "
             << scans[0].grid_max.value << ", at 0.25/0.5/1 = " << scans[1].grid_max.value << '/'
             << scans[2].grid_max.value << '/' << scans[3].grid_max.value;
    o.require(margin <= 1e-15, "equality at 0.25");
    o.require(scans[0].grid_max.value > 1.0 + 1e-4, "violation found at 0.24");
    for (std::size_t k = 1; k < scans.size(); ++k) {
        o.require(scans[k].grid_max.value <= 1.0 + 1e-12, "no violation at stable theta");
    }
}

// 3. real cone triplets, threshold 1/3
void real_cone(Outcome& o) {
    const Extremum at_third = thm2_real_cone_scan(1.0 / 3.0);
    const Extremum below = thm2_real_cone_scan(0.32);
    o.detail << "max|S| at 1/3 = " << at_third.value << "; at 0.32 = " << below.value
             << " (z0=" << below.witness.z0.real() << ", z1=" << below.witness.z1.real()
             << ", z2=" << below.witness.z2.real() << ')';
    o.require(at_third.value <= 1.0 + 1e-12, "bounded at 1/3");
    o.require(below.value > 1.0 && stability::cone_condition(below.witness), "witness at 0.32");
}

// 4. cubic coefficient of |S|^2 - 1 near the imaginary axis
void cubic_coefficient(Outcome& o) {
    for (double theta : {0.3, 0.4, 0.5}) {
        const double target = 40.0 * theta * theta - 16.0 * theta;
        const double measured = thm3_cubic_coefficient(theta);
        const double tol = std::abs(target) < 1e-12 ? 1e-3 : 0.01 * std::abs(target);
        o.detail << "theta=" << theta << ": " << measured << " vs " << target << "; ";
        o.require(std::abs(measured - target) <= tol, "coefficient within tolerance");
    }
}

// 5. threshold 5/12 for complex z0
void threshold_five_twelfths(Outcome& o) {
    const Maximum m = thm4_maximize();
    const auto w40 = thm4_witness_search(0.40);
    const auto w45 = thm4_witness_search(0.45);
    o.detail << "x* = " << m.x << ", value = " << m.value << "; witness at 0.40 |S| = "
             << (w40 ? w40->abs_s : 0.0) << "; witness at 0.45: " << (w45 ? "found" : "none");
    o.require(std::abs(m.x - 2.0) <= 1e-8, "x* = 2");
    o.require(std::abs(m.value - 5.0 / 12.0) <= 1e-10, "value = 5/12");
    o.require(w40.has_value() && stability::cone_condition(w40->point), "violation at 0.40");
    o.require(!w45.has_value(), "no violation at 0.45");
}

// 6. bound for 1/2 <= theta <= 1
void upper_range(Outcome& o) {
    for (double theta : {0.5, 0.75, 1.0}) {
        const Extremum e = random_cone_scan(theta, 1'000'000, kDefaultSeed);
        const BoundCheck b = thm5_bound_check(theta, 100, 200);
        o.detail << "theta=" << theta << ": max|S| = " << e.value
                 << ", |bound(r,0)-1| <= " << b.max_deviation_at_phi0
                 << ", max rise in phi = " << b.max_increase_in_phi << "; ";
        o.require(e.value <= 1.0 + 1e-12, "random complex cone samples bounded");
        o.require(b.max_deviation_at_phi0 <= 1e-12, "bound equals 1 at phi = 0");
        o.require(b.max_increase_in_phi <= 1e-13, "bound nonincreasing in phi");
    }
}

// 7. gap inequality behind the upper-range bound
void gap_inequality(Outcome& o) {
    const Lemma2Scan s = lemma2_random_scan(1'000'000, kDefaultSeed);
    o.detail << "min gap = " << s.min_gap << " at theta = " << s.theta;
    o.require(s.min_gap >= -1e-12, "gap nonnegative");
}

// 8. Fourier symbols of PSD problems lie in the cone, and the bound is sharp
void symbols_in_cone(Outcome& o) {
    std::size_t modes = 0;
    double worst = std::numeric_limits<double>::infinity();
    bool all_inside = true;
    for (std::uint64_t s = 0; s < 10'000 && all_inside; ++s) {
        const CounterRng rng = CounterRng::stream(kDefaultSeed, 8, s);
        const PdeCoefficients c = oracle::random_psd(rng, 0);
        const GridSpec g{3 + static_cast<std::size_t>(rng.bits(10) % 14),
                         3 + static_cast<std::size_t>(rng.bits(11) % 14), 0.01 + rng.uniform(12),
                         0.01 + rng.uniform(13), 2.0 * rng.uniform(14) - 1.0};
        const SchemeParams p{0.5, std::pow(10.0, 4.0 * rng.uniform(15) - 3.0)};
        for (std::size_t k1 = 0; k1 < g.m1; ++k1) {
            for (std::size_t k2 = 0; k2 < g.m2; ++k2) {
                const SpectralPoint pt = fourier_symbols(c, g, p, {k1, k2});
                worst = std::min(worst, stability::cone_margin(pt));
                all_inside = all_inside && stability::cone_condition(pt, 1e-12);
                ++modes;
            }
        }
    }
    const PdeCoefficients degenerate{0.0, 0.0, 1.0, 1.0, 1.0, 1.0};
    const ConeReport sharp =
        verify_cone_all_modes(degenerate, {16, 16, 0.1, 0.1, 1.0}, {0.5, 0.37});
    o.detail << modes << " modes, worst margin " << worst
             << "; degenerate nontrivial margin " << sharp.worst_nontrivial_margin << " at ("
             << sharp.worst_nontrivial_mode.k1 << ',' << sharp.worst_nontrivial_mode.k2 << ')';
    o.require(all_inside, "all modes inside the cone with slack 1e-12");
    o.require(std::abs(sharp.worst_nontrivial_margin) <= 1e-10, "degenerate case is sharp");
}

// 9. one scheme step on a Fourier mode multiplies it by the predicted factor
void amplification_oracle(Outcome& o) {
    double worst_mcs = 0.0;
    double worst_douglas = 0.0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const CounterRng rng = CounterRng::stream(kDefaultSeed, 9, s);
        const PdeCoefficients c = oracle::random_psd(rng, 0);
        const std::size_t m1 = 3 + static_cast<std::size_t>(rng.bits(10) % 30);
        const std::size_t m2 = 3 + static_cast<std::size_t>(rng.bits(11) % 30);
        const GridSpec g{m1, m2, 1.0 / static_cast<double>(m1), 1.0 / static_cast<double>(m2),
                         2.0 * rng.uniform(12) - 1.0};
        const SchemeParams p{0.25 + 0.75 * rng.uniform(13),
                             std::pow(10.0, 3.0 * rng.uniform(14) - 4.0)};
        const FourierMode mode{static_cast<std::size_t>(rng.bits(15) % m1),
                               static_cast<std::size_t>(rng.bits(16) % m2)};
        const SplitOperators ops(c, g, p);
        for (Scheme scheme : {Scheme::mcs, Scheme::douglas}) {
            const MeasuredAmplification m = measure_amplification(scheme, ops, mode);
            const Complex predicted = predicted_amplification(scheme, ops, mode);
            const double rel = std::max(std::abs(m.factor - predicted), m.spread) /
                               std::max(1.0, std::abs(predicted));
            (scheme == Scheme::mcs ? worst_mcs : worst_douglas) =
                std::max(scheme == Scheme::mcs ? worst_mcs : worst_douglas, rel);
        }
    }
    o.detail << "worst relative mismatch: mcs " << worst_mcs << ", douglas " << worst_douglas;
    o.require(worst_mcs <= 1e-12, "mcs matches the stability function");
    o.require(worst_douglas <= 1e-12, "douglas matches its amplification factor");
}

// 10. temporal order against the exact semi-discrete solution
void temporal_order(Outcome& o) {
    const PdeCoefficients c{2.0, -1.0, 0.02, 0.016, 0.014, 0.015};
    ManufacturedProblem p = ManufacturedProblem::standard(c, 16);
    p.final_time = 0.5;
    for (double theta : {1.0 / 3.0, 0.5}) {
        const double order = run_convergence_study(Scheme::mcs, theta, p, 8, 4).back().observed_order;
        o.detail << "mcs theta=" << theta << ": " << order << "; ";
        o.require(order >= 1.9, "mcs second order");
    }
    const double order = run_convergence_study(Scheme::douglas, 0.5, p, 16, 4).back().observed_order;
    o.detail << "douglas: " << order;
    o.require(order >= 0.8 && order <= 1.2, "douglas first order");
}

// 11. theta = 1/2 with a very large step stays bounded in the discrete L2 norm
void large_step_smoke(Outcome& o) {
    const double h = 1.0 / 32.0;
    const GridSpec g{32, 32, h, h, 0.0};
    const PdeCoefficients c{1.0, -0.5, 1.0, 0.4, 0.3, 0.8};
    const SplitOperators ops(c, g, {0.5, 1e3 * h * h});
    GridField u = initial_field("random:11", g);
    const double norm0 = u.l2_norm();
    double prev = norm0;
    double worst_ratio = 0.0;
    for (int n = 0; n < 100; ++n) {
        u = step_mcs(ops, u);
        const double norm = u.l2_norm();
        worst_ratio = std::max(worst_ratio, norm / prev);
        o.require(std::isfinite(norm), "finite field");
        prev = norm;
    }
    o.detail << "worst per-step ratio " << worst_ratio << ", final/initial " << prev / norm0;
    o.require(worst_ratio <= 1.0 + 1e-10, "per-step norm growth within 1e-10");
    o.require(prev <= (1.0 + 1e-10) * norm0, "final norm within initial");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"1 random max|S| scan over theta", figure1},
        {"2 imaginary-axis threshold 1/4", threshold_quarter},
        {"3 real cone threshold 1/3", real_cone},
        {"4 cubic coefficient 40t^2-16t", cubic_coefficient},
        {"5 complex cone threshold 5/12", threshold_five_twelfths},
        {"6 bound for 1/2 <= theta <= 1", upper_range},
        {"7 gap inequality", gap_inequality},
        {"8 PSD symbols inside the cone", symbols_in_cone},
        {"9 amplification oracle", amplification_oracle},
        {"10 temporal order", temporal_order},
        {"11 large-step L2 smoke test", large_step_smoke},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        o.detail.precision(17);
        try {
            check(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << ']';
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  %-34s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name.c_str(),
                    o.detail.str().c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
