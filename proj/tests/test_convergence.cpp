#include <gtest/gtest.h>

#include <cmath>
#include <iostream>

#include "mcs/convergence.hpp"

namespace {

using namespace mcs;

const PdeCoefficients kCoeffs{2.0, -1.0, 0.02, 0.016, 0.014, 0.015};

void print(const std::vector<ConvergenceRow>& rows) {
    for (const ConvergenceRow& r : rows) {
        std::cout << "  dt=" << r.dt << " err=" << r.max_error << " order=" << r.observed_order
                  << '\n';
    }
}

TEST(Convergence, ExactSolutionStartsFromInitialField) {
    const ManufacturedProblem p = ManufacturedProblem::standard(kCoeffs, 16);
    const GridField u0 = p.field_at(0.0);
    const double h = 1.0 / 16.0;
    // sin(2 pi x) sin(2 pi y) + Re((0.3 + 0.2i) e^{i(4 pi x + 2 pi y)})
    for (std::size_t j = 0; j < 16; ++j) {
        for (std::size_t i = 0; i < 16; ++i) {
            const double x = static_cast<double>(i) * h;
            const double y = static_cast<double>(j) * h;
            const double expected =
                std::sin(2.0 * M_PI * x) * std::sin(2.0 * M_PI * y) +
                0.3 * std::cos(4.0 * M_PI * x + 2.0 * M_PI * y) -
                0.2 * std::sin(4.0 * M_PI * x + 2.0 * M_PI * y);
            EXPECT_NEAR(u0(i, j), expected, 1e-14);
        }
    }
}

TEST(Convergence, McsIsSecondOrder) {
    ManufacturedProblem p = ManufacturedProblem::standard(kCoeffs, 16);
    p.final_time = 0.5;
    for (double theta : {1.0 / 3.0, 0.5}) {
        const auto rows = run_convergence_study(Scheme::mcs, theta, p, 8, 4);
        print(rows);
        ASSERT_EQ(rows.size(), 4u);
        EXPECT_TRUE(std::isnan(rows.front().observed_order));
        EXPECT_GE(rows.back().observed_order, 1.9) << theta;
    }
}

TEST(Convergence, DouglasWithMixedTermIsFirstOrder) {
    ManufacturedProblem p = ManufacturedProblem::standard(kCoeffs, 16);
    p.final_time = 0.5;
    const auto rows = run_convergence_study(Scheme::douglas, 0.5, p, 16, 4);
    print(rows);
    EXPECT_GE(rows.back().observed_order, 0.8);
    EXPECT_LE(rows.back().observed_order, 1.2);
}

TEST(Convergence, TrivialProblemHasNoError) {
    ManufacturedProblem p = ManufacturedProblem::standard({}, 8);
    p.coeffs = PdeCoefficients{};
    const auto rows = run_convergence_study(Scheme::mcs, 0.5, p, 2, 3);
    for (const ConvergenceRow& r : rows) EXPECT_EQ(r.max_error, 0.0);
}

}  // namespace
