#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "mcs/spectrum.hpp"

namespace mcs {

/// One time level of a real solution on the periodic m1 x m2 grid.
///
/// Storage is x-fastest: u(i, j) lives at index i + m1 * j, so a line in the
/// x direction is contiguous and a y line has stride m1.
class GridField {
public:
    GridField() = default;
    GridField(std::size_t m1, std::size_t m2, double value = 0.0)
        : m1_(m1), m2_(m2), values_(m1 * m2, value) {}
    explicit GridField(const GridSpec& grid, double value = 0.0)
        : GridField(grid.m1, grid.m2, value) {}

    [[nodiscard]] std::size_t m1() const { return m1_; }
    [[nodiscard]] std::size_t m2() const { return m2_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }

    [[nodiscard]] double& operator()(std::size_t i, std::size_t j) { return values_[i + m1_ * j]; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
        return values_[i + m1_ * j];
    }

    [[nodiscard]] std::span<double> values() { return values_; }
    [[nodiscard]] std::span<const double> values() const { return values_; }

    [[nodiscard]] bool matches(const GridSpec& grid) const {
        return m1_ == grid.m1 && m2_ == grid.m2;
    }
    [[nodiscard]] bool same_shape(const GridField& other) const {
        return m1_ == other.m1_ && m2_ == other.m2_;
    }

    [[nodiscard]] bool all_finite() const {
        return std::all_of(values_.begin(), values_.end(),
                           [](double v) { return std::isfinite(v); });
    }

    [[nodiscard]] double max_norm() const {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Discrete L2 norm sqrt(sum u^2 / N).
    [[nodiscard]] double l2_norm() const {
        double s = 0.0;
        for (double v : values_) s += v * v;
        return values_.empty() ? 0.0 : std::sqrt(s / static_cast<double>(values_.size()));
    }

    [[nodiscard]] double mean() const {
        double s = 0.0;
        for (double v : values_) s += v;
        return values_.empty() ? 0.0 : s / static_cast<double>(values_.size());
    }

    /// this += alpha * other
    GridField& axpy(double alpha, const GridField& other) {
        require_same_shape(other);
        for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += alpha * other.values_[n];
        return *this;
    }

    GridField& operator+=(const GridField& other) { return axpy(1.0, other); }
    GridField& operator-=(const GridField& other) { return axpy(-1.0, other); }

    friend GridField operator-(GridField a, const GridField& b) { return a -= b; }
    friend GridField operator+(GridField a, const GridField& b) { return a += b; }

    friend bool operator==(const GridField&, const GridField&) = default;

private:
    void require_same_shape(const GridField& other) const {
        if (!same_shape(other)) throw std::invalid_argument("grid field dimension mismatch");
    }

    std::size_t m1_ = 0;
    std::size_t m2_ = 0;
    std::vector<double> values_;
};

}  // namespace mcs
