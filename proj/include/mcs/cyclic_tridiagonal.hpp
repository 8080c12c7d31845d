#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mcs/types.hpp"

namespace mcs {

/// Solver for the n x n periodic tridiagonal system with constant bands
///
///     sub * x[i-1] + diag * x[i] + super * x[i+1] = r[i]   (indices mod n)
///
/// Factorised once. The default path is the Thomas algorithm applied to a
/// rank-one modification of the matrix, corrected with the Sherman-Morrison
/// formula. If that path meets a tiny pivot or fails a residual self-check,
/// a dense LU factorisation with partial pivoting is used instead.
class CyclicTridiagonal {
public:
    CyclicTridiagonal(std::size_t n, double sub, double diag, double super)
        : n_(n), sub_(sub), diag_(diag), super_(super) {
        if (n < 3) throw DomainError("cyclic tridiagonal system needs n >= 3");
        scale_ = std::max({std::abs(sub), std::abs(diag), std::abs(super)});
        if (!(scale_ > 0.0)) throw SingularSystem("cyclic tridiagonal system is zero");
        if (!factor_sherman_morrison() || !passes_self_check()) {
            factor_dense();
        }
    }

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] bool uses_dense_fallback() const { return dense_; }

    /// Solves in place: `x` holds the right-hand side on entry.
    void solve(std::span<double> x) const {
        if (dense_) {
            solve_dense(x);
        } else {
            solve_sherman_morrison(x);
        }
    }

    /// r - A x, for residual checks.
    void residual(std::span<const double> x, std::span<const double> r,
                  std::span<double> out) const {
        for (std::size_t i = 0; i < n_; ++i) {
            const std::size_t im = (i + n_ - 1) % n_;
            const std::size_t ip = (i + 1) % n_;
            out[i] = r[i] - (sub_ * x[im] + diag_ * x[i] + super_ * x[ip]);
        }
    }

private:
    static constexpr double kPivotTolerance = 1e-13;

    bool factor_sherman_morrison() {
        gamma_ = -diag_;
        if (std::abs(gamma_) < kPivotTolerance * scale_) return false;

        // A' = A - u v^T with u = (gamma, 0, ..., super)^T and
        // v = (1, 0, ..., sub/gamma)^T; only the two corner diagonals change.
        const double first = diag_ - gamma_;
        const double last = diag_ - super_ * sub_ / gamma_;

        c_prime_.assign(n_, 0.0);
        inv_pivot_.assign(n_, 0.0);
        double pivot = first;
        for (std::size_t i = 0; i < n_; ++i) {
            if (i > 0) {
                const double d = (i + 1 == n_) ? last : diag_;
                pivot = d - sub_ * c_prime_[i - 1];
            }
            if (std::abs(pivot) < kPivotTolerance * scale_) return false;
            inv_pivot_[i] = 1.0 / pivot;
            c_prime_[i] = super_ * inv_pivot_[i];
        }

        correction_.assign(n_, 0.0);
        correction_.front() = gamma_;
        correction_.back() = super_;
        thomas(correction_);
        const double denom = 1.0 + correction_.front() + sub_ * correction_.back() / gamma_;
        if (std::abs(denom) < kPivotTolerance) return false;
        inv_sm_denominator_ = 1.0 / denom;
        return true;
    }

    void thomas(std::span<double> x) const {
        x[0] *= inv_pivot_[0];
        for (std::size_t i = 1; i < n_; ++i) {
            x[i] = (x[i] - sub_ * x[i - 1]) * inv_pivot_[i];
        }
        for (std::size_t i = n_ - 1; i-- > 0;) {
            x[i] -= c_prime_[i] * x[i + 1];
        }
    }

    void solve_sherman_morrison(std::span<double> x) const {
        thomas(x);
        const double factor =
            (x.front() + sub_ * x.back() / gamma_) * inv_sm_denominator_;
        for (std::size_t i = 0; i < n_; ++i) x[i] -= factor * correction_[i];
    }

    bool passes_self_check() const {
        std::vector<double> r(n_), x(n_), res(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            r[i] = std::sin(1.0 + 0.7 * static_cast<double>(i)) + 0.5;
        }
        x = r;
        solve_sherman_morrison(x);
        residual(x, r, res);
        double worst = 0.0;
        double rhs = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (!std::isfinite(x[i])) return false;
            worst = std::max(worst, std::abs(res[i]));
            rhs = std::max(rhs, std::abs(r[i]));
        }
        return worst <= 1e-12 * rhs;
    }

    void factor_dense() {
        dense_ = true;
        lu_.assign(n_ * n_, 0.0);
        auto at = [this](std::size_t r, std::size_t c) -> double& { return lu_[r * n_ + c]; };
        for (std::size_t i = 0; i < n_; ++i) {
            at(i, (i + n_ - 1) % n_) += sub_;
            at(i, i) += diag_;
            at(i, (i + 1) % n_) += super_;
        }
        pivots_.resize(n_);
        for (std::size_t k = 0; k < n_; ++k) {
            std::size_t best = k;
            for (std::size_t r = k + 1; r < n_; ++r) {
                if (std::abs(at(r, k)) > std::abs(at(best, k))) best = r;
            }
            if (std::abs(at(best, k)) < kPivotTolerance * scale_) {
                throw SingularSystem("periodic line system is numerically singular");
            }
            pivots_[k] = best;
            if (best != k) {
                for (std::size_t c = 0; c < n_; ++c) std::swap(at(k, c), at(best, c));
            }
            for (std::size_t r = k + 1; r < n_; ++r) {
                const double m = at(r, k) / at(k, k);
                at(r, k) = m;
                if (m == 0.0) continue;
                for (std::size_t c = k + 1; c < n_; ++c) at(r, c) -= m * at(k, c);
            }
        }
    }

    void solve_dense(std::span<double> x) const {
        auto at = [this](std::size_t r, std::size_t c) { return lu_[r * n_ + c]; };
        // Whole rows were swapped during factorisation, so permute first.
        for (std::size_t k = 0; k < n_; ++k) {
            if (pivots_[k] != k) std::swap(x[k], x[pivots_[k]]);
        }
        for (std::size_t k = 0; k < n_; ++k) {
            for (std::size_t r = k + 1; r < n_; ++r) x[r] -= at(r, k) * x[k];
        }
        for (std::size_t k = n_; k-- > 0;) {
            double s = x[k];
            for (std::size_t c = k + 1; c < n_; ++c) s -= at(k, c) * x[c];
            x[k] = s / at(k, k);
        }
    }

    std::size_t n_;
    double sub_;
    double diag_;
    double super_;
    double scale_ = 0.0;

    double gamma_ = 0.0;
    double inv_sm_denominator_ = 0.0;
    std::vector<double> c_prime_;
    std::vector<double> inv_pivot_;
    std::vector<double> correction_;

    bool dense_ = false;
    std::vector<double> lu_;
    std::vector<std::size_t> pivots_;
};

}  // namespace mcs
