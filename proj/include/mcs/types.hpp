#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace mcs {

using Complex = std::complex<double>;

/// Raised when the stability function is evaluated at (or numerically next
/// to) one of its poles, i.e. when z1 or z2 sits at 1/theta.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when an argument lies outside the admissible set of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a per-line implicit system cannot be solved, even after the
/// pivoted dense fallback.
class SingularSystem : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised for malformed problem configurations (config files, CLI values).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Scheme parameter and time step of a splitting-scheme run.
struct SchemeParams {
    double theta = 0.5;
    double dt = 1.0;

    void validate() const {
        if (!(theta > 0.0)) {
            throw DomainError("theta must be positive, got " + std::to_string(theta));
        }
        if (!(dt > 0.0)) {
            throw DomainError("dt must be positive, got " + std::to_string(dt));
        }
    }
};

/// Triplet of scaled eigenvalues (z0, z1, z2): z0 belongs to the mixed
/// derivative part, z1 and z2 to the x and y directions.
struct SpectralPoint {
    Complex z0{};
    Complex z1{};
    Complex z2{};

    [[nodiscard]] Complex z() const { return z1 + z2; }

    /// p = (1 - theta z1)(1 - theta z2)
    [[nodiscard]] Complex p(double theta) const {
        return (1.0 - theta * z1) * (1.0 - theta * z2);
    }

    /// q = p^2 + p z + (1/2 - theta) z^2
    [[nodiscard]] Complex q(double theta) const {
        const Complex pp = p(theta);
        const Complex zz = z();
        return pp * pp + pp * zz + (0.5 - theta) * zz * zz;
    }

    /// w = p + (1 - theta) z
    [[nodiscard]] Complex w(double theta) const {
        return p(theta) + (1.0 - theta) * z();
    }

    friend bool operator==(const SpectralPoint&, const SpectralPoint&) = default;
};

}  // namespace mcs
