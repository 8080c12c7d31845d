#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "mcs/counter_rng.hpp"
#include "mcs/grid_field.hpp"
#include "mcs/solver.hpp"
#include "mcs/spectrum.hpp"
#include "mcs/types.hpp"

namespace mcs {

/// A solver run as described by a key = value config file.
///
/// Recognised keys: c1 c2 d11 d12 d21 d22 beta m1 m2 dx dy dt theta steps
/// scheme initial. Blank lines and text after '#' are ignored. dx and dy
/// default to 1/m1 and 1/m2 (the unit square).
struct ProblemConfig {
    PdeCoefficients coeffs{0.0, 0.0, 1.0, 0.0, 0.0, 1.0};
    GridSpec grid{32, 32, 1.0 / 32.0, 1.0 / 32.0, 0.0};
    SchemeParams params{0.5, 1e-3};
    std::size_t steps = 1;
    Scheme scheme = Scheme::mcs;
    /// mode:k1,k2 | impulse | random:seed | constant:value
    std::string initial = "mode:1,1";

    void validate() const {
        coeffs.validate();
        grid.validate();
        params.validate();
        validate_initial(initial, grid);
    }

    static void validate_initial(const std::string& preset, const GridSpec& grid);
};

namespace config_detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline double parse_double(std::string_view key, std::string_view text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw ConfigError("invalid number for '" + std::string(key) + "': '" +
                          std::string(text) + "'");
    }
    return v;
}

inline std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError("invalid unsigned integer for '" + std::string(key) + "': '" +
                          std::string(text) + "'");
    }
    return v;
}

}  // namespace config_detail

inline Scheme parse_scheme(std::string_view text) {
    if (text == "mcs") return Scheme::mcs;
    if (text == "douglas") return Scheme::douglas;
    throw ConfigError("unknown scheme '" + std::string(text) + "' (expected mcs or douglas)");
}

inline std::string_view scheme_name(Scheme s) { return s == Scheme::mcs ? "mcs" : "douglas"; }

/// Builds the initial field named by a preset string.
inline GridField initial_field(const std::string& preset, const GridSpec& grid) {
    using config_detail::parse_double;
    using config_detail::parse_unsigned;
    GridField u(grid);
    const std::string_view text = preset;
    const auto colon = text.find(':');
    const std::string_view name = text.substr(0, colon);
    const std::string_view arg =
        colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

    if (name == "impulse" && colon == std::string_view::npos) {
        u(0, 0) = 1.0;
    } else if (name == "constant") {
        const double v = parse_double("initial", arg);
        for (double& x : u.values()) x = v;
    } else if (name == "random") {
        const std::uint64_t seed = parse_unsigned("initial", arg);
        auto values = u.values();
        for (std::size_t n = 0; n < values.size(); ++n) {
            values[n] = 2.0 * CounterRng::stream(seed, 2, n).uniform(0) - 1.0;
        }
    } else if (name == "mode") {
        const auto comma = arg.find(',');
        if (comma == std::string_view::npos) {
            throw ConfigError("mode preset must be mode:k1,k2");
        }
        const FourierMode mode{parse_unsigned("initial", arg.substr(0, comma)),
                               parse_unsigned("initial", arg.substr(comma + 1))};
        if (mode.k1 >= grid.m1 || mode.k2 >= grid.m2) {
            throw ConfigError("mode indices must satisfy k1 < m1 and k2 < m2");
        }
        const double phi1 = mode.phi1(grid);
        const double phi2 = mode.phi2(grid);
        for (std::size_t j = 0; j < grid.m2; ++j) {
            for (std::size_t i = 0; i < grid.m1; ++i) {
                u(i, j) = std::cos(phi1 * static_cast<double>(i) + phi2 * static_cast<double>(j));
            }
        }
    } else {
        throw ConfigError("unknown initial preset '" + preset +
                          "' (expected mode:k1,k2, impulse, random:seed or constant:value)");
    }
    return u;
}

inline void ProblemConfig::validate_initial(const std::string& preset, const GridSpec& grid) {
    (void)initial_field(preset, grid);
}

/// Parses key = value lines. Unknown keys, duplicate keys and malformed values
/// raise ConfigError; the result is validated before it is returned.
inline ProblemConfig parse_problem_config(std::istream& in) {
    using namespace config_detail;
    std::map<std::string, std::string, std::less<>> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key(trim(view.substr(0, eq)));
        const std::string value(trim(view.substr(eq + 1)));
        if (key.empty() || value.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
        }
        if (!entries.emplace(key, value).second) {
            throw ConfigError("duplicate key '" + key + "'");
        }
    }

    ProblemConfig cfg;
    std::optional<double> dx;
    std::optional<double> dy;
    for (const auto& [key, value] : entries) {
        if (key == "c1") cfg.coeffs.c1 = parse_double(key, value);
        else if (key == "c2") cfg.coeffs.c2 = parse_double(key, value);
        else if (key == "d11") cfg.coeffs.d11 = parse_double(key, value);
        else if (key == "d12") cfg.coeffs.d12 = parse_double(key, value);
        else if (key == "d21") cfg.coeffs.d21 = parse_double(key, value);
        else if (key == "d22") cfg.coeffs.d22 = parse_double(key, value);
        else if (key == "beta") cfg.grid.beta = parse_double(key, value);
        else if (key == "m1") cfg.grid.m1 = parse_unsigned(key, value);
        else if (key == "m2") cfg.grid.m2 = parse_unsigned(key, value);
        else if (key == "dx") dx = parse_double(key, value);
        else if (key == "dy") dy = parse_double(key, value);
        else if (key == "dt") cfg.params.dt = parse_double(key, value);
        else if (key == "theta") cfg.params.theta = parse_double(key, value);
        else if (key == "steps") cfg.steps = parse_unsigned(key, value);
        else if (key == "scheme") cfg.scheme = parse_scheme(value);
        else if (key == "initial") cfg.initial = value;
        else throw ConfigError("unknown config key '" + key + "'");
    }
    if (cfg.grid.m1 == 0 || cfg.grid.m2 == 0) throw ConfigError("m1 and m2 must be positive");
    cfg.grid.dx = dx.value_or(1.0 / static_cast<double>(cfg.grid.m1));
    cfg.grid.dy = dy.value_or(1.0 / static_cast<double>(cfg.grid.m2));

    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

inline ProblemConfig load_problem_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_problem_config(in);
}

}  // namespace mcs
