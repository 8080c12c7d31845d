#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <ios>
#include <istream>
#include <locale>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mcs/analysis.hpp"
#include "mcs/grid_field.hpp"
#include "mcs/types.hpp"

namespace mcs::io {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kDigits = 17;

inline const char* kFieldHeader = "i,j,u";
inline const char* kScanHeader =
    "theta,max_abs_s,witness_z0_re,witness_z0_im,witness_z1_re,witness_z1_im,"
    "witness_z2_re,witness_z2_im";

/// Puts a stream into the fixed 17-significant-digit numeric format.
inline std::ostream& numeric(std::ostream& out) {
    out.imbue(std::locale::classic());
    return out << std::setprecision(kDigits) << std::defaultfloat;
}

/// Header "i,j,u" then one row per point, i outer and j inner.
inline void write_field_csv(std::ostream& out, const GridField& u) {
    numeric(out);
    out << kFieldHeader << '\n';
    for (std::size_t i = 0; i < u.m1(); ++i) {
        for (std::size_t j = 0; j < u.m2(); ++j) {
            out << i << ',' << j << ',' << u(i, j) << '\n';
        }
    }
}

/// Reads a field written by write_field_csv; m1 and m2 are taken from the
/// largest indices present, and every point must appear exactly once.
inline GridField read_field_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kFieldHeader) {
        throw ConfigError("field CSV must start with the header 'i,j,u'");
    }
    struct Row {
        std::size_t i, j;
        double u;
    };
    std::vector<Row> rows;
    std::size_t m1 = 0;
    std::size_t m2 = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        ls.imbue(std::locale::classic());
        Row r{};
        char c1 = 0;
        char c2 = 0;
        if (!(ls >> r.i >> c1 >> r.j >> c2 >> r.u) || c1 != ',' || c2 != ',') {
            throw ConfigError("malformed field CSV row: '" + line + "'");
        }
        m1 = std::max(m1, r.i + 1);
        m2 = std::max(m2, r.j + 1);
        rows.push_back(r);
    }
    if (rows.size() != m1 * m2) throw ConfigError("field CSV does not cover a full grid");
    GridField u(m1, m2, 0.0);
    std::vector<bool> seen(m1 * m2, false);
    for (const Row& r : rows) {
        const std::size_t n = r.i + m1 * r.j;
        if (seen[n]) throw ConfigError("field CSV repeats a grid point");
        seen[n] = true;
        u(r.i, r.j) = r.u;
    }
    return u;
}

inline void write_scan_csv(std::ostream& out, const analysis::ScanReport& report) {
    numeric(out);
    out << kScanHeader << '\n';
    for (std::size_t k = 0; k < report.theta_grid.size(); ++k) {
        const SpectralPoint& w = report.witness[k];
        out << report.theta_grid[k] << ',' << report.max_abs_s[k] << ',' << w.z0.real() << ','
            << w.z0.imag() << ',' << w.z1.real() << ',' << w.z1.imag() << ',' << w.z2.real()
            << ',' << w.z2.imag() << '\n';
    }
}

/// Companion metadata for a scan CSV: seed, samples and version as key = value.
inline void write_scan_metadata(std::ostream& out, const analysis::ScanReport& report) {
    out << "seed = " << report.seed << '\n'
        << "samples = " << report.samples_per_theta << '\n'
        << "thetas = " << report.theta_grid.size() << '\n'
        << "version = " << kVersion << '\n';
}

}  // namespace mcs::io
