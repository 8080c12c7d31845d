#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcs/mcs.hpp"

namespace mcs::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2, kBreakdown = 3 };

/// Flags shared by every subcommand.
struct CommonFlags {
    std::string out;
    std::uint64_t seed = analysis::kDefaultSeed;
    std::size_t threads = 0;  // 0: machine parallelism
    std::string config;

    [[nodiscard]] std::size_t thread_count() const {
        return threads == 0 ? default_thread_count() : threads;
    }
};

/// Config file values with command-line overrides applied on top.
struct ProblemOverrides {
    std::optional<std::size_t> steps;
    std::optional<std::string> scheme;
    std::optional<double> theta;
    std::optional<double> dt;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--steps", steps, "Number of time steps (overrides config)");
        cmd.add_option("--scheme", scheme, "mcs or douglas (overrides config)")
            ->check(CLI::IsMember({"mcs", "douglas"}));
        cmd.add_option("--theta", theta, "Scheme parameter theta (overrides config)");
        cmd.add_option("--dt", dt, "Time step (overrides config)");
    }

    [[nodiscard]] ProblemConfig apply(const std::string& config_path) const {
        ProblemConfig cfg = config_path.empty() ? ProblemConfig{} : load_problem_config(config_path);
        if (steps) cfg.steps = *steps;
        if (scheme) cfg.scheme = parse_scheme(*scheme);
        if (theta) cfg.params.theta = *theta;
        if (dt) cfg.params.dt = *dt;
        try {
            cfg.validate();
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        }
        return cfg;
    }
};

inline void add_common(CLI::App& cmd, CommonFlags& f) {
    cmd.add_option("--out", f.out, "Output path (CSV)");
    cmd.add_option("--seed", f.seed, "Random seed")->capture_default_str();
    cmd.add_option("--threads", f.threads, "Worker threads (0 = machine parallelism)")
        ->capture_default_str();
    cmd.add_option("--config", f.config, "Problem config file (key = value)")
        ->check(CLI::ExistingFile);
}

/// Opens `path` for writing, or returns `fallback` when the path is empty.
class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigError("cannot open '" + path + "' for writing");
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

struct SolveFlags {
    CommonFlags common;
    ProblemOverrides overrides;
    std::string log;
};

/// Runs the configured steps, writes the final field as CSV to --out (stdout
/// when absent) and a step,max_norm,l2_norm log to --log (stdout when --out is
/// given and --log is not).
inline int cmd_solve(const SolveFlags& f, std::ostream& out, std::ostream& err) {
    const ProblemConfig cfg = f.overrides.apply(f.common.config);
    const SplitOperators ops(cfg.coeffs, cfg.grid, cfg.params);
    GridField u = initial_field(cfg.initial, cfg.grid);

    std::ostringstream log;
    io::numeric(log);
    log << "step,max_norm,l2_norm\n";
    log << 0 << ',' << u.max_norm() << ',' << u.l2_norm() << '\n';
    for (std::size_t n = 1; n <= cfg.steps; ++n) {
        u = step(cfg.scheme, ops, u);
        if (!u.all_finite()) {
            err << "numerical breakdown: non-finite values after step " << n << '\n';
            return kBreakdown;
        }
        log << n << ',' << u.max_norm() << ',' << u.l2_norm() << '\n';
    }

    if (!f.log.empty()) {
        OutputTarget target(f.log, out);
        target.get() << log.str();
    } else if (!f.common.out.empty()) {
        out << log.str();
    }
    OutputTarget field(f.common.out, out);
    io::write_field_csv(field.get(), u);
    return kPass;
}

// ---------------------------------------------------------------------------
// figure1
// ---------------------------------------------------------------------------

struct Figure1Flags {
    CommonFlags common;
    std::size_t samples = analysis::kDefaultFigure1Samples;
    double theta_min = 0.25;
    double theta_max = 0.5;
    double theta_step = 0.0025;
    std::vector<double> theta_list;
};

/// Writes the scan CSV to --out (stdout when absent) and, next to it, a
/// metadata file <out>.meta.
inline int cmd_figure1(const Figure1Flags& f, std::ostream& out, std::ostream&) {
    const std::vector<double> thetas = f.theta_list.empty()
                                           ? analysis::theta_grid(f.theta_min, f.theta_max, f.theta_step)
                                           : f.theta_list;
    const analysis::ScanReport report =
        analysis::figure1_scan(f.common.seed, f.samples, thetas, f.common.thread_count());
    {
        OutputTarget target(f.common.out, out);
        io::write_scan_csv(target.get(), report);
    }
    if (!f.common.out.empty()) {
        OutputTarget meta(f.common.out + ".meta", out);
        io::write_scan_metadata(meta.get(), report);
        std::size_t peak = 0;
        for (std::size_t k = 1; k < report.max_abs_s.size(); ++k) {
            if (report.max_abs_s[k] > report.max_abs_s[peak]) peak = k;
        }
        io::numeric(out) << "wrote " << thetas.size() << " rows to " << f.common.out
                         << "; largest max|S| = " << report.max_abs_s[peak]
                         << " at theta = " << report.theta_grid[peak] << '\n';
    }
    return kPass;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyFlags {
    CommonFlags common;
    std::string theorem = "all";
    std::optional<double> theta;
    std::size_t samples = 1'000'000;
};

/// One line of the verify table.
struct CheckRow {
    std::string group;
    std::string check;
    double measured = 0.0;
    std::string criterion;
    bool pass = false;
};

class CheckTable {
public:
    void add(std::string group, std::string check, double measured, std::string criterion,
             bool pass) {
        rows_.push_back({std::move(group), std::move(check), measured, std::move(criterion), pass});
    }

    void note(std::string text) { notes_.push_back(std::move(text)); }

    [[nodiscard]] bool all_pass() const {
        for (const CheckRow& r : rows_) {
            if (!r.pass) return false;
        }
        return true;
    }

    void print(std::ostream& out) const {
        io::numeric(out);
        for (const CheckRow& r : rows_) {
            out << std::left << std::setw(10) << r.group << ' ' << std::setw(42) << r.check << ' '
                << std::setw(24) << r.measured << ' ' << std::setw(22) << r.criterion << ' '
                << (r.pass ? "PASS" : "FAIL") << '\n';
        }
        for (const std::string& n : notes_) out << n << '\n';
    }

private:
    std::vector<CheckRow> rows_;
    std::vector<std::string> notes_;
};

/// Short form for labels; measured values keep full precision in the table.
inline std::string fmt(double v) {
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << std::setprecision(10) << v;
    return s.str();
}

inline std::vector<double> thetas_or(const std::optional<double>& theta,
                                     std::vector<double> defaults) {
    return theta ? std::vector<double>{*theta} : defaults;
}

inline void verify_thm1(const VerifyFlags& f, CheckTable& t) {
    const std::size_t threads = f.common.thread_count();
    if (!f.theta) {
        t.add("thm1", "criterion margin at theta=0.25", analysis::thm1_criterion_margin(0.25),
              "|m| <= 1e-15", std::abs(analysis::thm1_criterion_margin(0.25)) <= 1e-15);
    }
    for (const analysis::Thm1Result& r :
         analysis::thm1_threshold_scan(thetas_or(f.theta, {0.24, 0.25, 0.5, 1.0}), threads)) {
        const std::string name = "grid max|S| at theta=" + fmt(r.theta);
        if (r.criterion_margin >= 0.0) {
            t.add("thm1", name, r.grid_max.value, "<= 1+1e-12", r.grid_max.value <= 1.0 + 1e-12);
        } else {
            t.add("thm1", name, r.grid_max.value, "> 1+1e-4", r.grid_max.value > 1.0 + 1e-4);
        }
    }
}

inline void verify_thm2(const VerifyFlags& f, CheckTable& t) {
    for (double theta : thetas_or(f.theta, {1.0 / 3.0, 0.32})) {
        const analysis::Extremum e = analysis::thm2_real_cone_scan(theta, f.common.thread_count());
        const std::string name = "real cone max|S| at theta=" + fmt(theta);
        if (theta >= 1.0 / 3.0) {
            t.add("thm2", name, e.value, "<= 1+1e-12", e.value <= 1.0 + 1e-12);
        } else {
            t.add("thm2", name, e.value, "> 1 (witness)", e.value > 1.0);
            std::ostringstream w;
            io::numeric(w) << "  witness z0=" << e.witness.z0.real()
                           << " z1=" << e.witness.z1.real() << " z2=" << e.witness.z2.real();
            t.note(w.str());
        }
    }
}

inline void verify_thm3(const VerifyFlags& f, CheckTable& t) {
    for (double theta : thetas_or(f.theta, {0.3, 0.4, 0.5})) {
        const double target = analysis::thm3_predicted_coefficient(theta);
        const double measured = analysis::thm3_cubic_coefficient(theta);
        const double tol = std::abs(target) < 1e-12 ? 1e-3 : 0.01 * std::abs(target);
        t.add("thm3", "cubic coefficient at theta=" + fmt(theta), measured,
              "40t^2-16t = " + fmt(target), std::abs(measured - target) <= tol);
        if (target < 0.0) {
            t.note("  theta=" + fmt(theta) +
                   ": negative cubic coefficient, instability near the imaginary axis confirmed");
        }
    }
}

inline void verify_thm4(const VerifyFlags& f, CheckTable& t) {
    const analysis::Maximum m = analysis::thm4_maximize();
    t.add("thm4", "argmax x*", m.x, "2 +- 1e-8", std::abs(m.x - 2.0) <= 1e-8);
    t.add("thm4", "max value", m.value, "5/12 +- 1e-10", std::abs(m.value - 5.0 / 12.0) <= 1e-10);
    for (double theta : thetas_or(f.theta, {0.40, 0.45})) {
        const auto w = analysis::thm4_witness_search(theta);
        const std::string name = "cone violation search at theta=" + fmt(theta);
        const double found = w ? w->abs_s : 1.0;
        if (theta < 5.0 / 12.0) {
            t.add("thm4", name, found, "witness |S| > 1", w.has_value());
        } else {
            t.add("thm4", name, found, "no witness", !w.has_value());
        }
    }
}

inline void verify_thm5(const VerifyFlags& f, CheckTable& t) {
    for (double theta : thetas_or(f.theta, {0.5, 0.75, 1.0})) {
        const analysis::Extremum e =
            analysis::random_cone_scan(theta, f.samples, f.common.seed, f.common.thread_count());
        t.add("thm5", "random cone max|S| at theta=" + fmt(theta), e.value, "<= 1+1e-12",
              e.value <= 1.0 + 1e-12);
        if (theta >= 0.5 && theta <= 1.0) {
            const analysis::BoundCheck b = analysis::thm5_bound_check(theta, 100, 200);
            t.add("thm5", "bound(r, 0) - 1 at theta=" + fmt(theta), b.max_deviation_at_phi0,
                  "<= 1e-12", b.max_deviation_at_phi0 <= 1e-12);
            t.add("thm5", "bound increase in phi at theta=" + fmt(theta), b.max_increase_in_phi,
                  "<= 0 (+1e-13)", b.max_increase_in_phi <= 1e-13);
        }
    }
}

inline void verify_lemma2(const VerifyFlags& f, CheckTable& t) {
    const analysis::Lemma2Scan s =
        analysis::lemma2_random_scan(f.samples, f.common.seed, f.common.thread_count());
    t.add("lemma2", "min gap over random inputs", s.min_gap, ">= -1e-12", s.min_gap >= -1e-12);
}

inline int cmd_verify(const VerifyFlags& f, std::ostream& out, std::ostream&) {
    const std::vector<std::pair<std::string, std::function<void(const VerifyFlags&, CheckTable&)>>>
        checks{{"1", verify_thm1}, {"2", verify_thm2}, {"3", verify_thm3},
               {"4", verify_thm4}, {"5", verify_thm5}, {"lemma2", verify_lemma2}};
    CheckTable table;
    for (const auto& [name, run] : checks) {
        if (f.theorem == "all" || f.theorem == name) run(f, table);
    }
    table.print(out);
    const bool ok = table.all_pass();
    out << (ok ? "ALL PASS" : "SOME CHECKS FAILED") << '\n';
    return ok ? kPass : kCheckFailed;
}

// ---------------------------------------------------------------------------
// amplification
// ---------------------------------------------------------------------------

struct AmplificationFlags {
    CommonFlags common;
    ProblemOverrides overrides;
    std::size_t k1 = 1;
    std::size_t k2 = 1;
    bool all_modes = false;
    double tolerance = 1e-12;
};

/// Prints measured and predicted one-step amplification per mode; fails when
/// |measured - predicted| > tolerance * max(1, |predicted|).
inline int cmd_amplification(const AmplificationFlags& f, std::ostream& out, std::ostream& err) {
    const ProblemConfig cfg = f.overrides.apply(f.common.config);
    const SplitOperators ops(cfg.coeffs, cfg.grid, cfg.params);
    std::vector<FourierMode> modes;
    if (f.all_modes) {
        for (std::size_t k2 = 0; k2 < cfg.grid.m2; ++k2) {
            for (std::size_t k1 = 0; k1 < cfg.grid.m1; ++k1) modes.push_back({k1, k2});
        }
    } else {
        const FourierMode m{f.k1, f.k2};
        try {
            m.validate(cfg.grid);
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        }
        modes.push_back(m);
    }

    OutputTarget target(f.common.out, out);
    std::ostream& csv = io::numeric(target.get());
    csv << "k1,k2,measured_re,measured_im,predicted_re,predicted_im,abs_measured,rel_diff\n";
    double worst = 0.0;
    for (const FourierMode& m : modes) {
        const MeasuredAmplification a = measure_amplification(cfg.scheme, ops, m);
        const Complex s = predicted_amplification(cfg.scheme, ops, m);
        const double scale = std::max(1.0, std::abs(s));
        const double rel = std::max(std::abs(a.factor - s), a.spread) / scale;
        worst = std::max(worst, rel);
        csv << m.k1 << ',' << m.k2 << ',' << a.factor.real() << ',' << a.factor.imag() << ','
            << s.real() << ',' << s.imag() << ',' << std::abs(a.factor) << ',' << rel << '\n';
        if (!std::isfinite(rel)) {
            err << "numerical breakdown at mode (" << m.k1 << ',' << m.k2 << ")\n";
            return kBreakdown;
        }
    }
    if (worst > f.tolerance) {
        io::numeric(err) << "amplification mismatch " << worst << " exceeds tolerance "
                         << f.tolerance << '\n';
        return kCheckFailed;
    }
    return kPass;
}

// ---------------------------------------------------------------------------
// entry point
// ---------------------------------------------------------------------------

/// Parses argv and dispatches; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Modified Craig-Sneyd ADI solver and von Neumann stability toolkit", "mcs"};
    app.set_version_flag("--version", std::string(io::kVersion));
    app.require_subcommand(1);

    SolveFlags solve;
    CLI::App* solve_cmd = app.add_subcommand("solve", "Run the time stepper on a config");
    add_common(*solve_cmd, solve.common);
    solve.overrides.add_to(*solve_cmd);
    solve_cmd->add_option("--log", solve.log, "Per-step norm log path (CSV)");

    Figure1Flags fig;
    CLI::App* fig_cmd = app.add_subcommand("figure1", "Random scan of max|S| over theta");
    add_common(*fig_cmd, fig.common);
    fig_cmd->add_option("--samples", fig.samples, "Samples per theta")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    auto* tmin = fig_cmd->add_option("--theta-min", fig.theta_min, "First theta")
                     ->capture_default_str();
    auto* tmax = fig_cmd->add_option("--theta-max", fig.theta_max, "Last theta")
                     ->capture_default_str();
    auto* tstep = fig_cmd->add_option("--theta-step", fig.theta_step, "Theta spacing")
                      ->check(CLI::PositiveNumber)
                      ->capture_default_str();
    fig_cmd->add_option("--theta-list", fig.theta_list, "Explicit comma separated theta values")
        ->delimiter(',')
        ->excludes(tmin)
        ->excludes(tmax)
        ->excludes(tstep);

    VerifyFlags verify;
    CLI::App* verify_cmd = app.add_subcommand("verify", "Check the stability thresholds");
    add_common(*verify_cmd, verify.common);
    verify_cmd->add_option("--theorem", verify.theorem, "1, 2, 3, 4, 5, lemma2 or all")
        ->check(CLI::IsMember({"1", "2", "3", "4", "5", "lemma2", "all"}))
        ->capture_default_str();
    verify_cmd->add_option("--theta", verify.theta, "Check a single theta instead of the defaults")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--samples", verify.samples, "Random samples for 5 and lemma2")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    AmplificationFlags amp;
    CLI::App* amp_cmd =
        app.add_subcommand("amplification", "Measured vs predicted one-step mode amplification");
    add_common(*amp_cmd, amp.common);
    amp.overrides.add_to(*amp_cmd);
    auto* k1 = amp_cmd->add_option("--k1", amp.k1, "Mode index in x")->capture_default_str();
    auto* k2 = amp_cmd->add_option("--k2", amp.k2, "Mode index in y")->capture_default_str();
    amp_cmd->add_flag("--all-modes", amp.all_modes, "Check every Fourier mode")
        ->excludes(k1)
        ->excludes(k2);
    amp_cmd->add_option("--tolerance", amp.tolerance, "Relative tolerance")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*solve_cmd) return cmd_solve(solve, out, err);
        if (*fig_cmd) return cmd_figure1(fig, out, err);
        if (*verify_cmd) return cmd_verify(verify, out, err);
        if (*amp_cmd) return cmd_amplification(amp, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const PoleError& e) {
        err << "numerical breakdown: " << e.what() << '\n';
        return kBreakdown;
    } catch (const SingularSystem& e) {
        err << "numerical breakdown: " << e.what() << '\n';
        return kBreakdown;
    }
    return kUsage;
}

}  // namespace mcs::cli
