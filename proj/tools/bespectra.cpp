// bespectra: command-line front end for the comparison eigenvalues.
//
// Exit status: 0 ok, 1 verification failure, 2 invalid arguments, 3 solver failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bespectra/bespectra.hpp"
#include "bespectra/config.hpp"

namespace {

using namespace bespectra;

constexpr int exit_verify_failed = 1;
constexpr int exit_invalid = 2;
constexpr int exit_solver = 3;

struct Globals {
    double tol = default_tolerance;
    unsigned jobs = 0;
    std::string output;
    std::string config;
};

/// stdout unless --output was given.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            require(static_cast<bool>(*file_), ErrorCode::InvalidArgument, "cannot write " + path);
        }
    }
    std::ostream& out() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            fail(ErrorCode::InvalidArgument, "not a number in list: '" + item + "'");
        }
    }
    require(!values.empty(), ErrorCode::InvalidArgument, "empty list");
    return values;
}

void print_value(std::ostream& os, const std::string& label, double v) {
    os << label << " = " << format_number(v) << '\n';
}

int cmd_eig_drift(const Globals& g, double a, double D) {
    DriftEigenQuery<double> q{a, D, g.tol};
    q.validate();
    const auto sol = neumann_drift_eigenvalue(q);
    const auto fd = fd_oracle(drift_problem(a, D), 512, 3);
    const double via_weber = drift_from_weber(a, D, g.tol);
    Sink sink(g.output);
    auto& os = sink.out();
    print_value(os, "lambda_bar", sol.eigenvalue);
    print_value(os, "fd_oracle", fd.eigenvalue);
    print_value(os, "fd_error_estimate", fd.error_estimate);
    print_value(os, "a/2+lambda_hat(a^2/4)", via_weber);
    print_value(os, "max_discrepancy",
                std::max(std::abs(sol.eigenvalue - fd.eigenvalue), std::abs(sol.eigenvalue - via_weber)));
    return 0;
}

int cmd_eig_weber(const Globals& g, double b, double D) {
    WeberEigenQuery<double> q{b, D, g.tol};
    q.validate();
    const auto sol = weber_dirichlet_eigenvalue(q);
    const auto fd = fd_oracle(weber_problem(b, D), 512, 3);
    Sink sink(g.output);
    auto& os = sink.out();
    print_value(os, "lambda_hat", sol.eigenvalue);
    print_value(os, "fd_oracle", fd.eigenvalue);
    print_value(os, "fd_error_estimate", fd.error_estimate);
    return 0;
}

int cmd_verify(const Globals& g) {
    const auto checks = run_invariant_suite();
    Sink sink(g.output);
    auto& os = sink.out();
    int failed = 0;
    for (const auto& r : checks.results()) {
        os << (r.passed ? "PASS" : "FAIL") << "  [" << r.module << "] " << r.name << ": " << r.detail << '\n';
        failed += r.passed ? 0 : 1;
    }
    os << checks.results().size() - failed << '/' << checks.results().size() << " checks passed\n";
    return failed ? exit_verify_failed : 0;
}

int cmd_taylor(const Globals& g, int order) {
    const auto lambdas = perturbation_coefficients(order);
    const double pi = boost::math::constants::pi<double>();
    Sink sink(g.output);
    auto& os = sink.out();
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        char dec[40];
        std::snprintf(dec, sizeof dec, "%.15e", lambdas[k].evaluate(pi));
        os << "lambda_" << k << " = " << lambdas[k] << " = " << dec << '\n';
    }
    return 0;
}

int cmd_figure1(const Globals& g) {
    const auto rows = figure1_rows(g.tol, g.jobs);
    Sink sink(g.output);
    CsvWriter csv(sink.out(), {"b", "lambda_hat", "bound_one", "bound_sqrt_b"});
    for (const auto& r : rows) csv.row({r.b, r.lambda_hat, r.bound_one, r.bound_sqrt_b});
    return 0;
}

int cmd_figure2(const Globals& g) {
    const auto rows = figure2_rows(g.tol, g.jobs);
    Sink sink(g.output);
    CsvWriter csv(sink.out(), {"a", "lambda_bar", "bound_linear", "bound_a", "line_2a"});
    for (const auto& r : rows) csv.row({r.a, r.lambda_bar, r.bound_linear, r.bound_a, r.line_2a});
    return 0;
}

void write_profile_csv(const ModelManifold& m, const std::string& path) {
    Sink sink(path);
    CsvWriter csv(sink.out(), {"s", "k", "y", "yprime", "f", "fprime", "rcf_radial", "rcf_tangential"});
    const auto rep = bakry_emery_report(m);
    const auto& table = m.table();
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& p = table[i];
        csv.row({p.s, p.k, p.y, p.yprime, p.f, p.fprime, rep.samples[i].radial, rep.samples[i].tangential});
    }
}

struct SharpnessArgs {
    int n = 3;
    double a = 1;
    double D = boost::math::constants::pi<double>();
    std::string r_list = "0.2,0.1,0.05";
    double delta_ratio = 0.1;
    std::string profile_csv;
};

int cmd_sharpness(const Globals& g, const SharpnessArgs& s) {
    std::vector<SharpnessRow> rows;
    std::optional<ProfileSpec> profile;
    if (!g.config.empty()) {
        profile = profile_spec_from_json(read_json_file(g.config));
        rows.push_back(sharpness_row(*profile, g.tol));
    } else {
        require(s.delta_ratio > 0 && s.delta_ratio < 0.25, ErrorCode::InvalidArgument,
                "delta-ratio must lie in (0, 1/4)");
        const auto rs = parse_list(s.r_list);
        for (double r : rs) ProfileSpec{s.n, r, r * s.delta_ratio, s.D, s.a, 4096}.validate();
        rows = sharpness_rows(s.n, s.a, s.D, rs, s.delta_ratio, g.jobs, g.tol);
        profile = ProfileSpec{s.n, rs.front(), rs.front() * s.delta_ratio, s.D, s.a, 4096};
    }
    if (!s.profile_csv.empty()) write_profile_csv(build_manifold(*profile), s.profile_csv);
    Sink sink(g.output);
    CsvWriter csv(sink.out(), {"r", "delta", "min_rcf_margin", "diameter", "lambda_sym", "lower_sandwich",
                               "upper_sandwich"});
    for (const auto& r : rows)
        csv.row({r.r, r.delta, r.min_rcf_margin, r.diameter, r.lambda_sym, r.lower_sandwich, r.upper_sandwich});
    return 0;
}

int cmd_diameter(const Globals& g, double a) {
    const auto b = soliton_diameter_bounds(a, 1e-11, g.tol);
    Sink sink(g.output);
    auto& os = sink.out();
    print_value(os, "basic", b.basic);
    print_value(os, "improved", b.improved);
    print_value(os, "lambda_bar_at_improved", b.lambda_at_improved);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bakry-Emery comparison eigenvalues"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--tol", g.tol, "eigenvalue tolerance")->check(CLI::PositiveNumber);
    app.add_option("--jobs", g.jobs, "parallel sweep workers (default: BESPECTRA_JOBS or all cores)");
    app.add_option("--output,-o", g.output, "write results here instead of stdout");
    app.add_option("--config", g.config, "JSON profile spec (n, r, delta, D, a, grid_points)")
        ->check(CLI::ExistingFile);

    double a = 0, D = boost::math::constants::pi<double>(), b = 0;
    auto* eig_drift = app.add_subcommand("eig-drift", "first nonzero Neumann eigenvalue of u'' - a s u'");
    eig_drift->add_option("--a", a, "drift strength")->required();
    eig_drift->add_option("--D", D, "interval length")->required();

    auto* eig_weber = app.add_subcommand("eig-weber", "first Dirichlet eigenvalue of w'' + (lambda - b s^2) w");
    eig_weber->add_option("--b", b, "oscillator strength")->required();
    eig_weber->add_option("--D", D, "interval length")->required();

    auto* verify = app.add_subcommand("verify", "run the invariant suite");

    int order = 4;
    auto* taylor = app.add_subcommand("taylor", "exact perturbation coefficients of lambda_hat(b, pi)");
    taylor->add_option("--order", order, "highest order (0..6)")->check(CLI::Range(0, 6));

    auto* fig1 = app.add_subcommand("figure1", "CSV of lambda_hat(b, pi) for b in [0, 100]");
    auto* fig2 = app.add_subcommand("figure2", "CSV of lambda_bar(a, pi) for a in [0, 10]");

    SharpnessArgs sa;
    auto* sharp = app.add_subcommand("sharpness", "sweep of the capped-cylinder construction");
    sharp->add_option("--n", sa.n, "hypersurface dimension")->check(CLI::Range(2, 64));
    sharp->add_option("--a", sa.a, "Bakry-Emery constant");
    sharp->add_option("--D", sa.D, "profile length")->check(CLI::PositiveNumber);
    sharp->add_option("--r-list", sa.r_list, "comma-separated cap radii");
    sharp->add_option("--delta-ratio", sa.delta_ratio, "delta / r");
    sharp->add_option("--profile-csv", sa.profile_csv, "also write the tabulated profile of the first spec");

    double da = 1;
    auto* diam = app.add_subcommand("diameter", "soliton diameter lower bounds");
    diam->add_option("--a", da, "soliton constant")->required()->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_invalid;
    }
    if (g.jobs == 0) g.jobs = default_jobs();

    try {
        if (*eig_drift) return cmd_eig_drift(g, a, D);
        if (*eig_weber) return cmd_eig_weber(g, b, D);
        if (*verify) return cmd_verify(g);
        if (*taylor) return cmd_taylor(g, order);
        if (*fig1) return cmd_figure1(g);
        if (*fig2) return cmd_figure2(g);
        if (*sharp) return cmd_sharpness(g, sa);
        if (*diam) return cmd_diameter(g, da);
    } catch (const SpectralError& e) {
        std::cerr << "bespectra: " << e.what() << '\n';
        const bool bad_input = e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::SpecInvalid ||
                               e.code() == ErrorCode::OrderExceeded;
        return bad_input ? exit_invalid : exit_solver;
    } catch (const std::exception& e) {
        std::cerr << "bespectra: " << e.what() << '\n';
        return exit_solver;
    }
    return exit_invalid;
}
