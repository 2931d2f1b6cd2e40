#pragma once

// The invariant suite behind `bespectra verify`. Each check is a named
// predicate; solver exceptions count as failures. Checks whose expected
// outcome is a documented failure (e.g. Rc_f for n = 2, a > 0) pass when the
// failure is observed.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bespectra/confluent.hpp"
#include "bespectra/drift_spectra.hpp"
#include "bespectra/model_manifold.hpp"
#include "bespectra/perturbation.hpp"

namespace bespectra {

struct CheckResult {
    std::string module;
    std::string name;
    bool passed;
    std::string detail;
};

class CheckList {
public:
    /// Runs body, which returns (passed, detail); exceptions become failures.
    void run(const std::string& module, const std::string& name,
             const std::function<std::pair<bool, std::string>()>& body) {
        try {
            auto [ok, detail] = body();
            results_.push_back({module, name, ok, std::move(detail)});
        } catch (const std::exception& e) {
            results_.push_back({module, name, false, std::string("threw: ") + e.what()});
        }
    }

    const std::vector<CheckResult>& results() const { return results_; }
    bool all_passed() const {
        for (const auto& r : results_)
            if (!r.passed) return false;
        return true;
    }

private:
    std::vector<CheckResult> results_;
};

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

inline double lbar(double a, double D) {
    return neumann_drift_eigenvalue(DriftEigenQuery<double>{a, D}).eigenvalue;
}
inline double lhat(double b, double D) {
    return weber_dirichlet_eigenvalue(WeberEigenQuery<double>{b, D}).eigenvalue;
}

/// Max |lhs - rhs| over a parameter grid, as a check outcome.
template <class Fn>
std::pair<bool, std::string> max_gap(const std::vector<std::pair<double, double>>& grid, double tol,
                                     Fn gap) {
    double worst = 0;
    std::string where;
    for (auto [x, y] : grid) {
        const double g = std::abs(gap(x, y));
        if (g >= worst) {
            worst = g;
            where = "(" + fmt(x) + ", " + fmt(y) + ")";
        }
    }
    return {worst <= tol, "max deviation " + fmt(worst) + " at " + where};
}

inline std::vector<std::pair<double, double>> product(const std::vector<double>& xs,
                                                      const std::vector<double>& ys) {
    std::vector<std::pair<double, double>> out;
    for (double x : xs)
        for (double y : ys) out.emplace_back(x, y);
    return out;
}

} // namespace detail

inline void add_ode_eigen_checks(CheckList& c) {
    using detail::fmt;
    const double pi = boost::math::constants::pi<double>();
    c.run("ode_eigen", "trivial spectra by shooting", [&] {
        const double d = std::abs(detail::lbar(0, pi) - 1), w = std::abs(detail::lhat(0, pi) - 1);
        return std::pair{d <= 1e-10 && w <= 1e-10, "drift " + fmt(d) + ", weber " + fmt(w)};
    });
    c.run("ode_eigen", "trivial spectra by the FD oracle", [&] {
        const double d = std::abs(fd_oracle_eigenvalue(drift_problem(0.0, pi), 512, 3) - 1);
        const double w = std::abs(fd_oracle_eigenvalue(weber_problem(0.0, pi), 512, 3) - 1);
        return std::pair{d <= 1e-6 && w <= 1e-6, "drift " + fmt(d) + ", weber " + fmt(w)};
    });
    c.run("ode_eigen", "shooting agrees with the FD oracle", [&] {
        return detail::max_gap(detail::product({-1, 1, 4}, {1, pi}), 1e-7, [](double a, double D) {
            return detail::lbar(a, D) - fd_oracle_eigenvalue(drift_problem(a, D), 512, 3);
        });
    });
    c.run("ode_eigen", "eigenvalue decreases with D", [&] {
        double prev = INFINITY;
        bool ok = true;
        for (double D : {1.0, 2.0, 3.0, 4.0, 5.0}) {
            const double v = detail::lbar(1, D);
            ok = ok && v < prev;
            prev = v;
        }
        return std::pair{ok, std::string("a = 1, D = 1..5")};
    });
    c.run("ode_eigen", "ODE residual of the shooting eigenfunction", [&] {
        const auto sol = neumann_drift_eigenvalue(DriftEigenQuery<double>{1, pi});
        return std::pair{sol.residual <= 1e-5, "residual " + fmt(sol.residual)};
    });
}

inline void add_drift_spectra_checks(CheckList& c) {
    using detail::fmt;
    const double pi = boost::math::constants::pi<double>();
    const std::vector<double> Ds{1, pi, 5};
    c.run("drift_spectra", "lambda_bar(a,D) = a/2 + lambda_hat(a^2/4,D)", [&] {
        return detail::max_gap(detail::product({-2, -1, 0, 0.5, 1, 2, 4}, Ds), 1e-7,
                               [](double a, double D) { return detail::lbar(a, D) - drift_from_weber(a, D); });
    });
    c.run("drift_spectra", "normalization to a = 2", [&] {
        return detail::max_gap(detail::product({0.5, 1, 4}, Ds), 1e-7, [](double a, double D) {
            return detail::lbar(a, D) - a / 2 * detail::lbar(2, std::sqrt(a / 2) * D);
        });
    });
    c.run("drift_spectra", "scaling to a = 1", [&] {
        return detail::max_gap(detail::product({0.5, 2, 4}, Ds), 1e-7, [](double a, double D) {
            return detail::lbar(a, D) - a * detail::lbar(1, std::sqrt(a) * D);
        });
    });
    c.run("drift_spectra", "scaling to b = 1", [&] {
        return detail::max_gap(detail::product({0.25, 4}, Ds), 1e-7, [](double b, double D) {
            return detail::lhat(b, D) - std::sqrt(b) * detail::lhat(1, std::pow(b, 0.25) * D);
        });
    });
    c.run("drift_spectra", "lambda_hat(1,D) from the pi-interval", [&] {
        return detail::max_gap(detail::product({1, 2, pi, 5}, {0}), 1e-7, [&](double D, double) {
            return detail::lhat(1, D) - pi * pi / (D * D) * detail::lhat(std::pow(D / pi, 4), pi);
        });
    });
    c.run("drift_spectra", "lambda_bar(2,D) = lambda_hat(1,D) + 1", [&] {
        return detail::max_gap(detail::product(Ds, {0}), 1e-7, [](double D, double) {
            return detail::lbar(2, D) - detail::lhat(1, D) - 1;
        });
    });
    c.run("drift_spectra", "lambda_hat(b,pi) >= max(1, sqrt b)", [&] {
        double worst = INFINITY;
        for (double b : {0.1, 1.0, 4.0, 25.0, 100.0})
            worst = std::min(worst, detail::lhat(b, pi) - std::max(1.0, std::sqrt(b)));
        return std::pair{worst >= -1e-9, "min excess " + fmt(worst)};
    });
    c.run("drift_spectra", "lower bounds a, pi^2/D^2, a/2 + pi^2/D^2", [&] {
        bool ok = true;
        std::string bad;
        for (double a : {-1.0, 0.0, 0.5, 1.0, 2.0, 4.0})
            for (double D : Ds)
                if (!lower_bounds_drift(a, D).all_asserted_hold()) {
                    ok = false;
                    bad += " (" + fmt(a) + ", " + fmt(D) + ")";
                }
        return std::pair{ok, ok ? std::string("all asserted bounds hold") : "violated at" + bad};
    });
    c.run("drift_spectra", "pi^2/D^2 fails for a < 0 (expected)", [&] {
        const auto rep = lower_bounds_drift(-1, pi);
        return std::pair{!rep.bounds[1].satisfied, "lambda_bar(-1, pi) = " + fmt(rep.lambda)};
    });
    c.run("drift_spectra", "monotone in a and b", [&] {
        bool ok = true;
        double pa = -INFINITY, pb = -INFINITY;
        for (double x : {0.0, 0.5, 1.0, 2.0, 4.0}) {
            const double la = detail::lbar(x, pi), lb = detail::lhat(x, pi);
            ok = ok && la > pa && lb > pb;
            pa = la;
            pb = lb;
        }
        return std::pair{ok, std::string("grid 0, 0.5, 1, 2, 4 on D = pi")};
    });
    c.run("drift_spectra", "odd eigenfunction has positive derivative on the half-interval", [&] {
        const auto sol = neumann_drift_eigenvalue(DriftEigenQuery<double>{1, pi});
        double worst = INFINITY;
        for (std::size_t i = 0; i + 1 < sol.samples.size(); ++i) worst = std::min(worst, sol.samples[i].du);
        return std::pair{worst > 0, "min u' " + fmt(worst)};
    });
    c.run("drift_spectra", "lambda_hat(1,12) approaches 1", [&] {
        const double d = detail::lhat(1, 12) - 1;
        return std::pair{std::abs(d) <= 1e-4, "excess " + fmt(d)};
    });
    c.run("drift_spectra", "Kummer characteristic brackets lambda_hat(1,3)", [&] {
        const double l = detail::lhat(1, 3);
        const double p = kummer_characteristic(l - 0.1, 3) * kummer_characteristic(l + 0.1, 3);
        return std::pair{p < 0, "product " + fmt(p)};
    });
    c.run("drift_spectra", "quoted Tricomi characteristic fails to bracket (expected)", [&] {
        const double l = detail::lhat(1, 3);
        const double p = tricomi_characteristic(l - 0.1, 3) * tricomi_characteristic(l + 0.1, 3);
        return std::pair{p > 0, "product " + fmt(p) + " (no sign change, as documented)"};
    });
    c.run("drift_spectra", "soliton diameter bounds", [&] {
        const auto b1 = soliton_diameter_bounds(1);
        const double basic_err = std::abs(b1.basic - pi * std::sqrt(2.0 / 3.0));
        double spread = 0;
        for (double a : {0.5, 2.0, 4.0})
            spread = std::max(spread, std::abs(soliton_diameter_bounds(a).improved * std::sqrt(a) - b1.improved));
        const bool ok = basic_err <= 1e-10 && std::abs(b1.lambda_at_improved - 2) <= 1e-8 &&
                        b1.improved > b1.basic && spread <= 1e-6;
        return std::pair{ok, "basic " + fmt(b1.basic) + ", improved " + fmt(b1.improved) +
                                 ", scaling spread " + fmt(spread)};
    });
}

inline void add_perturbation_checks(CheckList& c) {
    using detail::fmt;
    const double pi = boost::math::constants::pi<double>();
    c.run("perturbation", "exact lambda_1..lambda_4", [&] {
        const auto l = perturbation_coefficients(4);
        const std::vector<std::string> expected{
            "1", "pi^2/12 - 1/2", "pi^4/720 - 5*pi^2/48 + 7/8",
            "pi^6/30240 - pi^4/48 + 31*pi^2/32 - 121/16",
            "pi^8/362880 - pi^6/270 + 683*pi^4/1280 - 14573*pi^2/768 + 17771/128"};
        for (std::size_t k = 0; k < expected.size(); ++k)
            if (l[k].to_string() != expected[k]) return std::pair{false, "lambda_" + std::to_string(k) + " = " + l[k].to_string()};
        return std::pair{true, std::string("symbol-for-symbol")};
    });
    c.run("perturbation", "orders through 6 close with u_k(pi/2) = 0", [&] {
        const auto st = perturbation_expansion(6);
        for (const auto& u : st.terms)
            if (!u.boundary_value_over_pi().is_zero()) return std::pair{false, std::string("nonzero boundary value")};
        return std::pair{true, std::string("exact, degree <= 3k")};
    });
    c.run("perturbation", "truncated ansatz residual is O(b^5)", [&] {
        // The residual sits near 1e-16 at these b, so double rounding would swamp it.
        using Wide = boost::multiprecision::cpp_bin_float_50;
        const auto st = perturbation_expansion(4);
        const Wide wpi = boost::math::constants::pi<Wide>();
        auto worst = [&](const char* b) {
            Wide m = 0;
            for (int i = 0; i <= 64; ++i) {
                const Wide r = st.residual<Wide>(wpi / 2 * i / 64, Wide(b), 4);
                m = std::max(m, Wide(abs(r)));
            }
            return m;
        };
        const double ratio = static_cast<double>(worst("0.01") / worst("0.005"));
        return std::pair{ratio >= 24 && ratio <= 40, "halving ratio " + fmt(ratio)};
    });
    c.run("perturbation", "series within 10 b^5 of the solver", [&] {
        const auto l = perturbation_coefficients(4);
        double worst = 0;
        for (double b : {0.01, 0.02, 0.05, 0.1})
            worst = std::max(worst, std::abs(detail::lhat(b, pi) - evaluate_series(l, SeriesTarget::WeberPi, b, pi, 4)) /
                                        (10 * std::pow(b, 5)));
        return std::pair{worst <= 1, "max |error| / (10 b^5) = " + fmt(worst)};
    });
    c.run("perturbation", "a/2 is the best linear coefficient", [&] {
        const double l1 = perturbation_coefficients(1)[1].evaluate(pi);
        bool ok = true;
        std::string note;
        for (double a : {0.1, 0.05}) {
            const double q = (detail::lbar(a, pi) - 1 - a / 2) / (a * a);
            ok = ok && q > 0 && std::abs(q - l1 / 4) <= 0.05 * l1;
            note += "a=" + fmt(a) + ": " + fmt(q) + " ";
        }
        return std::pair{ok, note + "vs lambda_1/4 = " + fmt(l1 / 4)};
    });
}

inline void add_model_manifold_checks(CheckList& c) {
    using detail::fmt;
    const double pi = boost::math::constants::pi<double>();
    c.run("model_manifold", "smoothing function", [&] {
        const bool ok = smoothing_function(-1) == 1 && smoothing_function(1) == 0 &&
                        std::abs(smoothing_function(0) - 0.5) < 1e-15 &&
                        std::abs(smoothing_function(0.5) + smoothing_function(-0.5) - 1) < 1e-15;
        return std::pair{ok, std::string("endpoints, midpoint, antisymmetry")};
    });
    const auto m = build_manifold(ProfileSpec::with_default_delta(3, 0.1, pi, 1));
    c.run("model_manifold", "profile reflection symmetry", [&] {
        const auto& t = m.table();
        double worst = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const auto& p = t[i];
            const auto& q = t[t.size() - 1 - i];
            worst = std::max({worst, std::abs(p.k - q.k), std::abs(p.y - q.y), std::abs(p.yprime + q.yprime),
                              std::abs(p.f - q.f), std::abs(p.fprime + q.fprime), std::abs(p.fsecond - q.fsecond)});
        }
        return std::pair{worst <= 1e-12, "max asymmetry " + fmt(worst)};
    });
    c.run("model_manifold", "cap, cylinder and pole values", [&] {
        const auto& s = m.spec();
        const auto p0 = m.at(0), pc = m.at(s.D / 2), p1 = m.at(s.cap_end() / 2);
        const bool ok = p0.y == 0 && p0.yprime == 1 && p0.fprime == 0 && std::abs(pc.fprime) <= 1e-9 &&
                        pc.yprime == 0 && pc.fsecond == s.a &&
                        std::abs(p0.fsecond - s.a * (1 - s.D / (pi * s.r))) <= 1e-12 &&
                        std::abs(p1.y - s.r * std::sin(p1.s / s.r)) <= 1e-14 &&
                        std::abs(pc.y - s.r) <= 10 * s.delta;
        return std::pair{ok, "f'(D/2) = " + fmt(pc.fprime) + ", y(D/2) - r = " + fmt(pc.y - s.r)};
    });
    c.run("model_manifold", "Rc_f >= a for n = 3, a = 1", [&] {
        const double margin = bakry_emery_report(m).margin;
        return std::pair{margin >= -1e-6, "margin " + fmt(margin)};
    });
    c.run("model_manifold", "Rc_f >= a for n = 2, a = -1", [&] {
        const double margin = bakry_emery_report(build_manifold(ProfileSpec::with_default_delta(2, 0.1, pi, -1))).margin;
        return std::pair{margin >= -1e-6, "margin " + fmt(margin)};
    });
    c.run("model_manifold", "Rc_f < a for n = 2, a = 1 (expected)", [&] {
        const double margin = bakry_emery_report(build_manifold(ProfileSpec::with_default_delta(2, 0.1, pi, 1))).margin;
        return std::pair{margin < -1e-6, "margin " + fmt(margin) + " (fails, as it must)"};
    });
    c.run("model_manifold", "eigenvalue sandwich and Rayleigh bound", [&] {
        const double sym = symmetric_neumann_eigenvalue(m).eigenvalue;
        const double lower = detail::lbar(1, m.diameter());
        const auto ray = rayleigh_report(m);
        const bool ok = lower - 1e-5 <= sym && sym <= ray.quotient + 1e-9 &&
                        ray.quotient <= ray.cylinder_eigenvalue + 1e-9;
        return std::pair{ok, fmt(lower) + " <= " + fmt(sym) + " <= " + fmt(ray.quotient) + " <= " +
                                 fmt(ray.cylinder_eigenvalue)};
    });
    c.run("model_manifold", "round sphere limit", [&] {
        const double D = pi, delta = 0.01;
        const auto sphere = build_manifold(ProfileSpec{3, (D - 2 * delta) / pi, delta, D, 0, 4096});
        const double rel = symmetric_neumann_eigenvalue(sphere).eigenvalue / 3 - 1;
        return std::pair{std::abs(rel) <= 0.01, "relative error " + fmt(rel)};
    });
    c.run("model_manifold", "heat flow keeps the modulus of continuity", [&] {
        const auto rep = heat_modulus_check(m, 1.0);
        return std::pair{rep.violations == 0, "C = " + fmt(rep.modulus_constant) + ", min slack " + fmt(rep.min_slack)};
    });
}

inline CheckList run_invariant_suite() {
    CheckList c;
    add_ode_eigen_checks(c);
    add_drift_spectra_checks(c);
    add_perturbation_checks(c);
    add_model_manifold_checks(c);
    return c;
}

} // namespace bespectra
