#pragma once

// Row generators behind the figure and sharpness sweeps.

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <vector>

#include "bespectra/drift_spectra.hpp"
#include "bespectra/model_manifold.hpp"
#include "bespectra/parallel.hpp"

namespace bespectra {

struct Figure1Row {
    double b;
    double lambda_hat;
    double bound_one;
    double bound_sqrt_b;
};

/// lambda_hat(b, pi) against its lower bounds 1 and sqrt(b), b = 0, step, ..., b_max.
inline std::vector<Figure1Row> figure1_rows(double tol = default_tolerance, unsigned jobs = 1,
                                            double b_max = 100, double step = 0.5) {
    const double pi = boost::math::constants::pi<double>();
    const auto count = static_cast<std::size_t>(std::floor(b_max / step + 1e-9)) + 1;
    return parallel_map(count, jobs, [&](std::size_t i) {
        const double b = static_cast<double>(i) * step;
        const double lambda = weber_dirichlet_eigenvalue(WeberEigenQuery<double>{b, pi, tol}).eigenvalue;
        return Figure1Row{b, lambda, 1.0, std::sqrt(b)};
    });
}

struct Figure2Row {
    double a;
    double lambda_bar;
    double bound_linear; ///< 1 + a/2
    double bound_a;
    double line_2a;
};

/// lambda_bar(a, pi) against 1 + a/2, a, and the soliton line 2a.
inline std::vector<Figure2Row> figure2_rows(double tol = default_tolerance, unsigned jobs = 1,
                                            double a_max = 10, double step = 0.05) {
    const double pi = boost::math::constants::pi<double>();
    const auto count = static_cast<std::size_t>(std::floor(a_max / step + 1e-9)) + 1;
    return parallel_map(count, jobs, [&](std::size_t i) {
        const double a = static_cast<double>(i) * step;
        const double lambda = neumann_drift_eigenvalue(DriftEigenQuery<double>{a, pi, tol}).eigenvalue;
        return Figure2Row{a, lambda, 1 + a / 2, a, 2 * a};
    });
}

struct SharpnessRow {
    double r;
    double delta;
    double min_rcf_margin;
    double diameter;
    double lambda_sym;
    double lower_sandwich; ///< lambda_bar(a, diameter)
    double upper_sandwich; ///< lambda_bar(a, D - pi r - 2 delta)
};

inline SharpnessRow sharpness_row(const ProfileSpec& spec, double tol = default_tolerance) {
    const auto m = build_manifold(spec);
    const auto rcf = bakry_emery_report(m);
    const double sym = symmetric_neumann_eigenvalue(m, tol).eigenvalue;
    const double lower = neumann_drift_eigenvalue(DriftEigenQuery<double>{spec.a, m.diameter(), tol}).eigenvalue;
    const double upper =
        neumann_drift_eigenvalue(DriftEigenQuery<double>{spec.a, m.cylinder_length(), tol}).eigenvalue;
    return {spec.r, spec.delta, rcf.margin, m.diameter(), sym, lower, upper};
}

inline std::vector<SharpnessRow> sharpness_rows(int n, double a, double D,
                                                const std::vector<double>& r_list,
                                                double delta_ratio, unsigned jobs = 1,
                                                double tol = default_tolerance) {
    return parallel_map(r_list.size(), jobs, [&](std::size_t i) {
        const double r = r_list[i];
        ProfileSpec spec{n, r, r * delta_ratio, D, a, 4096};
        return sharpness_row(spec, tol);
    });
}

} // namespace bespectra
