#pragma once

// The two one-dimensional comparison eigenvalues:
//
//   lambda_bar(a, D): first nonzero Neumann eigenvalue of u'' - a s u' on
//                     [-D/2, D/2] (weight exp(-a s^2 / 2));
//   lambda_hat(b, D): first Dirichlet eigenvalue of w'' + (lambda - b s^2) w
//                     on [-D/2, D/2].
//
// plus the lower bounds and soliton diameter bounds built from them.

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "bespectra/errors.hpp"
#include "bespectra/ode_eigen.hpp"

namespace bespectra {

inline constexpr double default_tolerance = 1e-11;

template <class Real = double>
struct DriftEigenQuery {
    Real a{};
    Real D{};
    Real tol = Real(default_tolerance);

    void validate() const {
        require(D > 0, ErrorCode::InvalidArgument, "D must be positive");
        require(tol > 0, ErrorCode::InvalidArgument, "tol must be positive");
    }
};

template <class Real = double>
struct WeberEigenQuery {
    Real b{};
    Real D{};
    Real tol = Real(default_tolerance);

    void validate() const {
        require(b >= 0, ErrorCode::InvalidArgument, "b must be non-negative");
        require(D > 0, ErrorCode::InvalidArgument, "D must be positive");
        require(tol > 0, ErrorCode::InvalidArgument, "tol must be positive");
    }
};

template <class Real = double>
SLProblem<Real> drift_problem(Real a, Real D) {
    SLProblem<Real> p;
    p.drift = [a](Real s) { return a * s; };
    p.potential = [](Real) { return Real(0); };
    p.weight = [a](Real s) {
        using std::exp;
        return Real(exp(-a * s * s / 2));
    };
    p.s_lo = -D / 2;
    p.s_hi = D / 2;
    p.parity = Parity::OddNeumann;
    return p;
}

template <class Real = double>
SLProblem<Real> weber_problem(Real b, Real D) {
    SLProblem<Real> p;
    p.drift = [](Real) { return Real(0); };
    p.potential = [b](Real s) { return b * s * s; };
    p.weight = [](Real) { return Real(1); };
    p.s_lo = -D / 2;
    p.s_hi = D / 2;
    p.parity = Parity::EvenDirichlet;
    return p;
}

/// lambda_bar(a, D). The eigenfunction is odd, normalized by u'(0) = 1.
template <class Real = double>
EigenSolution<Real> neumann_drift_eigenvalue(const DriftEigenQuery<Real>& q,
                                             const SolveOptions<Real>& options = {}) {
    q.validate();
    return solve_first_eigenvalue(drift_problem(q.a, q.D), q.tol, options);
}

/// lambda_hat(b, D). The eigenfunction is even and positive, u(0) = 1.
template <class Real = double>
EigenSolution<Real> weber_dirichlet_eigenvalue(const WeberEigenQuery<Real>& q,
                                               const SolveOptions<Real>& options = {}) {
    q.validate();
    return solve_first_eigenvalue(weber_problem(q.b, q.D), q.tol, options);
}

/// a/2 + lambda_hat(a^2/4, D): the drift eigenvalue through the substitution
/// w = exp(-a s^2 / 4) u', valid for either sign of a.
template <class Real = double>
Real drift_from_weber(Real a, Real D, Real tol = Real(default_tolerance)) {
    require(D > 0, ErrorCode::InvalidArgument, "D must be positive");
    return a / 2 + weber_dirichlet_eigenvalue(WeberEigenQuery<Real>{a * a / 4, D, tol}).eigenvalue;
}

struct NamedBound {
    std::string name;
    double value;
    bool satisfied;
    bool asserted; ///< proven for this sign of a
};

struct BoundsReport {
    double lambda;
    double tol;
    std::vector<NamedBound> bounds;

    bool all_asserted_hold() const {
        for (const auto& b : bounds)
            if (b.asserted && !b.satisfied) return false;
        return true;
    }
};

/// lambda_bar(a, D) against a, pi^2/D^2 and a/2 + pi^2/D^2. The first and
/// last are only proven for a > 0, pi^2/D^2 for a >= 0; for a < 0 it fails,
/// e.g. lambda_bar(-1, pi) = 0.58. Unproven bounds are reported, not asserted.
inline BoundsReport lower_bounds_drift(double a, double D, double tol = 1e-9) {
    require(D > 0, ErrorCode::InvalidArgument, "D must be positive");
    const double pi = boost::math::constants::pi<double>();
    const double lambda = neumann_drift_eigenvalue(DriftEigenQuery<double>{a, D}).eigenvalue;
    const double dirichlet_gap = pi * pi / (D * D);
    BoundsReport r{lambda, tol, {}};
    auto add = [&](std::string name, double value, bool asserted) {
        r.bounds.push_back({std::move(name), value, lambda >= value - tol, asserted});
    };
    add("a", a, a > 0);
    add("pi^2/D^2", dirichlet_gap, a >= 0);
    add("a/2+pi^2/D^2", a / 2 + dirichlet_gap, a > 0);
    return r;
}

struct DiameterBounds {
    double a;
    double basic;    ///< pi * sqrt(2 / (3a)), from lambda_bar >= a/2 + pi^2/D^2
    double improved; ///< the D solving lambda_bar(a, D) = 2a
    double lambda_at_improved;
};

/// Diameter lower bounds for a nontrivial shrinking soliton with constant a,
/// from 2a being a drift-Laplacian eigenvalue.
inline DiameterBounds soliton_diameter_bounds(double a, double d_tol = 1e-11,
                                              double eigen_tol = default_tolerance) {
    require(a > 0, ErrorCode::InvalidArgument, "diameter bounds need a > 0");
    const double pi = boost::math::constants::pi<double>();
    auto excess = [&](double D) {
        return neumann_drift_eigenvalue(DriftEigenQuery<double>{a, D, eigen_tol}).eigenvalue -
               2 * a;
    };

    // lambda_bar(a, .) is strictly decreasing: scan D = 0.1 * 2^k for a sign change.
    double lo = 0.1, f_lo = excess(lo);
    require(f_lo > 0, ErrorCode::RootNotBracketed,
            "lambda_bar(a, 0.1) is already below 2a; scanned D in [0.1, 0.1]");
    double hi = lo;
    bool found = false;
    for (int k = 1; k <= 24; ++k) {
        hi = 0.1 * std::ldexp(1.0, k);
        if (excess(hi) < 0) {
            found = true;
            break;
        }
        lo = hi;
    }
    if (!found)
        fail(ErrorCode::RootNotBracketed,
             "lambda_bar(a, D) stays above 2a for D in [0.1, " + std::to_string(hi) + "]");
    while (hi - lo > d_tol) {
        const double mid = (lo + hi) / 2;
        if (excess(mid) > 0) lo = mid;
        else hi = mid;
    }
    const double improved = (lo + hi) / 2;
    return {a, pi * std::sqrt(2.0 / (3.0 * a)), improved, excess(improved) + 2 * a};
}

} // namespace bespectra
