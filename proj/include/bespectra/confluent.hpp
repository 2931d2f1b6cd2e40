#pragma once

// Confluent hypergeometric characterizations of the Weber eigenvalue. These
// are validation paths; the shooting solver is the ground truth.
//
// For w'' + (lambda - s^2) w = 0 the even solution regular at s = 0 is
//     exp(-s^2/2) M(1/4 - lambda/4, 1/2, s^2)
// (Kummer M), so lambda_hat(1, D) is the first root of M(1/4 - lambda/4, 1/2, D^2/4).
// The Tricomi form exp(-s^2) U(1/4 - lambda/8, 1/2, 2 s^2) is also provided;
// it solves the b = 4 equation and has a kink at s = 0 unless U reduces to a
// Hermite polynomial, so it does not characterize the Dirichlet problem.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include <cmath>
#include <string>

#include "bespectra/errors.hpp"

namespace bespectra {

struct TricomiValue {
    double value;
    double digits_lost; ///< log10 cancellation in the downward recurrence
};

namespace detail {

/// U(a, b, z) for a > 0, z > 0 from
///     U = 1/Gamma(a) int_0^inf exp(-z t) t^(a-1) (1+t)^(b-a-1) dt.
/// For a < 1 the substitution t = v^(1/a) removes the endpoint singularity.
inline double tricomi_integral(double a, double b, double z) {
    boost::math::quadrature::exp_sinh<double> integrator;
    const double tol = 1e-14;
    if (a >= 1) {
        auto f = [=](double t) {
            if (t == 0) return a == 1 ? 1.0 : 0.0;
            return std::exp(-z * t + (a - 1) * std::log(t) + (b - a - 1) * std::log1p(t));
        };
        return integrator.integrate(f, tol) / std::tgamma(a);
    }
    auto f = [=](double v) {
        if (v == 0) return 1.0;
        const double t = std::pow(v, 1.0 / a);
        if (!std::isfinite(t)) return 0.0;
        return std::exp(-z * t + (b - a - 1) * std::log1p(t));
    };
    return integrator.integrate(f, tol) / std::tgamma(a + 1);
}

} // namespace detail

/// Tricomi's confluent hypergeometric function U(a, b, z), z > 0. Uses the
/// integral representation for a > 0 and the contiguous relation
///     U(a-1) = (2a - b + z) U(a) - a (a - b + 1) U(a+1)
/// downward otherwise. Throws EvaluationUnstable when the recurrence cancels
/// six or more significant digits.
inline TricomiValue tricomi_u(double a, double b, double z) {
    require(z > 0, ErrorCode::InvalidArgument, "tricomi_u needs z > 0");
    if (a > 0) return {detail::tricomi_integral(a, b, z), 0.0};

    const int steps = static_cast<int>(std::floor(-a)) + 1;
    double top = a + steps; // in (0, 1]
    double u_next = detail::tricomi_integral(top + 1, b, z);
    double u_curr = detail::tricomi_integral(top, b, z);
    double largest = std::max(std::abs(u_next), std::abs(u_curr));
    for (int i = 0; i < steps; ++i) {
        const double t1 = (2 * top - b + z) * u_curr;
        const double t2 = top * (top - b + 1) * u_next;
        const double u_prev = t1 - t2;
        largest = std::max({largest, std::abs(t1), std::abs(t2)});
        u_next = u_curr;
        u_curr = u_prev;
        top -= 1;
    }
    const double lost = u_curr == 0 ? INFINITY : std::log10(largest / std::abs(u_curr));
    if (lost >= 6)
        fail(ErrorCode::EvaluationUnstable,
             "U(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(z) +
                 ") lost " + std::to_string(lost) + " digits in the recurrence");
    return {u_curr, std::max(0.0, lost)};
}

/// U(1/4 - lambda/8, 1/2, D^2/2), the closed-form characteristic as usually
/// quoted for the Weber problem on [-D/2, D/2].
inline double tricomi_characteristic(double lambda, double D) {
    require(D > 0, ErrorCode::InvalidArgument, "D must be positive");
    return tricomi_u(0.25 - lambda / 8, 0.5, D * D / 2).value;
}

/// M(1/4 - lambda/4, 1/2, D^2/4); its first root in lambda is lambda_hat(1, D).
inline double kummer_characteristic(double lambda, double D) {
    require(D > 0, ErrorCode::InvalidArgument, "D must be positive");
    return boost::math::hypergeometric_1F1(0.25 - lambda / 4, 0.5, D * D / 4);
}

enum class WeberForm {
    TricomiQuoted,   ///< exp(-s^2) U(1/4 - lambda/8, 1/2, 2 s^2)
    TricomiStandard, ///< exp(-s^2/2) U(1/4 - lambda/4, 1/2, s^2)
    Kummer,          ///< exp(-s^2/2) M(1/4 - lambda/4, 1/2, s^2)
};

/// Closed-form candidate solutions of w'' + (lambda - s^2) w = 0 at s != 0.
inline double weber_closed_form(WeberForm form, double lambda, double s) {
    const double s2 = s * s;
    switch (form) {
    case WeberForm::TricomiQuoted:
        return std::exp(-s2) * tricomi_u(0.25 - lambda / 8, 0.5, 2 * s2).value;
    case WeberForm::TricomiStandard:
        return std::exp(-s2 / 2) * tricomi_u(0.25 - lambda / 4, 0.5, s2).value;
    case WeberForm::Kummer:
        return std::exp(-s2 / 2) * boost::math::hypergeometric_1F1(0.25 - lambda / 4, 0.5, s2);
    }
    return 0.0;
}

} // namespace bespectra
