#include <catch_amalgamated.hpp>

#include <cmath>

#include "bespectra/confluent.hpp"
#include "bespectra/drift_spectra.hpp"

using namespace bespectra;

TEST_CASE("Tricomi U against mpmath") {
    CHECK(tricomi_u(0.3, 0.5, 2).value == Catch::Approx(0.7452924078740466978583).epsilon(1e-13));
    CHECK(tricomi_u(-0.7, 0.5, 2).value == Catch::Approx(1.516001260230337176843).epsilon(1e-13));
    CHECK(tricomi_u(-2.3, 0.5, 4.5).value == Catch::Approx(5.938583868705176085214).epsilon(1e-12));
    CHECK(tricomi_u(1.5, 0.5, 0.5).value == Catch::Approx(0.4403282405454046973568).epsilon(1e-13));
    CHECK(tricomi_u(0.01, 0.5, 4.5).value == Catch::Approx(0.984097991193999).epsilon(1e-13));
}

TEST_CASE("the recurrence reports lost digits") {
    const auto v = tricomi_u(-2.3, 0.5, 4.5);
    CHECK(v.digits_lost >= 0);
    CHECK(v.digits_lost < 6);
    CHECK_THROWS_AS(tricomi_u(0.3, 0.5, 0), SpectralError);
    // Bisect onto the zero of U(., 1/2, 1) in (-2.56, -2.55): near it the
    // recurrence cancels almost every digit.
    double lo = -2.56, hi = -2.55;
    bool unstable = false;
    for (int i = 0; i < 60 && !unstable; ++i) {
        const double mid = (lo + hi) / 2;
        try {
            (tricomi_u(lo, 0.5, 1.0).value * tricomi_u(mid, 0.5, 1.0).value < 0 ? hi : lo) = mid;
        } catch (const SpectralError& e) {
            unstable = e.code() == ErrorCode::EvaluationUnstable;
        }
    }
    CHECK(unstable);
}

TEST_CASE("Kummer characteristic brackets the Dirichlet eigenvalue") {
    for (double D : {2.0, 3.0, M_PI}) {
        const double l = weber_dirichlet_eigenvalue(WeberEigenQuery<double>{1, D}).eigenvalue;
        INFO("D = " << D);
        CHECK(kummer_characteristic(l - 0.1, D) * kummer_characteristic(l + 0.1, D) < 0);
        CHECK(std::abs(kummer_characteristic(l, D)) < 1e-9);
    }
}

TEST_CASE("the quoted Tricomi characteristic does not bracket it") {
    // Expected failure: U(1/4 - lambda/8, 1/2, D^2/2) keeps its sign across lambda_hat(1, 3).
    const double l = weber_dirichlet_eigenvalue(WeberEigenQuery<double>{1, 3}).eigenvalue;
    const double lo = tricomi_characteristic(l - 0.1, 3), hi = tricomi_characteristic(l + 0.1, 3);
    CHECK(lo == Catch::Approx(0.8642).epsilon(1e-3));
    CHECK(hi == Catch::Approx(0.9001).epsilon(1e-3));
    CHECK(lo * hi > 0);
    // It is still strictly monotone in lambda there.
    double prev = -INFINITY;
    for (double x = l - 0.1; x <= l + 0.1; x += 0.02) {
        const double v = tricomi_characteristic(x, 3);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("closed forms against the shooting eigenfunction") {
    const double D = 3.0;
    const auto sol = weber_dirichlet_eigenvalue(WeberEigenQuery<double>{1, D});
    const double l = sol.eigenvalue;
    auto ratio = [&](WeberForm f, double s) { return weber_closed_form(f, l, s) / sol.value(s); };
    // Proportional forms have a constant ratio.
    CHECK(ratio(WeberForm::Kummer, 0.5) == Catch::Approx(ratio(WeberForm::Kummer, 1.0)).epsilon(1e-8));
    CHECK(std::abs(ratio(WeberForm::TricomiStandard, 0.5) / ratio(WeberForm::TricomiStandard, 1.0) - 1) > 1e-3);
    CHECK(std::abs(ratio(WeberForm::TricomiQuoted, 0.5) / ratio(WeberForm::TricomiQuoted, 1.0) - 1) > 1e-3);
}

TEST_CASE("which equation each closed form solves") {
    // Second differences against w'' = (b s^2 - lambda) w at s != 0.
    const double l = 2.3, h = 1e-3;
    auto defect = [&](WeberForm f, double b, double s) {
        const double w0 = weber_closed_form(f, l, s);
        const double d2 = (weber_closed_form(f, l, s + h) - 2 * w0 + weber_closed_form(f, l, s - h)) / (h * h);
        return std::abs(d2 - (b * s * s - l) * w0) / std::max(1.0, std::abs(w0));
    };
    for (double s : {0.6, 1.1}) {
        CHECK(defect(WeberForm::Kummer, 1, s) < 1e-5);
        CHECK(defect(WeberForm::TricomiStandard, 1, s) < 1e-5);
        CHECK(defect(WeberForm::TricomiQuoted, 4, s) < 1e-5);
        CHECK(defect(WeberForm::TricomiQuoted, 1, s) > 1e-2);
    }
}
