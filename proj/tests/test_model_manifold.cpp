#include <catch_amalgamated.hpp>

#include <cmath>

#include "bespectra/drift_spectra.hpp"
#include "bespectra/model_manifold.hpp"

using namespace bespectra;

namespace {

const double pi = boost::math::constants::pi<double>();

double lbar(double a, double D) { return neumann_drift_eigenvalue(DriftEigenQuery<double>{a, D}).eigenvalue; }

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const SpectralError& e) {
        return e.code();
    }
    FAIL("no SpectralError thrown");
    return ErrorCode::InvalidArgument;
}

} // namespace

TEST_CASE("smoothing function") {
    CHECK(smoothing_function(-3) == 1);
    CHECK(smoothing_function(-1) == 1);
    CHECK(smoothing_function(1) == 0);
    CHECK(smoothing_function(4) == 0);
    CHECK(smoothing_function(0) == Catch::Approx(0.5).margin(1e-15));
    double prev = 1;
    for (double s = -1; s <= 1; s += 0.01) {
        const double v = smoothing_function(s);
        CHECK(v <= prev + 1e-15);
        CHECK(v + smoothing_function(-s) == Catch::Approx(1).margin(1e-14));
        prev = v;
    }
}

TEST_CASE("spec validation") {
    CHECK(code_of([] { ProfileSpec{1, 0.1, 0.01, pi, 1, 4096}.validate(); }) == ErrorCode::SpecInvalid);
    CHECK(code_of([] { ProfileSpec{3, 0.1, 0.03, pi, 1, 4096}.validate(); }) == ErrorCode::SpecInvalid);
    CHECK(code_of([] { ProfileSpec{3, 0.1, 0.01, 0.2, 1, 4096}.validate(); }) == ErrorCode::SpecInvalid);
    CHECK(code_of([] { ProfileSpec{3, 0.1, 0.01, pi, 1, 64}.validate(); }) == ErrorCode::SpecInvalid);
    CHECK(code_of([] { ProfileSpec{3, -0.1, 0.01, pi, 1, 4096}.validate(); }) == ErrorCode::SpecInvalid);
    CHECK_NOTHROW(ProfileSpec{3, (pi - 0.02) / pi, 0.01, pi, 0, 4096}.validate());
    const auto d = ProfileSpec::with_default_delta(3, 0.2, pi, 1);
    CHECK(d.delta == Catch::Approx(0.02));
}

TEST_CASE("profile geometry") {
    const auto m = build_manifold(ProfileSpec{});
    const auto& s = m.spec();

    SECTION("reflection about the equator") {
        for (double x : {0.0, 0.05, 0.15, 0.16, 0.17, 0.9}) {
            const auto p = m.at(x), q = m.at(s.D - x);
            CHECK(p.y == Catch::Approx(q.y).margin(1e-13));
            CHECK(p.k == Catch::Approx(q.k).margin(1e-12));
            CHECK(p.yprime == Catch::Approx(-q.yprime).margin(1e-13));
            CHECK(p.f == Catch::Approx(q.f).margin(1e-12));
            CHECK(p.fprime == Catch::Approx(-q.fprime).margin(1e-12));
        }
    }
    SECTION("exact cap") {
        for (double x : {0.01, 0.05, 0.1}) {
            const auto p = m.at(x);
            CHECK(p.y == Catch::Approx(s.r * std::sin(x / s.r)).epsilon(1e-14));
            CHECK(p.k == Catch::Approx(1 / s.r));
            CHECK(p.fsecond == Catch::Approx(s.a * (1 - s.D / (pi * s.r))));
        }
        CHECK(m.at(0).y == 0);
        CHECK(m.at(0).yprime == 1);
        CHECK(m.at(0).fprime == 0);
    }
    SECTION("cylinder") {
        const auto p = m.at(s.D / 2);
        CHECK(p.k == 0);
        CHECK(p.yprime == 0);
        CHECK(std::abs(p.fprime) < 1e-9);
        CHECK(p.fsecond == s.a);
        CHECK(std::abs(p.theta - pi / 2) < 1e-9);
        CHECK(std::abs(p.y - s.r) < 2 * s.delta);
        CHECK(m.at(0.5).y == Catch::Approx(p.y).epsilon(1e-14));
    }
    SECTION("lengths") {
        CHECK(m.diameter() == s.D);
        CHECK(m.cylinder_length() == Catch::Approx(s.D - pi * s.r - 2 * s.delta));
        const auto bp = m.breakpoints();
        CHECK(bp[0] == Catch::Approx(pi * s.r / 2 - s.delta));
        CHECK(bp[3] == Catch::Approx(s.D - bp[0]));
        CHECK(m.table().size() >= static_cast<std::size_t>(s.grid_points));
        CHECK(m.table().front().s == 0);
        CHECK(m.table().back().s == Catch::Approx(s.D));
    }
    SECTION("out of range") { CHECK(code_of([&] { m.at(-0.1); }) == ErrorCode::InvalidArgument); }
}

TEST_CASE("Bakry-Emery Ricci lower bound") {
    SECTION("n = 3, a = 1 holds") {
        const auto rep = bakry_emery_report(build_manifold(ProfileSpec{}));
        CHECK(rep.margin >= -1e-6);
        CHECK(rep.samples.size() >= 4096);
    }
    SECTION("n = 2, a = -1 holds") {
        CHECK(bakry_emery_report(build_manifold(ProfileSpec::with_default_delta(2, 0.1, pi, -1))).margin >= -1e-6);
    }
    SECTION("n = 2, a = 1 fails") {
        CHECK(bakry_emery_report(build_manifold(ProfileSpec::with_default_delta(2, 0.1, pi, 1))).margin < -0.5);
    }
    SECTION("exact values agree with the asymptotic form on the cap and cylinder") {
        const ProfileSpec spec{};
        const auto m = build_manifold(spec);
        for (double x : {0.0, 0.05, 0.12, 0.5, 1.5}) {
            const auto exact = rcf_eigenvalues(m, m.at(x));
            const auto approx = rcf_asymptotic(spec, x);
            const double scale = (spec.n - 1) / (spec.r * spec.r);
            INFO("s = " << x);
            CHECK(std::abs(exact.radial - approx.radial) <= 0.1 * scale);
            CHECK(std::abs(exact.tangential - approx.tangential) <= 0.1 * scale);
        }
    }
    SECTION("the radial eigenvalue on the cylinder is exactly a") {
        const auto m = build_manifold(ProfileSpec{});
        CHECK(rcf_eigenvalues(m, m.at(1.0)).radial == Catch::Approx(1).margin(1e-9));
    }
    SECTION("the tangential gap on the cylinder closes as delta shrinks") {
        double prev = INFINITY;
        for (double delta : {0.02, 0.01, 0.005}) {
            const ProfileSpec spec{3, 0.1, delta, pi, 1, 4096};
            const auto m = build_manifold(spec);
            const double gap = std::abs(rcf_eigenvalues(m, m.at(1.0)).tangential - rcf_asymptotic(spec, 1.0).tangential);
            CHECK(gap < prev);
            prev = gap;
        }
    }
}

TEST_CASE("symmetric spectrum") {
    const auto m = build_manifold(ProfileSpec{});
    const double sym = symmetric_neumann_eigenvalue(m).eigenvalue;
    SECTION("sandwich") {
        const double lower = lbar(1, m.diameter());
        const auto ray = rayleigh_report(m);
        CHECK(lower == Catch::Approx(1.5795219125).epsilon(1e-9));
        CHECK(sym >= lower - 1e-5);
        CHECK(sym <= ray.quotient + 1e-9);
        CHECK(ray.quotient <= ray.cylinder_eigenvalue + 1e-9);
        CHECK(ray.cylinder_eigenvalue == Catch::Approx(lbar(1, m.cylinder_length())).epsilon(1e-9));
        CHECK(ray.cylinder_mass_share > 0.5);
        CHECK(ray.cylinder_mass_share < 1);
    }
    SECTION("grid_points does not move the eigenvalue") {
        auto spec = ProfileSpec{};
        spec.grid_points = 8192;
        CHECK(symmetric_neumann_eigenvalue(build_manifold(spec)).eigenvalue == Catch::Approx(sym).epsilon(1e-9));
    }
    SECTION("converges down toward lambda_bar(1, pi) as r shrinks") {
        double prev = INFINITY;
        for (double r : {0.2, 0.1, 0.05}) {
            const double v = symmetric_neumann_eigenvalue(build_manifold(ProfileSpec::with_default_delta(3, r, pi, 1))).eigenvalue;
            CHECK(v < prev);
            CHECK(v > lbar(1, pi));
            prev = v;
        }
    }
    SECTION("Rayleigh needs a cylinder and a >= 0") {
        CHECK(code_of([] { rayleigh_report(build_manifold(ProfileSpec::with_default_delta(3, 0.1, pi, -1))); }) ==
              ErrorCode::InvalidArgument);
        CHECK(code_of([] { rayleigh_report(build_manifold(ProfileSpec{3, (pi - 0.02) / pi, 0.01, pi, 0, 4096})); }) ==
              ErrorCode::SpecInvalid);
    }
}

TEST_CASE("round sphere limit") {
    double prev_err = INFINITY;
    for (double delta : {0.02, 0.01}) {
        const auto m = build_manifold(ProfileSpec{3, (pi - 2 * delta) / pi, delta, pi, 0, 4096});
        CHECK(m.cylinder_length() == Catch::Approx(0).margin(1e-12));
        const double err = std::abs(symmetric_neumann_eigenvalue(m).eigenvalue / 3 - 1);
        CHECK(err < 0.01);
        CHECK(err < prev_err);
        prev_err = err;
    }
}

TEST_CASE("heat flow respects the modulus of continuity") {
    const auto m = build_manifold(ProfileSpec{});
    SECTION("generic odd data") {
        const auto rep = heat_modulus_check(m, 1.0);
        CHECK(rep.violations == 0);
        CHECK(rep.checks > 0);
        CHECK(rep.modulus_constant > 0);
        CHECK(rep.lambda_bar == Catch::Approx(1.5795219125).epsilon(1e-8));
    }
    SECTION("eigenfunction data") {
        HeatOptions opt;
        opt.initial = InitialData::Eigenfunction;
        CHECK(heat_modulus_check(m, 0.5, opt).violations == 0);
    }
    SECTION("bad steps") {
        HeatOptions opt;
        opt.dt = 2;
        CHECK(code_of([&] { heat_modulus_check(m, 1.0, opt); }) == ErrorCode::CFLFailure);
        CHECK(code_of([&] { heat_modulus_check(m, -1.0); }) == ErrorCode::InvalidArgument);
    }
}
