#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "bespectra/drift_spectra.hpp"

using namespace bespectra;

namespace {

// lambda_hat(b, D) from 40-digit mpmath shooting.
struct WeberRef {
    double b, D, value;
};
const std::vector<WeberRef> weber_refs{
    {1, M_PI, 1.30574169068298476678626962743},
    {1, 3, 1.37786350729369616595881715425},
    {0.25, M_PI, 1.07952191249651442295599845954},
    {1, 1, 9.90225864650826082390226816103},
    {1, 5, 1.00990820924737436101889434952},
    {4, M_PI, 2.064899950600699743714909711},
    {25, M_PI, 5.00016606027117352234983583737},
    {100, M_PI, 10.0000000021111494666931738374},
    {0.05, M_PI, 1.01607900730526989108175226159},
    {1, 12, 1.00000000000000309583391656417},
};

// The D solving lambda_hat(1/4, D) = 3/2, i.e. the first root of
// M(-1/2, 1/2, D^2/8) (mpmath).
constexpr double improved_diameter_a1 = 2.61385945543856200621252936419;

double lbar(double a, double D) { return neumann_drift_eigenvalue(DriftEigenQuery<double>{a, D}).eigenvalue; }
double lhat(double b, double D) { return weber_dirichlet_eigenvalue(WeberEigenQuery<double>{b, D}).eigenvalue; }

} // namespace

TEST_CASE("Weber eigenvalues against frozen references") {
    for (const auto& r : weber_refs) {
        INFO("b = " << r.b << ", D = " << r.D);
        CHECK(lhat(r.b, r.D) == Catch::Approx(r.value).epsilon(1e-10));
    }
}

TEST_CASE("drift eigenvalues through the Weber references") {
    CHECK(lbar(0, M_PI) == Catch::Approx(1).epsilon(1e-11));
    CHECK(lbar(2, M_PI) == Catch::Approx(1 + weber_refs[0].value).epsilon(1e-10));
    CHECK(lbar(1, M_PI) == Catch::Approx(0.5 + weber_refs[2].value).epsilon(1e-10));
    CHECK(lbar(-1, M_PI) == Catch::Approx(-0.5 + weber_refs[2].value).epsilon(1e-10));
    CHECK(lbar(4, M_PI) == Catch::Approx(2 + weber_refs[5].value).epsilon(1e-10));
}

TEST_CASE("the drift eigenvalue is a/2 plus a Weber eigenvalue, for either sign of a") {
    for (double a : {-2.0, -1.0, 0.0, 0.5, 1.0, 2.0, 4.0})
        for (double D : {1.0, M_PI, 5.0}) {
            INFO("a = " << a << ", D = " << D);
            CHECK(std::abs(lbar(a, D) - drift_from_weber(a, D)) <= 1e-7);
        }
}

TEST_CASE("scaling laws") {
    for (double D : {1.0, M_PI, 5.0}) {
        for (double a : {0.5, 1.0, 4.0}) {
            CHECK(std::abs(lbar(a, D) - a / 2 * lbar(2, std::sqrt(a / 2) * D)) <= 1e-7);
            CHECK(std::abs(lbar(a, D) - a * lbar(1, std::sqrt(a) * D)) <= 1e-7);
        }
        CHECK(std::abs(lbar(2, D) - lhat(1, D) - 1) <= 1e-7);
        for (double b : {0.25, 4.0})
            CHECK(std::abs(lhat(b, D) - std::sqrt(b) * lhat(1, std::pow(b, 0.25) * D)) <= 1e-7);
    }
    for (double D : {1.0, 2.0, M_PI, 5.0})
        CHECK(std::abs(lhat(1, D) - M_PI * M_PI / (D * D) * lhat(std::pow(D / M_PI, 4), M_PI)) <= 1e-7);
}

TEST_CASE("long intervals approach the oscillator ground state") {
    const auto sol = weber_dirichlet_eigenvalue(WeberEigenQuery<double>{1, 12});
    CHECK(std::abs(sol.eigenvalue - 1) <= 1e-4);
    for (double s : {0.5, 1.0, 2.0}) CHECK(sol.value(s) == Catch::Approx(std::exp(-s * s / 2)).epsilon(1e-6));
}

TEST_CASE("lower bounds") {
    SECTION("oscillator bounds on the pi interval") {
        for (double b : {0.1, 1.0, 4.0, 25.0, 100.0}) CHECK(lhat(b, M_PI) >= std::max(1.0, std::sqrt(b)) - 1e-9);
    }
    SECTION("drift bounds for a > 0 all hold") {
        for (double a : {0.5, 1.0, 2.0, 4.0})
            for (double D : {1.0, M_PI, 5.0}) {
                const auto rep = lower_bounds_drift(a, D);
                CHECK(rep.all_asserted_hold());
                CHECK(rep.lambda >= a / 2 + M_PI * M_PI / (D * D) - 1e-9);
                for (const auto& b : rep.bounds) CHECK(b.asserted);
            }
    }
    SECTION("a = 2 on the pi interval meets a/2 + 1 = 2") {
        const auto rep = lower_bounds_drift(2, M_PI);
        CHECK(rep.bounds[2].value == Catch::Approx(2));
        CHECK(rep.lambda >= 2);
    }
    SECTION("a = 4: lambda_bar >= max(4, 3)") {
        const auto rep = lower_bounds_drift(4, M_PI);
        CHECK(rep.lambda >= 4);
        CHECK(rep.all_asserted_hold());
    }
    SECTION("a = 0 reduces to pi^2/D^2") {
        const auto rep = lower_bounds_drift(0, 2);
        CHECK(rep.bounds[1].asserted);
        CHECK_FALSE(rep.bounds[0].asserted);
        CHECK(rep.lambda == Catch::Approx(M_PI * M_PI / 4).epsilon(1e-10));
    }
    SECTION("a < 0: pi^2/D^2 is not a valid bound and is not asserted") {
        const auto rep = lower_bounds_drift(-1, M_PI);
        CHECK_FALSE(rep.bounds[1].asserted);
        CHECK_FALSE(rep.bounds[1].satisfied);
        CHECK(rep.all_asserted_hold());
    }
}

TEST_CASE("monotonicity") {
    double prev_a = -INFINITY, prev_b = -INFINITY;
    for (double x = 0; x <= 6; x += 0.5) {
        const double la = lbar(x, 2.0), lb = lhat(x, 2.0);
        CHECK(la > prev_a);
        CHECK(lb > prev_b);
        prev_a = la;
        prev_b = lb;
    }
}

TEST_CASE("first eigenfunction derivative is positive on the open half-interval") {
    for (double a : {-1.0, 1.0, 5.0}) {
        const auto sol = neumann_drift_eigenvalue(DriftEigenQuery<double>{a, 3.0});
        for (std::size_t i = 0; i + 1 < sol.samples.size(); ++i) CHECK(sol.samples[i].du > 0);
    }
}

TEST_CASE("soliton diameter bounds") {
    const auto b1 = soliton_diameter_bounds(1);
    CHECK(b1.basic == Catch::Approx(M_PI * std::sqrt(2.0 / 3)).epsilon(1e-15));
    CHECK(b1.basic == Catch::Approx(2.56510).epsilon(1e-5));
    CHECK(b1.improved == Catch::Approx(improved_diameter_a1).epsilon(1e-10));
    CHECK(std::abs(b1.lambda_at_improved - 2) <= 1e-8);
    CHECK(b1.improved > b1.basic);
    for (double a : {0.5, 2.0, 4.0})
        CHECK(std::abs(soliton_diameter_bounds(a).improved * std::sqrt(a) - b1.improved) <= 1e-6);
    CHECK_THROWS_AS(soliton_diameter_bounds(0), SpectralError);
}

TEST_CASE("query validation") {
    CHECK_THROWS_AS(neumann_drift_eigenvalue(DriftEigenQuery<double>{1, 0}), SpectralError);
    CHECK_THROWS_AS(neumann_drift_eigenvalue(DriftEigenQuery<double>{1, 1, 0}), SpectralError);
    CHECK_THROWS_AS(weber_dirichlet_eigenvalue(WeberEigenQuery<double>{-1, 1}), SpectralError);
}
