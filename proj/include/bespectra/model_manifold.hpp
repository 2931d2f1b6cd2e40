#pragma once

// Capped thin cylinder with a potential: a hypersurface of revolution in
// R^{n+1} whose profile curve has curvature 1/r on the caps, 0 on the
// cylinder, and a smooth transition of half-width delta at each join. The
// potential f has f'' = a(1 - D/(pi r)) on the caps and a on the cylinder, so
// that Rc + Hess f >= a while the drift-Laplacian spectrum approaches the
// one-dimensional model lambda_bar(a, D).
//
// Everything is parametrized by arc length s in [0, D] from pole to pole and
// is symmetric about s = D/2. The geometry is exact on the caps and on the
// cylinder; inside the smoothing bands it comes from Gauss-Legendre panels.

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bespectra/drift_spectra.hpp"
#include "bespectra/errors.hpp"
#include "bespectra/ode_eigen.hpp"

namespace bespectra {

/// Smooth, nonincreasing, 1 on (-inf, -1], 0 on [1, inf), phi(s) + phi(-s) = 1.
inline double smoothing_function(double s) {
    auto h = [](double t) { return t > 0 ? std::exp(-1 / t) : 0.0; };
    const double t = (s + 1) / 2;
    if (t <= 0) return 1.0;
    if (t >= 1) return 0.0;
    const double g = h(t) / (h(t) + h(1 - t));
    return 1 - g;
}

struct ProfileSpec {
    int n = 3;
    double r = 0.1;
    double delta = 0.01;
    double D = boost::math::constants::pi<double>();
    double a = 1.0;
    int grid_points = 4096;

    /// delta defaults to r / 10.
    static ProfileSpec with_default_delta(int n, double r, double D, double a) {
        return ProfileSpec{n, r, r / 10, D, a, 4096};
    }

    double cap_end() const { return boost::math::constants::half_pi<double>() * r - delta; }
    double band_end() const { return boost::math::constants::half_pi<double>() * r + delta; }

    /// A zero-length cylinder (pi r/2 + delta == D/2) is accepted: that is the
    /// smoothed round sphere.
    void validate() const {
        auto bad = [](const std::string& msg) { fail(ErrorCode::SpecInvalid, msg); };
        if (n < 2) bad("n must be at least 2");
        if (!(r > 0) || !std::isfinite(r)) bad("r must be positive");
        if (!(delta > 0) || !std::isfinite(delta)) bad("delta must be positive");
        if (!(D > 0) || !std::isfinite(D)) bad("D must be positive");
        if (!std::isfinite(a)) bad("a must be finite");
        if (!(delta < r / 4)) bad("delta must be below r/4");
        const double slack = D / 2 - band_end();
        if (slack < -1e-12 * D) bad("pi r/2 + delta must not exceed D/2");
        if (grid_points < 128) bad("grid_points must be at least 128");
    }
};

/// Profile quantities at one arc-length position.
struct ProfilePoint {
    double s;
    double k;
    double theta;
    double y;
    double yprime;
    double f;
    double fprime;
    double fsecond;
};

class ModelManifold {
public:
    explicit ModelManifold(const ProfileSpec& spec) : spec_(spec) {
        spec_.validate();
        s1_ = spec_.cap_end();
        cap_slope_ = spec_.a * (1 - spec_.D / (boost::math::constants::pi<double>() * spec_.r));
        build_band();
        check_closure();
        build_table();
    }

    const ProfileSpec& spec() const { return spec_; }

    /// {pi r/2 - delta, pi r/2 + delta, D - pi r/2 - delta, D - pi r/2 + delta}
    std::array<double, 4> breakpoints() const {
        return {s1_, spec_.band_end(), spec_.D - spec_.band_end(), spec_.D - s1_};
    }
    double profile_length() const { return spec_.D; }
    /// Pole-to-pole meridian length; every curve joining the poles crosses all
    /// latitudes, so nothing is longer than this.
    double diameter() const { return profile_length(); }
    /// Length of the flat part, D - pi r - 2 delta.
    double cylinder_length() const { return std::max(0.0, spec_.D - 2 * spec_.band_end()); }

    ProfilePoint at(double s) const {
        require(s >= 0 && s <= spec_.D, ErrorCode::InvalidArgument,
                "s outside [0, D]: " + std::to_string(s));
        if (s <= spec_.D / 2) return half_profile(s);
        ProfilePoint p = half_profile(spec_.D - s);
        p.s = s;
        p.theta = boost::math::constants::pi<double>() - p.theta;
        p.yprime = -p.yprime;
        p.fprime = -p.fprime;
        return p;
    }

    const std::vector<ProfilePoint>& table() const { return table_; }

    /// Weight y^(n-1) e^(-f) of the reduced measure.
    double weight(double s) const {
        const auto p = at(s);
        return std::pow(p.y, spec_.n - 1) * std::exp(-p.f);
    }

private:
    using Gauss = boost::math::quadrature::gauss<double, 20>;
    static constexpr int band_panels = 16;

    struct PanelStart {
        double s, theta, y, fprime, f;
    };

    double curvature(double s) const {
        if (s <= s1_) return 1 / spec_.r;
        if (s >= spec_.band_end()) return 0;
        return smoothing_function((s - boost::math::constants::half_pi<double>() * spec_.r) /
                                  spec_.delta) /
               spec_.r;
    }
    double f_second(double s) const {
        if (s <= s1_) return cap_slope_;
        if (s >= spec_.band_end()) return spec_.a;
        const double phi = smoothing_function(
            (s - boost::math::constants::half_pi<double>() * spec_.r) / spec_.delta);
        return phi * cap_slope_ + (1 - phi) * spec_.a;
    }

    /// Integrates the band ODEs from a panel start to s.
    PanelStart advance(const PanelStart& from, double s) const {
        if (s == from.s) return from;
        auto theta_at = [&](double t) {
            return from.theta + Gauss::integrate([&](double u) { return curvature(u); }, from.s, t);
        };
        auto fprime_at = [&](double t) {
            return from.fprime + Gauss::integrate([&](double u) { return f_second(u); }, from.s, t);
        };
        PanelStart out;
        out.s = s;
        out.theta = theta_at(s);
        out.y = from.y + Gauss::integrate([&](double t) { return std::cos(theta_at(t)); }, from.s, s);
        out.fprime = fprime_at(s);
        out.f = from.f + Gauss::integrate(fprime_at, from.s, s);
        return out;
    }

    void build_band() {
        const double r = spec_.r;
        PanelStart p{s1_, s1_ / r, r * std::sin(s1_ / r), cap_slope_ * s1_,
                     cap_slope_ * s1_ * s1_ / 2};
        const double h = (spec_.band_end() - s1_) / band_panels;
        band_.push_back(p);
        for (int j = 1; j <= band_panels; ++j) {
            p = advance(p, s1_ + j * h);
            band_.push_back(p);
        }
        band_h_ = h;
    }

    void check_closure() {
        const PanelStart& end = band_.back();
        const double theta_err = end.theta - boost::math::constants::half_pi<double>();
        if (std::abs(theta_err) > 1e-9)
            fail(ErrorCode::ReflectionMismatch,
                 "profile tangent is off horizontal by " + std::to_string(theta_err) +
                     " at the end of the smoothing band");
        const double fp_mid = end.fprime + spec_.a * (spec_.D / 2 - spec_.band_end());
        if (std::abs(fp_mid) > 1e-9)
            fail(ErrorCode::ReflectionMismatch,
                 "f'(D/2) = " + std::to_string(fp_mid) + " instead of 0");
    }

    ProfilePoint half_profile(double s) const {
        const double r = spec_.r;
        if (s <= s1_) {
            return {s,
                    1 / r,
                    s / r,
                    r * std::sin(s / r),
                    std::cos(s / r),
                    cap_slope_ * s * s / 2,
                    cap_slope_ * s,
                    cap_slope_};
        }
        const double band_end = spec_.band_end();
        if (s < band_end) {
            const int j = std::clamp(static_cast<int>((s - s1_) / band_h_), 0, band_panels - 1);
            const PanelStart q = advance(band_[j], s);
            return {s, curvature(s), q.theta, q.y, std::cos(q.theta), q.f, q.fprime, f_second(s)};
        }
        // Cylinder: the tangent is exactly horizontal.
        const PanelStart& e = band_.back();
        const double t = s - band_end;
        return {s,
                0.0,
                boost::math::constants::half_pi<double>(),
                e.y,
                0.0,
                e.f + e.fprime * t + spec_.a * t * t / 2,
                e.fprime + spec_.a * t,
                spec_.a};
    }

    /// Nodes aligned with the breakpoints; each smoothing band gets at least
    /// 32 intervals, the rest are shared by length.
    void build_table() {
        const int intervals = spec_.grid_points - 1;
        const double D = spec_.D;
        const double band = spec_.band_end() - s1_;
        const int per_band = std::max(32, static_cast<int>(std::ceil(intervals * band / D)));
        const int rest = intervals - 2 * per_band;
        if (rest < 3) fail(ErrorCode::SpecInvalid, "grid_points too small to resolve the bands");
        const double cyl = cylinder_length();
        const double outer = 2 * s1_ + cyl;
        int per_cap = std::max(1, static_cast<int>(std::lround(rest * s1_ / outer)));
        int per_cyl = rest - 2 * per_cap;
        if (cyl <= 0) {
            per_cap = rest / 2;
            per_cyl = 0;
        } else if (per_cyl < 1) {
            per_cyl = 1;
            per_cap = (rest - 1) / 2;
        }
        const double c0 = spec_.band_end(), c1 = D - c0;
        std::vector<double> nodes;
        auto segment = [&](double lo, double hi, int m) {
            for (int i = 0; i < m; ++i) nodes.push_back(lo + (hi - lo) * i / m);
        };
        segment(0, s1_, per_cap);
        segment(s1_, c0, per_band);
        if (per_cyl > 0) segment(c0, c1, per_cyl);
        segment(c1, D - s1_, per_band);
        segment(D - s1_, D, per_cap);
        nodes.push_back(D);
        table_.reserve(nodes.size());
        for (double s : nodes) table_.push_back(at(s));
    }

    ProfileSpec spec_;
    double s1_ = 0;
    double cap_slope_ = 0;
    double band_h_ = 0;
    std::vector<PanelStart> band_;
    std::vector<ProfilePoint> table_;
};

inline ModelManifold build_manifold(const ProfileSpec& spec) { return ModelManifold(spec); }

// ---------------------------------------------------------------------------
// Bakry-Emery Ricci tensor

struct RcfSample {
    double s;
    double radial;
    double tangential;
};

struct RcfReport {
    std::vector<RcfSample> samples;
    double min_eigenvalue = 0;
    double margin = 0; ///< min_eigenvalue - a
};

/// Both Rc_f eigenvalues from the exact geometry. Within 1e-3 r of a pole
/// sin(theta)/y is replaced by its limit 1/r and (y'/y) f' by the cap formula.
inline RcfSample rcf_eigenvalues(const ModelManifold& m, const ProfilePoint& p) {
    const auto& spec = m.spec();
    const double n = spec.n;
    const double pole_dist = std::min(p.s, spec.D - p.s);
    double sin_over_y, hess_tangential;
    if (pole_dist < 1e-3 * spec.r) {
        const double x = pole_dist / spec.r;
        sin_over_y = 1 / spec.r;
        const double cap_slope =
            spec.a * (1 - spec.D / (boost::math::constants::pi<double>() * spec.r));
        hess_tangential = x == 0 ? cap_slope : cap_slope * x / std::tan(x);
    } else {
        sin_over_y = std::sin(p.theta) / p.y;
        hess_tangential = p.yprime / p.y * p.fprime;
    }
    const double radial = (n - 1) * p.k * sin_over_y + p.fsecond;
    const double tangential =
        p.k * sin_over_y + (n - 2) * sin_over_y * sin_over_y + hess_tangential;
    if (!std::isfinite(radial) || !std::isfinite(tangential))
        fail(ErrorCode::PoleSingular, "Rc_f is not finite at s = " + std::to_string(p.s));
    return {p.s, radial, tangential};
}

/// Rc_f over the tabulated profile. The bound Rc_f >= a is only expected for
/// n >= 3, or n = 2 with a < 0; other specs are evaluated all the same.
inline RcfReport bakry_emery_report(const ModelManifold& m, double a) {
    RcfReport rep;
    rep.min_eigenvalue = INFINITY;
    for (const auto& p : m.table()) {
        const auto smp = rcf_eigenvalues(m, p);
        rep.samples.push_back(smp);
        rep.min_eigenvalue = std::min({rep.min_eigenvalue, smp.radial, smp.tangential});
    }
    rep.margin = rep.min_eigenvalue - a;
    return rep;
}

inline RcfReport bakry_emery_report(const ModelManifold& m) {
    return bakry_emery_report(m, m.spec().a);
}

/// The piecewise asymptotic form of Rc_f with the o(delta) terms dropped:
/// y = r and y' = 0 from the band on. Only a cross-check for the exact values.
inline RcfSample rcf_asymptotic(const ProfileSpec& spec, double s) {
    const double pi = boost::math::constants::pi<double>();
    const double n = spec.n, r = spec.r, a = spec.a, D = spec.D;
    if (s > D / 2) s = D - s;
    if (s <= spec.cap_end()) {
        const double x = s / r;
        const double ratio = x == 0 ? 1.0 : x / std::tan(x);
        return {s, a + (n - 1) / (r * r) - a * D / (pi * r),
                (n - 1) / (r * r) + a * (1 - D / (pi * r)) * ratio};
    }
    if (s < spec.band_end()) {
        const double phi = smoothing_function((s - pi * r / 2) / spec.delta);
        return {s, a + phi * ((n - 1) / (r * r) - a * D / (pi * r)), (n - 2) / (r * r)};
    }
    return {s, a, (n - 2) / (r * r)};
}

// ---------------------------------------------------------------------------
// Rotationally symmetric spectrum

/// u'' + ((n-1) y'/y - f') u' + lambda u = 0 on [0, D], regular at both poles.
inline SLProblem<double> symmetric_problem(const ModelManifold& m) {
    const int n = m.spec().n;
    SLProblem<double> p;
    p.drift = [&m, n](double s) {
        const auto q = m.at(s);
        return q.fprime - (n - 1) * q.yprime / q.y;
    };
    p.potential = [](double) { return 0.0; };
    p.weight = [&m](double s) { return m.weight(s); };
    p.s_lo = 0;
    p.s_hi = m.spec().D;
    p.parity = Parity::OddNeumann;
    p.singular_lo = p.singular_hi = true;
    return p;
}

inline SolveOptions<double> symmetric_solve_options() {
    SolveOptions<double> opt;
    opt.grid_size = 1024;
    opt.refinements = 2;
    return opt;
}

/// First nonzero eigenvalue of the drift Laplacian among functions of s only.
/// The first eigenfunction is odd about the equator.
inline EigenSolution<double> symmetric_neumann_eigenvalue(const ModelManifold& m,
                                                          double tol = 1e-10) {
    return solve_first_eigenvalue(symmetric_problem(m), tol, symmetric_solve_options());
}

struct RayleighReport {
    double quotient;
    double cylinder_eigenvalue;  ///< lambda_bar(a, D - pi r - 2 delta)
    double cylinder_mass_share;  ///< share of the psi^2 mass carried by the cylinder
};

/// Rayleigh quotient of the test function equal to the cylinder eigenfunction
/// w(s - D/2) on the flat part and to its end values on the caps.
inline RayleighReport rayleigh_report(const ModelManifold& m, double tol = 1e-11) {
    using Gauss = boost::math::quadrature::gauss<double, 20>;
    const auto& spec = m.spec();
    require(spec.a >= 0, ErrorCode::InvalidArgument, "the Rayleigh construction needs a >= 0");
    const double L = m.cylinder_length();
    require(L > 0, ErrorCode::SpecInvalid, "the Rayleigh construction needs a cylinder");
    const auto w = neumann_drift_eigenvalue(DriftEigenQuery<double>{spec.a, L, tol});
    const double plateau = w.value(L / 2);
    const double c0 = spec.band_end();
    const double mid = spec.D / 2;

    // Both integrands are symmetric about D/2; integrate over [0, D/2].
    auto panels = [](double lo, double hi, int count, auto&& f) {
        double acc = 0;
        for (int i = 0; i < count; ++i)
            acc += Gauss::integrate(f, lo + (hi - lo) * i / count, lo + (hi - lo) * (i + 1) / count);
        return acc;
    };
    auto weight = [&](double s) { return m.weight(s); };
    const double cap_mass = panels(0.0, spec.cap_end(), 16, weight) +
                            panels(spec.cap_end(), c0, 16, weight);
    auto cyl_psi2 = [&](double s) {
        const double v = w.value(s - mid);
        return v * v * m.weight(s);
    };
    auto cyl_grad2 = [&](double s) {
        const double d = w.derivative(s - mid);
        return d * d * m.weight(s);
    };
    const double cyl_mass = panels(c0, mid, 64, cyl_psi2);
    const double energy = panels(c0, mid, 64, cyl_grad2);
    const double total = cyl_mass + plateau * plateau * cap_mass;
    return {energy / total, w.eigenvalue, cyl_mass / total};
}

inline double rayleigh_upper_bound(const ModelManifold& m) { return rayleigh_report(m).quotient; }

// ---------------------------------------------------------------------------
// Drift heat flow and the modulus of continuity

enum class InitialData { Eigenfunction, GenericOdd };

struct HeatOptions {
    int nodes = 256;
    double dt = 1e-3;
    int check_every = 10; ///< steps between modulus checks
    InitialData initial = InitialData::GenericOdd;
    bool throw_on_violation = true;
};

struct ModulusViolation {
    double s1;
    double s2;
    double t;
    double slack;
};

struct HeatModulusReport {
    double lambda_bar = 0;       ///< lambda_bar(a, diameter)
    double modulus_constant = 0; ///< C fixed at t = 0
    double t_end = 0;
    int steps = 0;
    std::size_t checks = 0;      ///< pair comparisons performed
    std::size_t violations = 0;
    double min_slack = INFINITY; ///< min over checks of bound - |v(s2) - v(s1)|
    std::optional<ModulusViolation> worst;
};

namespace detail {

/// Solves a tridiagonal system in place (Thomas algorithm).
inline void thomas(std::vector<double> lower, std::vector<double> diag, std::vector<double> upper,
                   std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (!(diag[i - 1] > 0)) fail(ErrorCode::CFLFailure, "implicit step lost diagonal dominance");
        const double m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

} // namespace detail

/// Evolves v_t = v_ss + ((n-1) y'/y - f') v_s with Neumann poles by TR-BDF2 on
/// a conservative uniform grid, and checks at every check_every steps that
///     |v(s2, t) - v(s1, t)| <= 2 C exp(-lambda_bar t) omega(|s2 - s1| / 2)
/// for all node pairs, where omega is the one-dimensional odd eigenfunction on
/// [-diam/2, diam/2] and C is the smallest constant that works at t = 0.
inline HeatModulusReport heat_modulus_check(const ModelManifold& m, double t_end,
                                            const HeatOptions& opt = {}) {
    require(t_end > 0, ErrorCode::InvalidArgument, "t_end must be positive");
    require(opt.nodes >= 8, ErrorCode::InvalidArgument, "need at least 8 nodes");
    require(opt.check_every >= 1, ErrorCode::InvalidArgument, "check_every must be positive");
    if (!(opt.dt > 0) || !std::isfinite(opt.dt) || opt.dt > t_end)
        fail(ErrorCode::CFLFailure, "time step must lie in (0, t_end]");

    const double D = m.spec().D;
    const double diam = m.diameter();
    const int N = opt.nodes;
    const double h = D / (N - 1);

    std::vector<double> node(N), mass(N, 0.0), cond(N - 1);
    for (int i = 0; i < N; ++i) node[i] = i * h;
    for (int i = 0; i + 1 < N; ++i) {
        const double wm = m.weight((i + 0.5) * h);
        cond[i] = wm / h;
        mass[i] += wm * h / 2;
        mass[i + 1] += wm * h / 2;
    }

    const auto omega_sol = neumann_drift_eigenvalue(DriftEigenQuery<double>{m.spec().a, diam});
    HeatModulusReport rep;
    rep.lambda_bar = omega_sol.eigenvalue;
    rep.t_end = t_end;
    // omega on the node spacings: |s2 - s1| / 2 = k h / 2.
    std::vector<double> omega(N);
    for (int k = 1; k < N; ++k) omega[k] = omega_sol.value(k * h / 2);

    std::vector<double> v(N);
    if (opt.initial == InitialData::Eigenfunction) {
        const auto w = symmetric_neumann_eigenvalue(m);
        for (int i = 0; i < N; ++i) v[i] = w.value(node[i]);
    } else {
        const double pi = boost::math::constants::pi<double>();
        for (int i = 0; i < N; ++i) {
            const double x = pi * node[i] / D;
            v[i] = std::cos(x) + 0.5 * std::cos(3 * x) + 0.25 * std::cos(5 * x);
        }
    }

    double C = 0;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            C = std::max(C, std::abs(v[j] - v[i]) / (2 * omega[j - i]));
    rep.modulus_constant = C;
    const double noise = 1e-12 * std::max(1.0, C);

    auto check = [&](double t) {
        const double decay = 2 * C * std::exp(-rep.lambda_bar * t);
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) {
                const double slack = decay * omega[j - i] - std::abs(v[j] - v[i]);
                ++rep.checks;
                rep.min_slack = std::min(rep.min_slack, slack);
                if (slack < -noise) {
                    ++rep.violations;
                    if (!rep.worst || slack < rep.worst->slack)
                        rep.worst = ModulusViolation{node[i], node[j], t, slack};
                }
            }
    };

    // M v' = -A v with A the weighted stiffness matrix.
    auto apply_A = [&](const std::vector<double>& x) {
        std::vector<double> out(N, 0.0);
        for (int i = 0; i + 1 < N; ++i) {
            const double flux = cond[i] * (x[i + 1] - x[i]);
            out[i] -= flux;
            out[i + 1] += flux;
        }
        return out;
    };
    auto solve = [&](double coeff, std::vector<double> rhs) {
        std::vector<double> lower(N, 0.0), diag(mass), upper(N, 0.0);
        for (int i = 0; i + 1 < N; ++i) {
            diag[i] += coeff * cond[i];
            diag[i + 1] += coeff * cond[i];
            upper[i] = -coeff * cond[i];
            lower[i + 1] = -coeff * cond[i];
        }
        detail::thomas(std::move(lower), std::move(diag), std::move(upper), rhs);
        return rhs;
    };

    const double gamma = 2 - std::sqrt(2.0);
    const double c1 = 1 / (gamma * (2 - gamma));
    const double c2 = (1 - gamma) * (1 - gamma) / (gamma * (2 - gamma));
    const double wbdf = (1 - gamma) / (2 - gamma);

    const int steps = static_cast<int>(std::ceil(t_end / opt.dt - 1e-9));
    const double dt = t_end / steps;
    rep.steps = steps;
    check(0.0);
    for (int step = 1; step <= steps; ++step) {
        const auto Av = apply_A(v);
        std::vector<double> rhs(N);
        for (int i = 0; i < N; ++i) rhs[i] = mass[i] * v[i] - gamma * dt / 2 * Av[i];
        const auto stage = solve(gamma * dt / 2, rhs);
        for (int i = 0; i < N; ++i) rhs[i] = mass[i] * (c1 * stage[i] - c2 * v[i]);
        v = solve(wbdf * dt, rhs);
        for (double x : v)
            if (!std::isfinite(x)) fail(ErrorCode::CFLFailure, "heat flow produced non-finite values");
        if (step % opt.check_every == 0 || step == steps) check(step * dt);
    }

    if (rep.violations > 0 && opt.throw_on_violation) {
        std::ostringstream os;
        os << "modulus violated " << rep.violations << " times; worst at s1 = " << rep.worst->s1
           << ", s2 = " << rep.worst->s2 << ", t = " << rep.worst->t
           << ", slack = " << rep.worst->slack;
        fail(ErrorCode::ModulusViolated, os.str());
    }
    return rep;
}

} // namespace bespectra
