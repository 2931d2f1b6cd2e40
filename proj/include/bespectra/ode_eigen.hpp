#pragma once

// First eigenvalues of one-dimensional Sturm-Liouville problems written as
//
//     u'' - drift(s) u' + (lambda - potential(s)) u = 0,
//
// equivalently (w u')' + (lambda - potential) w u = 0 with w'/w = -drift.
// Two independent routes are provided: adaptive Runge-Kutta shooting and a
// finite-volume discretization solved by Sturm-sequence bisection with
// Richardson extrapolation. Everything is templated on the scalar type so
// the same code runs in double or in a boost::multiprecision float.

#include <boost/numeric/odeint.hpp>

#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <boost/multiprecision/number.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "bespectra/errors.hpp"

// odeint follows value_type chains down to a scalar, and multiprecision::number
// has a value_type of its own. Hide it so the number is its own scalar. The
// trait lives in the global namespace.
template <class Backend, boost::multiprecision::expression_template_option ET>
struct has_value_type<boost::multiprecision::number<Backend, ET>> : boost::mpl::false_ {};

namespace bespectra {

enum class Parity {
    OddNeumann,    ///< u odd about the midpoint, u' = 0 at the ends
    EvenDirichlet, ///< u even about the midpoint, u = 0 at the ends
    General,       ///< Neumann at both ends, first nonconstant mode
};

enum class Method { Shooting, FiniteDifference };

template <class Real = double>
using Coefficient = std::function<Real(Real)>;

template <class Real = double>
struct SLProblem {
    Coefficient<Real> drift;     ///< coefficient of -u'
    Coefficient<Real> potential; ///< coefficient of u
    Coefficient<Real> weight;    ///< positive in the interior, w'/w = -drift
    Real s_lo{};
    Real s_hi{};
    Parity parity = Parity::General;
    bool singular_lo = false; ///< weight vanishes at s_lo
    bool singular_hi = false; ///< weight vanishes at s_hi

    Real midpoint() const { return (s_lo + s_hi) / 2; }
    Real length() const { return s_hi - s_lo; }

    void validate() const {
        using std::abs;
        require(drift && potential && weight, ErrorCode::InvalidArgument,
                "SLProblem coefficients must all be set");
        require(s_lo < s_hi, ErrorCode::InvalidArgument, "SLProblem requires s_lo < s_hi");
        if (parity == Parity::General) return;
        // Reflection symmetry about the midpoint, probed at a few interior points.
        const Real m = midpoint();
        const Real half = length() / 2;
        for (int i = 1; i <= 4; ++i) {
            const Real t = half * Real(i) / Real(5) + half * Real(0.0173) * Real(i);
            const Real lo = m - t, hi = m + t;
            const Real wl = weight(lo), wh = weight(hi);
            const Real scale = std::max(Real(1), std::max(abs(wl), abs(wh)));
            require(abs(wl - wh) <= Real(1e-8) * scale, ErrorCode::InvalidArgument,
                    "weight is not symmetric about the midpoint");
            const Real pl = potential(lo), ph = potential(hi);
            require(abs(pl - ph) <= Real(1e-8) * std::max(Real(1), abs(pl)),
                    ErrorCode::InvalidArgument, "potential is not symmetric about the midpoint");
            const Real dl = drift(lo), dh = drift(hi);
            require(abs(dl + dh) <= Real(1e-8) * std::max(Real(1), abs(dl)),
                    ErrorCode::InvalidArgument, "drift is not odd about the midpoint");
        }
        require(!singular_lo || singular_hi, ErrorCode::InvalidArgument,
                "symmetric problem must have matching endpoint types");
    }
};

template <class Real = double>
struct Bracket {
    Real lo;
    Real hi;
};

template <class Real = double>
struct EigenSample {
    Real s;
    Real u;
    Real du;
};

template <class Real = double>
struct EigenSolution {
    Real eigenvalue{};
    /// Ascending in s. Parity problems store the half [midpoint, s_hi] only;
    /// value()/derivative() reflect onto the other half.
    std::vector<EigenSample<Real>> samples;
    Real residual{};
    Method method = Method::Shooting;
    std::size_t grid_size = 0;
    Parity parity = Parity::General;
    Real midpoint{};

    Real value(Real s) const { return interpolate(s).first; }
    Real derivative(Real s) const { return interpolate(s).second; }

    /// Cubic Hermite interpolation of (u, u') at s, reflecting by parity.
    std::pair<Real, Real> interpolate(Real s) const {
        require(samples.size() >= 2, ErrorCode::InvalidArgument, "eigenfunction has no samples");
        Real sign_u = 1, sign_du = 1;
        if (parity != Parity::General && s < midpoint) {
            s = 2 * midpoint - s;
            if (parity == Parity::OddNeumann) sign_u = -1;
            else sign_du = -1;
        }
        s = std::clamp(s, samples.front().s, samples.back().s);
        auto it = std::upper_bound(samples.begin(), samples.end(), s,
                                   [](Real x, const EigenSample<Real>& p) { return x < p.s; });
        if (it == samples.end()) --it;
        if (it == samples.begin()) ++it;
        const auto& p0 = *(it - 1);
        const auto& p1 = *it;
        const Real h = p1.s - p0.s;
        const Real t = (s - p0.s) / h;
        const Real t2 = t * t, t3 = t2 * t;
        const Real h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
        const Real h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
        const Real u = h00 * p0.u + h10 * h * p0.du + h01 * p1.u + h11 * h * p1.du;
        const Real d00 = (6 * t2 - 6 * t) / h, d10 = 3 * t2 - 4 * t + 1;
        const Real d01 = (-6 * t2 + 6 * t) / h, d11 = 3 * t2 - 2 * t;
        const Real du = d00 * p0.u + d10 * p0.du + d01 * p1.u + d11 * p1.du;
        return {sign_u * u, sign_du * du};
    }
};

template <class Real = double>
struct ShootOptions {
    std::size_t sample_count = 1025;
    std::uintmax_t max_iterations = 200;
    /// Offset from a singular endpoint, as a fraction of the interval length.
    double singular_offset = 1e-6;
};

template <class Real = double>
struct FdEstimate {
    Real eigenvalue{};
    Real error_estimate{};
    std::vector<std::size_t> grids;
    std::vector<Real> raw; ///< unextrapolated eigenvalue per grid
};

namespace detail {

template <class Real>
using State = std::array<Real, 2>;

template <class Real>
bool finite(const Real& x) {
    return (boost::math::isfinite)(x);
}

template <class Real>
Real epsilon() {
    return std::numeric_limits<Real>::epsilon();
}

template <class Real>
std::string str(const Real& x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

template <class Real>
struct Shooter {
    const SLProblem<Real>& problem;
    Real lambda{};
    Real rtol{};

    void operator()(const State<Real>& x, State<Real>& dxdt, Real s) const {
        dxdt[0] = x[1];
        dxdt[1] = problem.drift(s) * x[1] + (problem.potential(s) - lambda) * x[0];
    }

    void integrate(State<Real>& x, Real from, Real to) const {
        namespace odeint = boost::numeric::odeint;
        if (from == to) return;
        using Stepper = odeint::runge_kutta_fehlberg78<State<Real>, Real, State<Real>, Real>;
        try {
            odeint::integrate_adaptive(odeint::make_controlled(rtol, rtol, Stepper{}), *this, x,
                                       from, to, (to - from) / Real(1000));
        } catch (const std::exception& e) {
            fail(ErrorCode::StiffFailure, std::string("integrator gave up: ") + e.what());
        }
        if (!finite(x[0]) || !finite(x[1]))
            fail(ErrorCode::StiffFailure, "non-finite state at lambda = " + str(lambda));
    }
};

/// How one shot is laid out for a given problem.
template <class Real>
struct ShotPlan {
    bool two_sided = false; // General: shoot from both ends and match Wronskians
    bool inward = false;    // parity problem with a singular outer end
    Real offset{};
};

template <class Real>
ShotPlan<Real> plan_for(const SLProblem<Real>& p, const ShootOptions<Real>& opt) {
    ShotPlan<Real> plan;
    plan.offset = Real(opt.singular_offset) * p.length();
    plan.two_sided = p.parity == Parity::General;
    plan.inward = !plan.two_sided && p.singular_hi;
    return plan;
}

template <class Real>
Real mismatch(const SLProblem<Real>& p, const ShotPlan<Real>& plan, Real lambda, Real rtol) {
    Shooter<Real> sh{p, lambda, rtol};
    const Real m = p.midpoint();
    if (plan.two_sided) {
        State<Real> left{1, 0}, right{1, 0};
        sh.integrate(left, p.s_lo + (p.singular_lo ? plan.offset : Real(0)), m);
        sh.integrate(right, p.s_hi - (p.singular_hi ? plan.offset : Real(0)), m);
        return left[0] * right[1] - left[1] * right[0];
    }
    const bool odd = p.parity == Parity::OddNeumann;
    if (plan.inward) {
        State<Real> x{1, 0};
        sh.integrate(x, p.s_hi - plan.offset, m);
        return odd ? x[0] : x[1];
    }
    State<Real> x = odd ? State<Real>{0, 1} : State<Real>{1, 0};
    sh.integrate(x, m, p.s_hi);
    return odd ? x[1] : x[0];
}

/// Integrates through a uniform grid of nodes recording the state at each.
template <class Real>
std::vector<EigenSample<Real>> trace(const Shooter<Real>& sh, State<Real> x, Real start,
                                     const std::vector<Real>& nodes) {
    std::vector<EigenSample<Real>> out;
    out.reserve(nodes.size());
    Real at = start;
    for (const Real& s : nodes) {
        sh.integrate(x, at, s);
        at = s;
        out.push_back({s, x[0], x[1]});
    }
    return out;
}

template <class Real>
std::vector<Real> uniform_nodes(Real from, Real to, std::size_t count) {
    std::vector<Real> nodes(count);
    for (std::size_t i = 0; i < count; ++i)
        nodes[i] = from + (to - from) * Real(i) / Real(count - 1);
    return nodes;
}

/// Max |u'' - (drift u' + (potential - lambda) u)| with u'' from a
/// fourth-order difference of the sampled u'. Samples must be uniform.
template <class Real>
Real ode_defect(const SLProblem<Real>& p, const std::vector<EigenSample<Real>>& samples,
                Real lambda) {
    using std::abs;
    Real worst = 0;
    if (samples.size() < 5) return worst;
    const Real guard = Real(1e-3) * p.length();
    for (std::size_t i = 2; i + 2 < samples.size(); ++i) {
        const Real s = samples[i].s;
        if (p.singular_lo && s - p.s_lo < guard) continue;
        if (p.singular_hi && p.s_hi - s < guard) continue;
        const Real h = samples[i + 1].s - samples[i].s;
        const Real h_prev = samples[i].s - samples[i - 1].s;
        if (abs(h - h_prev) > Real(1e-9) * abs(h)) continue; // stencil crosses a seam
        const Real d2 = (samples[i - 2].du - 8 * samples[i - 1].du + 8 * samples[i + 1].du -
                         samples[i + 2].du) /
                        (12 * h);
        const Real rhs =
            p.drift(s) * samples[i].du + (p.potential(s) - lambda) * samples[i].u;
        worst = std::max(worst, Real(abs(d2 - rhs)));
    }
    return worst;
}

template <class Real>
void check_nodal_structure(const SLProblem<Real>& p, const std::vector<EigenSample<Real>>& samples,
                           Real lambda) {
    const auto n = samples.size();
    if (p.parity == Parity::General) {
        int changes = 0;
        for (std::size_t i = 1; i < n; ++i)
            if ((samples[i - 1].u > 0) != (samples[i].u > 0)) ++changes;
        require(changes == 1, ErrorCode::WrongBranch,
                "eigenfunction at lambda = " + str(lambda) + " has " + std::to_string(changes) +
                    " sign changes, expected 1");
        return;
    }
    // Half interval [m, s_hi]: skip the sample that carries the Dirichlet zero.
    const std::size_t first = p.parity == Parity::OddNeumann ? 1 : 0;
    const std::size_t last = p.parity == Parity::EvenDirichlet ? n - 1 : n;
    for (std::size_t i = first; i < last; ++i)
        require(samples[i].u > 0, ErrorCode::WrongBranch,
                "eigenfunction at lambda = " + str(lambda) + " has an interior zero near s = " +
                    str(samples[i].s));
}

} // namespace detail

/// Refines the eigenvalue inside `bracket` by shooting. The bracket must
/// contain exactly one eigenvalue of the problem's parity class.
template <class Real>
EigenSolution<Real> shoot_eigenvalue(const SLProblem<Real>& problem, Bracket<Real> bracket, Real tol,
                                     const ShootOptions<Real>& options = {}) {
    using std::abs;
    problem.validate();
    require(tol > 0, ErrorCode::InvalidArgument, "tolerance must be positive");
    require(bracket.lo < bracket.hi, ErrorCode::InvalidArgument, "bracket must satisfy lo < hi");
    require(options.sample_count >= 5, ErrorCode::InvalidArgument, "need at least 5 samples");

    const auto plan = detail::plan_for(problem, options);
    const Real rtol = tol / 100;
    auto f = [&](Real lambda) { return detail::mismatch(problem, plan, lambda, rtol); };

    Real f_lo = f(bracket.lo), f_hi = f(bracket.hi);
    Real lambda{};
    if (f_lo == 0) {
        lambda = bracket.lo;
    } else if (f_hi == 0) {
        lambda = bracket.hi;
    } else {
        if ((f_lo > 0) == (f_hi > 0))
            fail(ErrorCode::BracketEmpty, "mismatch has the same sign at lambda = " +
                                              detail::str(bracket.lo) + " and " +
                                              detail::str(bracket.hi));
        std::uintmax_t iterations = options.max_iterations;
        auto done = [tol](const Real& a, const Real& b) { return abs(b - a) <= tol; };
        const auto root = boost::math::tools::toms748_solve(f, bracket.lo, bracket.hi, f_lo, f_hi,
                                                            done, iterations);
        if (iterations >= options.max_iterations && abs(root.second - root.first) > tol)
            fail(ErrorCode::NoConvergence, "root bracket did not shrink below tolerance");
        lambda = (root.first + root.second) / 2;
    }

    // Sample the eigenfunction.
    detail::Shooter<Real> sh{problem, lambda, rtol};
    const Real m = problem.midpoint();
    const std::size_t count = options.sample_count;
    EigenSolution<Real> sol;
    sol.eigenvalue = lambda;
    sol.method = Method::Shooting;
    sol.grid_size = count;
    sol.parity = problem.parity;
    sol.midpoint = m;

    if (plan.two_sided) {
        const std::size_t half = count / 2 + 1;
        auto left_nodes = detail::uniform_nodes(problem.s_lo, m, half);
        auto right_nodes = detail::uniform_nodes(problem.s_hi, m, half);
        const Real lo_start = problem.s_lo + (problem.singular_lo ? plan.offset : Real(0));
        const Real hi_start = problem.s_hi - (problem.singular_hi ? plan.offset : Real(0));
        left_nodes.front() = lo_start;
        right_nodes.front() = hi_start;
        auto left = detail::trace(sh, {1, 0}, lo_start, left_nodes);
        auto right = detail::trace(sh, {1, 0}, hi_start, right_nodes);
        left.front().s = problem.s_lo;
        right.front().s = problem.s_hi;
        const auto& lm = left.back();
        const auto& rm = right.back();
        const Real scale = abs(rm.u) > abs(rm.du) ? lm.u / rm.u : lm.du / rm.du;
        for (auto it = right.rbegin() + 1; it != right.rend(); ++it)
            left.push_back({it->s, it->u * scale, it->du * scale});
        sol.samples = std::move(left);
    } else if (plan.inward) {
        auto nodes = detail::uniform_nodes(problem.s_hi, m, count);
        const Real start = problem.s_hi - plan.offset;
        nodes.front() = start;
        auto traced = detail::trace(sh, {1, 0}, start, nodes);
        traced.front().s = problem.s_hi;
        traced.front().du = 0;
        std::reverse(traced.begin(), traced.end());
        const bool odd = problem.parity == Parity::OddNeumann;
        const Real norm = odd ? traced.front().du : traced.front().u;
        require(norm != 0, ErrorCode::NoConvergence, "degenerate eigenfunction normalization");
        for (auto& p : traced) {
            p.u /= norm;
            p.du /= norm;
        }
        sol.samples = std::move(traced);
    } else {
        const bool odd = problem.parity == Parity::OddNeumann;
        auto nodes = detail::uniform_nodes(m, problem.s_hi, count);
        sol.samples = detail::trace(sh, odd ? detail::State<Real>{0, 1} : detail::State<Real>{1, 0},
                                    m, nodes);
    }
    if (problem.parity == Parity::General) {
        Real peak = 0;
        for (const auto& p : sol.samples) peak = std::max(peak, Real(abs(p.u)));
        const Real norm = sol.samples.front().u > 0 ? peak : -peak;
        for (auto& p : sol.samples) {
            p.u /= norm;
            p.du /= norm;
        }
    }

    detail::check_nodal_structure(problem, sol.samples, lambda);
    sol.residual = detail::ode_defect(problem, sol.samples, lambda);
    return sol;
}

namespace detail {

/// Lumped finite-volume pencil (K + S) - x M on a uniform grid, stored as
/// edge conductances so the Sturm count never forms d_i - x directly.
template <class Real>
struct Pencil {
    std::vector<Real> left;  // conductance to previous node (Dirichlet edge included)
    std::vector<Real> right; // conductance to next node (Dirichlet edge included)
    std::vector<Real> mass;
    std::vector<Real> shift; // potential * mass

    std::size_t size() const { return mass.size(); }

    /// Number of pencil eigenvalues strictly below x.
    std::size_t count_below(Real x) const {
        using std::abs;
        std::size_t count = 0;
        Real t = left[0] + shift[0] - x * mass[0];
        Real q = t + right[0];
        if (q < 0) ++count;
        for (std::size_t i = 1; i < size(); ++i) {
            if (q == 0) q = epsilon<Real>() * (abs(right[i - 1]) + Real(1));
            t = shift[i] - x * mass[i] + left[i] * t / q;
            q = t + right[i];
            if (q < 0) ++count;
        }
        return count;
    }
};

template <class Real>
Pencil<Real> assemble(const SLProblem<Real>& p, std::size_t n) {
    const bool half = p.parity != Parity::General;
    const Real x0 = half ? p.midpoint() : p.s_lo;
    const Real x1 = p.s_hi;
    const Real h = (x1 - x0) / Real(n);
    const bool dirichlet_lo = p.parity == Parity::OddNeumann;
    const bool dirichlet_hi = p.parity == Parity::EvenDirichlet;

    std::vector<Real> wmid(n);
    for (std::size_t i = 0; i < n; ++i) {
        wmid[i] = p.weight(x0 + (Real(i) + Real(0.5)) * h);
        if (!(wmid[i] > 0) || !finite(wmid[i]))
            fail(ErrorCode::DegenerateWeight,
                 "weight is not positive at s = " + str(x0 + (Real(i) + Real(0.5)) * h));
    }
    for (std::size_t i = 1; i < n; ++i) {
        const Real wi = p.weight(x0 + Real(i) * h);
        if (!(wi > 0) || !finite(wi))
            fail(ErrorCode::DegenerateWeight, "weight vanishes at interior node s = " +
                                                  str(x0 + Real(i) * h));
    }

    Pencil<Real> pc;
    const std::size_t first = dirichlet_lo ? 1 : 0;
    const std::size_t last = dirichlet_hi ? n - 1 : n;
    for (std::size_t i = first; i <= last; ++i) {
        const Real cl = i > 0 ? wmid[i - 1] / h : Real(0);
        const Real cr = i < n ? wmid[i] / h : Real(0);
        const Real mass = (h / 2) * ((i > 0 ? wmid[i - 1] : Real(0)) + (i < n ? wmid[i] : Real(0)));
        // left[i] == right[i-1] for consecutive unknowns; an edge to an
        // eliminated Dirichlet node only enters the diagonal.
        pc.left.push_back(cl);
        pc.right.push_back(cr);
        pc.mass.push_back(mass);
        pc.shift.push_back(p.potential(x0 + Real(i) * h) * mass);
    }
    return pc;
}

} // namespace detail

/// Target eigenvalue of the lumped finite-volume discretization on `n` cells.
template <class Real>
Real fd_eigenvalue_on_grid(const SLProblem<Real>& problem, std::size_t n) {
    using std::abs;
    const auto pc = detail::assemble(problem, n);
    const std::size_t target = problem.parity == Parity::General ? 1 : 0;
    require(pc.size() > target + 1, ErrorCode::GridTooCoarse, "grid has too few unknowns");

    Real lo = 0, hi = 0;
    for (std::size_t i = 0; i < pc.size(); ++i) {
        const Real diag = pc.left[i] + pc.right[i] + pc.shift[i];
        const Real radius = pc.left[i] + pc.right[i];
        lo = std::min(lo, Real(pc.shift[i] / pc.mass[i]));
        hi = std::max(hi, Real((diag + radius) / pc.mass[i]));
    }
    lo -= 1;
    hi += 1;
    const Real rel = std::max(Real(4) * detail::epsilon<Real>(), Real(1e-20));
    for (int it = 0; it < 400; ++it) {
        const Real mid = (lo + hi) / 2;
        if (hi - lo <= rel * std::max(Real(1), Real(abs(mid)))) break;
        if (pc.count_below(mid) <= target) lo = mid;
        else hi = mid;
    }
    return (lo + hi) / 2;
}

/// Richardson-extrapolated finite-difference estimate over grid_size * 2^j
/// cells, j = 0..refinements.
template <class Real>
FdEstimate<Real> fd_oracle(const SLProblem<Real>& problem, std::size_t grid_size, int refinements) {
    using std::abs;
    problem.validate();
    require(grid_size >= 16, ErrorCode::InvalidArgument, "grid_size must be at least 16");
    require(refinements >= 1, ErrorCode::InvalidArgument, "refinements must be at least 1");

    FdEstimate<Real> est;
    for (int j = 0; j <= refinements; ++j) {
        const std::size_t n = grid_size << j;
        est.grids.push_back(n);
        est.raw.push_back(fd_eigenvalue_on_grid(problem, n));
    }
    // Differences below this are bisection noise, not a trend.
    const Real noise = Real(1e3) * std::max(Real(detail::epsilon<Real>()), Real(1e-20)) *
                       std::max(Real(1), Real(abs(est.raw.back())));
    int trend = 0;
    for (std::size_t j = 1; j < est.raw.size(); ++j) {
        const Real d = est.raw[j] - est.raw[j - 1];
        if (abs(d) <= noise) continue;
        const int sign = d > 0 ? 1 : -1;
        if (trend != 0 && sign != trend)
            fail(ErrorCode::GridTooCoarse, "eigenvalue estimates are not monotone under refinement");
        trend = sign;
    }

    const std::size_t levels = est.raw.size();
    std::vector<std::vector<Real>> table(levels);
    for (std::size_t j = 0; j < levels; ++j) {
        table[j].push_back(est.raw[j]);
        Real factor = 1;
        for (std::size_t k = 1; k <= j; ++k) {
            factor *= 4;
            table[j].push_back(table[j][k - 1] +
                               (table[j][k - 1] - table[j - 1][k - 1]) / (factor - 1));
        }
    }
    est.eigenvalue = table.back().back();
    const Real d1 = abs(table.back().back() - table.back()[levels - 2]);
    const Real d2 = abs(table.back().back() - table[levels - 2].back());
    est.error_estimate = std::max(d1, d2);
    return est;
}

template <class Real>
Real fd_oracle_eigenvalue(const SLProblem<Real>& problem, std::size_t grid_size, int refinements) {
    return fd_oracle(problem, grid_size, refinements).eigenvalue;
}

template <class Real = double>
struct SolveOptions {
    std::size_t grid_size = 512;
    int refinements = 3;
    int max_widenings = 8;
    ShootOptions<Real> shooting{};
};

/// FD oracle seeds the bracket, shooting refines it. The bracket starts at
/// fd +- 10 * fd_err and widens geometrically if it turns out empty.
template <class Real>
EigenSolution<Real> solve_first_eigenvalue(const SLProblem<Real>& problem, Real tol,
                                           const SolveOptions<Real>& options = {}) {
    using std::abs;
    const auto fd = fd_oracle(problem, options.grid_size, options.refinements);
    Real half_width = std::max(Real(10) * fd.error_estimate, Real(10) * tol);
    half_width = std::max(half_width, Real(1e-12) * std::max(Real(1), Real(abs(fd.eigenvalue))));
    for (int attempt = 0;; ++attempt) {
        try {
            return shoot_eigenvalue(problem,
                                    Bracket<Real>{fd.eigenvalue - half_width,
                                                  fd.eigenvalue + half_width},
                                    tol, options.shooting);
        } catch (const SpectralError& e) {
            if (e.code() != ErrorCode::BracketEmpty || attempt >= options.max_widenings) throw;
        }
        half_width *= 8;
    }
}

} // namespace bespectra
