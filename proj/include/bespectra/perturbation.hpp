#pragma once

// Small-b expansion of lambda_hat(b, pi) in exact arithmetic.
//
// With u = sum_k b^k u_k and lambda = sum_k lambda_k b^k substituted into
// u'' + (lambda - b s^2) u = 0 on [-pi/2, pi/2], order k reads
//
//     u_k'' + u_k = s^2 u_{k-1} - sum_{m=1}^{k} lambda_m u_{k-m},
//
// with u_0 = cos s, lambda_0 = 1. Each u_k is a finite sum of s^j cos s
// (j even) and s^j sin s (j odd), j <= 3k, whose coefficients lie in Q[pi^2].
// lambda_k is whatever makes u_k(pi/2) = 0 once the homogeneous part is
// pinned by alpha_{k,0} = beta_{k,0} = 0.

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bespectra/errors.hpp"
#include "bespectra/pi_poly.hpp"

namespace bespectra {

/// sum_j cos_terms[j] s^j cos s + sin_terms[j] s^j sin s
struct TrigPoly {
    std::map<int, PiPoly> cos_terms;
    std::map<int, PiPoly> sin_terms;

    int degree() const {
        int d = -1;
        if (!cos_terms.empty()) d = std::max(d, cos_terms.rbegin()->first);
        if (!sin_terms.empty()) d = std::max(d, sin_terms.rbegin()->first);
        return d;
    }

    void add_cos(int j, const PiPoly& c) { accumulate(cos_terms, j, c); }
    void add_sin(int j, const PiPoly& c) { accumulate(sin_terms, j, c); }

    TrigPoly& operator+=(const TrigPoly& o) {
        for (const auto& [j, c] : o.cos_terms) add_cos(j, c);
        for (const auto& [j, c] : o.sin_terms) add_sin(j, c);
        return *this;
    }
    TrigPoly scaled(const PiPoly& factor) const {
        TrigPoly out;
        for (const auto& [j, c] : cos_terms) out.add_cos(j, c * factor);
        for (const auto& [j, c] : sin_terms) out.add_sin(j, c * factor);
        return out;
    }
    /// Multiplies by s^p.
    TrigPoly raised(int p) const {
        TrigPoly out;
        for (const auto& [j, c] : cos_terms) out.add_cos(j + p, c);
        for (const auto& [j, c] : sin_terms) out.add_sin(j + p, c);
        return out;
    }

    /// u(pi/2) / pi. Only odd-j sine terms survive at pi/2 for an even u, and
    /// (pi/2)^j / pi = pi^(j-1) / 2^j lies in Q[pi^2].
    PiPoly boundary_value_over_pi() const {
        PiPoly v;
        for (const auto& [j, c] : sin_terms) {
            if (j % 2 == 0) fail(ErrorCode::NormalizationInconsistent, "even u has an s^even sin s term");
            v += c.shifted((j - 1) / 2) * (Rational(1) / Rational(boost::multiprecision::cpp_int(1) << j));
        }
        return v;
    }

    template <class Real>
    std::pair<Real, Real> value_and_second_derivative(Real s, const Real& pi) const {
        using std::cos;
        using std::pow;
        using std::sin;
        const Real c = cos(s), sn = sin(s);
        Real u = 0, d2 = 0;
        auto pw = [&](int k) { return k < 0 ? Real(0) : Real(pow(s, k)); };
        for (const auto& [j, coef] : cos_terms) {
            const Real a = coef.evaluate(pi);
            u += a * pw(j) * c;
            d2 += a * (Real(j * (j - 1)) * pw(j - 2) * c - Real(2 * j) * pw(j - 1) * sn - pw(j) * c);
        }
        for (const auto& [j, coef] : sin_terms) {
            const Real b = coef.evaluate(pi);
            u += b * pw(j) * sn;
            d2 += b * (Real(j * (j - 1)) * pw(j - 2) * sn + Real(2 * j) * pw(j - 1) * c - pw(j) * sn);
        }
        return {u, d2};
    }

private:
    static void accumulate(std::map<int, PiPoly>& terms, int j, const PiPoly& c) {
        PiPoly sum = terms.count(j) ? terms.at(j) + c : c;
        if (sum.is_zero()) terms.erase(j);
        else terms[j] = std::move(sum);
    }
};

/// The y with y'' + y = forcing and no cos s / sin s component. Writing
/// y = sum c_m s^m cos s + d_m s^m sin s and matching s^p cos s, s^p sin s:
///     (p+2)(p+1) c_{p+2} + 2(p+1) d_{p+1} = A_p
///     (p+2)(p+1) d_{p+2} - 2(p+1) c_{p+1} = B_p
/// solved from the top degree down.
inline TrigPoly particular_solution(const TrigPoly& forcing) {
    const int top = forcing.degree();
    TrigPoly y;
    if (top < 0) return y;
    std::vector<PiPoly> c(top + 3), d(top + 3);
    for (int p = top; p >= 0; --p) {
        const PiPoly a = forcing.cos_terms.count(p) ? forcing.cos_terms.at(p) : PiPoly{};
        const PiPoly b = forcing.sin_terms.count(p) ? forcing.sin_terms.at(p) : PiPoly{};
        const Rational two_p1(2 * (p + 1));
        const Rational pp(static_cast<long long>(p + 2) * (p + 1));
        d[p + 1] = (a - c[p + 2] * pp) / two_p1;
        c[p + 1] = (d[p + 2] * pp - b) / two_p1;
    }
    for (int m = 1; m <= top + 1; ++m) {
        if (!c[m].is_zero()) y.add_cos(m, c[m]);
        if (!d[m].is_zero()) y.add_sin(m, d[m]);
    }
    return y;
}

struct AnsatzState {
    int order = 0;
    std::map<std::pair<int, int>, PiPoly> alpha; ///< (k, j) -> coefficient of b^k s^j cos s
    std::map<std::pair<int, int>, PiPoly> beta;  ///< (k, j) -> coefficient of b^k s^j sin s
    std::vector<PiPoly> lambdas;
    std::vector<TrigPoly> terms; ///< u_0 .. u_order

    /// Residual u'' + (lambda(b) - b s^2) u of the truncated ansatz.
    template <class Real>
    Real residual(Real s, Real b, int truncation) const {
        const Real pi = boost::math::constants::pi<Real>();
        Real u = 0, d2 = 0, lambda = 0, bk = 1;
        for (int k = 0; k <= truncation; ++k) {
            const auto [uk, d2k] = terms[k].template value_and_second_derivative<Real>(s, pi);
            u += bk * uk;
            d2 += bk * d2k;
            lambda += bk * lambdas[k].evaluate(pi);
            bk *= b;
        }
        return d2 + (lambda - b * s * s) * u;
    }
};

/// Runs the order-by-order solve through max_order (at most 6).
inline AnsatzState perturbation_expansion(int max_order) {
    require(max_order >= 0, ErrorCode::InvalidArgument, "max_order must be non-negative");
    if (max_order > 6) fail(ErrorCode::OrderExceeded, "orders beyond 6 are not supported");

    AnsatzState st;
    TrigPoly u0;
    u0.add_cos(0, PiPoly(1));
    st.terms.push_back(u0);
    st.lambdas.push_back(PiPoly(1));
    st.alpha[{0, 0}] = PiPoly(1);

    TrigPoly resonant; // P(cos s) = s sin s / 2
    resonant.add_sin(1, PiPoly(Rational(1, 2)));
    const PiPoly resonant_bc = resonant.boundary_value_over_pi();

    for (int k = 1; k <= max_order; ++k) {
        TrigPoly forcing = st.terms[k - 1].raised(2);
        for (int m = 1; m < k; ++m) forcing += st.terms[k - m].scaled(-st.lambdas[m]);
        TrigPoly uk = particular_solution(forcing);

        // u_k = P(F) - lambda_k P(cos s); Dirichlet at pi/2 fixes lambda_k.
        const PiPoly bc = uk.boundary_value_over_pi();
        if (resonant_bc.degree() != 0)
            fail(ErrorCode::NormalizationInconsistent,
                 "singular boundary system at order " + std::to_string(k));
        const PiPoly lambda_k = bc / resonant_bc.coefficient(0);
        uk += resonant.scaled(-lambda_k);

        if (!uk.boundary_value_over_pi().is_zero())
            fail(ErrorCode::NormalizationInconsistent,
                 "boundary condition not met at order " + std::to_string(k));
        if (uk.degree() > 3 * k)
            fail(ErrorCode::NormalizationInconsistent,
                 "order " + std::to_string(k) + " generated degree " + std::to_string(uk.degree()));
        for (const auto& [j, c] : uk.cos_terms) {
            if (j % 2 != 0 || j == 0)
                fail(ErrorCode::NormalizationInconsistent,
                     "order " + std::to_string(k) + " broke evenness or normalization");
            st.alpha[{k, j}] = c;
        }
        for (const auto& [j, c] : uk.sin_terms) {
            if (j % 2 != 1)
                fail(ErrorCode::NormalizationInconsistent,
                     "order " + std::to_string(k) + " broke evenness");
            st.beta[{k, j}] = c;
        }
        st.terms.push_back(std::move(uk));
        st.lambdas.push_back(lambda_k);
        st.order = k;
    }
    return st;
}

/// lambda_0 .. lambda_max_order of lambda_hat(b, pi) = sum lambda_k b^k.
inline std::vector<PiPoly> perturbation_coefficients(int max_order) {
    return perturbation_expansion(max_order).lambdas;
}

enum class SeriesTarget {
    WeberPi,      ///< lambda_hat(b, pi)
    DriftPi,      ///< lambda_bar(a, pi) = a/2 + lambda_hat(a^2/4, pi)
    DriftGeneral, ///< lambda_bar(a, D) by scaling to the pi-interval
};

/// Truncated series through order K. `param` is b for WeberPi and a otherwise;
/// D is only used by DriftGeneral.
template <class Real = double>
Real evaluate_series(const std::vector<PiPoly>& lambdas, SeriesTarget target, Real param, Real D,
                     int K) {
    if (K < 0 || K >= static_cast<int>(lambdas.size()))
        fail(ErrorCode::OrderExceeded, "order " + std::to_string(K) + " exceeds the " +
                                           std::to_string(static_cast<int>(lambdas.size()) - 1) +
                                           " computed");
    const Real pi = boost::math::constants::pi<Real>();
    auto weber = [&](Real b) {
        Real acc = 0;
        for (int k = K; k >= 0; --k) acc = acc * b + lambdas[k].evaluate(pi);
        return acc;
    };
    switch (target) {
    case SeriesTarget::WeberPi:
        return weber(param);
    case SeriesTarget::DriftPi:
        return param / 2 + weber(param * param / 4);
    case SeriesTarget::DriftGeneral: {
        require(D > 0, ErrorCode::InvalidArgument, "D must be positive");
        const Real scale = pi * pi / (D * D);
        const Real b = param * param * D * D * D * D / (4 * pi * pi * pi * pi);
        return scale * weber(b) + param / 2;
    }
    }
    return Real(0);
}

} // namespace bespectra
