#pragma once

// Exact polynomials in pi^2 with rational coefficients.

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace bespectra {

using Rational = boost::multiprecision::cpp_rational;

/// sum_m coeffs[m] * pi^(2m). Zero coefficients are never stored, so two
/// PiPoly values are equal exactly when their maps are.
class PiPoly {
public:
    PiPoly() = default;
    PiPoly(Rational constant) { set(0, std::move(constant)); } // NOLINT: implicit by design of the ring
    PiPoly(long long constant) : PiPoly(Rational(constant)) {}

    /// c * pi^(2m)
    static PiPoly monomial(int m, Rational c) {
        PiPoly p;
        p.set(m, std::move(c));
        return p;
    }

    const std::map<int, Rational>& coefficients() const { return coeffs_; }
    Rational coefficient(int m) const {
        auto it = coeffs_.find(m);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

    PiPoly& operator+=(const PiPoly& o) {
        for (const auto& [m, c] : o.coeffs_) set(m, coefficient(m) + c);
        return *this;
    }
    PiPoly& operator-=(const PiPoly& o) {
        for (const auto& [m, c] : o.coeffs_) set(m, coefficient(m) - c);
        return *this;
    }
    PiPoly& operator*=(const Rational& r) {
        if (r == 0) {
            coeffs_.clear();
            return *this;
        }
        for (auto& [m, c] : coeffs_) c *= r;
        return *this;
    }
    friend PiPoly operator+(PiPoly a, const PiPoly& b) { return a += b; }
    friend PiPoly operator-(PiPoly a, const PiPoly& b) { return a -= b; }
    friend PiPoly operator-(PiPoly a) { return a *= Rational(-1); }
    friend PiPoly operator*(PiPoly a, const Rational& r) { return a *= r; }
    friend PiPoly operator*(const Rational& r, PiPoly a) { return a *= r; }
    friend PiPoly operator/(PiPoly a, const Rational& r) { return a *= Rational(1) / r; }
    friend PiPoly operator*(const PiPoly& a, const PiPoly& b) {
        PiPoly out;
        for (const auto& [ma, ca] : a.coeffs_)
            for (const auto& [mb, cb] : b.coeffs_) out.set(ma + mb, out.coefficient(ma + mb) + ca * cb);
        return out;
    }
    /// Multiplies by pi^(2m).
    PiPoly shifted(int m) const {
        PiPoly out;
        for (const auto& [k, c] : coeffs_) out.coeffs_.emplace(k + m, c);
        return out;
    }
    friend bool operator==(const PiPoly& a, const PiPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const PiPoly& a, const PiPoly& b) { return !(a == b); }

    /// Floating-point value; Real must be constructible from the exact rationals.
    template <class Real>
    Real evaluate(const Real& pi) const {
        const Real pi2 = pi * pi;
        Real acc = 0;
        // Horner from the top degree down.
        for (int m = degree(); m >= 0; --m) acc = acc * pi2 + to_real<Real>(coefficient(m));
        return acc;
    }

    /// Highest power first, e.g. "pi^4/720 - 5*pi^2/48 + 7/8".
    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            const int m = it->first;
            Rational c = it->second;
            const bool negative = c < 0;
            if (negative) c = -c;
            if (first) os << (negative ? "-" : "");
            else os << (negative ? " - " : " + ");
            first = false;
            const auto num = boost::multiprecision::numerator(c);
            const auto den = boost::multiprecision::denominator(c);
            if (m == 0) {
                os << num;
            } else {
                if (num != 1) os << num << "*";
                os << "pi^" << 2 * m;
            }
            if (den != 1) os << "/" << den;
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const PiPoly& p) { return os << p.to_string(); }

private:
    template <class Real>
    static Real to_real(const Rational& r) {
        return Real(boost::multiprecision::numerator(r)) / Real(boost::multiprecision::denominator(r));
    }

    void set(int m, Rational c) {
        if (c == 0) coeffs_.erase(m);
        else coeffs_[m] = std::move(c);
    }

    std::map<int, Rational> coeffs_;
};

} // namespace bespectra
