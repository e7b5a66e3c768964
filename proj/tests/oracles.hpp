// Independent numeric oracles for the test suites: adaptive quadrature of
// the defining integrals and Richardson finite differences.  These stay
// separate from the implementation paths they are used to check (the
// production Marcum series never touches an integral, and the production
// Bessel series never touches quadrature).

#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "isacmarket/specfun.hpp"

namespace oracles {

namespace detail {

inline double simpson_recurse(const std::function<double(double)>& f, double a, double fa,
                              double b, double fb, double m, double fm, double whole,
                              double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_recurse(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_recurse(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int max_depth = 48) {
    if (!(b > a))
        return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_recurse(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

// ln I_n(x) through the cosine integral representation
//   I_n(x) = (1/pi) int_0^pi e^{x cos t} cos(n t) dt,
// with the e^x factor pulled out so the integrand stays in [-1, 1].
inline double log_bessel_i(int order, double x) {
    if (order < 0 || x < 0.0)
        throw std::domain_error("oracle log_bessel_i: bad arguments");
    if (x == 0.0)
        return order == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    const double pi = 3.14159265358979323846;
    const auto integrand = [&](double t) {
        return std::exp(x * (std::cos(t) - 1.0)) * std::cos(order * t);
    };
    const double scaled = adaptive_simpson(integrand, 0.0, pi, 1e-15) / pi;
    return x + std::log(scaled);
}

// Q(s, x) by quadrature of the normalized tail integrand
//   t^{s-1} e^{-t} / Gamma(s)  over [x, cutoff].
inline double upper_gamma_q(double s, double x) {
    if (!(s > 0.0) || x < 0.0)
        throw std::domain_error("oracle upper_gamma_q: bad arguments");
    if (x == 0.0)
        return 1.0;
    const double lg = std::lgamma(s);
    const auto integrand = [&](double t) {
        return std::exp((s - 1.0) * std::log(t) - t - lg);
    };
    const double cutoff = std::max(x, s) + 50.0 * std::sqrt(std::max(1.0, s));
    return adaptive_simpson(integrand, x, cutoff, 1e-15);
}

// Marcum Q_m(a, b) by quadrature of the defining integral
//   int_b^inf t (t/a)^{m-1} e^{-(t^2+a^2)/2} I_{m-1}(a t) dt.
// The Bessel weight is evaluated in log space; its own correctness is
// checked separately against log_bessel_i above.
inline double marcum_q(int m, double a, double b) {
    if (m < 1 || a < 0.0 || b < 0.0)
        throw std::domain_error("oracle marcum_q: bad arguments");
    const double lgm = std::lgamma(static_cast<double>(m));
    const auto integrand = [&](double t) {
        if (t <= 0.0)
            return 0.0;
        double log_f;
        if (a == 0.0) {
            // (t/a)^{m-1} I_{m-1}(a t) -> (t^2/2)^{m-1} / (m-1)!
            log_f = std::log(t) + (m - 1) * std::log(0.5 * t * t) - 0.5 * t * t - lgm;
        } else {
            log_f = std::log(t) + (m - 1) * (std::log(t) - std::log(a)) -
                    0.5 * (t * t + a * a) +
                    isac::specfun::log_modified_bessel_i(m - 1, a * t);
        }
        return std::exp(log_f);
    };
    const double cutoff = std::max(a, b) + 16.0;
    return adaptive_simpson(integrand, b, cutoff, 1e-12);
}

// Richardson-extrapolated central difference, O(h^4).
inline double richardson_derivative(const std::function<double(double)>& f, double x,
                                    double h) {
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

// Lower Marcum P_m(a, b) = 1 - Q_m(a, b), summed from positive terms only
// (Poisson weights times lower regularized gamma series).  Unlike
// 1 - Q_m(a, b) in doubles, this keeps full relative precision when the
// miss probability is tiny, which the derivative oracle below relies on.
inline double marcum_p(int m, double a, double b) {
    if (m < 1 || a < 0.0 || b < 0.0)
        throw std::domain_error("oracle marcum_p: bad arguments");
    if (b == 0.0)
        return 0.0;
    const double y = 0.5 * b * b;
    const auto lower_gamma_p = [&](double s) {
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 10000; ++k) {
            term *= y / (s + k);
            sum += term;
            if (term < sum * 1e-18)
                break;
        }
        return std::exp(s * std::log(y) - y - std::lgamma(s + 1.0)) * sum;
    };
    if (a == 0.0)
        return lower_gamma_p(static_cast<double>(m));
    const double lambda = 0.5 * a * a;
    const double log_lambda = std::log(lambda);
    double total = 0.0;
    for (int n = 0; n < 100000; ++n) {
        const double w = std::exp(-lambda + n * log_lambda - std::lgamma(n + 1.0));
        const double contrib = w * lower_gamma_p(static_cast<double>(m + n));
        total += contrib;
        if (n > lambda && contrib < total * 1e-17 + 1e-320)
            break;
    }
    return total;
}

// d theta / d P_r by Richardson finite differences of the miss probability
// 1 - theta; theta itself saturates to 1 at large P_r and would lose the
// derivative in rounding.
inline double detection_probability_derivative(double P_r, double gamma_T, double gamma) {
    const double b = std::sqrt(2.0 * gamma);
    const auto neg_miss = [&](double P) {
        return -marcum_p(1, std::sqrt(2.0 * P * gamma_T), b);
    };
    const double h = std::min(0.05, 0.4 * P_r);
    return richardson_derivative(neg_miss, P_r, h);
}

}  // namespace oracles
