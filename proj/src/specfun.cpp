#include "isacmarket/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace isac::specfun {

namespace {

constexpr double kSeriesEps = 1e-17;
constexpr double kMarcumTol = 1e-14;
constexpr int kMarcumCap = 10000;

[[noreturn]] void domain_fail(const std::string& what) {
    throw std::domain_error(what);
}

}  // namespace

MarcumOrder::MarcumOrder(int order) : order_(order) {
    if (order < 1)
        domain_fail("MarcumOrder: order must be >= 1, got " + std::to_string(order));
}

double log_modified_bessel_i(int order, double x) {
    if (order < 0)
        domain_fail("log_modified_bessel_i: order must be >= 0, got " + std::to_string(order));
    if (!(x >= 0.0))
        domain_fail("log_modified_bessel_i: x must be >= 0, got " + std::to_string(x));
    if (x == 0.0)
        return order == 0 ? 0.0 : kLogZero;

    // Ascending series relative to the leading term (x/2)^order / order!.
    // The partial sum can reach ~e^x, so it is rescaled on the fly and the
    // shed magnitude is re-applied in log space at the end.
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    double log_scale = 0.0;
    constexpr double kRescaleAt = 1e250;
    constexpr double kLogRescale = 250.0 * 2.302585092994045684;  // ln(1e250)
    const long cap = 1000 + static_cast<long>(x) + 2L * order;
    for (long k = 1; k <= cap; ++k) {
        term *= q / (static_cast<double>(k) * (static_cast<double>(k) + order));
        sum += term;
        if (sum > kRescaleAt) {
            sum *= 1e-250;
            term *= 1e-250;
            log_scale += kLogRescale;
        }
        if (term < sum * kSeriesEps)
            return order * std::log(0.5 * x) - std::lgamma(order + 1.0) +
                   std::log(sum) + log_scale;
    }
    throw std::runtime_error("log_modified_bessel_i: series did not converge (order=" +
                             std::to_string(order) + ", x=" + std::to_string(x) + ")");
}

double upper_regularized_gamma(double s, double x) {
    if (!(s > 0.0))
        domain_fail("upper_regularized_gamma: s must be > 0, got " + std::to_string(s));
    if (!(x >= 0.0))
        domain_fail("upper_regularized_gamma: x must be >= 0, got " + std::to_string(x));
    if (x == 0.0)
        return 1.0;

    const double log_prefactor = -x + s * std::log(x) - std::lgamma(s);

    if (x < s + 1.0) {
        // Lower series, Q = 1 - P.
        double ap = s;
        double del = 1.0 / s;
        double sum = del;
        for (int k = 0; k < 10000; ++k) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * kSeriesEps) {
                const double p = sum * std::exp(log_prefactor);
                return std::clamp(1.0 - p, 0.0, 1.0);
            }
        }
        throw std::runtime_error("upper_regularized_gamma: series did not converge (s=" +
                                 std::to_string(s) + ", x=" + std::to_string(x) + ")");
    }

    // Modified Lentz continued fraction for Q itself.
    constexpr double kTiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 10000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16)
            return std::clamp(std::exp(log_prefactor) * h, 0.0, 1.0);
    }
    throw std::runtime_error("upper_regularized_gamma: continued fraction did not converge (s=" +
                             std::to_string(s) + ", x=" + std::to_string(x) + ")");
}

double marcum_q(MarcumOrder m, double a, double b) {
    if (!(a >= 0.0))
        domain_fail("marcum_q: a must be >= 0, got " + std::to_string(a));
    if (!(b >= 0.0))
        domain_fail("marcum_q: b must be >= 0, got " + std::to_string(b));
    if (b == 0.0)
        return 1.0;

    const int order = m.value();
    const double y = 0.5 * b * b;
    if (a == 0.0)
        return upper_regularized_gamma(static_cast<double>(order), y);

    // Poisson-weighted sum of regularized gamma tails, expanded outward
    // from the mode of the Poisson weights so the term count scales with
    // sqrt(lambda) rather than lambda.  Weights and the gamma-pdf
    // increments are carried in log space; the tails advance by
    //   Q(s + 1, y) = Q(s, y) + y^s e^{-y} / s!,
    // upward (stable) on the forward pass and downward on the backward
    // pass, where the rapidly decaying weights absorb the cancellation.
    const double lambda = 0.5 * a * a;
    const double log_lambda = std::log(lambda);
    const double log_y = std::log(y);

    const long n0 = static_cast<long>(lambda);
    const double log_w0 = -lambda + n0 * log_lambda - std::lgamma(n0 + 1.0);
    const double g0 = upper_regularized_gamma(static_cast<double>(order + n0), y);
    const auto log_pdf_term = [&](long n) {
        return (order + n) * log_y - y - std::lgamma(order + n + 1.0);
    };

    double sum = 0.0;
    long terms = 0;
    const auto cap_error = [&]() {
        return std::runtime_error("marcum_q: series did not converge within " +
                                  std::to_string(kMarcumCap) + " terms (M=" +
                                  std::to_string(order) + ", a=" + std::to_string(a) +
                                  ", b=" + std::to_string(b) + ")");
    };

    // forward from the mode
    {
        double log_w = log_w0;
        double g = g0;
        double log_t = log_pdf_term(n0);
        for (long n = n0;; ++n) {
            if (++terms > kMarcumCap)
                throw cap_error();
            const double w = std::exp(log_w);
            sum += w * g;
            if (static_cast<double>(n + 1) > lambda) {
                // geometric bound on the remaining weight mass, G <= 1
                const double r = lambda / (n + 2.0);
                if (w * (1.0 + r / (1.0 - r)) < kMarcumTol)
                    break;
            }
            g = std::min(1.0, g + std::exp(log_t));
            log_t += log_y - std::log(static_cast<double>(order + n + 1));
            log_w += log_lambda - std::log(static_cast<double>(n + 1));
        }
    }
    // backward from the mode
    {
        double log_w = log_w0;
        double g = g0;
        double log_t = log_pdf_term(n0 - 1);
        for (long n = n0 - 1; n >= 0; --n) {
            if (++terms > kMarcumCap)
                throw cap_error();
            log_w += std::log(static_cast<double>(n + 1)) - log_lambda;
            g = std::max(0.0, g - std::exp(log_t));
            log_t += std::log(static_cast<double>(order + n)) - log_y;
            const double w = std::exp(log_w);
            sum += w * g;
            const double r = static_cast<double>(n) / lambda;
            if (w * (1.0 + r / (1.0 - r)) < kMarcumTol)
                break;
        }
    }
    return std::clamp(sum, 0.0, 1.0);
}

double marcum_q_difference(double a, double b) {
    if (!(a >= 0.0))
        domain_fail("marcum_q_difference: a must be >= 0, got " + std::to_string(a));
    if (!(b >= 0.0))
        domain_fail("marcum_q_difference: b must be >= 0, got " + std::to_string(b));
    if (b == 0.0)
        return 0.0;
    const double y = 0.5 * b * b;
    if (a == 0.0)
        return y * std::exp(-y);  // removable singularity of (b/a) I_1(ab)
    const double log_i1 = log_modified_bessel_i(1, a * b);
    return std::exp(std::log(b) - std::log(a) - 0.5 * (a * a + b * b) + log_i1);
}

}  // namespace isac::specfun
