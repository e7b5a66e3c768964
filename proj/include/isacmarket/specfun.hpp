// Generalized Marcum Q-function and supporting special functions.
//
// Everything here is evaluated in log space where overflow is possible,
// so the functions stay usable for large noncentrality parameters.

#pragma once

#include <limits>

namespace isac::specfun {

// Flagged "-infinity" returned by log_modified_bessel_i(order >= 1, 0).
// Exponentiating it downstream yields an exact zero.
inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

// Order M of the Marcum Q-function Q_M(a, b).  Must be >= 1.
class MarcumOrder {
public:
    explicit MarcumOrder(int order);
    int value() const { return order_; }

private:
    int order_;
};

// ln I_order(x) for integer order >= 0 and x >= 0.
// Returns 0 for (0, 0) and kLogZero for (order >= 1, 0).
// Throws std::domain_error for negative arguments.
double log_modified_bessel_i(int order, double x);

// Regularized upper incomplete gamma Q(s, x) = Gamma(s, x) / Gamma(s),
// for s > 0 and x >= 0.  Decreasing in x, Q(s, 0) = 1.
double upper_regularized_gamma(double s, double x);

// Marcum Q_M(a, b) = sum_n e^{-a^2/2} (a^2/2)^n / n! * Q(M + n, b^2/2).
// Result is clamped into [0, 1].  Throws std::runtime_error with a
// diagnostic if the series does not converge within the iteration cap.
double marcum_q(MarcumOrder m, double a, double b);

// Q_2(a, b) - Q_1(a, b) evaluated through the recurrence term
// (b/a) e^{-(a^2+b^2)/2} I_1(ab), never by subtracting two Q values.
// The a -> 0 limit (b^2/2) e^{-b^2/2} is taken analytically.
double marcum_q_difference(double a, double b);

}  // namespace isac::specfun
