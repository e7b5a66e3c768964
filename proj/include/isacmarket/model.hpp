// Economic model of a monopoly ISAC service: quality metrics, utility,
// inverse demands, the Shannon-rate production function, costs and profits.
//
// All quantities are dimensionless model units.  Functions are pure and
// take the exogenous parameters as an immutable record, so they are safe
// to call concurrently.

#pragma once

#include <array>

namespace isac {

// Exogenous parameters.  gamma = -ln P_FA; gamma_T and gamma_C are the
// aggregate sensing and communication channel gains; alpha and beta weight
// the sensing and communication qualities in the user's utility; w_p and
// w_w are the unit prices of power and bandwidth.
struct ModelParams {
    double gamma = 5.0;
    double gamma_T = 1.0;
    double gamma_C = 1.0;
    double alpha = 1.0;
    double beta = 1.0;
    double w_p = 0.01;
    double w_w = 0.01;

    // Throws std::invalid_argument naming the offending field unless every
    // field is strictly positive and finite.
    void validate() const;
};

// Input-factor quantities chosen by the operator.
struct Allocation {
    double P_r = 0.0;  // sensing transmit power (commodity 1)
    double P_c = 0.0;  // communication transmit power
    double W_c = 0.0;  // communication bandwidth
};

// Unit prices quoted to the user for P_r and R_c.
struct PriceQuote {
    double p1 = 0.0;
    double p2 = 0.0;
};

// Sensing quality theta(P_r) = Q_1(sqrt(2 P_r gamma_T), sqrt(2 gamma)).
// At P_r = 0 this equals the false-alarm probability e^{-gamma}.
double detection_probability(double P_r, const ModelParams& params);

// Production function rho(P_c, W_c) = W_c log2(1 + P_c gamma_C / W_c).
// Defined as 0 at W_c = 0 by continuity.
double comm_rate(double P_c, double W_c, const ModelParams& params);

// Partial derivatives of comm_rate, used for FOC residual checks.
double comm_rate_dPc(double P_c, double W_c, const ModelParams& params);
double comm_rate_dWc(double P_c, double W_c, const ModelParams& params);

// Communication quality eta(R_c) = ln(1 + R_c).
double comm_utility(double R_c);

// Quasilinear user utility
//   alpha theta(P_r) + beta eta(R_c) - p1 P_r - p2 R_c.
double user_utility(double P_r, double R_c, const PriceQuote& prices,
                    const ModelParams& params);

// Inverse demand for the communication rate: p2 = beta / (1 + R_c).
double inverse_demand_p2(double R_c, const ModelParams& params);

// Direct demand R_c(p2) = beta / p2 - 1, valid for p2 in (0, beta].
double demand_Rc(double p2, const ModelParams& params);

// Inverse demand for sensing power: the user's marginal sensing utility
//   p1 = alpha gamma_T [Q_2 - Q_1](sqrt(2 P_r gamma_T), sqrt(2 gamma)),
// single-peaked in P_r, tending to 0 as P_r grows.
double inverse_demand_p1(double P_r, const ModelParams& params);

// Operator cost w_p (P_r + P_c) + w_w W_c.
double costs(const Allocation& alloc, const ModelParams& params);

// Sensing-side profit p1(P_r) P_r - w_p P_r.
double profit_r(double P_r, const ModelParams& params);

// Communication-side profit beta rho / (1 + rho) - w_p P_c - w_w W_c.
double profit_c(double P_c, double W_c, const ModelParams& params);

// Total profit in its revenue-minus-cost form
//   p1(P_r) P_r + p2(rho) rho - w_p (P_r + P_c) - w_w W_c;
// equals profit_r + profit_c by separability.
double profit_total(const Allocation& alloc, const ModelParams& params);

}  // namespace isac
