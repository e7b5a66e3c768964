#include "isacmarket/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "isacmarket/specfun.hpp"

namespace isac {

namespace {

constexpr double kLn2 = 0.6931471805599453094;

void require_positive(double value, const char* field) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw std::invalid_argument(std::string("ModelParams.") + field +
                                    " must be strictly positive, got " + std::to_string(value));
}

void require_nonnegative(double value, const char* what) {
    if (!(value >= 0.0))
        throw std::domain_error(std::string(what) + " must be non-negative, got " +
                                std::to_string(value));
}

}  // namespace

void ModelParams::validate() const {
    require_positive(gamma, "gamma");
    require_positive(gamma_T, "gamma_T");
    require_positive(gamma_C, "gamma_C");
    require_positive(alpha, "alpha");
    require_positive(beta, "beta");
    require_positive(w_p, "w_p");
    require_positive(w_w, "w_w");
}

double detection_probability(double P_r, const ModelParams& params) {
    require_nonnegative(P_r, "detection_probability: P_r");
    return specfun::marcum_q(specfun::MarcumOrder(1),
                             std::sqrt(2.0 * P_r * params.gamma_T),
                             std::sqrt(2.0 * params.gamma));
}

double comm_rate(double P_c, double W_c, const ModelParams& params) {
    require_nonnegative(P_c, "comm_rate: P_c");
    require_nonnegative(W_c, "comm_rate: W_c");
    if (P_c == 0.0 || W_c == 0.0)
        return 0.0;
    return W_c * std::log2(1.0 + P_c * params.gamma_C / W_c);
}

double comm_rate_dPc(double P_c, double W_c, const ModelParams& params) {
    require_nonnegative(P_c, "comm_rate_dPc: P_c");
    if (!(W_c > 0.0))
        throw std::domain_error("comm_rate_dPc: W_c must be > 0");
    const double x = P_c * params.gamma_C / W_c;
    return params.gamma_C / (kLn2 * (1.0 + x));
}

double comm_rate_dWc(double P_c, double W_c, const ModelParams& params) {
    require_nonnegative(P_c, "comm_rate_dWc: P_c");
    if (!(W_c > 0.0))
        throw std::domain_error("comm_rate_dWc: W_c must be > 0");
    const double x = P_c * params.gamma_C / W_c;
    return std::log2(1.0 + x) - x / (kLn2 * (1.0 + x));
}

double comm_utility(double R_c) {
    require_nonnegative(R_c, "comm_utility: R_c");
    return std::log1p(R_c);
}

double user_utility(double P_r, double R_c, const PriceQuote& prices,
                    const ModelParams& params) {
    return params.alpha * detection_probability(P_r, params) +
           params.beta * comm_utility(R_c) - prices.p1 * P_r - prices.p2 * R_c;
}

double inverse_demand_p2(double R_c, const ModelParams& params) {
    require_nonnegative(R_c, "inverse_demand_p2: R_c");
    return params.beta / (1.0 + R_c);
}

double demand_Rc(double p2, const ModelParams& params) {
    if (!(p2 > 0.0) || !(p2 <= params.beta))
        throw std::domain_error("demand_Rc: p2 must lie in (0, beta], got " +
                                std::to_string(p2));
    return params.beta / p2 - 1.0;
}

double inverse_demand_p1(double P_r, const ModelParams& params) {
    if (!(P_r > 0.0))
        throw std::domain_error("inverse_demand_p1: P_r must be > 0, got " +
                                std::to_string(P_r));
    return params.alpha * params.gamma_T *
           specfun::marcum_q_difference(std::sqrt(2.0 * P_r * params.gamma_T),
                                        std::sqrt(2.0 * params.gamma));
}

double costs(const Allocation& alloc, const ModelParams& params) {
    return params.w_p * (alloc.P_r + alloc.P_c) + params.w_w * alloc.W_c;
}

double profit_r(double P_r, const ModelParams& params) {
    return inverse_demand_p1(P_r, params) * P_r - params.w_p * P_r;
}

double profit_c(double P_c, double W_c, const ModelParams& params) {
    if (!(W_c > 0.0))
        throw std::domain_error("profit_c: W_c must be > 0, got " + std::to_string(W_c));
    const double rho = comm_rate(P_c, W_c, params);
    return params.beta * rho / (1.0 + rho) - params.w_p * P_c - params.w_w * W_c;
}

double profit_total(const Allocation& alloc, const ModelParams& params) {
    if (!(alloc.P_r > 0.0))
        throw std::domain_error("profit_total: P_r must be > 0");
    if (!(alloc.W_c > 0.0))
        throw std::domain_error("profit_total: W_c must be > 0");
    const double rho = comm_rate(alloc.P_c, alloc.W_c, params);
    return inverse_demand_p1(alloc.P_r, params) * alloc.P_r +
           inverse_demand_p2(rho, params) * rho - costs(alloc, params);
}

}  // namespace isac
