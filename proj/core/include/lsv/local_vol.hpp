#pragma once

#include <array>
#include <utility>
#include <variant>
#include <vector>

namespace lsv {

/// eta(S) = f0 + f1 * tanh(log(S/S0) - x0). Positive when f0 > |f1|.
struct TanhLocalVol {
    double f0 = 1.0;
    double f1 = 0.0;
    double x0 = 0.0;
};

/// eta(S) = sum_i eta[i] * log(S/S0)^i, truncated after the cubic term.
struct TaylorLogLocalVol {
    std::array<double, 4> eta{1.0, 0.0, 0.0, 0.0};
};

/// eta(S) = value. value = 1 gives a pure stochastic volatility model.
struct ConstantLocalVol {
    double value = 1.0;
};

using LocalVolSpec = std::variant<TanhLocalVol, TaylorLogLocalVol, ConstantLocalVol>;

/// Throws std::invalid_argument when the spec violates its invariants.
void validate(const LocalVolSpec& spec);

bool is_constant(const LocalVolSpec& spec);

/// eta as a function of log-moneyness t = log(S/S0).
double eta_at_log(const LocalVolSpec& spec, double t);

/// d eta / dt, t = log(S/S0).
double eta_log_derivative(const LocalVolSpec& spec, double t);

double eta_eval(const LocalVolSpec& spec, double s, double s0);

/// Taylor coefficients [eta_0 .. eta_order] of eta in powers of log(S/S0).
/// For Tanh, eta_3 is the cubic coefficient f1 * tanh'''(-x0) / 6.
std::vector<double> eta_log_coeffs(const LocalVolSpec& spec, int order);

/// Interval of log-moneyness on which eta is strictly monotone and positive,
/// together with the open range of eta^2 over it. Tanh: whole line.
struct MonotoneRegion {
    double t_lo;
    double t_hi;
    double eta_sq_lo;
    double eta_sq_hi;
};

/// Throws UnsupportedError when eta is constant or not monotone at S0.
MonotoneRegion monotone_region(const LocalVolSpec& spec);

/// Log-moneyness t with eta^2(S0 e^t) = w.
double eta_sq_inverse_log(const LocalVolSpec& spec, double w);

/// S with eta^2(S) = w. Constant specs return s0 when w equals value^2.
double eta_sq_inverse(const LocalVolSpec& spec, double w, double s0);

}  // namespace lsv
