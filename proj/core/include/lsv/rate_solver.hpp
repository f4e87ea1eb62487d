#pragma once

#include "lsv/local_vol.hpp"
#include "lsv/model.hpp"
#include "lsv/vix_mapping.hpp"

namespace lsv {

/// Result of a short-maturity rate-function solve. The minimizer is reported
/// as terminal log-variance y and time-averaged variance z.
struct RatePoint {
    double strike = 0.0;
    double rate = 0.0;
    double minimizer_y = 0.0;
    double minimizer_z = 0.0;
    int iterations = 0;
    bool converged = false;
    bool boundary_hit = false;  // minimizer on the edge of the search box
    double y_lo = 0.0;          // y search range actually used
    double y_hi = 0.0;
};

struct RateSolverOptions {
    // Use the nested one-dimensional solve when rho == 0.
    bool uncorrelated_shortcut = true;
    // Box half-width for log(z / v0) and the transformed y coordinate.
    double box = 10.0;
};

/// Integral of dx / (x eta(x)) from s0 to s0 * z, by adaptive quadrature in
/// log-moneyness. Negative for z < 1. Throws std::domain_error if eta <= 0
/// on the path.
double integral_IS(const LocalVolSpec& spec, double s0, double z);

/// Integral of dx / (sqrt(x) sigma(x)) from v0 to e^y (closed form).
double vol_integral_Q(const VolOfVolSpec& spec, double v0, double y);

/// H(y, z) for the model's vol-of-vol kind.
double h_function(const VolOfVolSpec& spec, double y, double z, double v0);

/// Rate function of OTM European options at strike K.
RatePoint european_rate(const LsvModel& model, double strike, const RateSolverOptions& opts = {});

/// Rate function of OTM VIX options at vol level K (VIX approximated by
/// eta(S_T) sqrt(V_T)).
RatePoint vix_rate(const LsvModel& model, double strike, const RateSolverOptions& opts = {});

/// Rate function for VIX options in a pure stochastic volatility model with
/// VIX_T^2 = alpha V_T + beta.
double stochvol_vix_rate(const VolOfVolSpec& spec, double v0, double strike, const VixMapping& mapping);

/// Closed-form European rate for lognormal vol-of-vol and constant eta:
/// (2 / sigma^2) log^2((sqrt(1 + 2 rho zeta + zeta^2) + zeta + rho) / (1 + rho)),
/// zeta = sigma log(K / S0) / (2 eta sqrt(V0)).
double sabr_rate_closed(const LsvModel& model, double strike);

/// |k| / sqrt(2 J): short-maturity implied volatility from a rate value.
double rate_to_impvol(double rate, double log_moneyness);

}  // namespace lsv
