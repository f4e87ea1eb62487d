#pragma once

#include <array>
#include <optional>

#include "lsv/model.hpp"
#include "lsv/vix_mapping.hpp"

namespace lsv {

enum class SmileKind {
    EuropeanSabrType,
    VixSabrType,
    EuropeanHestonType,
    VixHestonType,
};

/// sigma(k) = atm + skew * k + convexity * k^2 near the money. The Heston-type
/// VIX expansion has no convexity term; it is left empty rather than zero.
struct SmileExpansion {
    double atm = 0.0;
    double skew = 0.0;
    std::optional<double> convexity;
    SmileKind kind = SmileKind::EuropeanSabrType;

    void validate() const;
    /// Quadratic (or linear, when convexity is unavailable) evaluation.
    double evaluate(double log_moneyness) const;
};

SmileExpansion european_expansion_sabr_type(const LsvModel& model);
SmileExpansion vix_expansion_sabr_type(const LsvModel& model);
SmileExpansion european_expansion_heston_type(const LsvModel& model);
SmileExpansion vix_expansion_heston_type(const LsvModel& model);

/// Dispatches on product and vol-of-vol kind.
SmileExpansion smile_expansion(const LsvModel& model, bool vix);

/// Coefficients k0..k7 of the VIX convexity numerator sum_i k_i sigma^i.
std::array<double, 8> vix_convexity_coefficients(double eta0, double eta1, double eta2, double eta3, double rho,
                                                 double v0);

struct VolBounds {
    double lower;
    double upper;
};

/// Range of the SABR-type ATM VIX volatility over rho in [-1, 1].
VolBounds vix_atm_bounds(const LsvModel& model);

/// Short-maturity VIX implied volatility, lognormal variance with
/// mean-reverting drift. Returns 0 for K <= sqrt(beta), where the VIX
/// cannot reach.
double meanrev_lognormal_vix_smile(double a, double b, double sigma, double v0, double tau, double strike);

/// Same for square-root variance. Log-moneyness is taken against the VIX
/// forward sqrt(alpha v0 + beta). Throws std::domain_error for K^2 <= beta.
double heston_vix_smile(double a, double b, double sigma, double v0, double tau, double strike);

/// lim C_E(S0, T) / sqrt(T) = eta(S0) S0 sqrt(V0) / sqrt(2 pi).
double atm_price_limit_european(const LsvModel& model);

/// lim C_V(F_V, T) / sqrt(T) for the VIX proxy.
double atm_price_limit_vix(const LsvModel& model);

}  // namespace lsv
