#pragma once

namespace lsv {

/// VIX_T^2 = alpha * V_T + beta for mean-reverting variance drift
/// a (b - V) over the VIX window tau.
struct VixMapping {
    double alpha = 1.0;
    double beta = 0.0;

    void validate() const;
    double vix_squared(double v) const { return alpha * v + beta; }
    /// v with vix_squared(v) = k2; throws std::domain_error when k2 <= beta.
    double inverse(double k2) const;
};

/// alpha = (1 - e^{-a tau}) / (a tau), beta = b (1 - alpha); a -> 0 gives (1, 0).
VixMapping vix_mapping(double a, double b, double tau);

/// (e^{mu tau} - 1) / (mu tau): VIX_T^2 = factor * V_T for constant drift mu.
double constant_drift_factor(double mu, double tau);

}  // namespace lsv
