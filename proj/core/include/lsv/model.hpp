#pragma once

#include <variant>

#include "lsv/local_vol.hpp"

namespace lsv {

struct ZeroDrift {};
struct ConstantDrift {
    double mu = 0.0;
};
/// mu(v) * v = a * (b - v)
struct MeanRevertingDrift {
    double a = 0.0;
    double b = 0.0;
};
using VarianceDrift = std::variant<ZeroDrift, ConstantDrift, MeanRevertingDrift>;

enum class VolOfVolKind {
    Lognormal,   // sigma(v) = sigma
    SquareRoot,  // sigma(v) = sigma / sqrt(v)
};

struct VolOfVolSpec {
    VolOfVolKind kind = VolOfVolKind::Lognormal;
    double sigma = 1.0;
    VarianceDrift drift = ZeroDrift{};

    void validate() const;
    /// sigma(v) in dV/V = sigma(V) dZ + mu(V) dt.
    double sigma_of(double v) const;
};

/// dS/S = eta(S) sqrt(V) dW + (r - q) dt,  dV/V = sigma(V) dZ + mu(V) dt,
/// d<W,Z> = rho dt.
struct LsvModel {
    double s0 = 1.0;
    double v0 = 0.04;
    double rho = 0.0;
    double r = 0.0;
    double q = 0.0;
    LocalVolSpec local_vol = ConstantLocalVol{};
    VolOfVolSpec vol_of_vol{};

    void validate() const;
};

/// Zero-maturity VIX level eta(S0) * sqrt(V0).
double vix_spot(const LsvModel& model);

/// rho < -sqrt((p-1)/p): sufficient for finite p-th moment of S_T.
bool check_moment_condition(double rho, double p);

/// The Tanh-model experiment: f0 = 1, f1 = -0.5, x0 = 0, sigma = 2, V0 = 0.1,
/// S0 = 1, r = q = 0, zero variance drift.
LsvModel table1_model(double rho);

}  // namespace lsv
