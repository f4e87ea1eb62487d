#include "lsv/smile.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lsv {

namespace {

struct Coeffs {
    double e0, e1, e2, e3;
};

Coeffs coeffs_of(const LsvModel& model) {
    auto c = eta_log_coeffs(model.local_vol, 3);
    return {c[0], c[1], c[2], c[3]};
}

void require_kind(const LsvModel& model, VolOfVolKind kind, const char* who) {
    model.validate();
    if (model.vol_of_vol.kind != kind)
        throw std::invalid_argument(std::string(who) + ": unsupported vol-of-vol kind for this expansion");
}

}  // namespace

void SmileExpansion::validate() const {
    if (!(atm > 0.0)) throw std::invalid_argument("smile expansion: atm must be positive");
}

double SmileExpansion::evaluate(double k) const { return atm + skew * k + convexity.value_or(0.0) * k * k; }

SmileExpansion european_expansion_sabr_type(const LsvModel& model) {
    require_kind(model, VolOfVolKind::Lognormal, "european_expansion_sabr_type");
    auto [e0, e1, e2, e3] = coeffs_of(model);
    const double s = model.vol_of_vol.sigma, rho = model.rho, v0 = model.v0, sv = std::sqrt(v0);
    SmileExpansion out;
    out.kind = SmileKind::EuropeanSabrType;
    out.atm = e0 * sv;
    out.skew = 0.25 * (rho * s + 2.0 * e1 * sv);
    out.convexity = ((2.0 - 3.0 * rho * rho) * s * s + 4.0 * (4.0 * e0 * e2 - e1 * e1) * v0) / (48.0 * e0 * sv);
    return out;
}

std::array<double, 8> vix_convexity_coefficients(double e0, double e1, double e2, double e3, double r, double v0) {
    const double sv = std::sqrt(v0);
    const double r2 = r * r, r4 = r2 * r2;
    const double e1_2 = e1 * e1, e1_3 = e1_2 * e1, e1_4 = e1_2 * e1_2;
    const double e0_2 = e0 * e0, e2_2 = e2 * e2;
    std::array<double, 8> k{};
    k[0] = 256.0 * e0 * e1_4 * v0 * v0 * v0 * sv * (e1_2 * e2 - 3.0 * e0 * e2_2 + 3.0 * e0 * e1 * e3);
    k[1] = 128.0 * e0 * e1_3 * r * v0 * v0 * v0 * (15.0 * e0 * e1 * e3 - 12.0 * e0 * e2_2 + 5.0 * e1_2 * e2);
    k[2] = 16.0 * e1_2 * v0 * v0 * sv *
           (12.0 * e0_2 * e1 * e3 * (9.0 * r2 + 1.0) + 24.0 * e0_2 * e2_2 * (1.0 - 4.0 * r2) +
            4.0 * e0 * e1_2 * e2 * (15.0 * r2 - 2.0) + e1_4 * (2.0 - 3.0 * r2));
    k[3] = 16.0 * e1 * r * v0 * v0 *
           (6.0 * e0_2 * e1 * e3 * (7.0 * r2 + 3.0) + 6.0 * e0_2 * e2_2 * (4.0 - 8.0 * r2) +
            4.0 * e0 * e1_2 * e2 * (8.0 * r2 + 3.0) - e1_4 * r2);
    k[4] = 4.0 * v0 * sv *
           (12.0 * e0_2 * e1 * e3 * r2 * (2.0 * r2 + 3.0) + 12.0 * e0_2 * e2_2 * r2 * (2.0 - 3.0 * r2) +
            4.0 * e0 * e1_2 * e2 * (5.0 * r4 + 12.0 * r2 + 6.0) - e1_4 * (r4 - 6.0 * r2 + 3.0));
    k[5] = 4.0 * r * v0 * (6.0 * e0_2 * e3 * r2 + 2.0 * e0 * e1 * e2 * (4.0 * r2 + 9.0) + e1_3 * (r2 + 3.0));
    k[6] = sv * (12.0 * e0 * e2 * r2 + e1_2 * (3.0 * r2 + 4.0));
    k[7] = e1 * r;
    return k;
}

SmileExpansion vix_expansion_sabr_type(const LsvModel& model) {
    require_kind(model, VolOfVolKind::Lognormal, "vix_expansion_sabr_type");
    auto [e0, e1, e2, e3] = coeffs_of(model);
    const double s = model.vol_of_vol.sigma, rho = model.rho, v0 = model.v0, sv = std::sqrt(v0);
    const double d = s * s + 4.0 * rho * s * e1 * sv + 4.0 * e1 * e1 * v0;
    SmileExpansion out;
    out.kind = SmileKind::VixSabrType;
    out.atm = 0.5 * std::sqrt(d);
    out.skew = 0.5 * sv * (rho * s + 2.0 * e1 * sv) / std::pow(d, 1.5) *
               (s * s * e1 + 2.0 * rho * s * sv * (e1 * e1 + 2.0 * e0 * e2) + 8.0 * e0 * e1 * e2 * v0);
    auto k = vix_convexity_coefficients(e0, e1, e2, e3, rho, v0);
    double num = 0.0;
    for (int i = 7; i >= 0; --i) num = num * s + k[i];
    out.convexity = sv / 6.0 * num / std::pow(d, 3.5);
    return out;
}

SmileExpansion european_expansion_heston_type(const LsvModel& model) {
    require_kind(model, VolOfVolKind::SquareRoot, "european_expansion_heston_type");
    auto [e0, e1, e2, e3] = coeffs_of(model);
    (void)e3;
    const double s = model.vol_of_vol.sigma, rho = model.rho, v0 = model.v0, sv = std::sqrt(v0);
    SmileExpansion out;
    out.kind = SmileKind::EuropeanHestonType;
    out.atm = e0 * sv;
    out.skew = (rho * s + 2.0 * e1 * v0) / (4.0 * sv);
    out.convexity = ((2.0 - 5.0 * rho * rho) * s * s + 4.0 * (4.0 * e0 * e2 - e1 * e1) * v0) / (48.0 * e0 * v0 * sv);
    return out;
}

SmileExpansion vix_expansion_heston_type(const LsvModel& model) {
    require_kind(model, VolOfVolKind::SquareRoot, "vix_expansion_heston_type");
    auto [e0, e1, e2, e3] = coeffs_of(model);
    (void)e3;
    const double s = model.vol_of_vol.sigma, rho = model.rho, v0 = model.v0, sv = std::sqrt(v0);
    const double d = s * s + 4.0 * e1 * rho * s * v0 + 4.0 * e1 * e1 * v0 * v0;
    const double num = -s * s * s * s - 2.0 * e1 * rho * v0 * s * s * s +
                       4.0 * s * s * v0 * v0 * (e1 * e1 + 2.0 * e0 * e2 * rho * rho) +
                       8.0 * e1 * rho * v0 * v0 * v0 * s * (4.0 * e0 * e2 + e1 * e1) +
                       32.0 * e0 * e1 * e1 * e2 * v0 * v0 * v0 * v0;
    SmileExpansion out;
    out.kind = SmileKind::VixHestonType;
    out.atm = std::sqrt(0.25 * s * s + e1 * rho * s * v0 + e1 * e1 * v0 * v0) / sv;
    out.skew = num / (4.0 * sv * std::pow(d, 1.5));
    return out;
}

SmileExpansion smile_expansion(const LsvModel& model, bool vix) {
    bool lognormal = model.vol_of_vol.kind == VolOfVolKind::Lognormal;
    if (vix) return lognormal ? vix_expansion_sabr_type(model) : vix_expansion_heston_type(model);
    return lognormal ? european_expansion_sabr_type(model) : european_expansion_heston_type(model);
}

VolBounds vix_atm_bounds(const LsvModel& model) {
    require_kind(model, VolOfVolKind::Lognormal, "vix_atm_bounds");
    const double e1 = eta_log_coeffs(model.local_vol, 1)[1];
    const double half = 0.5 * model.vol_of_vol.sigma, t = e1 * std::sqrt(model.v0);
    double a = std::abs(half - t), b = std::abs(half + t);
    return {std::min(a, b), std::max(a, b)};
}

void VixMapping::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
        throw std::invalid_argument("vix mapping: alpha must be positive and finite");
}

double VixMapping::inverse(double k2) const {
    if (!(k2 > beta)) throw std::domain_error("vix mapping: K^2 must exceed beta");
    return (k2 - beta) / alpha;
}

VixMapping vix_mapping(double a, double b, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("vix_mapping: tau must be positive");
    double x = a * tau;
    double alpha = std::abs(x) < 1e-10 ? 1.0 - 0.5 * x : -std::expm1(-x) / x;
    return {alpha, b * (1.0 - alpha)};
}

double constant_drift_factor(double mu, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("constant_drift_factor: tau must be positive");
    double x = mu * tau;
    return std::abs(x) < 1e-10 ? 1.0 + 0.5 * x : std::expm1(x) / x;
}

double meanrev_lognormal_vix_smile(double a, double b, double sigma, double v0, double tau, double strike) {
    if (!(sigma > 0.0) || !(v0 > 0.0) || !(strike > 0.0))
        throw std::invalid_argument("meanrev_lognormal_vix_smile: sigma, v0, K must be positive");
    VixMapping m = vix_mapping(a, b, tau);
    const double av = m.alpha * v0, f2 = av + m.beta;
    if (strike * strike <= m.beta) return 0.0;
    const double z = std::log(strike / std::sqrt(f2));
    if (std::abs(z) < 1e-7) return 0.5 * sigma * (av + m.beta * z) / f2;
    return sigma * std::abs(z) / std::abs(std::log((strike * strike - m.beta) / av));
}

double heston_vix_smile(double a, double b, double sigma, double v0, double tau, double strike) {
    if (!(sigma > 0.0) || !(v0 > 0.0) || !(strike > 0.0))
        throw std::invalid_argument("heston_vix_smile: sigma, v0, K must be positive");
    VixMapping m = vix_mapping(a, b, tau);
    if (!(strike * strike > m.beta)) throw std::domain_error("heston_vix_smile: requires K^2 > beta");
    const double sv = std::sqrt(v0), f2 = m.alpha * v0 + m.beta;
    const double z = std::log(strike / std::sqrt(f2));
    if (std::abs(z) < 1e-7) {
        double c = f2 / (m.alpha * v0);
        double atm = sigma * m.alpha * sv / (2.0 * f2);
        return atm * (1.0 - z * (1.0 - 0.5 * c));
    }
    return 0.5 * sigma * z / (std::sqrt((strike * strike - m.beta) / m.alpha) - sv);
}

double atm_price_limit_european(const LsvModel& model) {
    model.validate();
    return eta_at_log(model.local_vol, 0.0) * model.s0 * std::sqrt(model.v0) / std::sqrt(2.0 * std::numbers::pi);
}

double atm_price_limit_vix(const LsvModel& model) {
    model.validate();
    const double e0 = eta_at_log(model.local_vol, 0.0);
    const double e1 = eta_log_derivative(model.local_vol, 0.0);  // = S0 eta'(S0)
    const double sv = std::sqrt(model.v0);
    const double a = e0 * 0.5 * model.vol_of_vol.sigma_of(model.v0) * sv + e1 * e0 * model.v0 * model.rho;
    const double b = e1 * e0 * model.v0 * std::sqrt(std::max(0.0, 1.0 - model.rho * model.rho));
    return std::hypot(a, b) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace lsv
