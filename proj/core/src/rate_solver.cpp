#include "lsv/rate_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "lsv/errors.hpp"
#include "lsv/hartman_watson.hpp"
#include "lsv/heston_rate.hpp"
#include "lsv/numerics/nelder_mead.hpp"
#include "lsv/numerics/quadrature.hpp"

namespace lsv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double integral_log(const LocalVolSpec& spec, double t) {
    if (t == 0.0) return 0.0;
    if (auto* c = std::get_if<ConstantLocalVol>(&spec)) return t / c->value;
    auto integrand = [&spec](double u) {
        double e = eta_at_log(spec, u);
        if (!(e > 0.0)) throw std::domain_error("integral_IS: local volatility vanishes on the integration path");
        return 1.0 / e;
    };
    return numerics::integrate(integrand, 0.0, t, 1e-12);
}

// Search coordinates: p = log(z / v0) and q with y = log v0 + ycoef * q,
// where q = log(e^{y/2} / sqrt(v0)) for lognormal and y - log v0 for
// square-root vol-of-vol.
double y_coefficient(const VolOfVolSpec& spec) { return spec.kind == VolOfVolKind::Lognormal ? 2.0 : 1.0; }

struct Problem {
    const LsvModel& model;
    double ycoef;
    std::function<double(double)> spot_integral;  // I_S as a function of y

    double y_of(double q) const { return std::log(model.v0) + ycoef * q; }

    double operator()(double p, double q) const {
        double z = model.v0 * std::exp(p);
        double y = y_of(q);
        double is = spot_integral(y);
        if (!std::isfinite(is)) return kInf;
        double a = is - model.rho * vol_integral_Q(model.vol_of_vol, model.v0, y);
        double rp = 1.0 - model.rho * model.rho;
        return a * a / (2.0 * rp * z) + h_function(model.vol_of_vol, y, z, model.v0);
    }
};

double brent_min(const std::function<double(double)>& f, double lo, double hi, double& arg, int& iters) {
    std::uintmax_t it = 500;
    auto [x, fx] = boost::math::tools::brent_find_minima(f, lo, hi, std::numeric_limits<double>::digits, it);
    arg = x;
    iters += static_cast<int>(it);
    return fx;
}

// Central-difference Newton steps; only accepted when they decrease f.
void newton_polish(const Problem& f, double& p, double& q, double& value, int& iters) {
    const double h = 1e-4;
    for (int k = 0; k < 6; ++k) {
        double fpp = f(p + h, q), fpm = f(p - h, q), fqp = f(p, q + h), fqm = f(p, q - h);
        double fx = f(p + h, q + h), fy = f(p - h, q - h), fu = f(p + h, q - h), fv = f(p - h, q + h);
        double gp = (fpp - fpm) / (2 * h), gq = (fqp - fqm) / (2 * h);
        double hpp = (fpp - 2 * value + fpm) / (h * h), hqq = (fqp - 2 * value + fqm) / (h * h);
        double hpq = (fx + fy - fu - fv) / (4 * h * h);
        double det = hpp * hqq - hpq * hpq;
        ++iters;
        if (!(det > 0.0 && hpp > 0.0)) return;
        double dp = -(hqq * gp - hpq * gq) / det;
        double dq = -(hpp * gq - hpq * gp) / det;
        double nv = f(p + dp, q + dq);
        if (!(nv < value)) return;
        p += dp;
        q += dq;
        value = nv;
    }
}

RatePoint minimize(const Problem& f, double p0, double q0, double q_lo, double q_hi, const RateSolverOptions& opts) {
    const double box = opts.box;
    RatePoint out;
    out.y_lo = f.y_of(q_lo);
    out.y_hi = f.y_of(q_hi);
    p0 = std::clamp(p0, -box, box);
    q0 = std::clamp(q0, q_lo, q_hi);
    double p, q, value;
    int iters = 0;
    bool converged;

    if (opts.uncorrelated_shortcut && f.model.rho == 0.0) {
        double q_arg = q0;
        auto inner = [&](double pp) {
            return brent_min([&](double qq) { return f(pp, qq); }, q_lo, q_hi, q_arg, iters);
        };
        value = brent_min(inner, -box, box, p, iters);
        inner(p);
        q = q_arg;
        converged = std::isfinite(value);
    } else {
        numerics::NelderMeadOptions nm;
        nm.initial_step = std::max(0.02, 0.5 * std::max(std::abs(p0), std::abs(q0)));
        nm.f_tol = 1e-16;
        nm.x_tol = 1e-9;
        nm.max_iterations = 4000;
        nm.lower = {-box, q_lo};
        nm.upper = {box, q_hi};
        auto fv = [&f](const std::vector<double>& x) { return f(x[0], x[1]); };
        auto r = numerics::nelder_mead(fv, {p0, q0}, nm);
        iters += r.iterations;
        nm.initial_step = 1e-3;
        auto r2 = numerics::nelder_mead(fv, r.x, nm);
        iters += r2.iterations;
        p = r2.x[0];
        q = r2.x[1];
        value = r2.value;
        converged = r2.converged && std::isfinite(value);
        if (converged && std::abs(p) < box - 1e-3 && q > q_lo + 1e-3 && q < q_hi - 1e-3)
            newton_polish(f, p, q, value, iters);
    }
    out.rate = std::max(value, 0.0);
    out.minimizer_y = f.y_of(q);
    out.minimizer_z = f.model.v0 * std::exp(p);
    out.iterations = iters;
    out.converged = converged;
    const double edge = 1e-6;
    out.boundary_hit = std::abs(p) > box - edge || q < q_lo + edge || q > q_hi - edge;
    return out;
}

void check_correlation(const LsvModel& model, const char* who) {
    if (std::abs(model.rho) >= 1.0)
        throw UnsupportedError(std::string(who) + ": |rho| = 1 is not supported by the two-variable solver");
}

RatePoint at_the_money(const LsvModel& model, double strike) {
    RatePoint out;
    out.strike = strike;
    out.minimizer_y = std::log(model.v0);
    out.minimizer_z = model.v0;
    out.converged = true;
    return out;
}

}  // namespace

double integral_IS(const LocalVolSpec& spec, double s0, double z) {
    if (!(z > 0.0) || !(s0 > 0.0)) throw std::invalid_argument("integral_IS: z and s0 must be positive");
    return integral_log(spec, std::log(z));
}

double vol_integral_Q(const VolOfVolSpec& spec, double v0, double y) {
    if (!(v0 > 0.0)) throw std::invalid_argument("vol_integral_Q: v0 must be positive");
    switch (spec.kind) {
        case VolOfVolKind::Lognormal:
            return 2.0 / spec.sigma * (std::exp(0.5 * y) - std::sqrt(v0));
        case VolOfVolKind::SquareRoot:
            return (std::exp(y) - v0) / spec.sigma;
    }
    throw UnsupportedError("vol_integral_Q: unknown vol-of-vol kind");
}

double h_function(const VolOfVolSpec& spec, double y, double z, double v0) {
    switch (spec.kind) {
        case VolOfVolKind::Lognormal:
            return h_lognormal(y, z, v0, spec.sigma);
        case VolOfVolKind::SquareRoot:
            return h_heston(y, z, v0, spec.sigma);
    }
    throw UnsupportedError("h_function: unknown vol-of-vol kind");
}

RatePoint european_rate(const LsvModel& model, double strike, const RateSolverOptions& opts) {
    model.validate();
    if (!(strike > 0.0)) throw std::invalid_argument("european_rate: strike must be positive");
    check_correlation(model, "european_rate");
    if (strike == model.s0) return at_the_money(model, strike);

    const double k = std::log(strike / model.s0);
    const double is = integral_IS(model.local_vol, model.s0, strike / model.s0);
    Problem f{model, y_coefficient(model.vol_of_vol), [is](double) { return is; }};

    const double eta0 = eta_at_log(model.local_vol, 0.0);
    const double sqv = std::sqrt(model.v0);
    double sig = model.vol_of_vol.sigma_of(model.v0);
    double a1 = model.rho * sig / (2.0 * eta0 * sqv) * k;
    double q0 = model.vol_of_vol.kind == VolOfVolKind::Lognormal ? a1 : 2.0 * a1;

    RatePoint out = minimize(f, a1, q0, -opts.box, opts.box, opts);
    out.strike = strike;
    return out;
}

RatePoint vix_rate(const LsvModel& model, double strike, const RateSolverOptions& opts) {
    model.validate();
    if (!(strike > 0.0)) throw std::invalid_argument("vix_rate: strike must be positive");
    check_correlation(model, "vix_rate");
    const double spot = vix_spot(model);
    if (strike == spot) return at_the_money(model, strike);
    const double ycoef = y_coefficient(model.vol_of_vol);
    const double log_v0 = std::log(model.v0);

    if (is_constant(model.local_vol)) {
        // VIX = c sqrt(V_T) pins y; the spot path is unconstrained.
        double c = eta_at_log(model.local_vol, 0.0);
        double y = std::log(strike * strike / (c * c));
        int iters = 0;
        double p;
        double value = brent_min([&](double pp) { return h_function(model.vol_of_vol, y, model.v0 * std::exp(pp), model.v0); },
                                 -opts.box, opts.box, p, iters);
        RatePoint out;
        out.strike = strike;
        out.rate = std::max(value, 0.0);
        out.minimizer_y = y;
        out.minimizer_z = model.v0 * std::exp(p);
        out.iterations = iters;
        out.converged = std::isfinite(value);
        out.boundary_hit = std::abs(p) > opts.box - 1e-6;
        out.y_lo = out.y_hi = y;
        return out;
    }

    // Keep K^2 e^{-y} inside the range of eta^2 so the inverse exists.
    MonotoneRegion reg = monotone_region(model.local_vol);
    const double k2 = strike * strike;
    double q_lo = -opts.box, q_hi = opts.box;
    if (std::isfinite(reg.eta_sq_hi)) q_lo = std::max(q_lo, (std::log(k2 / reg.eta_sq_hi) - log_v0) / ycoef);
    if (reg.eta_sq_lo > 0.0) q_hi = std::min(q_hi, (std::log(k2 / reg.eta_sq_lo) - log_v0) / ycoef);
    const double margin = 1e-9 * std::max(1.0, q_hi - q_lo);
    q_lo += margin;
    q_hi -= margin;
    if (!(q_lo < q_hi)) throw std::domain_error("vix_rate: strike leaves no admissible terminal variance");

    const LocalVolSpec& spec = model.local_vol;
    auto spot_integral = [&spec, k2](double y) {
        double w = k2 * std::exp(-y);
        double t;
        try {
            t = eta_sq_inverse_log(spec, w);
        } catch (const std::domain_error&) {
            return kInf;
        }
        return integral_log(spec, t);
    };
    Problem f{model, ycoef, spot_integral};

    const double x = std::log(strike / spot);
    const double eta1 = eta_log_derivative(spec, 0.0);
    const double sqv = std::sqrt(model.v0);
    const double sig = model.vol_of_vol.sigma_of(model.v0);
    const double sp = sig + 2.0 * model.rho * eta1 * sqv;
    const double a1 = sig * sp / (sp * sp + 2.0 * (1.0 - model.rho * model.rho) * eta1 * eta1 * model.v0) * x;
    double q0 = model.vol_of_vol.kind == VolOfVolKind::Lognormal ? a1 : 2.0 * a1;

    RatePoint out = minimize(f, a1, q0, q_lo, q_hi, opts);
    out.strike = strike;
    return out;
}

double stochvol_vix_rate(const VolOfVolSpec& spec, double v0, double strike, const VixMapping& mapping) {
    spec.validate();
    mapping.validate();
    if (!(v0 > 0.0) || !(strike > 0.0)) throw std::invalid_argument("stochvol_vix_rate: v0 and K must be positive");
    double v = mapping.inverse(strike * strike);
    double s2 = spec.sigma * spec.sigma;
    if (spec.kind == VolOfVolKind::Lognormal) {
        double l = std::log(v / v0);
        return l * l / (2.0 * s2);
    }
    double d = std::sqrt(v) - std::sqrt(v0);
    return 2.0 * d * d / s2;
}

double sabr_rate_closed(const LsvModel& model, double strike) {
    model.validate();
    if (model.vol_of_vol.kind != VolOfVolKind::Lognormal || !is_constant(model.local_vol))
        throw std::invalid_argument("sabr_rate_closed: requires lognormal vol-of-vol and constant eta");
    if (!(std::abs(model.rho) < 1.0)) throw std::domain_error("sabr_rate_closed: |rho| must be < 1");
    if (!(strike > 0.0)) throw std::invalid_argument("sabr_rate_closed: strike must be positive");
    const double c = eta_at_log(model.local_vol, 0.0);
    const double sigma = model.vol_of_vol.sigma;
    const double rho = model.rho;
    const double zeta = sigma / (2.0 * c * std::sqrt(model.v0)) * std::log(strike / model.s0);
    const double l = std::log((std::sqrt(1.0 + 2.0 * rho * zeta + zeta * zeta) + zeta + rho) / (1.0 + rho));
    return 2.0 * l * l / (sigma * sigma);
}

double rate_to_impvol(double rate, double log_moneyness) {
    if (!(rate > 0.0) || log_moneyness == 0.0)
        throw std::invalid_argument("rate_to_impvol: requires rate > 0 and nonzero log-moneyness");
    return std::abs(log_moneyness) / std::sqrt(2.0 * rate);
}

}  // namespace lsv
