#include "lsv/mc_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <boost/math/tools/minima.hpp>

#include "lsv/black_scholes.hpp"
#include "lsv/errors.hpp"
#include "lsv/numerics/philox.hpp"

namespace lsv {

namespace {

enum class VarianceScheme { ExactGbm, LogEuler, TruncatedEuler };

struct PathKernel {
    const LsvModel& m;
    VarianceScheme scheme;
    double dt, sdt, log_s0, rho_perp, gbm_drift;

    // One path and (optionally) its mirror; sign = +1 / -1 flips the normals.
    void run(std::size_t path, std::size_t n_steps, std::uint64_t seed, double sign, double& s_out,
             double& v_out) const {
        const numerics::Philox4x32 rng(seed);
        const double sigma = m.vol_of_vol.sigma, rho = m.rho;
        double log_s = log_s0, v = m.v0, log_v = std::log(m.v0);
        const auto lo = static_cast<std::uint32_t>(path), hi = static_cast<std::uint32_t>(path >> 32);
        for (std::size_t step = 0; step < n_steps; ++step) {
            auto z = numerics::normal_pair(rng({static_cast<std::uint32_t>(step), lo, hi, 0u}));
            double dz = sign * z[0], db = sign * z[1];
            double vp = std::max(v, 0.0);
            double vol = eta_at_log(m.local_vol, log_s - log_s0) * std::sqrt(vp);
            log_s += (m.r - m.q - 0.5 * vol * vol) * dt + vol * sdt * (rho * dz + rho_perp * db);
            switch (scheme) {
                case VarianceScheme::ExactGbm:
                    log_v += gbm_drift + sigma * sdt * dz;
                    v = std::exp(log_v);
                    break;
                case VarianceScheme::LogEuler: {
                    const auto& d = std::get<MeanRevertingDrift>(m.vol_of_vol.drift);
                    log_v += (d.a * (d.b / v - 1.0) - 0.5 * sigma * sigma) * dt + sigma * sdt * dz;
                    v = std::exp(log_v);
                    break;
                }
                case VarianceScheme::TruncatedEuler: {
                    double drift = 0.0;
                    if (auto* c = std::get_if<ConstantDrift>(&m.vol_of_vol.drift))
                        drift = c->mu * vp;
                    else if (auto* mr = std::get_if<MeanRevertingDrift>(&m.vol_of_vol.drift))
                        drift = mr->a * (mr->b - vp);
                    v += drift * dt + sigma * std::sqrt(vp) * sdt * dz;
                    break;
                }
            }
        }
        s_out = std::exp(log_s);
        v_out = scheme == VarianceScheme::TruncatedEuler ? std::max(v, 0.0) : v;
    }
};

PriceEstimate estimate(const std::vector<double>& payoff, const McSamples& samples, double discount) {
    if (payoff.empty()) throw std::invalid_argument("price: empty samples");
    std::vector<double> x;
    const double* data = payoff.data();
    std::size_t n = payoff.size();
    if (samples.config.antithetic) {
        n = payoff.size() / 2;
        x.resize(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = 0.5 * (payoff[i] + payoff[i + n]);
        data = x.data();
    }
    double mean = pairwise_sum(data, n) / static_cast<double>(n);
    std::vector<double> dev(n);
    for (std::size_t i = 0; i < n; ++i) dev[i] = (data[i] - mean) * (data[i] - mean);
    double var = n > 1 ? pairwise_sum(dev.data(), n) / static_cast<double>(n - 1) : 0.0;
    return {discount * mean, discount * std::sqrt(var / static_cast<double>(n)), n};
}

double quantile(std::vector<double> v, double p) {
    auto idx = static_cast<std::size_t>(p * static_cast<double>(v.size() - 1));
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(idx), v.end());
    return v[idx];
}

}  // namespace

double pairwise_sum(const double* data, std::size_t n) {
    if (n <= 16) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += data[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(data, h) + pairwise_sum(data + h, n - h);
}

void McConfig::validate() const {
    if (n_paths < 2) throw std::invalid_argument("mc config: n_paths must be >= 2");
    if (n_steps < 1) throw std::invalid_argument("mc config: n_steps must be >= 1");
    if (!(maturity > 0.0)) throw std::invalid_argument("mc config: maturity must be positive");
}

McSamples simulate_paths(const LsvModel& model, const McConfig& config) {
    model.validate();
    config.validate();
    McSamples out;
    out.config = config;
    out.model = model;

    VarianceScheme scheme = VarianceScheme::ExactGbm;
    const auto& vv = model.vol_of_vol;
    double mu = 0.0;
    if (vv.kind == VolOfVolKind::SquareRoot) {
        scheme = VarianceScheme::TruncatedEuler;
    } else if (std::holds_alternative<MeanRevertingDrift>(vv.drift)) {
        scheme = VarianceScheme::LogEuler;
    } else if (auto* c = std::get_if<ConstantDrift>(&vv.drift)) {
        mu = c->mu;
    }
    out.exact_variance = scheme == VarianceScheme::ExactGbm;

    const double dt = config.maturity / static_cast<double>(config.n_steps);
    const PathKernel kernel{model, scheme, dt, std::sqrt(dt), std::log(model.s0),
                            std::sqrt(std::max(0.0, 1.0 - model.rho * model.rho)),
                            (mu - 0.5 * vv.sigma * vv.sigma) * dt};

    const std::size_t n = config.n_paths;
    const std::size_t total = config.antithetic ? 2 * n : n;
    out.terminal_s.assign(total, 0.0);
    out.terminal_v.assign(total, 0.0);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            kernel.run(i, config.n_steps, config.seed, 1.0, out.terminal_s[i], out.terminal_v[i]);
            if (config.antithetic)
                kernel.run(i, config.n_steps, config.seed, -1.0, out.terminal_s[i + n], out.terminal_v[i + n]);
        }
    };

    unsigned threads = std::max(1u, config.threads);
    if (threads == 1) {
        work(0, n);
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (n + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t b = t * chunk, e = std::min(n, b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }
    return out;
}

PriceEstimate price_european(const McSamples& samples, double strike, bool is_call, double r, double maturity) {
    if (samples.terminal_s.empty()) throw std::invalid_argument("price_european: empty samples");
    if (!(strike >= 0.0)) throw std::invalid_argument("price_european: strike must be nonnegative");
    std::vector<double> payoff(samples.terminal_s.size());
    for (std::size_t i = 0; i < payoff.size(); ++i) {
        double s = samples.terminal_s[i];
        payoff[i] = is_call ? std::max(s - strike, 0.0) : std::max(strike - s, 0.0);
    }
    return estimate(payoff, samples, std::exp(-r * maturity));
}

std::vector<double> vix_proxy_values(const McSamples& samples, const LocalVolSpec& spec) {
    std::vector<double> out(samples.terminal_s.size());
    const double log_s0 = std::log(samples.model.s0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = eta_at_log(spec, std::log(samples.terminal_s[i]) - log_s0) * std::sqrt(samples.terminal_v[i]);
    return out;
}

PriceEstimate price_vix_proxy(const McSamples& samples, const LocalVolSpec& spec, double strike, bool is_call,
                              double r, double maturity) {
    if (samples.terminal_s.empty()) throw std::invalid_argument("price_vix_proxy: empty samples");
    if (!(strike >= 0.0)) throw std::invalid_argument("price_vix_proxy: strike must be nonnegative");
    std::vector<double> payoff = vix_proxy_values(samples, spec);
    for (double& x : payoff) x = is_call ? std::max(x - strike, 0.0) : std::max(strike - x, 0.0);
    return estimate(payoff, samples, std::exp(-r * maturity));
}

std::vector<double> vix_exact_meanrev(const McSamples& samples, const VixMapping& mapping) {
    mapping.validate();
    std::vector<double> out(samples.terminal_v.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::sqrt(mapping.vix_squared(samples.terminal_v[i]));
    return out;
}

double eta_sq_curvature_bound(const LocalVolSpec& spec) {
    if (std::holds_alternative<ConstantLocalVol>(spec)) return 0.0;
    auto* t = std::get_if<TanhLocalVol>(&spec);
    if (!t) throw UnsupportedError("eta_sq_curvature_bound: unbounded local volatility");
    // With T = tanh(x - x0): h' = 2 f1 (f0 + f1 T)(1 - T^2),
    // h'' = 2 f1^2 (1 - T^2)^2 - 4 f1 T (1 - T^2)(f0 + f1 T).
    const double f0 = t->f0, f1 = t->f1;
    auto g = [=](double tt) {
        double w = 1.0 - tt * tt, e = f0 + f1 * tt;
        double h1 = 2.0 * f1 * e * w;
        double h2 = 2.0 * f1 * f1 * w * w - 4.0 * f1 * tt * w * e;
        return std::abs(h2 - h1);
    };
    const int n = 4000;
    double best = 0.0, arg = 0.0;
    for (int i = 0; i <= n; ++i) {
        double tt = -1.0 + 2.0 * i / n;
        if (g(tt) > best) {
            best = g(tt);
            arg = tt;
        }
    }
    double lo = std::max(-1.0, arg - 2.0 / n), hi = std::min(1.0, arg + 2.0 / n);
    auto [x, fx] = boost::math::tools::brent_find_minima([&](double tt) { return -g(tt); }, lo, hi, 40);
    (void)x;
    return std::max(best, -fx);
}

ProxyErrorBounds proxy_error_bounds(const LsvModel& model, double tau) {
    model.validate();
    if (!(tau > 0.0)) throw std::invalid_argument("proxy_error_bounds: tau must be positive");
    double lip, m_eta;
    if (auto* t = std::get_if<TanhLocalVol>(&model.local_vol)) {
        lip = std::abs(t->f1);
        m_eta = t->f0 + std::abs(t->f1);
    } else if (auto* c = std::get_if<ConstantLocalVol>(&model.local_vol)) {
        lip = 0.0;
        m_eta = c->value;
    } else {
        throw UnsupportedError("proxy_error_bounds: taylor_log local volatility is unbounded");
    }
    if (model.vol_of_vol.kind != VolOfVolKind::Lognormal)
        throw UnsupportedError("proxy_error_bounds: square-root vol-of-vol is unbounded");
    double m_mu = 0.0;
    if (auto* c = std::get_if<ConstantDrift>(&model.vol_of_vol.drift))
        m_mu = std::abs(c->mu);
    else if (std::holds_alternative<MeanRevertingDrift>(model.vol_of_vol.drift))
        throw UnsupportedError("proxy_error_bounds: mean-reverting drift mu(v) is unbounded");
    const double m_sig2 = model.vol_of_vol.sigma * model.vol_of_vol.sigma;
    const double m_eta2 = eta_sq_curvature_bound(model.local_vol);
    const double carry = std::abs(model.r - model.q);

    ProxyErrorBounds b;
    b.c1 = 2.0 * lip * m_eta * carry * std::exp(carry * tau) * tau;
    double inner = std::exp(2.0 * tau * m_mu) * std::exp(4.0 * tau * m_sig2) + 1.0 -
                   2.0 * std::exp(-tau * m_mu - 0.5 * tau * m_sig2);
    b.c2 = m_eta * m_eta * std::sqrt(std::max(inner, 0.0)) +
           0.5 * tau * m_eta2 * m_eta * m_eta * std::exp(tau * (m_mu + m_sig2));
    return b;
}

double mc_forward(const McSamples& samples, McProduct product) {
    const auto& m = samples.model;
    if (product == McProduct::European) return m.s0 * std::exp((m.r - m.q) * samples.config.maturity);
    auto proxy = vix_proxy_values(samples, m.local_vol);
    if (samples.config.antithetic) {
        std::size_t n = proxy.size() / 2;
        for (std::size_t i = 0; i < n; ++i) proxy[i] = 0.5 * (proxy[i] + proxy[i + n]);
        proxy.resize(n);
    }
    return pairwise_sum(proxy.data(), proxy.size()) / static_cast<double>(proxy.size());
}

std::vector<McSmilePoint> smile_from_mc(const McSamples& samples, const std::vector<double>& strikes,
                                        McProduct product) {
    std::vector<McSmilePoint> out;
    if (strikes.empty()) return out;
    const auto& m = samples.model;
    const double T = samples.config.maturity;
    const double disc = std::exp(-m.r * T);
    const double fwd = mc_forward(samples, product);
    const bool vix = product == McProduct::VixProxy;
    const double ref = vix ? vix_spot(m) : m.s0;
    std::vector<double> values = vix ? vix_proxy_values(samples, m.local_vol) : samples.terminal_s;
    const double q_lo = quantile(values, 0.01), q_hi = quantile(values, 0.99);

    for (double k : strikes) {
        McSmilePoint p;
        p.strike = k;
        if (!(k > 0.0)) {
            p.note = "non-positive strike";
            out.push_back(p);
            continue;
        }
        p.log_moneyness = std::log(k / ref);
        bool is_call = k >= fwd;
        PriceEstimate est = vix ? price_vix_proxy(samples, m.local_vol, k, is_call, m.r, T)
                                : price_european(samples, k, is_call, m.r, T);
        p.price = est.value;
        p.std_error = est.std_error;
        try {
            OptionQuote quote{fwd, k, T, is_call, est.value / disc};
            p.implied_vol = implied_vol(quote);
            double vega = black_vega(fwd, k, p.implied_vol, T);
            double band = vega > 0.0 ? est.std_error / disc / vega : std::numeric_limits<double>::infinity();
            p.iv_low = std::max(0.0, p.implied_vol - band);
            p.iv_high = p.implied_vol + band;
            p.ok = true;
            if (k < q_lo || k > q_hi) p.note = "strike outside 1%-99% sample quantile range";
        } catch (const std::domain_error& e) {
            p.note = e.what();
        }
        out.push_back(p);
    }
    return out;
}

std::vector<McSmilePoint> smile_from_mc(const LsvModel& model, const McConfig& config,
                                        const std::vector<double>& strikes, McProduct product) {
    if (strikes.empty()) return {};
    return smile_from_mc(simulate_paths(model, config), strikes, product);
}

void write_smile_csv(std::ostream& out, const std::vector<McSmilePoint>& points) {
    out << "strike,log_moneyness,price,std_error,implied_vol,iv_low,iv_high\n";
    char buf[256];
    for (const auto& p : points) {
        if (!p.ok) continue;
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n", p.strike, p.log_moneyness,
                      p.price, p.std_error, p.implied_vol, p.iv_low, p.iv_high);
        out << buf;
    }
}

}  // namespace lsv
