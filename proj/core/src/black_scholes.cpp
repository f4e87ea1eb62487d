#include "lsv/black_scholes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

namespace lsv {

namespace {

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double norm_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

void check_inputs(double forward, double strike, double vol, double maturity) {
    if (!(forward > 0.0) || !(strike > 0.0) || !(maturity > 0.0) || !(vol >= 0.0))
        throw std::invalid_argument("black: forward, strike, maturity must be positive and vol nonnegative");
}

}  // namespace

double black_price(double forward, double strike, double vol, double maturity, bool is_call) {
    check_inputs(forward, strike, vol, maturity);
    double sd = vol * std::sqrt(maturity);
    if (sd == 0.0) return is_call ? std::max(forward - strike, 0.0) : std::max(strike - forward, 0.0);
    double d1 = std::log(forward / strike) / sd + 0.5 * sd;
    double d2 = d1 - sd;
    if (is_call) return forward * norm_cdf(d1) - strike * norm_cdf(d2);
    return strike * norm_cdf(-d2) - forward * norm_cdf(-d1);
}

double black_vega(double forward, double strike, double vol, double maturity) {
    check_inputs(forward, strike, vol, maturity);
    double sd = vol * std::sqrt(maturity);
    if (sd == 0.0) return 0.0;
    double d1 = std::log(forward / strike) / sd + 0.5 * sd;
    return forward * norm_pdf(d1) * std::sqrt(maturity);
}

void OptionQuote::validate() const {
    if (!(forward > 0.0) || !(strike > 0.0) || !(maturity > 0.0))
        throw std::invalid_argument("option quote: forward, strike and maturity must be positive");
    if (!std::isfinite(price)) throw std::invalid_argument("option quote: non-finite price");
}

double OptionQuote::lower_bound() const {
    return is_call ? std::max(forward - strike, 0.0) : std::max(strike - forward, 0.0);
}

double OptionQuote::upper_bound() const { return is_call ? forward : strike; }

double implied_vol(const OptionQuote& quote) {
    quote.validate();
    double lo_band = quote.lower_bound(), hi_band = quote.upper_bound();
    if (!(quote.price > lo_band && quote.price < hi_band)) {
        std::ostringstream msg;
        msg << "implied_vol: price " << quote.price << " outside no-arbitrage band (" << lo_band << ", " << hi_band
            << ")";
        throw std::domain_error(msg.str());
    }
    // Work with the out-of-the-money side; parity keeps the root identical.
    bool call_side = quote.strike >= quote.forward;
    double target = quote.price;
    if (call_side != quote.is_call) target += call_side ? quote.forward - quote.strike : quote.strike - quote.forward;
    auto f = [&](double v) {
        return black_price(quote.forward, quote.strike, v, quote.maturity, call_side) - target;
    };
    double lo = 1e-6, hi = 5.0;
    if (f(lo) > 0.0) lo = 0.0;
    while (f(hi) < 0.0) {
        if (hi >= 20.0)
            throw std::domain_error("implied_vol: no volatility below 20 reproduces the price");
        hi = std::min(2.0 * hi, 20.0);
    }
    std::uintmax_t iters = 200;
    boost::math::tools::eps_tolerance<double> tol(50);
    auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
    double vol = 0.5 * (a + b);
    // Newton polish on the bracketed root.
    for (int i = 0; i < 3; ++i) {
        double vega = black_vega(quote.forward, quote.strike, vol, quote.maturity);
        if (!(vega > 0.0)) break;
        double next = vol - f(vol) / vega;
        if (!(next > a && next < b)) break;
        vol = next;
    }
    return vol;
}

}  // namespace lsv
