#pragma once

namespace lsv {

/// Undiscounted Black value of a call or put on a forward.
double black_price(double forward, double strike, double vol, double maturity, bool is_call);

/// d price / d vol.
double black_vega(double forward, double strike, double vol, double maturity);

struct OptionQuote {
    double forward = 1.0;
    double strike = 1.0;
    double maturity = 1.0;
    bool is_call = true;
    double price = 0.0;  // undiscounted

    void validate() const;
    double lower_bound() const;  // intrinsic value on the forward
    double upper_bound() const;  // F for calls, K for puts
};

/// Black implied volatility. Throws std::domain_error when the price lies
/// outside the open no-arbitrage band.
double implied_vol(const OptionQuote& quote);

}  // namespace lsv
