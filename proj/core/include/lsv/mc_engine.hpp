#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lsv/local_vol.hpp"
#include "lsv/model.hpp"
#include "lsv/vix_mapping.hpp"

namespace lsv {

struct McConfig {
    std::size_t n_paths = 100000;
    std::size_t n_steps = 200;
    double maturity = 1.0 / 12.0;
    std::uint64_t seed = 42;
    bool antithetic = false;
    unsigned threads = 1;

    void validate() const;
};

/// Terminal values. With antithetic sampling the mirrored path of index i
/// is stored at i + n_paths.
struct McSamples {
    std::vector<double> terminal_s;
    std::vector<double> terminal_v;
    McConfig config;
    LsvModel model;
    bool exact_variance = true;  // false for log-Euler / truncated Euler V steps
};

struct PriceEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

/// Log-Euler for S; V is stepped exactly (lognormal, zero or constant drift),
/// by log-Euler (lognormal, mean-reverting drift) or by full-truncation Euler
/// (square-root). Path i uses the Philox stream (seed; step, i), so output
/// does not depend on the thread count.
McSamples simulate_paths(const LsvModel& model, const McConfig& config);

PriceEstimate price_european(const McSamples& samples, double strike, bool is_call, double r, double maturity);

/// Prices on the proxy VIX_T ~ eta(S_T) sqrt(V_T).
PriceEstimate price_vix_proxy(const McSamples& samples, const LocalVolSpec& spec, double strike, bool is_call,
                              double r, double maturity);

/// eta(S_T) sqrt(V_T) per path.
std::vector<double> vix_proxy_values(const McSamples& samples, const LocalVolSpec& spec);

/// sqrt(alpha V_T + beta) per path.
std::vector<double> vix_exact_meanrev(const McSamples& samples, const VixMapping& mapping);

struct ProxyErrorBounds {
    double c1;
    double c2;
};

/// Bounds on |VIX_T^2 - V_T eta^2(S_T)| <= C1 S_T + C2 V_T.
ProxyErrorBounds proxy_error_bounds(const LsvModel& model, double tau);

/// sup_x |h''(x) - h'(x)| for h(x) = eta^2(S0 e^x).
double eta_sq_curvature_bound(const LocalVolSpec& spec);

enum class McProduct { European, VixProxy };

struct McSmilePoint {
    double strike = 0.0;
    double log_moneyness = 0.0;
    double price = 0.0;  // discounted, out-of-the-money side
    double std_error = 0.0;
    double implied_vol = 0.0;
    double iv_low = 0.0;
    double iv_high = 0.0;
    bool ok = false;
    std::string note;  // reason for a skipped or flagged strike
};

/// Implied-vol smile from Monte Carlo. European options are inverted on the
/// forward S0 e^{(r-q)T}; VIX options on the sample mean of the proxy.
/// Log-moneyness is log(K/S0) or log(K/(eta(S0) sqrt(V0))).
std::vector<McSmilePoint> smile_from_mc(const McSamples& samples, const std::vector<double>& strikes,
                                        McProduct product);
std::vector<McSmilePoint> smile_from_mc(const LsvModel& model, const McConfig& config,
                                        const std::vector<double>& strikes, McProduct product);

/// Forward used for implied-vol inversion of the given product.
double mc_forward(const McSamples& samples, McProduct product);

/// CSV with header strike,log_moneyness,price,std_error,implied_vol,iv_low,iv_high.
void write_smile_csv(std::ostream& out, const std::vector<McSmilePoint>& points);

/// Deterministic pairwise sum.
double pairwise_sum(const double* data, std::size_t n);

}  // namespace lsv
