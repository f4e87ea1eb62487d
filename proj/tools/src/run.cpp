#include "lsv_cli/run.hpp"

#include <cfenv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "lsv/mc_engine.hpp"
#include "lsv/model_json.hpp"
#include "lsv/rate_solver.hpp"
#include "lsv/smile.hpp"

namespace lsv::cli {

namespace {

constexpr std::size_t kDefaultPaths = 100000;
constexpr std::size_t kDefaultSteps = 200;
constexpr std::uint64_t kDefaultSeed = 42;

bool is_vix(const RunSpec& spec) { return spec.product == Product::Vix; }

double reference_level(const RunSpec& spec) { return is_vix(spec) ? vix_spot(spec.model) : spec.model.s0; }

struct AsymptoticPoint {
    double iv_expansion;
    std::optional<double> rate;
    std::optional<double> iv_rate;
};

AsymptoticPoint asymptotic_at(const RunSpec& spec, const SmileExpansion& expansion, double strike, double k,
                              std::ostream& diag) {
    AsymptoticPoint p{expansion.evaluate(k), std::nullopt, std::nullopt};
    try {
        RatePoint rp = is_vix(spec) ? vix_rate(spec.model, strike) : european_rate(spec.model, strike);
        p.rate = rp.rate;
        // At the money the rate vanishes; its implied-vol limit is the ATM level.
        if (k == 0.0 || !(rp.rate > 0.0))
            p.iv_rate = expansion.atm;
        else
            p.iv_rate = rate_to_impvol(rp.rate, k);
        if (!rp.converged) diag << "strike " << format_num(strike) << ": rate solve did not converge\n";
        if (rp.boundary_hit) diag << "strike " << format_num(strike) << ": minimizer on the search-box edge\n";
    } catch (const std::domain_error& e) {
        diag << "strike " << format_num(strike) << ": " << e.what() << "\n";
    }
    return p;
}

std::string opt_num(const std::optional<double>& x) { return x ? format_num(*x) : std::string(); }

McConfig mc_config(const RunSpec& spec) {
    McConfig c;
    c.n_paths = spec.mc.paths.value_or(kDefaultPaths);
    c.n_steps = spec.mc.steps.value_or(kDefaultSteps);
    c.seed = spec.mc.seed.value_or(kDefaultSeed);
    c.maturity = spec.mc_maturity();
    c.threads = spec.threads;
    return c;
}

std::vector<McSmilePoint> mc_points(const RunSpec& spec, const std::vector<double>& strikes, std::ostream& diag) {
    auto points = smile_from_mc(spec.model, mc_config(spec), strikes,
                                is_vix(spec) ? McProduct::VixProxy : McProduct::European);
    for (const auto& p : points)
        if (!p.note.empty())
            diag << "strike " << format_num(p.strike) << (p.ok ? " flagged: " : " skipped: ") << p.note << "\n";
    return points;
}

double grid_log_moneyness(const RunSpec& spec, double strike) {
    double k = std::log(strike / reference_level(spec));
    return std::abs(k) < 1e-14 ? 0.0 : k;
}

}  // namespace

void StrikeGrid::validate() const {
    if (count < 1) throw std::invalid_argument("strike grid: count must be at least 1");
    if (!std::isfinite(min) || !std::isfinite(max) || !(min < max))
        throw std::invalid_argument("strike grid: need finite min < max");
    if (space == GridSpace::Linear && !(min > 0.0))
        throw std::invalid_argument("strike grid: linear strikes must be positive");
}

std::vector<double> StrikeGrid::strikes(double reference) const {
    validate();
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        double x = count == 1 ? min : min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
        if (space == GridSpace::Log) {
            if (std::abs(x) < 1e-14) x = 0.0;
            out[i] = reference * std::exp(x);
        } else {
            out[i] = x;
        }
    }
    return out;
}

void RunSpec::validate() const {
    model.validate();
    if (command != Command::Table1) grid.validate();
    if (mc.paths && *mc.paths < 2) throw std::invalid_argument("--paths must be at least 2");
    if (mc.steps && *mc.steps < 1) throw std::invalid_argument("--steps must be at least 1");
    if (mc.maturity && !(*mc.maturity > 0.0)) throw std::invalid_argument("--maturity must be positive");
    if (threads < 1) throw std::invalid_argument("--threads must be at least 1");
}

double RunSpec::mc_maturity() const {
    if (mc.maturity) return *mc.maturity;
    return product == Product::Vix ? 1.0 / 52.0 : 1.0 / 12.0;
}

unsigned threads_from_env(const char* value) {
    if (value == nullptr || *value == '\0') return 1;
    char* end = nullptr;
    long n = std::strtol(value, &end, 10);
    if (*end != '\0' || n < 1 || n > 4096)
        throw std::invalid_argument(std::string("LSV_SHORTMAT_THREADS: expected a positive integer, got '") + value +
                                    "'");
    return static_cast<unsigned>(n);
}

std::string describe(const RunSpec& spec) {
    static const char* commands[] = {"smile", "rate", "mc", "table1", "compare"};
    nlohmann::json j;
    j["command"] = commands[static_cast<int>(spec.command)];
    if (spec.command == Command::Table1) return j.dump();
    j["model_file"] = spec.model_path;
    j["model"] = model_to_json(spec.model);
    j["product"] = is_vix(spec) ? "vix" : "european";
    j["grid"] = {{"min", spec.grid.min},
                 {"max", spec.grid.max},
                 {"count", spec.grid.count},
                 {"space", spec.grid.space == GridSpace::Log ? "log" : "linear"}};
    if (spec.command == Command::Mc || spec.command == Command::Compare) {
        McConfig c = mc_config(spec);
        j["mc"] = {{"paths", c.n_paths}, {"steps", c.n_steps}, {"seed", c.seed}, {"maturity", c.maturity},
                   {"threads", c.threads}};
    }
    j["out"] = spec.out_path.empty() ? "-" : spec.out_path;
    return j.dump();
}

std::string format_num(double x) {
    if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    if (x == 0.0) x = 0.0;  // drop the sign of negative zero
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string format_3dp(double x) {
    if (!std::isfinite(x)) throw std::domain_error("format_3dp: non-finite value");
    const int saved = std::fegetround();
    std::fesetround(FE_TONEAREST);
    double scaled = std::nearbyint(x * 1000.0);
    std::fesetround(saved);
    long long units = static_cast<long long>(scaled);
    bool negative = units < 0;
    unsigned long long a = static_cast<unsigned long long>(negative ? -units : units);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%llu.%03llu", negative ? "-" : "", a / 1000, a % 1000);
    return buf;
}

void run_table1(std::ostream& out) {
    out << "rho,sigma_e_atm,s_e,kappa_e,sigma_vix_atm,s_vix,kappa_vix\n";
    for (double rho : {-0.7, 0.0, 0.7}) {
        LsvModel m = table1_model(rho);
        SmileExpansion e = smile_expansion(m, false);
        SmileExpansion v = smile_expansion(m, true);
        char r[16];
        std::snprintf(r, sizeof r, "%.1f", rho);
        out << (rho == 0.0 ? "0.0" : r) << ',' << format_3dp(e.atm) << ',' << format_3dp(e.skew) << ','
            << format_3dp(e.convexity.value()) << ',' << format_3dp(v.atm) << ',' << format_3dp(v.skew) << ','
            << format_3dp(v.convexity.value()) << '\n';
    }
}

void run_smile(const RunSpec& spec, std::ostream& out, std::ostream& diag) {
    spec.validate();
    const SmileExpansion expansion = smile_expansion(spec.model, is_vix(spec));
    out << "log_moneyness,iv_expansion,iv_rate,strike,rate\n";
    for (double strike : spec.grid.strikes(reference_level(spec))) {
        double k = grid_log_moneyness(spec, strike);
        AsymptoticPoint p = asymptotic_at(spec, expansion, strike, k, diag);
        out << format_num(k) << ',' << format_num(p.iv_expansion) << ',' << opt_num(p.iv_rate) << ','
            << format_num(strike) << ',' << opt_num(p.rate) << '\n';
    }
}

void run_rate(const RunSpec& spec, std::ostream& out, std::ostream& diag) {
    spec.validate();
    out << "log_moneyness,strike,rate,implied_vol,minimizer_y,minimizer_z,converged\n";
    for (double strike : spec.grid.strikes(reference_level(spec))) {
        double k = grid_log_moneyness(spec, strike);
        try {
            RatePoint rp = is_vix(spec) ? vix_rate(spec.model, strike) : european_rate(spec.model, strike);
            std::optional<double> iv;
            if (k != 0.0 && rp.rate > 0.0) iv = rate_to_impvol(rp.rate, k);
            out << format_num(k) << ',' << format_num(strike) << ',' << format_num(rp.rate) << ',' << opt_num(iv)
                << ',' << format_num(rp.minimizer_y) << ',' << format_num(rp.minimizer_z) << ','
                << (rp.converged ? 1 : 0) << '\n';
            if (rp.boundary_hit) diag << "strike " << format_num(strike) << ": minimizer on the search-box edge\n";
        } catch (const std::domain_error& e) {
            diag << "strike " << format_num(strike) << ": " << e.what() << "\n";
            out << format_num(k) << ',' << format_num(strike) << ",,,,,0\n";
        }
    }
}

void run_mc(const RunSpec& spec, std::ostream& out, std::ostream& diag) {
    spec.validate();
    write_smile_csv(out, mc_points(spec, spec.grid.strikes(reference_level(spec)), diag));
}

void run_compare(const RunSpec& spec, std::ostream& out, std::ostream& diag) {
    spec.validate();
    const SmileExpansion expansion = smile_expansion(spec.model, is_vix(spec));
    const auto strikes = spec.grid.strikes(reference_level(spec));
    const auto points = mc_points(spec, strikes, diag);
    out << "log_moneyness,strike,iv_expansion,iv_rate,iv_mc,iv_mc_se,difference,z_score\n";
    for (std::size_t i = 0; i < strikes.size(); ++i) {
        double k = grid_log_moneyness(spec, strikes[i]);
        AsymptoticPoint a = asymptotic_at(spec, expansion, strikes[i], k, diag);
        const McSmilePoint& m = points[i];
        out << format_num(k) << ',' << format_num(strikes[i]) << ',' << format_num(a.iv_expansion) << ','
            << opt_num(a.iv_rate) << ',';
        if (!m.ok) {
            out << ",,,\n";
            continue;
        }
        double se = 0.5 * (m.iv_high - m.iv_low);
        double diff = m.implied_vol - a.iv_expansion;
        out << format_num(m.implied_vol) << ',' << format_num(se) << ',' << format_num(diff) << ','
            << (se > 0.0 ? format_num(diff / se) : std::string()) << '\n';
    }
}

void run(const RunSpec& spec, std::ostream& out, std::ostream& diag) {
    switch (spec.command) {
        case Command::Smile: return run_smile(spec, out, diag);
        case Command::Rate: return run_rate(spec, out, diag);
        case Command::Mc: return run_mc(spec, out, diag);
        case Command::Table1: return run_table1(out);
        case Command::Compare: return run_compare(spec, out, diag);
    }
}

}  // namespace lsv::cli
