#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lsv/model.hpp"

namespace lsv::cli {

enum class Command { Smile, Rate, Mc, Table1, Compare };
enum class Product { European, Vix };
enum class GridSpace { Log, Linear };

/// Strike grid. In log space min/max are log-moneyness values relative to
/// the reference level (S0, or eta(S0) sqrt(V0) for VIX); in linear space
/// they are strikes.
struct StrikeGrid {
    double min = -0.3;
    double max = 0.3;
    std::size_t count = 13;
    GridSpace space = GridSpace::Log;

    void validate() const;
    std::vector<double> strikes(double reference) const;
};

struct McOverrides {
    std::optional<std::size_t> paths;
    std::optional<std::size_t> steps;
    std::optional<std::uint64_t> seed;
    std::optional<double> maturity;
};

struct RunSpec {
    Command command = Command::Smile;
    std::string model_path;  // empty: the Tanh experiment model at rho = 0
    LsvModel model = {};
    StrikeGrid grid;
    Product product = Product::European;
    McOverrides mc;
    unsigned threads = 1;
    std::string out_path;  // empty: stdout

    void validate() const;
    /// Maturity used by mc/compare: the override, else 1/12 (European) or 1/52 (VIX).
    double mc_maturity() const;
};

/// Parses a thread count; empty or null input yields 1.
unsigned threads_from_env(const char* value);

/// Effective configuration as a single JSON line.
std::string describe(const RunSpec& spec);

// CSV goes to `out`; notes on skipped or flagged strikes go to `diag`.
void run_smile(const RunSpec& spec, std::ostream& out, std::ostream& diag);
void run_rate(const RunSpec& spec, std::ostream& out, std::ostream& diag);
void run_mc(const RunSpec& spec, std::ostream& out, std::ostream& diag);
void run_table1(std::ostream& out);
void run_compare(const RunSpec& spec, std::ostream& out, std::ostream& diag);

/// Dispatches on spec.command.
void run(const RunSpec& spec, std::ostream& out, std::ostream& diag);

/// Rounds half-to-even at 3 decimals and formats without a negative zero.
std::string format_3dp(double x);

/// Shortest-round-trip-safe fixed format ("%.10g"), locale independent.
std::string format_num(double x);

}  // namespace lsv::cli
