// lsv_shortmat: short-maturity smiles, rate functions and Monte Carlo checks
// for local-stochastic volatility models.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "lsv/errors.hpp"
#include "lsv/model_json.hpp"
#include "lsv_cli/run.hpp"

namespace {

using lsv::cli::Command;
using lsv::cli::RunSpec;

struct Flags {
    std::string model;
    std::string product = "european";
    std::string space = "log";
    double kmin = -0.3, kmax = 0.3;
    std::size_t kcount = 13;
    std::size_t paths = 0, steps = 0;
    std::uint64_t seed = 0;
    double maturity = 0.0;
    unsigned threads = 1;
    std::string out;
};

void add_common(CLI::App* sub, Flags& f, bool with_mc) {
    sub->add_option("--model", f.model, "Model config (JSON); default is the Tanh model at rho = 0")
        ->check(CLI::ExistingFile);
    sub->add_option("--product", f.product, "Option product")->check(CLI::IsMember({"european", "vix"}));
    sub->add_option("--kmin", f.kmin, "Lowest grid point (log-moneyness, or strike with --space linear)");
    sub->add_option("--kmax", f.kmax, "Highest grid point");
    sub->add_option("--kcount", f.kcount, "Number of grid points")->check(CLI::PositiveNumber);
    sub->add_option("--space", f.space, "Grid spacing")->check(CLI::IsMember({"log", "linear"}));
    sub->add_option("--out", f.out, "Output CSV file (default stdout)");
    if (!with_mc) return;
    sub->add_option("--paths", f.paths, "Monte Carlo paths (default 100000)");
    sub->add_option("--steps", f.steps, "Time steps per path (default 200)");
    sub->add_option("--seed", f.seed, "RNG seed (default 42)");
    sub->add_option("--maturity", f.maturity, "Maturity in years (default 1/12 european, 1/52 vix)");
    sub->add_option("--threads", f.threads, "Worker threads (default $LSV_SHORTMAT_THREADS or 1)")
        ->check(CLI::PositiveNumber);
}

RunSpec build_spec(Command cmd, const Flags& f, const CLI::App& sub) {
    RunSpec s;
    s.command = cmd;
    s.model_path = f.model;
    s.model = f.model.empty() ? lsv::table1_model(0.0) : lsv::load_model_file(f.model);
    s.product = f.product == "vix" ? lsv::cli::Product::Vix : lsv::cli::Product::European;
    s.grid = {f.kmin, f.kmax, f.kcount, f.space == "linear" ? lsv::cli::GridSpace::Linear : lsv::cli::GridSpace::Log};
    auto given = [&](const char* name) { return sub.get_option_no_throw(name) && sub.count(name) > 0; };
    if (given("--paths")) s.mc.paths = f.paths;
    if (given("--steps")) s.mc.steps = f.steps;
    if (given("--seed")) s.mc.seed = f.seed;
    if (given("--maturity")) s.mc.maturity = f.maturity;
    s.threads = f.threads;
    s.out_path = f.out;
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Short-maturity asymptotics and Monte Carlo for local-stochastic volatility models"};
    app.require_subcommand(1);

    Flags flags;
    try {
        flags.threads = lsv::cli::threads_from_env(std::getenv("LSV_SHORTMAT_THREADS"));
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    const std::map<Command, std::pair<const char*, const char*>> commands = {
        {Command::Smile, {"smile", "Quadratic expansion and full rate-function implied vols"}},
        {Command::Rate, {"rate", "Rate function J(K) and its minimizer"}},
        {Command::Mc, {"mc", "Monte Carlo smile"}},
        {Command::Table1, {"table1", "ATM level, skew and convexity of the Tanh model for three correlations"}},
        {Command::Compare, {"compare", "Asymptotic vs Monte Carlo implied vols"}},
    };
    std::map<Command, CLI::App*> subs;
    for (const auto& [cmd, names] : commands) {
        subs[cmd] = app.add_subcommand(names.first, names.second);
        if (cmd == Command::Table1)
            subs[cmd]->add_option("--out", flags.out, "Output CSV file (default stdout)");
        else
            add_common(subs[cmd], flags, cmd == Command::Mc || cmd == Command::Compare);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        Command cmd = Command::Smile;
        for (const auto& [c, sub] : subs)
            if (sub->parsed()) cmd = c;
        RunSpec spec = build_spec(cmd, flags, *subs[cmd]);
        spec.validate();
        std::cerr << "# config " << lsv::cli::describe(spec) << "\n";

        std::ostringstream csv;
        lsv::cli::run(spec, csv, std::cerr);
        if (spec.out_path.empty()) {
            std::cout << csv.str() << std::flush;
            if (!std::cout) throw std::runtime_error("failed writing to stdout");
        } else {
            std::ofstream file(spec.out_path, std::ios::binary);
            file << csv.str();
            file.close();
            if (!file) throw std::runtime_error("failed writing " + spec.out_path);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const lsv::UnsupportedError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
