#include "lsv/hartman_watson.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

namespace lsv {

namespace {

constexpr double kPi = std::numbers::pi;

double sinhc(double x) {
    if (std::abs(x) < 1e-4) {
        double x2 = x * x;
        return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0);
    }
    return std::sinh(x) / x;
}

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

template <class F>
double solve(F f, double lo, double hi) {
    std::uintmax_t iters = 300;
    boost::math::tools::eps_tolerance<double> tol(52);
    auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
    return 0.5 * (a + b);
}

}  // namespace

FBranchSolution hw_F_branch(double rho) {
    if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("hw_F: rho must be positive and finite");
    if (rho == 1.0) return {rho, FBranch::Cos, kPi, kPi * kPi / 2.0 - 1.0, 0.0};

    if (rho < 1.0) {
        auto g = [rho](double x) { return rho * sinhc(x) - 1.0; };
        double hi = std::sqrt(6.0 * (1.0 - rho) / rho) + 1.0;
        while (g(hi) < 0.0) hi *= 2.0;
        double x1 = solve(g, 0.0, hi);
        double f = 0.5 * x1 * x1 - rho * std::cosh(x1) + kPi * kPi / 2.0;
        return {rho, FBranch::Cosh, x1, f, g(x1)};
    }

    // With r = pi - y1 the cos-branch equation becomes rho * sin(r)/r = 1,
    // whose root is unique on (0, pi) and avoids the trivial root y1 = pi.
    auto g = [rho](double r) { return rho * sinc(r) - 1.0; };
    double r = solve(g, 0.0, kPi);
    double y1 = kPi - r;
    double f = -0.5 * y1 * y1 + rho * std::cos(y1) + kPi * y1;
    return {rho, FBranch::Cos, y1, f, y1 + rho * std::sin(y1) - kPi};
}

double hw_F(double rho) { return hw_F_branch(rho).f_value; }

double hw_F_derivative(double rho) {
    FBranchSolution s = hw_F_branch(rho);
    return s.branch == FBranch::Cosh ? -std::cosh(s.root) : std::cos(s.root);
}

double hw_F_series(double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("hw_F_series: rho must be positive");
    double l = std::log(rho);
    return kPi * kPi / 2.0 - 1.0 - l + l * l + 2.0 / 15.0 * l * l * l;
}

double rate_I(double u, double v) {
    if (!(u > 0.0) || !(v > 0.0)) throw std::invalid_argument("rate_I: u and v must be positive");
    double val = 8.0 * hw_F(v / u) + 4.0 * (1.0 + v * v) / u - 4.0 * kPi * kPi;
    return std::max(val, 0.0);
}

double h_lognormal(double y, double z, double v0, double sigma) {
    if (!(z > 0.0) || !(v0 > 0.0) || !(sigma > 0.0))
        throw std::invalid_argument("h_lognormal: z, v0 and sigma must be positive");
    return rate_I(z / v0, std::exp(0.5 * y) / std::sqrt(v0)) / (2.0 * sigma * sigma);
}

}  // namespace lsv
