#include "lsv/heston_rate.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/tools/roots.hpp>

#include "lsv/errors.hpp"

// Everything below works in units with sigma = 1:
//   Lambda(theta, phi; sigma) = L(sigma^2 theta, sigma^2 phi) / sigma^2,
//   L(t, p) = (2t + p G(t)) / (G(t) - p),  G(t) = w cot(w/2),  w = sqrt(2t),
// with the coth continuation for t < 0. The domain is t < 2 pi^2, p < G(t).

namespace lsv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kThetaMax = 2.0 * kPi * kPi;
constexpr double kSeriesRadius = 0.5;
constexpr int kSeriesTerms = 14;

struct GValues {
    double g, d1, d2;
    double q;  // G^2 + 2t, evaluated without cancellation
};

const std::array<double, kSeriesTerms>& g_series() {
    static const std::array<double, kSeriesTerms> c = [] {
        std::array<double, kSeriesTerms> out{};
        for (int n = 0; n < kSeriesTerms; ++n) {
            double b = boost::math::bernoulli_b2n<double>(n);
            double sign = n % 2 == 0 ? 1.0 : -1.0;
            out[n] = 2.0 * sign * b * std::pow(2.0, n) / boost::math::factorial<double>(2 * n);
        }
        return out;
    }();
    return c;
}

GValues g_eval(double t) {
    if (std::abs(t) < kSeriesRadius) {
        const auto& c = g_series();
        double g = 0.0, d1 = 0.0, d2 = 0.0;
        for (int n = kSeriesTerms - 1; n >= 0; --n) {
            g = g * t + c[n];
            if (n >= 1) d1 = d1 * t + n * c[n];
            if (n >= 2) d2 = d2 * t + n * (n - 1) * c[n];
        }
        return {g, d1, d2, g * g + 2.0 * t};
    }
    if (t > 0.0) {
        double h = 0.5 * std::sqrt(2.0 * t);
        double cot = 1.0 / std::tan(h);
        double csc2 = 1.0 + cot * cot;
        double n = cot - h * csc2;
        double dn = -2.0 * csc2 + 2.0 * h * csc2 * cot;
        return {2.0 * h * cot, n / (2.0 * h), (dn / (2.0 * h) - n / (2.0 * h * h)) / (4.0 * h), 4.0 * h * h * csc2};
    }
    double h = 0.5 * std::sqrt(-2.0 * t);
    double coth = 1.0 / std::tanh(h);
    double sh = std::sinh(h);
    double csch2 = 1.0 / (sh * sh);
    double n = coth - h * csch2;
    double dn = -2.0 * csch2 + 2.0 * h * csch2 * coth;
    return {2.0 * h * coth, -n / (2.0 * h), (dn / (2.0 * h) - n / (2.0 * h * h)) / (4.0 * h), 4.0 * h * h * csch2};
}

bool unit_in_domain(double t, double p) { return t < kThetaMax && p < g_eval(t).g; }

CumulantDerivatives unit_derivatives(double t, double p) {
    CumulantDerivatives out{};
    if (!(t < kThetaMax)) {
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    GValues g = g_eval(t);
    double d = g.g - p;
    if (!(d > 0.0)) {
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    double q = g.q;
    double pp = p * p + 2.0 * t;
    double d2 = d * d, d3 = d2 * d;
    out.value = q / d - g.g;
    out.d_phi = q / d2;
    out.d_theta = (2.0 * d - g.d1 * pp) / d2;
    out.d_phi_phi = 2.0 * q / d3;
    out.d_theta_phi = (2.0 * g.g * g.d1 + 2.0) / d2 - 2.0 * q * g.d1 / d3;
    out.d_theta_theta = -g.d2 * pp / d2 - 2.0 * g.d1 * (2.0 * d - g.d1 * pp) / d3;
    out.in_domain = true;
    return out;
}

void check_sigma(double sigma, const char* who) {
    if (!(sigma > 0.0)) throw std::invalid_argument(std::string(who) + ": sigma must be positive");
}

// sqrt(q) and its t-derivative (G G' + 1) / sqrt(q), in forms that stay
// accurate near the domain edge and for large negative t.
struct RootQ {
    double r, dr;
};

RootQ root_q(double t) {
    if (std::abs(t) < kSeriesRadius) {
        GValues g = g_eval(t);
        double r = std::sqrt(g.q);
        return {r, (g.g * g.d1 + 1.0) / r};
    }
    if (t > 0.0) {
        double h = 0.5 * std::sqrt(2.0 * t);
        double csc = 1.0 / std::sin(h);
        return {2.0 * h * csc, csc * (1.0 - h / std::tan(h)) / (2.0 * h)};
    }
    double h = 0.5 * std::sqrt(-2.0 * t);
    double csch = 1.0 / std::sinh(h);
    return {2.0 * h * csch, csch * (h / std::tanh(h) - 1.0) / (2.0 * h)};
}

// For fixed t the sup over p is attained where d L / d p = q / D^2 = y, i.e.
// D = sqrt(q / y). Substituting leaves the concave one-dimensional problem
//   sup_t  t x + (1 + y) G(t) - 2 sqrt(y q(t)),
// solved by bracketing the root of its derivative.
IHSolution unit_legendre(double x, double y) {
    const double sy = std::sqrt(y);
    auto value = [&](double t) { return t * x + (1.0 + y) * g_eval(t).g - 2.0 * sy * root_q(t).r; };
    auto slope = [&](double t) { return x + (1.0 + y) * g_eval(t).d1 - 2.0 * sy * root_q(t).dr; };

    const double ex = std::log(x), ey = std::log(y);
    double t0 = 6.0 * (2.0 * ex - ey) - 24.0 / 5.0 * ex * ex + 24.0 / 5.0 * ex * ey - 11.0 / 5.0 * ey * ey;
    t0 = std::min(t0, 0.9 * kThetaMax);

    IHSolution sol{};
    double t_star;
    int iterations = 0;
    double s0 = slope(t0);
    if (s0 == 0.0) {
        t_star = t0;
    } else {
        double lo = t0, hi = t0;
        double width = 1.0;
        if (s0 > 0.0) {
            // move right towards the pole at 2 pi^2
            for (;;) {
                hi = std::min(t0 + width, kThetaMax - (kThetaMax - t0) * std::pow(0.5, ++iterations));
                if (slope(hi) <= 0.0 || iterations > 200) break;
                lo = hi;
                width *= 2.0;
            }
        } else {
            for (;;) {
                lo = t0 - width;
                ++iterations;
                if (slope(lo) >= 0.0 || iterations > 200) break;
                hi = lo;
                width *= 2.0;
            }
        }
        std::uintmax_t max_iter = 200;
        boost::math::tools::eps_tolerance<double> tol(50);
        auto [a, b] = boost::math::tools::toms748_solve(slope, lo, hi, tol, max_iter);
        iterations += static_cast<int>(max_iter);
        t_star = 0.5 * (a + b);
    }
    GValues g = g_eval(t_star);
    RootQ rq = root_q(t_star);
    sol.theta = t_star;
    sol.phi = g.g - rq.r / sy;
    sol.value = std::max(0.0, value(t_star));
    CumulantDerivatives c = unit_derivatives(sol.theta, sol.phi);
    sol.grad_norm = c.in_domain ? std::hypot(x - c.d_theta, y - c.d_phi) : std::numeric_limits<double>::infinity();
    sol.iterations = iterations;
    double scale = 1.0 + std::abs(x) + (1.0 + y) * std::abs(g.d1) + 2.0 * sy * std::abs(rq.dr);
    sol.converged = std::isfinite(sol.value) && std::abs(slope(t_star)) <= 1e-9 * scale;
    return sol;
}

}  // namespace

CumulantPoint cumulant(double theta, double phi, double sigma) {
    check_sigma(sigma, "cumulant");
    double s2 = sigma * sigma;
    double t = s2 * theta, p = s2 * phi;
    if (!unit_in_domain(t, p)) return {theta, phi, sigma, std::numeric_limits<double>::infinity(), false};
    double value = t == 0.0 ? p / (1.0 - 0.5 * p) : unit_derivatives(t, p).value;
    return {theta, phi, sigma, value / s2, true};
}

CumulantDerivatives cumulant_derivatives(double theta, double phi, double sigma) {
    check_sigma(sigma, "cumulant_derivatives");
    double s2 = sigma * sigma;
    CumulantDerivatives c = unit_derivatives(s2 * theta, s2 * phi);
    c.value /= s2;
    c.d_theta_theta *= s2;
    c.d_theta_phi *= s2;
    c.d_phi_phi *= s2;
    return c;
}

double boundary_theta_c(double phi, double sigma) {
    check_sigma(sigma, "boundary_theta_c");
    double s2 = sigma * sigma;
    double p = s2 * phi;
    auto f = [p](double t) { return g_eval(t).g - p; };
    double hi = kThetaMax * (1.0 - 1e-15);
    while (f(hi) > 0.0) hi = 0.5 * (hi + kThetaMax);
    double lo = std::min(-1.0, -p * std::abs(p));
    while (f(lo) < 0.0) lo *= 2.0;
    std::uintmax_t iters = 300;
    boost::math::tools::eps_tolerance<double> tol(52);
    auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
    return 0.5 * (a + b) / s2;
}

IHSolution rate_IH_solve(double x, double y, double sigma) {
    check_sigma(sigma, "rate_IH");
    if (!(x > 0.0) || !(y > 0.0)) throw std::invalid_argument("rate_IH: x and y must be positive");
    double s2 = sigma * sigma;
    IHSolution sol = unit_legendre(x, y);
    sol.value /= s2;
    sol.theta /= s2;
    sol.phi /= s2;
    return sol;
}

double rate_IH_numeric(double x, double y, double sigma) {
    IHSolution sol = rate_IH_solve(x, y, sigma);
    if (!sol.converged)
        throw ConvergenceError("rate_IH: Legendre transform did not converge at x = " + std::to_string(x) +
                               ", y = " + std::to_string(y) + " (gradient norm " + std::to_string(sol.grad_norm) +
                               ")");
    return sol.value;
}

double rate_IH_series(double ex, double ey, double sigma) {
    check_sigma(sigma, "rate_IH_series");
    double x2 = ex * ex, y2 = ey * ey;
    double quad = 6.0 * x2 - 6.0 * ex * ey + 2.0 * y2;
    double cubic = 12.0 / 5.0 * x2 * ex - 3.0 / 5.0 * x2 * ey - 11.0 / 5.0 * ex * y2 + 6.0 / 5.0 * y2 * ey;
    double quartic = 271.0 / 350.0 * x2 * x2 - 61.0 / 175.0 * x2 * ex * ey + 39.0 / 350.0 * x2 * y2 -
                     129.0 / 175.0 * ex * y2 * ey + 473.0 / 1050.0 * y2 * y2;
    return (quad + cubic + quartic) / (sigma * sigma);
}

double h_heston(double y, double z, double v0, double sigma) {
    if (!(z > 0.0) || !(v0 > 0.0)) throw std::invalid_argument("h_heston: z and v0 must be positive");
    return v0 * rate_IH_numeric(z / v0, std::exp(y) / v0, sigma);
}

double marginal_J1(double ex, double sigma) {
    check_sigma(sigma, "marginal_J1");
    double x2 = ex * ex;
    return (1.5 * x2 + 0.6 * x2 * ex + 271.0 / 1400.0 * x2 * x2) / (sigma * sigma);
}

double marginal_J2(double ey, double sigma) {
    check_sigma(sigma, "marginal_J2");
    double y2 = ey * ey;
    return (2.0 / 3.0 * y2 + 0.25 * y2 * ey + 7.0 / 96.0 * y2 * y2) / (sigma * sigma);
}

}  // namespace lsv
