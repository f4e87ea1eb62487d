#include "lsv/local_vol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "lsv/errors.hpp"

namespace lsv {

namespace {

constexpr double kLogCap = 50.0;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double poly(const std::array<double, 4>& c, double t) {
    return ((c[3] * t + c[2]) * t + c[1]) * t + c[0];
}

double poly_deriv(const std::array<double, 4>& c, double t) {
    return (3.0 * c[3] * t + 2.0 * c[2]) * t + c[1];
}

// Smallest positive root of a + b t + c t^2 (direction +1) or largest
// negative root (direction -1); kLogCap when there is none within the cap.
double quadratic_edge(double a, double b, double c, int direction) {
    double best = kLogCap;
    auto consider = [&](double r) {
        double d = direction * r;
        if (d > 0.0 && d < best) best = d;
    };
    if (c == 0.0) {
        if (b != 0.0) consider(-a / b);
    } else {
        double disc = b * b - 4.0 * a * c;
        if (disc >= 0.0) {
            double sq = std::sqrt(disc);
            // stable pair of roots
            double qq = -0.5 * (b + std::copysign(sq, b));
            if (qq != 0.0) {
                consider(qq / c);
                consider(a / qq);
            } else {
                consider(0.0);
            }
        }
    }
    return direction * best;
}

double find_root(auto&& f, double lo, double hi) {
    std::uintmax_t max_iter = 200;
    boost::math::tools::eps_tolerance<double> tol(45);
    auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, max_iter);
    return 0.5 * (a + b);
}

}  // namespace

void validate(const LocalVolSpec& spec) {
    std::visit(overloaded{
                   [](const TanhLocalVol& p) {
                       if (!std::isfinite(p.f0) || !std::isfinite(p.f1) || !std::isfinite(p.x0))
                           throw std::invalid_argument("tanh local vol: non-finite parameter");
                       if (!(p.f0 > std::abs(p.f1)))
                           throw std::invalid_argument("tanh local vol: requires f0 > |f1|");
                   },
                   [](const TaylorLogLocalVol& p) {
                       for (double e : p.eta)
                           if (!std::isfinite(e))
                               throw std::invalid_argument("taylor_log local vol: non-finite coefficient");
                       if (!(p.eta[0] > 0.0))
                           throw std::invalid_argument("taylor_log local vol: requires eta0 > 0");
                   },
                   [](const ConstantLocalVol& p) {
                       if (!(p.value > 0.0) || !std::isfinite(p.value))
                           throw std::invalid_argument("constant local vol: requires value > 0");
                   },
               },
               spec);
}

bool is_constant(const LocalVolSpec& spec) {
    if (std::holds_alternative<ConstantLocalVol>(spec)) return true;
    if (auto* t = std::get_if<TanhLocalVol>(&spec)) return t->f1 == 0.0;
    const auto& c = std::get<TaylorLogLocalVol>(spec).eta;
    return c[1] == 0.0 && c[2] == 0.0 && c[3] == 0.0;
}

double eta_at_log(const LocalVolSpec& spec, double t) {
    return std::visit(overloaded{
                          [t](const TanhLocalVol& p) { return p.f0 + p.f1 * std::tanh(t - p.x0); },
                          [t](const TaylorLogLocalVol& p) { return poly(p.eta, t); },
                          [](const ConstantLocalVol& p) { return p.value; },
                      },
                      spec);
}

double eta_log_derivative(const LocalVolSpec& spec, double t) {
    return std::visit(overloaded{
                          [t](const TanhLocalVol& p) {
                              double c = std::cosh(t - p.x0);
                              return p.f1 / (c * c);
                          },
                          [t](const TaylorLogLocalVol& p) { return poly_deriv(p.eta, t); },
                          [](const ConstantLocalVol&) { return 0.0; },
                      },
                      spec);
}

double eta_eval(const LocalVolSpec& spec, double s, double s0) {
    if (!(s > 0.0) || !(s0 > 0.0)) throw std::invalid_argument("eta_eval: prices must be positive");
    return eta_at_log(spec, std::log(s / s0));
}

std::vector<double> eta_log_coeffs(const LocalVolSpec& spec, int order) {
    if (order < 0 || order > 3)
        throw std::invalid_argument("eta_log_coeffs: order must be in 0..3, got " + std::to_string(order));
    std::array<double, 4> c = std::visit(
        overloaded{
            [](const TanhLocalVol& p) {
                double th = std::tanh(p.x0);
                double ch = std::cosh(p.x0);
                double sech2 = 1.0 / (ch * ch);
                return std::array<double, 4>{
                    p.f0 - p.f1 * th,
                    p.f1 * sech2,
                    p.f1 * sech2 * th,
                    p.f1 * (-2.0 * sech2 * sech2 + 4.0 * th * th * sech2) / 6.0,
                };
            },
            [](const TaylorLogLocalVol& p) { return p.eta; },
            [](const ConstantLocalVol& p) { return std::array<double, 4>{p.value, 0.0, 0.0, 0.0}; },
        },
        spec);
    return {c.begin(), c.begin() + order + 1};
}

MonotoneRegion monotone_region(const LocalVolSpec& spec) {
    if (is_constant(spec)) throw UnsupportedError("local vol is constant; eta^2 has no inverse");
    if (auto* p = std::get_if<TanhLocalVol>(&spec)) {
        double lo = p->f0 - std::abs(p->f1);
        double hi = p->f0 + std::abs(p->f1);
        double inf = std::numeric_limits<double>::infinity();
        return {-inf, inf, lo * lo, hi * hi};
    }
    const auto& c = std::get<TaylorLogLocalVol>(spec).eta;
    if (c[1] == 0.0) throw UnsupportedError("taylor_log local vol is not monotone at S0 (eta1 = 0)");
    auto eta = [&](double t) { return poly(c, t); };
    double edge[2];
    for (int k = 0; k < 2; ++k) {
        int dir = k == 0 ? -1 : 1;
        double e = quadratic_edge(c[1], 2.0 * c[2], 3.0 * c[3], dir);
        if (eta(e) <= 0.0) e = find_root(eta, std::min(0.0, e), std::max(0.0, e));
        edge[k] = e;
    }
    double a = eta(edge[0]);
    double b = eta(edge[1]);
    a = std::max(a, 0.0);
    b = std::max(b, 0.0);
    return {edge[0], edge[1], std::min(a * a, b * b), std::max(a * a, b * b)};
}

double eta_sq_inverse_log(const LocalVolSpec& spec, double w) {
    if (auto* p = std::get_if<ConstantLocalVol>(&spec)) {
        double v2 = p->value * p->value;
        if (std::abs(w - v2) > 1e-12 * v2)
            throw std::domain_error("eta_sq_inverse: w outside the range of a constant eta^2");
        return 0.0;
    }
    MonotoneRegion reg = monotone_region(spec);
    if (!(w > reg.eta_sq_lo && w < reg.eta_sq_hi))
        throw std::domain_error("eta_sq_inverse: w = " + std::to_string(w) + " outside range (" +
                                std::to_string(reg.eta_sq_lo) + ", " + std::to_string(reg.eta_sq_hi) + ")");
    if (auto* p = std::get_if<TanhLocalVol>(&spec)) {
        double arg = (std::sqrt(w) - p->f0) / p->f1;
        return p->x0 + std::atanh(arg);
    }
    // Geometric bracket expansion from t = 0 within the monotone region.
    auto g = [&](double t) {
        double e = eta_at_log(spec, t);
        return e * e - w;
    };
    double g0 = g(0.0);
    if (g0 == 0.0) return 0.0;
    double slope = eta_log_derivative(spec, 0.0) * eta_at_log(spec, 0.0);
    int dir = (g0 < 0.0) == (slope > 0.0) ? 1 : -1;
    double limit = dir > 0 ? reg.t_hi : reg.t_lo;
    double prev = 0.0;
    double step = 1e-2;
    for (;;) {
        double t = dir * step;
        bool last = std::abs(t) >= std::abs(limit);
        if (last) t = limit;
        if ((g(t) < 0.0) != (g0 < 0.0) || g(t) == 0.0)
            return find_root(g, std::min(prev, t), std::max(prev, t));
        if (last) throw std::domain_error("eta_sq_inverse: no sign change inside the monotone region");
        prev = t;
        step *= 2.0;
    }
}

double eta_sq_inverse(const LocalVolSpec& spec, double w, double s0) {
    if (!(s0 > 0.0)) throw std::invalid_argument("eta_sq_inverse: s0 must be positive");
    return s0 * std::exp(eta_sq_inverse_log(spec, w));
}

}  // namespace lsv
