#include "lsv/numerics/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

namespace lsv::numerics {

namespace {

using Rule = boost::math::quadrature::gauss<double, 16>;

struct Accumulator {
    const std::function<double(double)>& f;
    double rel_tol;
    int max_depth;
    double scale = 0.0;
    double error = 0.0;
    int panels = 0;

    double panel(double a, double b) const { return Rule::integrate(f, a, b); }

    double refine(double a, double b, double whole, int depth) {
        double m = 0.5 * (a + b);
        double left = panel(a, m);
        double right = panel(m, b);
        double split = left + right;
        double diff = std::abs(split - whole);
        if (!std::isfinite(split)) throw std::domain_error("integrate: non-finite integrand");
        if (diff <= rel_tol * std::max(scale, std::abs(split)) || depth >= max_depth) {
            error += diff;
            ++panels;
            return split;
        }
        return refine(a, m, left, depth + 1) + refine(m, b, right, depth + 1);
    }
};

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, int max_depth) {
    if (a == b) return {0.0, 0.0, 0};
    if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("integrate: infinite limits");
    Accumulator acc{f, rel_tol, max_depth};
    double whole = acc.panel(a, b);
    acc.scale = std::abs(whole);
    double value = acc.refine(a, b, whole, 0);
    return {value, acc.error, acc.panels};
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    return integrate_adaptive(f, a, b, rel_tol).value;
}

}  // namespace lsv::numerics
