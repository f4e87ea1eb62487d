#pragma once

#include <functional>

namespace lsv::numerics {

struct QuadratureResult {
    double value;
    double error_estimate;
    int panels;
};

/// Adaptive Gauss-Legendre integration with 16-point panels. A panel is
/// accepted when its value agrees with the sum over its two halves to
/// rel_tol (relative to the running magnitude); otherwise it is bisected.
/// Orientation is respected: integrate(f, b, a) == -integrate(f, a, b).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol = 1e-10, int max_depth = 30);

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-10);

}  // namespace lsv::numerics
