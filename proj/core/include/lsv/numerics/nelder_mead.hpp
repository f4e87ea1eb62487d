#pragma once

#include <functional>
#include <vector>

namespace lsv::numerics {

struct NelderMeadOptions {
    double initial_step = 0.1;
    double f_tol = 1e-15;   // absolute spread of simplex values
    double x_tol = 1e-10;   // simplex diameter
    int max_iterations = 5000;
    std::vector<double> lower;  // optional box, empty = unbounded
    std::vector<double> upper;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value;
    int iterations;
    bool converged;
};

/// Derivative-free minimization. Points outside the optional box are
/// projected onto it before evaluation.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opts = {});

}  // namespace lsv::numerics
