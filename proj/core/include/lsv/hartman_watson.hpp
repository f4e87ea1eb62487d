#pragma once

namespace lsv {

enum class FBranch {
    Cosh,  // 0 < rho < 1: rho * sinh(x1) / x1 = 1
    Cos,   // rho >= 1:    y1 + rho * sin(y1) = pi, y1 in (0, pi]
};

struct FBranchSolution {
    double rho;
    FBranch branch;
    double root;      // x1 (Cosh) or y1 (Cos)
    double f_value;
    double residual;  // defining equation evaluated at the root
};

/// Solves the branch equation for F(rho) and evaluates it.
FBranchSolution hw_F_branch(double rho);

/// F(rho) by root solving. Throws std::invalid_argument for rho <= 0.
double hw_F(double rho);

/// dF/drho = -cosh(x1) or -cos(y1).
double hw_F_derivative(double rho);

/// Four-term expansion about rho = 1 in L = log(rho):
/// pi^2/2 - 1 - L + L^2 + 2 L^3 / 15. Truncation error is O(L^4).
double hw_F_series(double rho);

/// I(u, v) = 8 F(v/u) + 4 (1 + v^2)/u - 4 pi^2, nonnegative with I(1,1) = 0.
double rate_I(double u, double v);

/// H(y, z) for lognormal vol-of-vol: I(z/v0, e^{y/2}/sqrt(v0)) / (2 sigma^2).
double h_lognormal(double y, double z, double v0, double sigma);

}  // namespace lsv
