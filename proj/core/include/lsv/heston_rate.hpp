#pragma once

namespace lsv {

/// Limiting cumulant Lambda_H(theta, phi) of (time-average, terminal value)
/// for the square-root variance process with vol-of-vol sigma.
struct CumulantPoint {
    double theta;
    double phi;
    double sigma;
    double value;    // +inf outside the domain
    bool in_domain;
};

CumulantPoint cumulant(double theta, double phi, double sigma);

/// Value, gradient and Hessian of Lambda_H. Only meaningful in the domain.
struct CumulantDerivatives {
    double value;
    double d_theta;
    double d_phi;
    double d_theta_theta;
    double d_theta_phi;
    double d_phi_phi;
    bool in_domain;
};

CumulantDerivatives cumulant_derivatives(double theta, double phi, double sigma);

/// Boundary curve: the theta at which the denominator of Lambda_H vanishes
/// for fixed phi. phi = 0 gives pi^2 / (2 sigma^2). For sigma^2 phi >= 2 the
/// returned root is <= 0, i.e. no admissible theta >= 0 exists.
double boundary_theta_c(double phi, double sigma);

/// Diagnostics of the Legendre transform sup_{theta,phi}[theta x + phi y - Lambda_H].
struct IHSolution {
    double value;
    double theta;      // maximizer
    double phi;
    double grad_norm;  // |(x, y) - grad Lambda_H| at the maximizer
    int iterations;
    bool converged;
};

IHSolution rate_IH_solve(double x, double y, double sigma);

/// Joint rate function I_H(x, y). Throws ConvergenceError when the
/// maximization does not converge.
double rate_IH_numeric(double x, double y, double sigma);

/// Quartic expansion of I_H in eps_x = log x, eps_y = log y; accurate for
/// |eps| up to about 0.5.
double rate_IH_series(double eps_x, double eps_y, double sigma);

/// H(y, z) = v0 * I_H(z / v0, e^y / v0) for square-root vol-of-vol.
double h_heston(double y, double z, double v0, double sigma);

/// Expansions of inf_y I_H and inf_x I_H.
double marginal_J1(double eps_x, double sigma);
double marginal_J2(double eps_y, double sigma);

}  // namespace lsv
