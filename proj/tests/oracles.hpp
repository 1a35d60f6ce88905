#pragma once

// Independent reference implementations used only by the test suites.
// They deliberately share no code with the library paths they check:
// straight-axis adaptive quadrature instead of the library's transformed
// fallback, and the defining Bessel integral instead of the Marcum series.

#include <functional>

namespace oracle {

/// Adaptive Simpson quadrature with relative tolerance `tol`.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-12);

/// int_x^inf t^{a-1} e^{-t} dt by direct quadrature.
double upper_gamma(double a, double x);

/// Q_1(a,b) = int_b^inf t e^{-(t^2+a^2)/2} I_0(a t) dt.
double marcum_q1(double a, double b);

/// E[ln(1+rho Z)] = rho int_0^inf S(z)/(1+rho z) dz for a survival function S.
double capacity_integral(const std::function<double(double)>& survival, double rho);

} // namespace oracle
