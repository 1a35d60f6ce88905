#pragma once

#include <vector>

namespace cnoma {

/// Upper incomplete gamma Gamma(a, x) = int_x^inf t^{a-1} e^{-t} dt.
///
/// Supports any real order, including the non-positive integers reached by
/// the capacity series. Requires x > 0 when a <= 0 (the integral diverges
/// at x = 0 there). Throws std::domain_error on invalid arguments and
/// std::overflow_error when the value exceeds double range.
double upper_incomplete_gamma(double a, double x);

/// Generalized exponential integral E_n(x) = int_1^inf e^{-x t} / t^n dt,
/// n >= 1, x > 0. Related to the gamma above by E_n(x) = x^{n-1} Gamma(1-n, x).
double exponential_integral_en(int n, double x);

/// e^x E_n(x): the scaled form stays O(1/(n+x)) for every argument, which is
/// what the capacity series needs at high SNR where x -> 0 and the plain
/// Gamma(-m, x) would overflow.
double exponential_integral_en_scaled(int n, double x);

/// Fills out[m] = e^x E_{m+1}(x) for m = 0..max_m.
std::vector<double> exponential_integral_scaled_ladder(int max_m, double x);

/// First-order Marcum Q function Q_1(a, b), a, b >= 0.
/// Series evaluation with a guaranteed Poisson tail bound.
double marcum_q1(double a, double b);

} // namespace cnoma
