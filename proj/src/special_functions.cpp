#include "cnoma/special_functions.hpp"

#include "cnoma/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cnoma {
namespace {

constexpr double kEps = 1e-15;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 1000;

bool is_integer(double a) {
    return a == std::floor(a) && std::abs(a) < 1e9;
}

/*
 * Regularized lower incomplete gamma P(a,x) by power series,
 *   P(a,x) = x^a e^{-x} / Gamma(a+1) * sum_n x^n / ((a+1)...(a+n)),
 * reliable for x < a + 1.
 */
double lower_regularized_series(double a, double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < kMaxIter; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps)
            return sum * std::exp(a * std::log(x) - x - std::lgamma(a + 1.0));
    }
    throw numeric_error("incomplete gamma: lower series did not converge");
}

/*
 * Continued fraction for the unregularized tail,
 *   Gamma(a,x) = e^{-x} x^a * 1/(x+1-a-) 1(1-a)/(x+3-a-) 2(2-a)/(x+5-a-) ...
 * (modified Lentz). Converges for x > 0; fast once x is past ~1. Also valid
 * for a <= 0, which is how the negative-order fallback works.
 */
double upper_cf_unregularized(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps)
            return std::exp(-x + a * std::log(x)) * h;
    }
    throw numeric_error("incomplete gamma: continued fraction did not converge");
}

/*
 * E_1(x) for x <= 1 by the classic series
 *   E_1(x) = -gamma - ln x + sum_k (-1)^{k+1} x^k / (k k!).
 */
double e1_series(double x) {
    constexpr double kEulerGamma = 0.57721566490153286060651209008240;
    double sum = -kEulerGamma - std::log(x);
    double term = 1.0;
    for (int k = 1; k < kMaxIter; ++k) {
        term *= -x / k;
        const double add = -term / k;
        sum += add;
        if (std::abs(add) < std::abs(sum) * kEps) return sum;
    }
    throw numeric_error("E1 series did not converge");
}

/*
 * e^x E_n(x) by continued fraction (x > 1):
 *   e^x E_n(x) = 1/(x+n-) 1*n/(x+n+2-) 2(n+1)/(x+n+4-) ...
 */
double en_cf_scaled(int n, double x) {
    double b = x + n;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (n - 1 + i);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw numeric_error("E_n continued fraction did not converge");
}

/*
 * Quadrature fallback for Gamma(a,x), used when the downward recurrence
 * flags cancellation. Substituting t = x - ln(1-u) maps [x,inf) to [0,1):
 *   Gamma(a,x) = e^{-x} int_0^1 (x - ln(1-u))^{a-1} du,
 * smooth and adaptive-Simpson friendly.
 */
double integrand_u(double a, double x, double u) {
    return std::pow(x - std::log1p(-u), a - 1.0);
}

double simpson_rec(double a, double x, double lo, double hi, double flo, double fmid,
                   double fhi, double whole, double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lmid = 0.5 * (lo + mid);
    const double rmid = 0.5 * (mid + hi);
    const double fl = integrand_u(a, x, lmid);
    const double fr = integrand_u(a, x, rmid);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * fl + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * fr + fhi);
    const double delta = left + right - whole;
    if (depth <= 0) return left + right + delta / 15.0;
    if (std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(a, x, lo, mid, flo, fl, fmid, left, tol / 2.0, depth - 1) +
           simpson_rec(a, x, mid, hi, fmid, fr, fhi, right, tol / 2.0, depth - 1);
}

double gamma_quadrature(double a, double x) {
    const double hi = 1.0 - 1e-16;
    const double flo = integrand_u(a, x, 0.0);
    const double fhi = integrand_u(a, x, hi);
    const double fmid = integrand_u(a, x, 0.5 * hi);
    const double whole = hi / 6.0 * (flo + 4.0 * fmid + fhi);
    const double tol = std::abs(whole) * 1e-12 + 1e-300;
    const double integral = simpson_rec(a, x, 0.0, hi, flo, fmid, fhi, whole, tol, 48);
    return std::exp(-x) * integral;
}

// How much relative magnitude a subtraction may lose before the recurrence
// result is considered untrustworthy (~6 decimal digits).
constexpr double kCancellationFloor = 1e-6;

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

} // namespace

double exponential_integral_en_scaled(int n, double x) {
    if (n < 1) throw std::domain_error("E_n: order must be >= 1");
    if (!(x > 0.0)) throw std::domain_error("E_n: x must be > 0");
    if (x > 1.0) return en_cf_scaled(n, x);
    // Upward recurrence e^x E_{k+1} = (1 - x e^x E_k)/k from e^x E_1; every
    // step contracts the error by x/k for x <= 1.
    double r = std::exp(x) * e1_series(x);
    for (int k = 1; k < n; ++k) {
        const double num = 1.0 - x * r;
        if (num < kCancellationFloor) {
            // Re-anchor this rung from quadrature and keep going.
            r = std::exp(x) * gamma_quadrature(-k, x) * std::pow(x, k);
            continue;
        }
        r = num / k;
    }
    return r;
}

double exponential_integral_en(int n, double x) {
    return std::exp(-x) * exponential_integral_en_scaled(n, x);
}

std::vector<double> exponential_integral_scaled_ladder(int max_m, double x) {
    if (max_m < 0) throw std::domain_error("ladder: max_m must be >= 0");
    if (!(x > 0.0)) throw std::domain_error("ladder: x must be > 0");
    std::vector<double> out(static_cast<std::size_t>(max_m) + 1);
    if (x > 1.0) {
        for (int m = 0; m <= max_m; ++m) out[m] = en_cf_scaled(m + 1, x);
        return out;
    }
    out[0] = std::exp(x) * e1_series(x);
    for (int m = 1; m <= max_m; ++m) {
        const double num = 1.0 - x * out[m - 1];
        out[m] = num / m; // num in (0,1): x e^x E_m(x) < 1 for x <= 1
    }
    return out;
}

double upper_incomplete_gamma(double a, double x) {
    if (std::isnan(a) || std::isnan(x)) throw std::domain_error("gamma: nan argument");
    if (x < 0.0) throw std::domain_error("gamma: x must be >= 0");
    if (a <= 0.0 && x == 0.0)
        throw std::domain_error("gamma: diverges at x = 0 for a <= 0");

    if (x == 0.0) {
        const double g = std::tgamma(a);
        if (!std::isfinite(g)) throw std::overflow_error("gamma: Gamma(a) overflows");
        return g;
    }

    const bool int_a = is_integer(a);

    if (a > 0.0) {
        if (int_a && a <= 170.0) {
            // Gamma(n+1,x) = n! e^{-x} sum_{m<=n} x^m/m!, all terms positive.
            const int n = static_cast<int>(a) - 1;
            double term = std::exp(-x);
            double qhat = term;
            for (int m = 1; m <= n; ++m) {
                term *= x / m;
                qhat += term;
            }
            const double value = factorial(n) * qhat;
            if (!std::isfinite(value)) throw std::overflow_error("gamma: overflow");
            return value;
        }
        double value;
        if (x >= a + 1.0) {
            value = upper_cf_unregularized(a, x);
        } else {
            const double q = 1.0 - lower_regularized_series(a, x);
            value = (q > 0.0) ? std::exp(std::lgamma(a) + std::log(q)) : 0.0;
        }
        if (!std::isfinite(value)) throw std::overflow_error("gamma: overflow");
        return value;
    }

    if (int_a) {
        // Gamma(-m, x) = x^{-m} E_{m+1}(x)
        const int m = static_cast<int>(-a);
        const double en = exponential_integral_en(m + 1, x);
        const double value = en * std::pow(x, -static_cast<double>(m));
        if (!std::isfinite(value)) throw std::overflow_error("gamma: overflow");
        return value;
    }

    // Negative non-integer order.
    if (x > 1.0) return upper_cf_unregularized(a, x);

    const double a0 = a - std::floor(a); // fractional start in (0,1)
    if (a0 < 0.05 || a0 > 0.95) return gamma_quadrature(a, x);
    const int steps = static_cast<int>(std::lround(a0 - a));
    double g = upper_incomplete_gamma(a0, x);
    double s = a0;
    for (int k = 0; k < steps; ++k) {
        s -= 1.0;
        const double sub = std::exp(s * std::log(x) - x);
        const double num = g - sub;
        if (std::abs(num) < kCancellationFloor * std::max(std::abs(g), sub))
            return gamma_quadrature(a, x);
        g = num / s;
    }
    return g;
}

double marcum_q1(double a, double b) {
    if (!(a >= 0.0) || !(b >= 0.0)) throw std::domain_error("marcum_q1: a, b must be >= 0");
    const double lambda = 0.5 * a * a; // Poisson mean of the LOS component
    const double y = 0.5 * b * b;
    if (lambda > 700.0)
        throw numeric_error("marcum_q1: noncentrality too large for direct series");
    if (lambda == 0.0) return std::exp(-y);

    // Q_1(a,b) = sum_k pois(k; lambda) * P(Erlang_{k+1} > y); the Erlang
    // factor is <= 1, so the Poisson tail bounds the truncation error.
    double pois = std::exp(-lambda);
    double erlang_term = std::exp(-y);
    double erlang_tail = erlang_term;
    double q = pois * erlang_tail;
    for (int k = 1; k < 100000; ++k) {
        pois *= lambda / k;
        erlang_term *= y / k;
        erlang_tail += erlang_term;
        q += pois * erlang_tail;
        if (k + 1 > lambda) {
            const double r = lambda / (k + 1);
            const double tail_bound = pois * r / (1.0 - r);
            if (tail_bound < 1e-14 * q + 1e-300) break;
        }
    }
    return q < 1.0 ? q : 1.0;
}

} // namespace cnoma
