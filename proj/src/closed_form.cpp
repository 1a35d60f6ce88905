#include "cnoma/closed_form.hpp"

#include "cnoma/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cnoma {
namespace {

constexpr double kLn2 = 0.69314718055994530942;

// P[Pois(mean) >= i] for i = 0..n, summed top-down from the pmf so the
// tails stay nonnegative.
std::vector<double> poisson_tails(double mean, int n) {
    int ext = n + 8;
    std::vector<double> pmf;
    pmf.reserve(static_cast<std::size_t>(ext) + 1);
    double p = std::exp(-mean);
    pmf.push_back(p);
    for (int k = 1; k <= ext || (pmf.back() > 1e-280 && k < n + 400); ++k) {
        p *= mean / k;
        pmf.push_back(p);
        if (k >= ext && p < 1e-280) break;
    }
    std::vector<double> tails(static_cast<std::size_t>(n) + 1, 0.0);
    double run = 0.0;
    for (int k = static_cast<int>(pmf.size()) - 1; k >= 0; --k) {
        run += pmf[static_cast<std::size_t>(k)];
        if (k <= n) tails[static_cast<std::size_t>(k)] = run;
    }
    return tails;
}

std::vector<double> log_factorials(int n) {
    std::vector<double> lf(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 2; k <= n; ++k) lf[k] = lf[k - 1] + std::log(static_cast<double>(k));
    return lf;
}

struct SeriesParams {
    double a1, k1; // rate constant and K-factor of the first link
    double a2, k2; // dito, second link (possibly power-rescaled)
};

/*
 * E[ln(1 + rho Z)], Z = min of the two gamma-series gains. Term-by-term
 * integration of the product-of-survivals CDF gives
 *
 *   D = sum_{i,j} T1(i) T2(j) C(i+j,i) (a1/b)^i (a2/b)^j R(i+j),
 *
 * b = a1+a2, R(m) = e^{b/rho} E_{m+1}(b/rho), T = Poisson suffix tails.
 * Tails and binomial weights are in [0,1] and R(m) <= R(0) ~ ln(rho/b), so
 * nothing overflows at any SNR. Accumulated by anti-diagonals with
 * compensated summation.
 */
double d_min_derived(const SeriesParams& p, const SeriesControl& control, double rho,
                     SeriesDiag* diag) {
    const int order = control.max_order;
    const double beta = p.a1 + p.a2;
    const double x = beta / rho;

    const auto t1 = poisson_tails(p.k1, order + 1);
    const auto t2 = poisson_tails(p.k2, order + 1);
    if (t1[order + 1] > control.tail_tolerance || t2[order + 1] > control.tail_tolerance)
        throw series_truncation_error("d_of_rho: Poisson tail above tolerance at max_order",
                                      order, std::max(t1[order + 1], t2[order + 1]));

    const auto scaled_en = exponential_integral_scaled_ladder(2 * order, x);
    const auto lf = log_factorials(2 * order);
    const double lp1 = std::log(p.a1 / beta);
    const double lp2 = std::log(p.a2 / beta);

    CompensatedSum acc;
    double last_layer = 0.0;
    for (int m = 0; m <= 2 * order; ++m) {
        CompensatedSum layer;
        const int i_lo = m > order ? m - order : 0;
        const int i_hi = m < order ? m : order;
        for (int i = i_lo; i <= i_hi; ++i) {
            const int j = m - i;
            const double w = std::exp(lf[m] - lf[i] - lf[j] + i * lp1 + j * lp2);
            layer.add(t1[i] * t2[j] * w);
        }
        last_layer = layer.value() * scaled_en[m];
        acc.add(last_layer);
    }
    if (diag) {
        // Order past which both Poisson tails are below tolerance.
        int used = order;
        for (int i = 0; i <= order; ++i) {
            if (t1[i] <= control.tail_tolerance && t2[i] <= control.tail_tolerance) {
                used = i;
                break;
            }
        }
        diag->order_used = used;
        diag->last_term = std::abs(last_layer);
    }
    return acc.value();
}

/*
 * The literal coefficient pattern of the source series: (i+j) in place of
 * (i+j)!, and a1^i + a2^j in place of the product. Kept only so the
 * discrepancy against the integral path can be measured.
 */
double d_min_printed(const SeriesParams& p, const SeriesControl& control, double rho) {
    const int order = control.max_order;
    const double beta = p.a1 + p.a2;
    const double x = beta / rho;

    const auto t1 = poisson_tails(p.k1, order + 1);
    const auto t2 = poisson_tails(p.k2, order + 1);
    const auto scaled_en = exponential_integral_scaled_ladder(2 * order, x);
    const auto lf = log_factorials(2 * order);
    const double la1 = std::log(p.a1);
    const double la2 = std::log(p.a2);
    const double lb = std::log(beta);

    CompensatedSum acc;
    for (int i = 0; i <= order; ++i) {
        for (int j = 0; j <= order; ++j) {
            const int m = i + j;
            const double common = -lf[i] - lf[j] - m * lb;
            const double term = static_cast<double>(m) *
                                (std::exp(i * la1 + common) + std::exp(j * la2 + common)) *
                                scaled_en[m];
            acc.add(t1[i] * t2[j] * term);
        }
    }
    return acc.value();
}

double d_min_series(const SeriesParams& p, const SeriesControl& control, double rho,
                    SeriesDiag* diag, SeriesVariant variant) {
    if (!(rho > 0.0)) throw std::domain_error("d_of_rho: rho must be > 0");
    return variant == SeriesVariant::derived ? d_min_derived(p, control, rho, diag)
                                             : d_min_printed(p, control, rho);
}

} // namespace

double d_of_rho(const RicianLink& x_link, const RicianLink& y_link,
                const SeriesControl& control, double rho, SeriesDiag* diag,
                SeriesVariant variant) {
    SeriesParams p{x_link.rate(), x_link.k_factor, y_link.rate(), y_link.k_factor};
    return d_min_series(p, control, rho, diag, variant);
}

double c_x1_exact(const RicianLink& x_link, const RicianLink& y_link, double p_n1,
                  const SeriesControl& control, double rho, SeriesDiag* diag,
                  SeriesVariant variant) {
    if (!(p_n1 > 0.0) || !(p_n1 < 1.0))
        throw std::domain_error("c_x1_exact: p_n1 must be in (0, 1)");
    SeriesDiag d1, d2;
    const double full = d_of_rho(x_link, y_link, control, rho, &d1, variant);
    const double reduced = d_of_rho(x_link, y_link, control, p_n1 * rho, &d2, variant);
    if (diag) {
        diag->order_used = std::max(d1.order_used, d2.order_used);
        diag->last_term = std::max(d1.last_term, d2.last_term);
    }
    return 0.5 * (full - reduced) / kLn2;
}

double c_x2_exact(const RicianLink& w_link, const RicianLink& y_link, double p_n1,
                  const SeriesControl& control, double rho, SeriesDiag* diag,
                  SeriesVariant variant) {
    if (!(p_n1 > 0.0 && p_n1 <= 1.0))
        throw std::domain_error("c_x2_exact: p_n1 must be in (0, 1]");
    // p_n1 |h_y|^2 is Rician with the same K and power p_n1 * Omega.
    const RicianLink scaled_y(y_link.k_factor, p_n1 * y_link.omega);
    const double d = d_of_rho(w_link, scaled_y, control, rho, diag, variant);
    return 0.5 * d / kLn2;
}

double c_x3_exact(const OamChannel& oam, double p_n2, double rho) {
    return 0.5 * std::log1p(oam_sinr(oam, p_n2, rho)) / kLn2;
}

ClosedFormTerms closed_form_terms(const OperatingPoint& point, const SeriesControl& control) {
    const double rho = point.rho();
    const auto& L = point.links;
    ClosedFormTerms t;
    SeriesDiag d_full, d_reduced, d_far;
    const double full = d_of_rho(L.bs_ceu, L.bs_ccu, control, rho, &d_full);
    const double reduced = d_of_rho(L.bs_ceu, L.bs_ccu, control, point.power.p_n1 * rho, &d_reduced);
    t.c_x1_exact = 0.5 * (full - reduced) / kLn2;
    t.c_x2_exact = c_x2_exact(L.ccu_ceu, L.bs_ccu, point.power.p_n1, control, rho, &d_far);
    t.c_x3_exact = c_x3_exact(point.oam, point.power.p_n2, rho);
    t.effective_orders = {d_full.order_used, d_reduced.order_used, d_far.order_used};
    t.residuals = {d_full.last_term, d_reduced.last_term, d_far.last_term};
    return t;
}

SchemeCapacities exact_scheme_capacities(const OperatingPoint& point,
                                         const SeriesControl& control) {
    const auto t = closed_form_terms(point, control);
    SchemeCapacities out;
    out.c_ccu = t.c_x1_exact + t.c_x3_exact;
    out.c_ceu = t.c_x2_exact;
    out.c_sum = out.c_ccu + out.c_ceu;
    return out;
}

SchemeCapacities exact_scheme_capacities(Scheme scheme, const OperatingPoint& point,
                                         const SeriesControl& control) {
    if (scheme == Scheme::cnoma_oam) return exact_scheme_capacities(point, control);
    if (scheme == Scheme::oma_oam)
        throw std::invalid_argument("exact_scheme_capacities: no closed form for the TDMA scheme");

    const double rho = point.rho();
    const double p_n = point.power.baseline_pn(point.baseline);
    const auto& L = point.links;
    SchemeCapacities out;
    out.c_ccu = c_x1_exact(L.bs_ceu, L.bs_ccu, p_n, control, rho);
    out.c_ceu = c_x2_exact(L.ccu_ceu, L.bs_ccu, p_n, control, rho);
    out.c_sum = out.c_ccu + out.c_ceu;
    return out;
}

} // namespace cnoma
