#pragma once

#include "cnoma/mc_sim.hpp"

#include <array>

namespace cnoma {

/// Which transcription of the double capacity series to evaluate.
/// `derived` is the authoritative one, obtained by integrating the gamma
/// series CDF term by term through E[ln(1+rho Z)] = rho int (1-F)/(1+rho z) dz;
/// `printed` keeps the literal coefficient pattern of the source formula,
/// which fails the integral cross-check by a large margin and exists only
/// for comparison.
enum class SeriesVariant { derived, printed };

/// Exact per-symbol capacities and series diagnostics for one operating
/// point (orders/residuals indexed as: D(rho), D(p_n1 rho), far-user series).
struct ClosedFormTerms {
    double c_x1_exact = 0.0;
    double c_x2_exact = 0.0;
    double c_x3_exact = 0.0;
    std::array<int, 3> effective_orders{};
    std::array<double, 3> residuals{};
};

/// D(rho) = E[ln(1 + rho min(|h_x|^2, |h_y|^2))], evaluated as
///   sum_{i,j} P[Pois(K_x)>=i] P[Pois(K_y)>=j] C(i+j,i)
///            (a_x/b)^i (a_y/b)^j e^{b/rho} E_{i+j+1}(b/rho),   b = a_x+a_y.
/// Tails and binomial weights lie in [0,1] and the scaled exponential
/// integral grows only like ln(rho), so the sum cannot overflow at any SNR.
double d_of_rho(const RicianLink& x_link, const RicianLink& y_link,
                const SeriesControl& control, double rho,
                SeriesDiag* diag = nullptr,
                SeriesVariant variant = SeriesVariant::derived);

/// c_x1 = (D(rho) - D(p_n1 rho)) / (2 ln 2), 0 < p_n1 < 1.
double c_x1_exact(const RicianLink& x_link, const RicianLink& y_link, double p_n1,
                  const SeriesControl& control, double rho,
                  SeriesDiag* diag = nullptr,
                  SeriesVariant variant = SeriesVariant::derived);

/// Far-user capacity: same series with the relay link and the y link
/// rescaled by the power split (a_y -> a_y / p_n1), over 2 ln 2.
double c_x2_exact(const RicianLink& w_link, const RicianLink& y_link, double p_n1,
                  const SeriesControl& control, double rho,
                  SeriesDiag* diag = nullptr,
                  SeriesVariant variant = SeriesVariant::derived);

/// OAM branch: deterministic 1/2 log2(1 + p_n2 rho mu_1^2), no series.
double c_x3_exact(const OamChannel& oam, double p_n2, double rho);

ClosedFormTerms closed_form_terms(const OperatingPoint& point, const SeriesControl& control);

/// Assembles C_CCU = c_x1 + c_x3, C_CEU = c_x2 for the OAM scheme.
SchemeCapacities exact_scheme_capacities(const OperatingPoint& point,
                                         const SeriesControl& control);

/// Closed form for a given scheme; the TDMA comparator has none and is
/// rejected with std::invalid_argument.
SchemeCapacities exact_scheme_capacities(Scheme scheme, const OperatingPoint& point,
                                         const SeriesControl& control);

} // namespace cnoma
