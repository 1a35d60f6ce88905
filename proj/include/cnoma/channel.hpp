#pragma once

#include "cnoma/errors.hpp"
#include "cnoma/rng.hpp"

namespace cnoma {

/// One Rician fading link described by its K-factor and average power
/// gain Omega = E[|h|^2].
struct RicianLink {
    RicianLink(double k_factor, double omega);

    double k_factor;
    double omega;

    /// Series rate constant a = (1+K)/Omega.
    double rate() const { return (1.0 + k_factor) / omega; }
};

/// The three fading links of the downlink: BS->CCU carries the NOMA
/// superposition, BS->CEU the direct far-user copy, CCU->CEU the relayed
/// copy. The far link must be the weaker one.
struct LinkTriple {
    LinkTriple(RicianLink bs_ccu, RicianLink bs_ceu, RicianLink ccu_ceu);

    RicianLink bs_ccu;   // h1
    RicianLink bs_ceu;   // h2
    RicianLink ccu_ceu;  // h3
};

/// Truncation policy for the infinite capacity/CDF series.
struct SeriesControl {
    int max_order = 40;            // cap per sum index
    double tail_tolerance = 1e-10; // relative bound on the neglected tail
};

/// What a series evaluation actually did.
struct SeriesDiag {
    int order_used = 0;
    double last_term = 0.0;
};

/// Draws one power gain |h|^2. The sample is
///   |h|^2 = Omega/(K+1) * |sqrt(K) + u|^2,  u ~ CN(0,1),
/// so E[|h|^2] = Omega and the LOS/scatter ratio is K.
double sample_power_gain(const RicianLink& link, RandomStream& stream);

/// Survival P(|h|^2 > z) as the truncated series
///   sum_n pois(n; K) * Qhat(n+1, a z),
/// the normalized form of the gamma-series CDF (Qhat is the regularized
/// upper gamma). Throws series_truncation_error if the Poisson tail bound
/// is still above tolerance at max_order.
double survival_power_gain(const RicianLink& link, double z,
                           const SeriesControl& control = {}, SeriesDiag* diag = nullptr);

/// CDF P(|h|^2 <= z), complement of the series survival.
double cdf_power_gain(const RicianLink& link, double z,
                      const SeriesControl& control = {}, SeriesDiag* diag = nullptr);

/// CDF of z1 = min(|h_x|^2, |h_y|^2) for independent links; the double
/// gamma series factors into the product of the two survivals.
double cdf_min_pair(const RicianLink& x_link, const RicianLink& y_link,
                    const SeriesControl& control, double z1, SeriesDiag* diag = nullptr);

/// CDF of z2 = min(|h_w|^2, p_n1 |h_y|^2); the power split only rescales
/// the y-link gamma arguments (a_y -> a_y / p_n1).
double cdf_scaled_min(const RicianLink& w_link, const RicianLink& y_link, double p_n1,
                      const SeriesControl& control, double z2, SeriesDiag* diag = nullptr);

} // namespace cnoma
