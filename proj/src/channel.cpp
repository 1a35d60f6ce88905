#include "cnoma/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace cnoma {

RicianLink::RicianLink(double k_factor, double omega)
    : k_factor(k_factor), omega(omega) {
    if (!(k_factor >= 0.0)) throw std::invalid_argument("RicianLink: K must be >= 0");
    if (!(omega > 0.0)) throw std::invalid_argument("RicianLink: omega must be > 0");
}

LinkTriple::LinkTriple(RicianLink bs_ccu, RicianLink bs_ceu, RicianLink ccu_ceu)
    : bs_ccu(bs_ccu), bs_ceu(bs_ceu), ccu_ceu(ccu_ceu) {
    if (!(bs_ceu.omega < bs_ccu.omega))
        throw std::invalid_argument("LinkTriple: far link must be weaker (omega_ceu < omega_ccu)");
}

double sample_power_gain(const RicianLink& link, RandomStream& stream) {
    const auto [n1, n2] = stream.next_normal_pair();
    const double inv_sqrt2 = 0.70710678118654752440;
    const double re = std::sqrt(link.k_factor) + n1 * inv_sqrt2;
    const double im = n2 * inv_sqrt2;
    return link.omega / (link.k_factor + 1.0) * (re * re + im * im);
}

double survival_power_gain(const RicianLink& link, double z,
                           const SeriesControl& control, SeriesDiag* diag) {
    if (!(z >= 0.0)) throw std::domain_error("survival_power_gain: z must be >= 0");
    if (z == 0.0) {
        if (diag) *diag = SeriesDiag{0, 0.0};
        return 1.0;
    }
    const double k = link.k_factor;
    const double az = link.rate() * z;

    // sum_n pois(n; K) * Qhat(n+1, a z); both ladders grow by one factor per
    // step, all terms positive.
    double pois = std::exp(-k);
    double erlang_term = std::exp(-az);
    double qhat = erlang_term;
    double sum = pois * qhat;
    double last = sum;
    int n = 0;
    for (n = 1; n <= control.max_order; ++n) {
        pois *= k / n;
        erlang_term *= az / n;
        qhat += erlang_term;
        last = pois * qhat;
        sum += last;
        if (static_cast<double>(n) + 1.0 > k) {
            // Erlang factors are <= 1, so the Poisson tail bounds the error.
            // Relative to the running sum, with an absolute floor of the
            // tolerance itself on the probability scale (deep tails).
            const double r = k / (n + 1);
            const double tail_bound = pois * r / (1.0 - r);
            if (tail_bound <= control.tail_tolerance * (1.0 + sum)) break;
        }
    }
    if (diag) {
        diag->order_used = n > control.max_order ? control.max_order : n;
        diag->last_term = last;
    }
    if (n > control.max_order)
        throw series_truncation_error("survival_power_gain: tail bound not met",
                                      control.max_order, last);
    return sum < 1.0 ? sum : 1.0;
}

double cdf_power_gain(const RicianLink& link, double z,
                      const SeriesControl& control, SeriesDiag* diag) {
    return 1.0 - survival_power_gain(link, z, control, diag);
}

double cdf_min_pair(const RicianLink& x_link, const RicianLink& y_link,
                    const SeriesControl& control, double z1, SeriesDiag* diag) {
    if (!(z1 >= 0.0)) throw std::domain_error("cdf_min_pair: z must be >= 0");
    // The double gamma series over (n,k) is the product of the two per-link
    // survival series with a rectangular truncation.
    SeriesDiag dx, dy;
    const double sx = survival_power_gain(x_link, z1, control, &dx);
    const double sy = survival_power_gain(y_link, z1, control, &dy);
    if (diag) {
        diag->order_used = dx.order_used > dy.order_used ? dx.order_used : dy.order_used;
        diag->last_term = dx.last_term > dy.last_term ? dx.last_term : dy.last_term;
    }
    return 1.0 - sx * sy;
}

double cdf_scaled_min(const RicianLink& w_link, const RicianLink& y_link, double p_n1,
                      const SeriesControl& control, double z2, SeriesDiag* diag) {
    if (!(p_n1 > 0.0) || !(p_n1 <= 1.0))
        throw std::domain_error("cdf_scaled_min: p_n1 must be in (0, 1]");
    if (!(z2 >= 0.0)) throw std::domain_error("cdf_scaled_min: z must be >= 0");
    SeriesDiag dw, dy;
    const double sw = survival_power_gain(w_link, z2, control, &dw);
    const double sy = survival_power_gain(y_link, z2 / p_n1, control, &dy);
    if (diag) {
        diag->order_used = dw.order_used > dy.order_used ? dw.order_used : dy.order_used;
        diag->last_term = dw.last_term > dy.last_term ? dw.last_term : dy.last_term;
    }
    return 1.0 - sw * sy;
}

} // namespace cnoma
