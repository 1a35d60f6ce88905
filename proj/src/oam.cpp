#include "cnoma/oam.hpp"

#include <cmath>
#include <stdexcept>

namespace cnoma {

OamChannel build_oam_channel(int mode, int antennas) {
    if (antennas < 1) throw std::invalid_argument("build_oam_channel: antennas must be >= 1");
    OamChannel ch;
    ch.mode = mode;
    ch.antennas = antennas;
    ch.entries.reserve(antennas);
    const double m_inv = 1.0 / antennas;
    for (int m = 1; m <= antennas; ++m) {
        const double phase = -2.0 * M_PI * (m - 1) * mode;
        ch.entries.emplace_back(std::polar(m_inv, phase));
    }
    // Vector channel: the only nonzero singular value is the Euclidean norm,
    // |entry| = 1/M for all M entries -> mu_1 = 1/sqrt(M).
    ch.singular_values.assign(antennas, 0.0);
    ch.singular_values[0] = std::sqrt(m_inv);
    return ch;
}

double oam_sinr(const OamChannel& channel, double p_n2, double rho) {
    if (!(p_n2 >= 0.0) || !(p_n2 <= 1.0))
        throw std::domain_error("oam_sinr: p_n2 must be in [0, 1]");
    if (!(rho >= 0.0)) throw std::domain_error("oam_sinr: rho must be >= 0");
    const double mu1 = channel.principal_singular_value();
    return p_n2 * rho * mu1 * mu1;
}

} // namespace cnoma
