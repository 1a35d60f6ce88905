#pragma once

#include <complex>
#include <vector>

namespace cnoma {

/// Deterministic LOS channel of one OAM beam received on M antennas:
/// entry m is e^{-j 2 pi (m-1) l} / M. Modeled as an M-element vector (one
/// transmit port), so exactly one singular value is nonzero. The full
/// spectrum is kept so a matrix-valued variant can sit behind the same type.
struct OamChannel {
    int mode = 1;
    int antennas = 1;
    std::vector<std::complex<double>> entries;
    std::vector<double> singular_values; // nonincreasing, size == antennas

    double principal_singular_value() const { return singular_values.front(); }
};

/// Builds the mode-l channel over `antennas` receive antennas.
/// Rejects antennas < 1.
OamChannel build_oam_channel(int mode, int antennas);

/// SNR of the OAM branch: p_n2 * rho * mu_1^2 (interference-free beam).
double oam_sinr(const OamChannel& channel, double p_n2, double rho);

} // namespace cnoma
