#pragma once

#include "cnoma/channel.hpp"
#include "cnoma/oam.hpp"

#include <cstdint>

namespace cnoma {

enum class Scheme { cnoma_oam, cnoma, oma_oam };

/// How the conventional-CNOMA comparator spends the OAM power budget:
/// reuse_oam_power folds it back into the near-user symbol (p_N = p_n1 + p_n2,
/// total power conserved); match_pn1 keeps the near-user split identical to
/// the OAM scheme (p_N = p_n1), which is the split under which the two
/// schemes share their CCU/CEU NOMA terms draw for draw.
enum class BaselineSplit { reuse_oam_power, match_pn1 };

/// Power split (p_n1: CCU NOMA symbol, p_n2: OAM beam, p_f: CEU symbol).
/// Invariants: all components >= 0, p_n1 + p_n2 + p_f == total, and the
/// far user takes the dominant share: p_f > p_n1 + p_n2.
struct PowerAllocation {
    PowerAllocation(double p_n1, double p_n2, double p_f, double total = 1.0);

    double p_n1;
    double p_n2;
    double p_f;
    double total;

    double baseline_pn(BaselineSplit split) const {
        return split == BaselineSplit::reuse_oam_power ? p_n1 + p_n2 : p_n1;
    }
};

/// Everything that fixes one operating point of the downlink.
struct OperatingPoint {
    double rho_db;
    LinkTriple links;
    OamChannel oam;
    PowerAllocation power;
    BaselineSplit baseline = BaselineSplit::reuse_oam_power;

    double rho() const;
};

/// Per-scheme ergodic capacities in bits/s/Hz with Monte Carlo standard
/// errors (zero for closed-form results). c_sum == c_ccu + c_ceu by
/// construction.
struct SchemeCapacities {
    double c_ccu = 0.0;
    double c_ceu = 0.0;
    double c_sum = 0.0;
    double se_ccu = 0.0;
    double se_ceu = 0.0;
    double se_sum = 0.0;
};

/// One draw of the three fading power gains.
struct Gains {
    double g1; // BS->CCU
    double g2; // BS->CEU
    double g3; // CCU->CEU
};

struct InstantCapacities {
    double c_x1;
    double c_x2;
    double c_x3;
};

/// Received SINRs of the individual symbols (diagnostic view; the capacity
/// path below uses the min-form capacities directly).
struct InstantSinrs {
    double ccu_x1;   // rho g1 p_n1
    double ccu_x2;   // rho g1 p_f / (rho g1 p_n1 + 1)
    double ceu_x2;   // rho g2 p_f / (rho g2 p_n1 + 1)
    double ccu_x3;   // p_n2 rho mu_1^2
    double relay_x2; // rho g3 P
};

InstantSinrs instant_sinrs(const Gains& gains, const OamChannel& oam,
                           const PowerAllocation& power, double rho);

/// Two-slot cooperative scheme with the OAM side beam:
///   c_x1 = 1/2 [log2(1 + min(g2,g1) rho) - log2(1 + min(g2,g1) p_n1 rho)]
///   c_x2 = 1/2 log2(1 + min(p_n1 g1, g3) rho)
///   c_x3 = 1/2 log2(1 + p_n2 rho mu_1^2)
InstantCapacities instant_cnoma_oam(const Gains& gains, const OamChannel& oam,
                                    const PowerAllocation& power, double rho);

/// SINR of the relayed far-user symbol in slot two (full transmit power).
double instant_relay_sinr(double g3, double rho, double total_power = 1.0);

/// Four-slot TDMA comparator, full power per slot, 1/4 prelog each.
InstantCapacities instant_oma_oam(const Gains& gains, const OamChannel& oam,
                                  double rho, double total_power = 1.0);

/// Conventional cooperative NOMA comparator (no OAM branch); p_n is the
/// near-user share of the superposition.
InstantCapacities instant_cnoma_baseline(const Gains& gains, double p_n, double rho);

/// Fading-averaged capacities over `trials` draws. Deterministic for a
/// given (seed, trials) regardless of `threads` (counter-based substreams,
/// fixed-size blocks, compensated block reduction). threads == 0 means
/// hardware concurrency.
SchemeCapacities ergodic_capacities(Scheme scheme, const OperatingPoint& point,
                                    long trials, std::uint64_t seed, int threads = 1);

} // namespace cnoma
