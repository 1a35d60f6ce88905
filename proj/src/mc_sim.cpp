#include "cnoma/mc_sim.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace cnoma {
namespace {

double log2_1p(double v) {
    return std::log1p(v) * 1.4426950408889634074; // log2(e)
}

// Fixed block size: block boundaries (not worker count) define the
// reduction tree, which is what keeps results thread-count invariant.
constexpr long kBlock = 65536;

struct Moments {
    CompensatedSum s1, s2;       // sums of c_x1-like and c_x2-like terms
    CompensatedSum q1, q2, q12;  // second moments and cross moment
};

} // namespace

PowerAllocation::PowerAllocation(double p_n1, double p_n2, double p_f, double total)
    : p_n1(p_n1), p_n2(p_n2), p_f(p_f), total(total) {
    if (!(p_n1 >= 0.0) || !(p_n2 >= 0.0) || !(p_f >= 0.0) || !(total > 0.0))
        throw std::invalid_argument("PowerAllocation: components must be >= 0, total > 0");
    if (!(p_f > p_n1 + p_n2))
        throw std::invalid_argument("PowerAllocation: requires p_f > p_n1 + p_n2");
    if (std::abs(p_n1 + p_n2 + p_f - total) > 1e-9 * total)
        throw std::invalid_argument("PowerAllocation: p_n1 + p_n2 + p_f must equal total");
}

double OperatingPoint::rho() const {
    return std::pow(10.0, rho_db / 10.0);
}

InstantSinrs instant_sinrs(const Gains& gains, const OamChannel& oam,
                           const PowerAllocation& power, double rho) {
    const double mu1 = oam.principal_singular_value();
    InstantSinrs s;
    s.ccu_x1 = rho * gains.g1 * power.p_n1;
    s.ccu_x2 = rho * gains.g1 * power.p_f / (rho * gains.g1 * power.p_n1 + 1.0);
    s.ceu_x2 = rho * gains.g2 * power.p_f / (rho * gains.g2 * power.p_n1 + 1.0);
    s.ccu_x3 = power.p_n2 * rho * mu1 * mu1;
    s.relay_x2 = rho * gains.g3 * power.total;
    return s;
}

InstantCapacities instant_cnoma_oam(const Gains& gains, const OamChannel& oam,
                                    const PowerAllocation& power, double rho) {
    const double z1 = std::min(gains.g2, gains.g1);
    const double z2 = std::min(power.p_n1 * gains.g1, gains.g3);
    InstantCapacities c;
    c.c_x1 = 0.5 * (log2_1p(z1 * rho) - log2_1p(z1 * power.p_n1 * rho));
    c.c_x2 = 0.5 * log2_1p(z2 * rho);
    c.c_x3 = 0.5 * log2_1p(oam_sinr(oam, power.p_n2, rho));
    return c;
}

double instant_relay_sinr(double g3, double rho, double total_power) {
    if (!(g3 >= 0.0)) throw std::domain_error("instant_relay_sinr: g3 must be >= 0");
    return rho * g3 * total_power;
}

InstantCapacities instant_oma_oam(const Gains& gains, const OamChannel& oam,
                                  double rho, double total_power) {
    const double mu1 = oam.principal_singular_value();
    const double z1 = std::min(gains.g2, gains.g1);
    const double z2 = std::min(total_power * gains.g1, gains.g3);
    InstantCapacities c;
    c.c_x1 = 0.25 * log2_1p(z1 * total_power * rho);
    c.c_x2 = 0.25 * log2_1p(z2 * rho);
    c.c_x3 = 0.25 * log2_1p(total_power * rho * mu1 * mu1);
    return c;
}

InstantCapacities instant_cnoma_baseline(const Gains& gains, double p_n, double rho) {
    const double z1 = std::min(gains.g2, gains.g1);
    const double z2 = std::min(p_n * gains.g1, gains.g3);
    InstantCapacities c;
    c.c_x1 = 0.5 * (log2_1p(z1 * rho) - log2_1p(z1 * p_n * rho));
    c.c_x2 = 0.5 * log2_1p(z2 * rho);
    c.c_x3 = 0.0;
    return c;
}

SchemeCapacities ergodic_capacities(Scheme scheme, const OperatingPoint& point,
                                    long trials, std::uint64_t seed, int threads) {
    if (trials < 1) throw std::invalid_argument("ergodic_capacities: trials must be >= 1");
    if (!std::isfinite(point.rho_db))
        throw std::invalid_argument("ergodic_capacities: rho_db must be finite");
    const double rho = point.rho();
    const double p_n = point.power.baseline_pn(point.baseline);

    const long nblocks = (trials + kBlock - 1) / kBlock;
    std::vector<Moments> partial(static_cast<std::size_t>(nblocks));

    auto run_block = [&](long b) {
        const long lo = b * kBlock;
        const long hi = std::min(trials, lo + kBlock);
        Moments m;
        for (long t = lo; t < hi; ++t) {
            auto stream = RandomStream::for_trial(seed, static_cast<std::uint64_t>(t));
            Gains g;
            g.g1 = sample_power_gain(point.links.bs_ccu, stream);
            g.g2 = sample_power_gain(point.links.bs_ceu, stream);
            g.g3 = sample_power_gain(point.links.ccu_ceu, stream);

            InstantCapacities c{};
            switch (scheme) {
            case Scheme::cnoma_oam:
                c = instant_cnoma_oam(g, point.oam, point.power, rho);
                break;
            case Scheme::cnoma:
                c = instant_cnoma_baseline(g, p_n, rho);
                break;
            case Scheme::oma_oam:
                c = instant_oma_oam(g, point.oam, rho, point.power.total);
                break;
            }
            m.s1.add(c.c_x1);
            m.s2.add(c.c_x2);
            m.q1.add(c.c_x1 * c.c_x1);
            m.q2.add(c.c_x2 * c.c_x2);
            m.q12.add(c.c_x1 * c.c_x2);
        }
        partial[static_cast<std::size_t>(b)] = m;
    };

    int workers = threads == 0 ? static_cast<int>(std::thread::hardware_concurrency()) : threads;
    if (workers < 1) workers = 1;
    if (workers == 1 || nblocks == 1) {
        for (long b = 0; b < nblocks; ++b) run_block(b);
    } else {
        std::atomic<long> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (long b = next.fetch_add(1); b < nblocks; b = next.fetch_add(1))
                    run_block(b);
            });
        for (auto& th : pool) th.join();
    }

    // Combine block partials in index order.
    CompensatedSum s1, s2, q1, q2, q12;
    for (const auto& m : partial) {
        s1.add(m.s1.value());
        s2.add(m.s2.value());
        q1.add(m.q1.value());
        q2.add(m.q2.value());
        q12.add(m.q12.value());
    }
    const double n = static_cast<double>(trials);
    const double mean1 = s1.value() / n;
    const double mean2 = s2.value() / n;
    const double var1 = std::max(0.0, q1.value() / n - mean1 * mean1);
    const double var2 = std::max(0.0, q2.value() / n - mean2 * mean2);
    const double cov = q12.value() / n - mean1 * mean2;

    // The OAM term has no fading: it enters the mean exactly, not the error.
    double c_x3 = 0.0;
    if (scheme == Scheme::cnoma_oam)
        c_x3 = 0.5 * log2_1p(oam_sinr(point.oam, point.power.p_n2, rho));
    else if (scheme == Scheme::oma_oam) {
        const double mu1 = point.oam.principal_singular_value();
        c_x3 = 0.25 * log2_1p(point.power.total * rho * mu1 * mu1);
    }

    SchemeCapacities out;
    out.c_ccu = mean1 + c_x3;
    out.c_ceu = mean2;
    out.c_sum = out.c_ccu + out.c_ceu;
    out.se_ccu = std::sqrt(var1 / n);
    out.se_ceu = std::sqrt(var2 / n);
    out.se_sum = std::sqrt(std::max(0.0, var1 + var2 + 2.0 * cov) / n);
    return out;
}

} // namespace cnoma
