#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cnoma/experiments.hpp"
#include "cnoma/mc_sim.hpp"

#include <cmath>
#include <limits>

using namespace cnoma;

namespace {

bool same_caps(const SchemeCapacities& a, const SchemeCapacities& b) {
    return a.c_ccu == b.c_ccu && a.c_ceu == b.c_ceu && a.c_sum == b.c_sum &&
           a.se_ccu == b.se_ccu && a.se_ceu == b.se_ceu && a.se_sum == b.se_sum;
}

} // namespace

TEST_CASE("power allocation invariants") {
    CHECK_NOTHROW(PowerAllocation(0.2, 0.2, 0.6));
    CHECK_THROWS_AS(PowerAllocation(0.4, 0.4, 0.3, 1.1), std::invalid_argument); // p_f too small
    CHECK_THROWS_AS(PowerAllocation(0.3, 0.3, 0.4), std::invalid_argument);      // p_f not dominant
    CHECK_THROWS_AS(PowerAllocation(0.2, 0.2, 0.7), std::invalid_argument);      // sum != total
    CHECK_THROWS_AS(PowerAllocation(-0.1, 0.3, 0.8), std::invalid_argument);
    const PowerAllocation p(0.15, 0.25, 0.6);
    CHECK(p.baseline_pn(BaselineSplit::reuse_oam_power) == doctest::Approx(0.4));
    CHECK(p.baseline_pn(BaselineSplit::match_pn1) == doctest::Approx(0.15));
}

TEST_CASE("instant capacities: hand-computed point") {
    const auto oam = build_oam_channel(1, 1);
    const PowerAllocation power(0.2, 0.2, 0.6);
    const Gains g{1.0, 1.0, 1.0};

    const auto c = instant_cnoma_oam(g, oam, power, 1.0);
    CHECK(c.c_x1 == doctest::Approx(0.5 * (1.0 - std::log2(1.2))).epsilon(1e-13));
    CHECK(c.c_x2 == doctest::Approx(0.5 * std::log2(1.2)).epsilon(1e-13));
    CHECK(c.c_x3 == doctest::Approx(0.5 * std::log2(1.2)).epsilon(1e-13));

    const auto o = instant_oma_oam(g, oam, 1.0, 1.0);
    CHECK(o.c_x1 == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(o.c_x2 == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(o.c_x3 == doctest::Approx(0.25).epsilon(1e-13));

    const auto b = instant_cnoma_baseline(g, 0.2, 1.0);
    CHECK(b.c_x1 == doctest::Approx(c.c_x1).epsilon(1e-15));
    CHECK(b.c_x2 == doctest::Approx(c.c_x2).epsilon(1e-15));
    CHECK(b.c_x3 == 0.0);
}

TEST_CASE("instant capacities: edges") {
    const auto oam = build_oam_channel(1, 4);
    const PowerAllocation power(0.2, 0.2, 0.6);
    const Gains g{2.0, 0.7, 3.0};

    // rho = 0 silences everything
    const auto z = instant_cnoma_oam(g, oam, power, 0.0);
    CHECK(z.c_x1 == 0.0);
    CHECK(z.c_x2 == 0.0);
    CHECK(z.c_x3 == 0.0);
    const auto zo = instant_oma_oam(g, oam, 0.0, 1.0);
    CHECK(zo.c_x1 == 0.0);
    CHECK(zo.c_x2 == 0.0);
    CHECK(zo.c_x3 == 0.0);

    // degenerate allocation p_n1 = 0: all direct-slot power on the far user
    const PowerAllocation degenerate(0.0, 0.2, 0.8);
    const auto d = instant_cnoma_oam(g, oam, degenerate, 2.0);
    CHECK(d.c_x1 == doctest::Approx(0.5 * std::log2(1.0 + 0.7 * 2.0)).epsilon(1e-13));
    CHECK(d.c_x2 == 0.0);

    CHECK(instant_relay_sinr(0.0, 5.0) == 0.0);
    CHECK(instant_relay_sinr(1.0, 1.0) == doctest::Approx(1.0));
    CHECK(instant_relay_sinr(36.0, 10.0) == doctest::Approx(360.0));
    CHECK_THROWS_AS(instant_relay_sinr(-1.0, 1.0), std::domain_error);
}

TEST_CASE("instant sinrs: diagnostic forms") {
    const auto oam = build_oam_channel(1, 1);
    const PowerAllocation power(0.2, 0.2, 0.6);
    const Gains g{2.0, 0.5, 3.0};
    const double rho = 10.0;
    const auto s = instant_sinrs(g, oam, power, rho);
    CHECK(s.ccu_x1 == doctest::Approx(rho * 2.0 * 0.2));
    CHECK(s.ccu_x2 == doctest::Approx(rho * 2.0 * 0.6 / (rho * 2.0 * 0.2 + 1.0)));
    CHECK(s.ceu_x2 == doctest::Approx(rho * 0.5 * 0.6 / (rho * 0.5 * 0.2 + 1.0)));
    CHECK(s.ccu_x3 == doctest::Approx(0.2 * rho));
    CHECK(s.relay_x2 == doctest::Approx(rho * 3.0));
}

TEST_CASE("ergodic: single trial equals the instant evaluation") {
    auto point = reference_operating_point(15.0, 4);
    const auto caps = ergodic_capacities(Scheme::cnoma_oam, point, 1, 99);

    auto stream = RandomStream::for_trial(99, 0);
    Gains g;
    g.g1 = sample_power_gain(point.links.bs_ccu, stream);
    g.g2 = sample_power_gain(point.links.bs_ceu, stream);
    g.g3 = sample_power_gain(point.links.ccu_ceu, stream);
    const auto inst = instant_cnoma_oam(g, point.oam, point.power, point.rho());
    CHECK(caps.c_ccu == doctest::Approx(inst.c_x1 + inst.c_x3).epsilon(1e-15));
    CHECK(caps.c_ceu == doctest::Approx(inst.c_x2).epsilon(1e-15));
    CHECK(caps.c_sum == caps.c_ccu + caps.c_ceu);
}

TEST_CASE("ergodic: thread count does not change results") {
    auto point = reference_operating_point(15.0, 4);
    const long trials = 200'000; // spans several blocks
    for (Scheme s : {Scheme::cnoma_oam, Scheme::cnoma, Scheme::oma_oam}) {
        const auto one = ergodic_capacities(s, point, trials, 5, 1);
        const auto four = ergodic_capacities(s, point, trials, 5, 4);
        const auto legion = ergodic_capacities(s, point, trials, 5, 16);
        CHECK(same_caps(one, four));
        CHECK(same_caps(one, legion));
    }
}

TEST_CASE("ergodic: CEU equality against the matched baseline") {
    auto point = reference_operating_point(10.0, 4);
    point.baseline = BaselineSplit::match_pn1;
    const auto prop = ergodic_capacities(Scheme::cnoma_oam, point, 100'000, 3);
    const auto conv = ergodic_capacities(Scheme::cnoma, point, 100'000, 3);
    CHECK(prop.c_ceu == conv.c_ceu); // bit-exact: same draws, same formula
    // and the whole sum differs by exactly the OAM term
    const double c_x3 = c_x3_exact(point.oam, point.power.p_n2, point.rho());
    CHECK(prop.c_sum - conv.c_sum == doctest::Approx(c_x3).epsilon(1e-12));
}

TEST_CASE("ergodic: capacity grows with SNR and trials stabilize") {
    auto point = reference_operating_point(0.0, 4);
    double prev = -1.0;
    for (double rho_db : {0.0, 5.0, 10.0, 20.0, 30.0}) {
        point.rho_db = rho_db;
        const auto caps = ergodic_capacities(Scheme::cnoma_oam, point, 50'000, 17);
        CHECK(caps.c_sum > prev);
        CHECK(caps.c_ccu >= 0.0);
        CHECK(caps.c_ceu >= 0.0);
        prev = caps.c_sum;
    }

    point.rho_db = 15.0;
    const auto half = ergodic_capacities(Scheme::cnoma_oam, point, 250'000, 23);
    const auto full = ergodic_capacities(Scheme::cnoma_oam, point, 500'000, 23);
    CHECK(std::abs(full.c_sum - half.c_sum) < 3.0 * half.se_sum);
    CHECK_THROWS_AS(ergodic_capacities(Scheme::cnoma, point, 0, 1), std::invalid_argument);
    point.rho_db = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(ergodic_capacities(Scheme::cnoma, point, 10, 1), std::invalid_argument);
}

TEST_CASE("per-draw capacities are nonnegative") {
    auto point = reference_operating_point(15.0, 4);
    const double rho = point.rho();
    for (long t = 0; t < 20'000; ++t) {
        auto stream = RandomStream::for_trial(1234, static_cast<std::uint64_t>(t));
        Gains g;
        g.g1 = sample_power_gain(point.links.bs_ccu, stream);
        g.g2 = sample_power_gain(point.links.bs_ceu, stream);
        g.g3 = sample_power_gain(point.links.ccu_ceu, stream);
        const auto c = instant_cnoma_oam(g, point.oam, point.power, rho);
        REQUIRE(c.c_x1 >= 0.0);
        REQUIRE(c.c_x2 >= 0.0);
        REQUIRE(c.c_x3 >= 0.0);
    }
}
