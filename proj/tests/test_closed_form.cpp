#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cnoma/closed_form.hpp"
#include "cnoma/experiments.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace cnoma;

namespace {

const RicianLink kCeu(2.0, 9.0);   // x: BS->CEU
const RicianLink kCcu(5.0, 36.0);  // y: BS->CCU
const RicianLink kRelay(5.0, 36.0); // w: CCU->CEU

double d_oracle(const RicianLink& x, const RicianLink& y, double rho) {
    const SeriesControl control;
    auto survival = [&](double z) {
        return (1.0 - cdf_power_gain(x, z, control)) * (1.0 - cdf_power_gain(y, z, control));
    };
    return oracle::capacity_integral(survival, rho);
}

double d2_oracle(const RicianLink& w, const RicianLink& y, double p_n1, double rho) {
    const SeriesControl control;
    auto survival = [&](double z) { return 1.0 - cdf_scaled_min(w, y, p_n1, control, z); };
    return oracle::capacity_integral(survival, rho);
}

} // namespace

TEST_CASE("d_of_rho: limits and monotonicity") {
    const SeriesControl control;
    CHECK(d_of_rho(kCeu, kCcu, control, 1e-9) < 1e-7); // -> 0 as rho -> 0+
    double prev = 0.0;
    for (double rho_db = 0.0; rho_db <= 30.0; rho_db += 5.0) {
        const double d = d_of_rho(kCeu, kCcu, control, std::pow(10.0, rho_db / 10.0));
        CHECK(d > prev);
        prev = d;
    }
    CHECK_THROWS_AS(d_of_rho(kCeu, kCcu, control, 0.0), std::domain_error);
}

TEST_CASE("d_of_rho: integral oracle across the SNR sweep") {
    const SeriesControl control;
    for (double rho_db = 0.0; rho_db <= 30.0; rho_db += 5.0) {
        const double rho = std::pow(10.0, rho_db / 10.0);
        const double series = d_of_rho(kCeu, kCcu, control, rho);
        const double via_integral = d_oracle(kCeu, kCcu, rho);
        INFO("rho_db=", rho_db, " series=", series, " integral=", via_integral);
        CHECK(std::abs(series - via_integral) / via_integral < 1e-8);
    }
    SeriesDiag diag;
    d_of_rho(kCeu, kCcu, control, 31.62, &diag);
    CHECK(diag.order_used > 5);
    CHECK(diag.order_used <= control.max_order);
}

TEST_CASE("c_x1_exact: degenerate split, positivity, Monte Carlo cross-check") {
    const SeriesControl control;
    const double rho = std::pow(10.0, 1.5);
    CHECK(std::abs(c_x1_exact(kCeu, kCcu, 1.0 - 1e-12, control, rho)) < 1e-9);
    for (double p : {0.05, 0.2, 0.5, 0.9})
        CHECK(c_x1_exact(kCeu, kCcu, p, control, rho) > 0.0);
    CHECK_THROWS_AS(c_x1_exact(kCeu, kCcu, 0.0, control, rho), std::domain_error);
    CHECK_THROWS_AS(c_x1_exact(kCeu, kCcu, 1.5, control, rho), std::domain_error);

    auto point = reference_operating_point(15.0, 4);
    const auto mc = ergodic_capacities(Scheme::cnoma_oam, point, 400'000, 8);
    const auto terms = closed_form_terms(point, control);
    const double mc_cx1 = mc.c_ccu - terms.c_x3_exact; // the OAM constant is shared
    CHECK(std::abs(terms.c_x1_exact - mc_cx1) / mc_cx1 < 0.02);
}

TEST_CASE("c_x2_exact: scaling identity, growth in p_n1, oracle") {
    const SeriesControl control;
    const double rho = std::pow(10.0, 1.5);
    // p_n1 = 1: plain min(|h_y|^2, |h_w|^2) capacity
    const double unscaled = 0.5 * d_of_rho(kRelay, kCcu, control, rho) / std::log(2.0);
    CHECK(c_x2_exact(kRelay, kCcu, 1.0, control, rho) ==
          doctest::Approx(unscaled).epsilon(1e-12));

    double prev = 0.0;
    for (double p : {0.05, 0.1, 0.2, 0.4, 0.8}) {
        const double c = c_x2_exact(kRelay, kCcu, p, control, rho);
        CHECK(c > prev);
        prev = c;
    }

    for (double rho_db : {0.0, 15.0, 30.0}) {
        const double r = std::pow(10.0, rho_db / 10.0);
        const double series = c_x2_exact(kRelay, kCcu, 0.2, control, r);
        const double via_integral = 0.5 * d2_oracle(kRelay, kCcu, 0.2, r) / std::log(2.0);
        INFO("rho_db=", rho_db);
        CHECK(std::abs(series - via_integral) / via_integral < 1e-8);
    }
}

TEST_CASE("c_x3_exact: deterministic OAM term") {
    const auto one = build_oam_channel(1, 1);
    CHECK(c_x3_exact(one, 0.0, 10.0) == 0.0);
    CHECK(c_x3_exact(one, 0.2, std::pow(10.0, 1.5)) ==
          doctest::Approx(1.4363705875067829).epsilon(1e-13));
    // equals the per-draw Monte Carlo term exactly (no fading on the beam)
    const auto four = build_oam_channel(1, 4);
    const PowerAllocation power(0.2, 0.2, 0.6);
    const Gains g{1.0, 2.0, 3.0};
    const auto inst = instant_cnoma_oam(g, four, power, 31.622776601683793);
    CHECK(c_x3_exact(four, 0.2, 31.622776601683793) == doctest::Approx(inst.c_x3).epsilon(1e-15));
}

TEST_CASE("exact_scheme_capacities: additivity and SNR monotonicity") {
    const SeriesControl control;
    auto point = reference_operating_point(15.0, 4);
    const auto caps = exact_scheme_capacities(point, control);
    CHECK(caps.c_sum == caps.c_ccu + caps.c_ceu);
    CHECK(caps.se_ccu == 0.0);
    CHECK(caps.se_sum == 0.0);

    double prev = 0.0;
    for (double rho_db = 0.0; rho_db <= 30.0; rho_db += 5.0) {
        point.rho_db = rho_db;
        const auto c = exact_scheme_capacities(point, control);
        CHECK(c.c_sum > prev);
        CHECK(c.c_ccu >= 0.0);
        CHECK(c.c_ceu >= 0.0);
        prev = c.c_sum;
    }
    CHECK_THROWS_AS(exact_scheme_capacities(Scheme::oma_oam, point, control),
                    std::invalid_argument);

    // matched-split comparator: closed forms share the NOMA terms
    point.rho_db = 15.0;
    point.baseline = BaselineSplit::match_pn1;
    const auto conv = exact_scheme_capacities(Scheme::cnoma, point, control);
    const auto prop = exact_scheme_capacities(point, control);
    const double c_x3 = c_x3_exact(point.oam, point.power.p_n2, point.rho());
    CHECK(prop.c_sum - conv.c_sum == doctest::Approx(c_x3).epsilon(1e-12));
}

TEST_CASE("series convergence: order 40 vs 60") {
    auto point = reference_operating_point(15.0, 4);
    const SeriesControl forty{40, 1e-10};
    const SeriesControl sixty{60, 1e-10};
    const auto a = exact_scheme_capacities(point, forty);
    const auto b = exact_scheme_capacities(point, sixty);
    CHECK(std::abs(a.c_sum - b.c_sum) / b.c_sum < 1e-8);
    CHECK(std::abs(a.c_ccu - b.c_ccu) / b.c_ccu < 1e-8);
    CHECK(std::abs(a.c_ceu - b.c_ceu) / b.c_ceu < 1e-8);

    // too tight an order cap must be signaled, not absorbed
    const SeriesControl tiny{3, 1e-10};
    CHECK_THROWS_AS(exact_scheme_capacities(point, tiny), series_truncation_error);
}

TEST_CASE("printed transcription fails the integral cross-check") {
    const SeriesControl control;
    const double rho = std::pow(10.0, 1.5);
    const double derived = d_of_rho(kCeu, kCcu, control, rho);
    const double printed = d_of_rho(kCeu, kCcu, control, rho, nullptr, SeriesVariant::printed);
    const double truth = d_oracle(kCeu, kCcu, rho);
    CHECK(std::abs(derived - truth) / truth < 1e-8);
    CHECK(std::abs(printed - truth) / truth > 0.5);
}
