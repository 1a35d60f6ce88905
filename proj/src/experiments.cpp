#include "cnoma/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace cnoma {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

OperatingPoint point_for(const SweepSpec& spec, double value) {
    OperatingPoint pt = spec.fixed;
    if (spec.variable == SweepVariable::rho_db) {
        pt.rho_db = value;
        return pt;
    }
    const double total = spec.fixed.power.total;
    double p_n1 = 0.0, p_f = 0.0, p_total = total;
    switch (spec.coupling) {
    case Pn2Coupling::noma_total:
        p_f = spec.fixed.power.p_f;
        p_n1 = total - p_f - value;
        break;
    case Pn2Coupling::fixed_pn1:
        p_n1 = spec.fixed.power.p_n1;
        p_f = spec.fixed.power.p_f;
        p_total = p_n1 + value + p_f;
        break;
    case Pn2Coupling::tied_symmetric:
        p_n1 = value;
        p_f = total - 2.0 * value;
        break;
    }
    pt.power = PowerAllocation(p_n1, value, p_f, p_total); // throws if infeasible
    return pt;
}

ResultRow closed_form_row(Scheme scheme, const OperatingPoint& pt, const SeriesControl& control) {
    ResultRow row;
    if (scheme == Scheme::oma_oam) {
        row.c_ccu = row.c_ceu = row.c_sum = row.std_err = kNan;
        row.effective_order = -1;
        row.note = "unsupported: no closed form for oma-oam";
        return row;
    }
    if (scheme == Scheme::cnoma_oam) {
        const auto terms = closed_form_terms(pt, control);
        row.c_ccu = terms.c_x1_exact + terms.c_x3_exact;
        row.c_ceu = terms.c_x2_exact;
        row.c_sum = row.c_ccu + row.c_ceu;
        row.effective_order = *std::max_element(terms.effective_orders.begin(),
                                                terms.effective_orders.end());
        return row;
    }
    const double rho = pt.rho();
    const double p_n = pt.power.baseline_pn(pt.baseline);
    SeriesDiag d1, d2;
    row.c_ccu = c_x1_exact(pt.links.bs_ceu, pt.links.bs_ccu, p_n, control, rho, &d1);
    row.c_ceu = c_x2_exact(pt.links.ccu_ceu, pt.links.bs_ccu, p_n, control, rho, &d2);
    row.c_sum = row.c_ccu + row.c_ceu;
    row.effective_order = std::max(d1.order_used, d2.order_used);
    return row;
}

ResultRow monte_carlo_row(Scheme scheme, const OperatingPoint& pt, const SweepSpec& spec) {
    const auto caps = ergodic_capacities(scheme, pt, spec.trials, spec.seed, spec.threads);
    ResultRow row;
    row.c_ccu = caps.c_ccu;
    row.c_ceu = caps.c_ceu;
    row.c_sum = caps.c_sum;
    row.std_err = caps.se_sum;
    row.effective_order = 0;
    return row;
}

} // namespace

ResultTable sweep(const SweepSpec& spec) {
    if (spec.grid.empty()) throw std::invalid_argument("sweep: grid must be nonempty");
    for (std::size_t i = 1; i < spec.grid.size(); ++i)
        if (!(spec.grid[i] > spec.grid[i - 1]))
            throw std::invalid_argument("sweep: grid must be strictly increasing");
    if (spec.schemes.empty() || spec.methods.empty())
        throw std::invalid_argument("sweep: schemes and methods must be nonempty");

    ResultTable table;
    for (double value : spec.grid) {
        bool feasible = true;
        OperatingPoint pt = spec.fixed;
        std::string reason;
        try {
            pt = point_for(spec, value);
        } catch (const std::invalid_argument& e) {
            feasible = false;
            reason = e.what();
        }
        for (Scheme scheme : spec.schemes) {
            for (Method method : spec.methods) {
                ResultRow row;
                if (!feasible) {
                    row.c_ccu = row.c_ceu = row.c_sum = row.std_err = kNan;
                    row.effective_order = -1;
                    row.note = "infeasible: " + reason;
                } else if (method == Method::closed_form) {
                    row = closed_form_row(scheme, pt, spec.series);
                } else {
                    row = monte_carlo_row(scheme, pt, spec);
                }
                row.variable = value;
                row.scheme = scheme;
                row.method = method;
                table.rows.push_back(std::move(row));
            }
        }
    }
    return table;
}

OptimalPn2 find_optimal_pn2(double rho_db, double p_f, double grid_step,
                            const OperatingPoint& fixed, const SeriesControl& control) {
    const double total = fixed.power.total;
    if (!(p_f > 0.0) || !(p_f < total))
        throw std::invalid_argument("find_optimal_pn2: need 0 < p_f < total");
    if (!(grid_step > 0.0))
        throw std::invalid_argument("find_optimal_pn2: grid_step must be > 0");
    const double budget = total - p_f; // p_n1 + p_n2
    if (!(p_f > budget))
        throw std::invalid_argument("find_optimal_pn2: empty feasible grid (p_f <= total/2)");

    OperatingPoint pt = fixed;
    pt.rho_db = rho_db;

    auto c_sum_at = [&](double p_n2) {
        pt.power = PowerAllocation(budget - p_n2, p_n2, p_f, total);
        return exact_scheme_capacities(pt, control).c_sum;
    };

    std::vector<double> grid;
    for (int k = 1; k * grid_step < budget - 1e-12; ++k) grid.push_back(k * grid_step);

    OptimalPn2 best;
    if (grid.empty()) {
        // Feasible interval narrower than one step: report its midpoint.
        best.p_n2 = 0.5 * budget;
        best.c_sum = c_sum_at(best.p_n2);
        best.on_boundary = true;
        best.warning = "feasible region narrower than grid step; evaluated midpoint";
        return best;
    }
    best.p_n2 = grid.front();
    best.c_sum = c_sum_at(grid.front());
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double c = c_sum_at(grid[i]);
        if (c > best.c_sum) { // strict: ties keep the smaller p_n2
            best.c_sum = c;
            best.p_n2 = grid[i];
        }
    }
    if (best.p_n2 == grid.front() || best.p_n2 == grid.back()) {
        best.on_boundary = true;
        best.warning = "optimum sits on the feasible-grid boundary";
    }
    return best;
}

OperatingPoint reference_operating_point(double rho_db, int antennas) {
    return OperatingPoint{
        rho_db,
        LinkTriple(RicianLink(5.0, 36.0),  // BS->CCU
                   RicianLink(2.0, 9.0),   // BS->CEU
                   RicianLink(5.0, 36.0)), // CCU->CEU
        build_oam_channel(1, antennas),
        PowerAllocation(0.2, 0.2, 0.6),
        BaselineSplit::match_pn1,
    };
}

SweepSpec figure_preset(int figure, const OperatingPoint& base, long trials,
                        std::uint64_t seed) {
    SweepSpec spec;
    spec.fixed = base;
    spec.trials = trials;
    spec.seed = seed;
    switch (figure) {
    case 3:
        spec.variable = SweepVariable::p_n2;
        for (int k = 1; k <= 7; ++k) spec.grid.push_back(0.05 * k);
        spec.fixed.rho_db = 15.0;
        spec.schemes = {Scheme::cnoma_oam};
        spec.coupling = Pn2Coupling::noma_total;
        break;
    case 4:
    case 5:
    case 6:
        spec.variable = SweepVariable::rho_db;
        for (int k = 0; k <= 12; ++k) spec.grid.push_back(2.5 * k);
        break;
    default:
        throw std::invalid_argument("figure_preset: figure must be 3..6");
    }
    return spec;
}

std::string to_string(Scheme scheme) {
    switch (scheme) {
    case Scheme::cnoma_oam: return "cnoma-oam";
    case Scheme::cnoma: return "cnoma";
    case Scheme::oma_oam: return "oma-oam";
    }
    return "?";
}

std::string to_string(Method method) {
    return method == Method::monte_carlo ? "monte_carlo" : "closed_form";
}

void write_csv(const ResultTable& table, std::ostream& out) {
    out << "variable,scheme,method,c_ccu,c_ceu,c_sum,std_err,effective_order\n";
    char buf[512];
    for (const auto& row : table.rows) {
        std::snprintf(buf, sizeof(buf), "%.17e,%s,%s,%.17e,%.17e,%.17e,%.17e,%d\n",
                      row.variable, to_string(row.scheme).c_str(),
                      to_string(row.method).c_str(), row.c_ccu, row.c_ceu, row.c_sum,
                      row.std_err, row.effective_order);
        out << buf;
    }
}

} // namespace cnoma
