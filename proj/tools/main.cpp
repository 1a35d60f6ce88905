// Command-line front end: configure an operating point, run single-point
// simulations or sweeps, and emit the result table as CSV.

#include "cnoma/experiments.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitUsage = 2;   // bad flags, bad config file, infeasible allocation
constexpr int kExitNumeric = 3; // series truncation, overflow, non-convergence

struct PointOptions {
    double rho_db = 15.0;
    double p_f = 0.6;
    std::optional<double> p_n1;
    std::optional<double> p_n2;
    double total = 1.0;
    double k_ccu = 5.0, k_ceu = 2.0, k_relay = 5.0;
    double omega_ccu = 36.0, omega_ceu = 9.0, omega_relay = 36.0;
    int antennas = 4;
    int oam_mode = 1;
    std::string baseline = "reuse";
    int series_order = 40;
    double series_tol = 1e-10;
    long trials = 1'000'000;
    std::uint64_t seed = 1;
    int threads = 0;
};

void add_point_options(CLI::App* cmd, PointOptions& o) {
    cmd->add_option("--rho-db", o.rho_db, "Transmit SNR in dB")->capture_default_str();
    cmd->add_option("--pf", o.p_f, "Power share of the far-user symbol")->capture_default_str();
    cmd->add_option("--pn1", o.p_n1, "Power share of the near-user NOMA symbol (default (P-pf)/2)");
    cmd->add_option("--pn2", o.p_n2, "Power share of the OAM beam (default (P-pf)/2)");
    cmd->add_option("--total", o.total, "Total transmit power P")->capture_default_str();
    cmd->add_option("--k-ccu", o.k_ccu, "Rician K, BS->CCU link")->capture_default_str();
    cmd->add_option("--k-ceu", o.k_ceu, "Rician K, BS->CEU link")->capture_default_str();
    cmd->add_option("--k-relay", o.k_relay, "Rician K, CCU->CEU link")->capture_default_str();
    cmd->add_option("--omega-ccu", o.omega_ccu, "Average power, BS->CCU link")->capture_default_str();
    cmd->add_option("--omega-ceu", o.omega_ceu, "Average power, BS->CEU link")->capture_default_str();
    cmd->add_option("--omega-relay", o.omega_relay, "Average power, CCU->CEU link")->capture_default_str();
    cmd->add_option("--antennas", o.antennas, "OAM receive antennas M")->capture_default_str();
    cmd->add_option("--oam-mode", o.oam_mode, "OAM mode index l")->capture_default_str();
    cmd->add_option("--baseline", o.baseline,
                    "Conventional-CNOMA split: reuse (p_N = pn1+pn2) or matched (p_N = pn1)")
        ->check(CLI::IsMember({"reuse", "matched"}))
        ->capture_default_str();
    cmd->add_option("--series-order", o.series_order, "Series truncation order")->capture_default_str();
    cmd->add_option("--series-tol", o.series_tol, "Series tail tolerance")->capture_default_str();
    cmd->add_option("--trials", o.trials, "Monte Carlo trials")->capture_default_str();
    cmd->add_option("--seed", o.seed, "Monte Carlo seed")->capture_default_str();
    cmd->add_option("--threads", o.threads, "Worker cap, 0 = hardware")->capture_default_str();
}

cnoma::OperatingPoint make_point(const PointOptions& o) {
    const double residual = (o.total - o.p_f) / 2.0;
    const double p_n1 = o.p_n1.value_or(residual);
    const double p_n2 = o.p_n2.value_or(o.total - o.p_f - p_n1);
    return cnoma::OperatingPoint{
        o.rho_db,
        cnoma::LinkTriple(cnoma::RicianLink(o.k_ccu, o.omega_ccu),
                          cnoma::RicianLink(o.k_ceu, o.omega_ceu),
                          cnoma::RicianLink(o.k_relay, o.omega_relay)),
        cnoma::build_oam_channel(o.oam_mode, o.antennas),
        cnoma::PowerAllocation(p_n1, p_n2, o.p_f, o.total),
        o.baseline == "matched" ? cnoma::BaselineSplit::match_pn1
                                : cnoma::BaselineSplit::reuse_oam_power,
    };
}

cnoma::SeriesControl make_series(const PointOptions& o) {
    return cnoma::SeriesControl{o.series_order, o.series_tol};
}

cnoma::Scheme parse_scheme(const std::string& s) {
    if (s == "cnoma-oam") return cnoma::Scheme::cnoma_oam;
    if (s == "cnoma") return cnoma::Scheme::cnoma;
    if (s == "oma-oam") return cnoma::Scheme::oma_oam;
    throw CLI::ValidationError("--scheme", "unknown scheme: " + s);
}

std::vector<double> parse_grid(const std::string& text) {
    // start:step:stop or a comma list
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        double start = 0, step = 0, stop = 0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &start, &step, &stop) != 3 || step <= 0)
            throw CLI::ValidationError("--grid", "expected start:step:stop with step > 0");
        for (double v = start; v <= stop + 1e-12; v += step) grid.push_back(v);
        return grid;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) grid.push_back(std::stod(item));
    return grid;
}

void emit(const cnoma::ResultTable& table, const std::string& out_path,
          const std::string& summary) {
    if (out_path.empty()) {
        std::cerr << summary;
        cnoma::write_csv(table, std::cout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    cnoma::write_csv(table, out);
    std::cout << summary;
    std::cout << "wrote " << table.rows.size() << " rows to " << out_path << "\n";
}

std::string summarize(const cnoma::ResultTable& table) {
    std::ostringstream os;
    for (const auto& row : table.rows) {
        char buf[256];
        if (row.effective_order < 0) {
            os << "  " << cnoma::to_string(row.scheme) << " " << cnoma::to_string(row.method)
               << " @ " << row.variable << ": " << row.note << "\n";
            continue;
        }
        std::snprintf(buf, sizeof(buf),
                      "  %-9s %-11s @ %-7.4g  C_CCU=%.6f  C_CEU=%.6f  C_sum=%.6f",
                      cnoma::to_string(row.scheme).c_str(), cnoma::to_string(row.method).c_str(),
                      row.variable, row.c_ccu, row.c_ceu, row.c_sum);
        os << buf;
        if (row.method == cnoma::Method::monte_carlo) {
            std::snprintf(buf, sizeof(buf), "  (se=%.2e)", row.std_err);
            os << buf;
        }
        os << "\n";
    }
    return os.str();
}

int run(int argc, char** argv) {
    CLI::App app{"Ergodic-capacity toolkit for cooperative NOMA downlinks with an OAM side beam"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "INI config file (give before the subcommand); keys live in a [simulate] "
                   "or [sweep] section, flags override them");
    app.allow_config_extras(false);

    PointOptions sim_opts;
    auto* sim = app.add_subcommand("simulate", "Evaluate one operating point");
    sim->configurable();
    add_point_options(sim, sim_opts);
    std::string sim_scheme = "cnoma-oam";
    std::string sim_method = "both";
    std::string sim_out;
    sim->add_option("--scheme", sim_scheme, "cnoma-oam | cnoma | oma-oam")
        ->check(CLI::IsMember({"cnoma-oam", "cnoma", "oma-oam"}))
        ->capture_default_str();
    sim->add_option("--method", sim_method, "mc | cf | both")
        ->check(CLI::IsMember({"mc", "cf", "both"}))
        ->capture_default_str();
    sim->add_option("--out", sim_out, "CSV output path (default: CSV on stdout)");

    PointOptions sweep_opts;
    auto* sw = app.add_subcommand("sweep", "Sweep a variable over a grid");
    sw->configurable();
    add_point_options(sw, sweep_opts);
    int figure = 0;
    std::string variable = "rho-db";
    std::string grid_text = "0:2.5:30";
    std::string schemes_text = "cnoma-oam,cnoma,oma-oam";
    std::string methods_text = "mc,cf";
    std::string coupling = "noma-total";
    std::string sweep_out;
    sw->add_option("--figure", figure, "Preset 3|4|5|6 (overrides variable/grid/schemes)")
        ->check(CLI::Range(3, 6));
    sw->add_option("--variable", variable, "pn2 | rho-db")
        ->check(CLI::IsMember({"pn2", "rho-db"}))
        ->capture_default_str();
    sw->add_option("--grid", grid_text, "start:step:stop or comma list")->capture_default_str();
    sw->add_option("--schemes", schemes_text, "Comma list of schemes")->capture_default_str();
    sw->add_option("--methods", methods_text, "Comma list of mc,cf")->capture_default_str();
    sw->add_option("--coupling", coupling,
                   "p_n2 sweep coupling: noma-total | fixed-pn1 | tied")
        ->check(CLI::IsMember({"noma-total", "fixed-pn1", "tied"}))
        ->capture_default_str();
    sw->add_option("--out", sweep_out, "CSV output path (default: CSV on stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (sim->parsed()) {
            const auto point = make_point(sim_opts);
            const auto series = make_series(sim_opts);
            cnoma::SweepSpec spec;
            spec.variable = cnoma::SweepVariable::rho_db;
            spec.grid = {sim_opts.rho_db};
            spec.fixed = point;
            spec.schemes = {parse_scheme(sim_scheme)};
            spec.methods.clear();
            if (sim_method != "cf") spec.methods.push_back(cnoma::Method::monte_carlo);
            if (sim_method != "mc") spec.methods.push_back(cnoma::Method::closed_form);
            spec.trials = sim_opts.trials;
            spec.seed = sim_opts.seed;
            spec.threads = sim_opts.threads;
            spec.series = series;
            const auto table = cnoma::sweep(spec);
            emit(table, sim_out, summarize(table));
            return 0;
        }

        const auto point = make_point(sweep_opts);
        const auto series = make_series(sweep_opts);
        cnoma::SweepSpec spec;
        spec.fixed = point;
        spec.trials = sweep_opts.trials;
        spec.seed = sweep_opts.seed;
        spec.threads = sweep_opts.threads;
        spec.series = series;
        if (figure != 0) {
            auto base = point;
            if (sw->count("--baseline") == 0)
                base.baseline = cnoma::BaselineSplit::match_pn1; // the comparator the presets pin
            spec = cnoma::figure_preset(figure, base, sweep_opts.trials, sweep_opts.seed);
            spec.threads = sweep_opts.threads;
            spec.series = series;
        } else {
            spec.variable = variable == "pn2" ? cnoma::SweepVariable::p_n2
                                              : cnoma::SweepVariable::rho_db;
            spec.grid = parse_grid(grid_text);
            spec.schemes.clear();
            std::stringstream ss(schemes_text);
            std::string item;
            while (std::getline(ss, item, ',')) spec.schemes.push_back(parse_scheme(item));
            spec.methods.clear();
            std::stringstream ms(methods_text);
            while (std::getline(ms, item, ',')) {
                if (item == "mc") spec.methods.push_back(cnoma::Method::monte_carlo);
                else if (item == "cf") spec.methods.push_back(cnoma::Method::closed_form);
                else throw CLI::ValidationError("--methods", "unknown method: " + item);
            }
            if (coupling == "fixed-pn1") spec.coupling = cnoma::Pn2Coupling::fixed_pn1;
            else if (coupling == "tied") spec.coupling = cnoma::Pn2Coupling::tied_symmetric;
        }

        const auto table = cnoma::sweep(spec);
        std::string summary = summarize(table);
        if (spec.variable == cnoma::SweepVariable::p_n2 &&
            spec.coupling == cnoma::Pn2Coupling::noma_total) {
            const auto best = cnoma::find_optimal_pn2(
                spec.fixed.rho_db, spec.fixed.power.p_f,
                spec.grid.size() > 1 ? spec.grid[1] - spec.grid[0] : spec.grid[0],
                spec.fixed, spec.series);
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "optimal p_n2 (closed form): %.4g  C_sum=%.6f%s%s\n", best.p_n2,
                          best.c_sum, best.warning.empty() ? "" : "  ! ",
                          best.warning.c_str());
            summary += buf;
        }
        emit(table, sweep_out, summary);
        return 0;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cnoma::numeric_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::overflow_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    return run(argc, argv);
}
