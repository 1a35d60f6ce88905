#pragma once

#include "cnoma/closed_form.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace cnoma {

enum class Method { monte_carlo, closed_form };
enum class SweepVariable { p_n2, rho_db };

/// How a p_n2 sweep couples the other power shares:
///   noma_total     p_n1 = total - p_f - p_n2 (p_f fixed; NOMA-side budget conserved)
///   fixed_pn1      p_n1, p_f taken from the template; total stretches with p_n2
///   tied_symmetric p_n1 = p_n2, p_f = total - 2 p_n2
enum class Pn2Coupling { noma_total, fixed_pn1, tied_symmetric };

/// Default operating point used by the presets (K = 5/2/5, Omega = 36/9/36,
/// p = 0.2/0.2/0.6, M = 4, mode 1, matched-split comparator).
OperatingPoint reference_operating_point(double rho_db = 15.0, int antennas = 4);

struct SweepSpec {
    SweepVariable variable = SweepVariable::rho_db;
    std::vector<double> grid;
    OperatingPoint fixed = reference_operating_point();
    std::vector<Scheme> schemes{Scheme::cnoma_oam, Scheme::cnoma, Scheme::oma_oam};
    std::vector<Method> methods{Method::monte_carlo, Method::closed_form};
    long trials = 1'000'000;
    std::uint64_t seed = 1;
    int threads = 0;
    Pn2Coupling coupling = Pn2Coupling::noma_total;
    SeriesControl series;
};

/// One sweep result. Rows whose operating point is infeasible (or whose
/// scheme/method pair has no evaluator) carry NaN capacities and
/// effective_order == -1 with the reason in `note`; they are never dropped.
struct ResultRow {
    double variable = 0.0;
    Scheme scheme = Scheme::cnoma_oam;
    Method method = Method::monte_carlo;
    double c_ccu = 0.0;
    double c_ceu = 0.0;
    double c_sum = 0.0;
    double std_err = 0.0;
    int effective_order = 0;
    std::string note;
};

struct ResultTable {
    std::vector<ResultRow> rows;
};

/// Evaluates every (grid value, scheme, method) combination in grid order.
/// Deterministic for a fixed spec (same seed -> byte-identical CSV).
ResultTable sweep(const SweepSpec& spec);

struct OptimalPn2 {
    double p_n2 = 0.0;
    double c_sum = 0.0;
    bool on_boundary = false;
    std::string warning;
};

/// Grid search of the closed-form sum capacity over p_n2 under
/// p_n1 = total - p_f - p_n2. Ties break toward smaller p_n2. Throws
/// std::invalid_argument when no feasible allocation exists at all.
OptimalPn2 find_optimal_pn2(double rho_db, double p_f, double grid_step,
                            const OperatingPoint& fixed, const SeriesControl& control = {});

/// Canned sweep specs reproducing the reference experiments:
/// 3 = sum capacity vs p_n2 at 15 dB, 4/5/6 = capacity vs SNR for all
/// schemes (the three differ only in which columns one reads).
SweepSpec figure_preset(int figure, const OperatingPoint& base, long trials,
                        std::uint64_t seed);

std::string to_string(Scheme scheme);
std::string to_string(Method method);

/// CSV with the fixed header
/// variable,scheme,method,c_ccu,c_ceu,c_sum,std_err,effective_order
/// and full-precision scientific formatting.
void write_csv(const ResultTable& table, std::ostream& out);

} // namespace cnoma
