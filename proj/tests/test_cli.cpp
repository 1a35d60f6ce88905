#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path dir = fs::temp_directory_path();
    const fs::path out = dir / ("cnoma_cli_out_" + std::to_string(counter) + ".txt");
    const fs::path err = dir / ("cnoma_cli_err_" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = std::string(CNOMA_CLI_PATH) + " " + args + " >" + out.string() +
                            " 2>" + err.string();
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = (raw >= 256) ? raw / 256 : raw; // WEXITSTATUS without <sys/wait.h>
    r.out = slurp(out);
    r.err = slurp(err);
    fs::remove(out);
    fs::remove(err);
    return r;
}

} // namespace

TEST_CASE("cli: help and usage errors") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("simulate --help").exit_code == 0);
    const auto bad = run_cli("simulate --no-such-flag");
    CHECK(bad.exit_code == 2);
    const auto none = run_cli("");
    CHECK(none.exit_code == 2); // a subcommand is required
}

TEST_CASE("cli: simulate single point") {
    const auto r = run_cli(
        "simulate --scheme cnoma-oam --rho-db 15 --pf 0.6 --pn1 0.2 --pn2 0.2 "
        "--trials 20000 --seed 7");
    CHECK(r.exit_code == 0);
    // CSV on stdout (no --out), summary on stderr
    CHECK(r.out.rfind("variable,scheme,method,", 0) == 0);
    CHECK(r.out.find("cnoma-oam,monte_carlo") != std::string::npos);
    CHECK(r.out.find("cnoma-oam,closed_form") != std::string::npos);
    CHECK(r.err.find("C_sum=") != std::string::npos);
}

TEST_CASE("cli: infeasible allocation is a usage error") {
    const auto r = run_cli("simulate --pf 0.3 --pn1 0.4 --pn2 0.4 --trials 100");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("p_f > p_n1 + p_n2") != std::string::npos);
}

TEST_CASE("cli: series truncation failure is a numeric error") {
    const auto r = run_cli("simulate --method cf --series-order 2 --trials 100");
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("numeric failure") != std::string::npos);
}

TEST_CASE("cli: sweep to file, reruns byte-identical") {
    const fs::path csv1 = fs::temp_directory_path() / "cnoma_sweep_1.csv";
    const fs::path csv2 = fs::temp_directory_path() / "cnoma_sweep_2.csv";
    const std::string args = "sweep --variable rho-db --grid 0:15:30 --schemes cnoma-oam,cnoma "
                             "--methods mc --trials 30000 --seed 11 --baseline matched --out ";
    const auto r1 = run_cli(args + csv1.string());
    const auto r2 = run_cli(args + csv2.string());
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    CHECK(r1.out.find("wrote 6 rows") != std::string::npos);
    const auto a = slurp(csv1);
    const auto b = slurp(csv2);
    CHECK(!a.empty());
    CHECK(a == b);
    fs::remove(csv1);
    fs::remove(csv2);
}

TEST_CASE("cli: figure preset 3 annotates the argmax") {
    const fs::path csv = fs::temp_directory_path() / "cnoma_fig3.csv";
    const auto r = run_cli("sweep --figure 3 --trials 5000 --seed 2 --out " + csv.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("optimal p_n2 (closed form):") != std::string::npos);
    const auto body = slurp(csv);
    // 7 grid points x 1 scheme x 2 methods
    int lines = 0;
    for (char c : body)
        if (c == '\n') ++lines;
    CHECK(lines == 15);
    fs::remove(csv);
}

TEST_CASE("cli: config file keys with flag override") {
    const fs::path cfg = fs::temp_directory_path() / "cnoma_test.cfg";
    {
        std::ofstream out(cfg);
        out << "# reference point, tiny run\n";
        out << "[simulate]\n";
        out << "rho-db=10\n";
        out << "trials=5000\n";
        out << "seed=3\n";
    }
    const auto base = run_cli("--config " + cfg.string() + " simulate --method cf");
    CHECK(base.exit_code == 0);
    CHECK(base.out.find("1.00000000000000000e+01,") != std::string::npos);
    // command line wins over the config file
    const auto over = run_cli("--config " + cfg.string() + " simulate --method cf --rho-db 20");
    CHECK(over.exit_code == 0);
    CHECK(over.out.find("2.00000000000000000e+01,") != std::string::npos);
    // unknown keys are rejected
    {
        std::ofstream out(cfg);
        out << "no-such-key=1\n";
    }
    const auto bad = run_cli("--config " + cfg.string() + " simulate");
    CHECK(bad.exit_code == 2);
    fs::remove(cfg);
}
